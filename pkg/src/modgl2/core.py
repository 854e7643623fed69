"""The Grothendieck group of mod p representations of GL2(F_q).

Elements are stored in the basis of irreducibles ``det^a (x) S_n`` with
``0 <= a <= q-2`` and ``0 <= n_i <= p-1``.  Products of symmetric powers at
arbitrary exponents are rewritten into that basis by two Laurent identities
that hold for the Brauer characters of all integer exponents:

* Clebsch-Gordan at one embedding:
  ``Sym^1 (x) Sym^k = Sym^(k+1) + det (x) Sym^(k-1)``;
* the Frobenius carry from embedding ``i`` to ``i+1``:
  ``Sym^k_[i] = Sym^(k-p)_[i] (x) Sym^1_[i+1] - det^(p^(i+1)) (x) Sym^(k-2p)_[i]``;

together with ``Sym^-1 = 0`` and
``Sym^k_[i] = -det^(p^i (k+1)) (x) Sym^(-k-2)_[i]`` for ``k < -1``.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from functools import lru_cache
from itertools import product
from math import prod
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import FieldMismatch
from .field import BaseField, Weight

__all__ = [
    "VirtualRep",
    "normalize",
    "sym_class",
    "sym_monomial",
    "straighten",
    "parallel_class",
    "tensor",
    "power",
    "leq",
    "dimension",
    "central_character_exponent",
    "norm_power_form",
]


class VirtualRep:
    """An element of G_0 as a sparse map ``Weight -> nonzero int``.

    Instances are immutable; arithmetic returns new objects.  ``+``/``-`` are
    the group law, ``*`` with an int scales and ``*`` with another
    ``VirtualRep`` is the tensor product.  ``x <= y`` is the partial order of
    :func:`leq`.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: BaseField, terms: Mapping[Weight, int] | Iterable = ()):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Weight, int] = {}
        for w, c in items:
            c = int(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self._terms = {w: clean[w] for w in sorted(clean) if clean[w]}
        self._hash = None

    @classmethod
    def zero(cls, field: BaseField) -> VirtualRep:
        return cls(field)

    @classmethod
    def unit(cls, field: BaseField) -> VirtualRep:
        return cls(field, {field.trivial_weight: 1})

    @classmethod
    def basis(cls, field: BaseField, a: int, n: Sequence[int] | int) -> VirtualRep:
        return cls(field, {field.weight(a, n): 1})

    @classmethod
    def det(cls, field: BaseField, a: int) -> VirtualRep:
        return cls(field, {field.weight(a, (0,) * field.f): 1})

    @property
    def terms(self) -> Mapping[Weight, int]:
        return MappingProxyType(self._terms)

    def __getitem__(self, w: Weight) -> int:
        return self._terms.get(w, 0)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: VirtualRep) -> None:
        if not isinstance(other, VirtualRep):
            raise TypeError(f"expected VirtualRep, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: VirtualRep) -> VirtualRep:
        self._check(other)
        out = dict(self._terms)
        for w, c in other.items():
            out[w] = out.get(w, 0) + c
        return VirtualRep(self.field, out)

    def __neg__(self) -> VirtualRep:
        return VirtualRep(self.field, {w: -c for w, c in self.items()})

    def __sub__(self, other: VirtualRep) -> VirtualRep:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return VirtualRep(self.field, {w: other * c for w, c in self.items()})
        return tensor(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> VirtualRep:
        return power(self, e)

    def __le__(self, other: VirtualRep) -> bool:
        return leq(self, other)

    def __ge__(self, other: VirtualRep) -> bool:
        return leq(other, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualRep):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, tuple(self._terms.items())))
        return self._hash

    def twist(self, c: int) -> VirtualRep:
        """``det^c (x) self``."""
        m = self.field.q - 1
        return VirtualRep(self.field, {Weight((w.a + c) % m, w.n): k for w, k in self.items()})

    def is_effective(self) -> bool:
        """True when all multiplicities are nonnegative (an actual representation)."""
        return all(c > 0 for c in self._terms.values())

    def dimension(self) -> int:
        return dimension(self)

    def to_json(self) -> dict:
        return {
            "p": self.field.p,
            "f": self.field.f,
            "terms": [{"a": w.a, "n": list(w.n), "mult": c} for w, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> VirtualRep:
        field = BaseField(int(data["p"]), int(data.get("f", 1)))
        terms: dict[Weight, int] = defaultdict(int)
        for t in data.get("terms", ()):
            terms[field.weight(t["a"], t["n"])] += int(t.get("mult", 1))
        return cls(field, terms)

    def __repr__(self) -> str:
        return f"VirtualRep({self.field}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(f"{coef}{w}")
        return " + ".join(parts).replace("+ -", "- ")


def normalize(field: BaseField, a: int, n: Sequence[int] | int) -> Weight:
    """Reduce ``a`` mod ``q-1`` and validate ``n``; see :meth:`BaseField.weight`."""
    return field.weight(a, n)


def _check_same(x: VirtualRep, y: VirtualRep) -> None:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")


# -- straightening -----------------------------------------------------------


@lru_cache(maxsize=None)
def _straighten(field: BaseField, a: int, ks: tuple[int, ...]) -> tuple[tuple[Weight, int], ...]:
    """Expand ``det^a (x) (x)_i Sym^(ks[i])_[i]`` in the irreducible basis.

    Worklist rewrite ordered by ``sum(|k_i|)``, which every rule strictly
    lowers (or keeps while creating a negative slot), so equal monomials are
    merged before they are expanded.
    """
    p, f, m = field.p, field.f, field.q - 1
    out: dict[Weight, int] = defaultdict(int)
    pending: dict[tuple, int] = defaultdict(int)
    heap: list = []

    def push(a, ks, c):
        if -1 in ks:
            return
        if all(0 <= k < p for k in ks):
            out[Weight(a % m, ks)] += c
            return
        key = (a % m, ks)
        if key not in pending:
            neg = any(k < 0 for k in ks)
            heapq.heappush(heap, (-sum(map(abs, ks)), neg, key))
        pending[key] += c

    push(a, tuple(ks), 1)
    while heap:
        _, _, key = heapq.heappop(heap)
        c = pending.pop(key)
        if not c:
            continue
        a, ks = key
        ks = list(ks)
        i = next((i for i, k in enumerate(ks) if k < -1), None)
        if i is not None:
            k = ks[i]
            ks[i] = -k - 2
            push(a + field.frob(i) * (k + 1), tuple(ks), -c)
            continue
        i = next(i for i, k in enumerate(ks) if k >= p)
        j = (i + 1) % f
        k = ks[i]
        low = list(ks)
        low[i] = k - 2 * p
        push(a + field.frob(i + 1), tuple(low), -c)
        ks[i] = k - p
        kj = ks[j]
        ks[j] = kj + 1
        push(a, tuple(ks), c)
        ks[j] = kj - 1
        push(a + field.frob(j), tuple(ks), c)
    return tuple((w, c) for w, c in out.items() if c)


def straighten(field: BaseField, ks: Sequence[int], a: int = 0) -> VirtualRep:
    """Class of ``det^a (x) (x)_i Sym^(ks[i])_[i]`` by direct rewriting of the monomial."""
    ks = tuple(int(k) for k in ks)
    if len(ks) != field.f:
        raise ValueError(f"need {field.f} exponents, got {len(ks)}")
    return VirtualRep(field, _straighten(field, int(a) % (field.q - 1), ks))


def sym_monomial(field: BaseField, ks: Sequence[int], a: int = 0) -> VirtualRep:
    """Class of ``det^a (x) (x)_i Sym^(ks[i])_[i]`` for arbitrary integer exponents.

    Same value as :func:`straighten`, assembled from memoized
    :func:`sym_class` factors, which is much faster for large exponents.
    """
    if len(ks) != field.f:
        raise ValueError(f"need {field.f} exponents, got {len(ks)}")
    out = VirtualRep.unit(field)
    for i, k in enumerate(ks):
        out = tensor(out, sym_class(field, i, int(k)))
    return out.twist(int(a))


@lru_cache(maxsize=None)
def _sym(field: BaseField, i: int, k: int) -> VirtualRep:
    p = field.p
    if k == -1:
        return VirtualRep.zero(field)
    if 0 <= k < p:
        n = [0] * field.f
        n[i] = k
        return VirtualRep.basis(field, 0, n)
    if k < -1:
        return -_sym(field, i, -k - 2).twist(field.frob(i) * (k + 1))
    carry = tensor(_sym(field, i, k - p), _sym(field, (i + 1) % field.f, 1))
    return carry - _sym(field, i, k - 2 * p).twist(field.frob(i + 1))


def sym_class(field: BaseField, i: int, k: int) -> VirtualRep:
    """Class of ``Sym^k_[i]`` for any integer ``k`` (memoized on ``(i, k)``)."""
    i %= field.f
    if k >= field.p:
        # fill the memo bottom-up so the recursion depth stays constant
        for kk in range(k % field.p, k, field.p):
            _sym(field, i, kk)
    return _sym(field, i, k)


def parallel_class(field: BaseField, t: int) -> VirtualRep:
    """``S_(t,...,t) = (x)_i Sym^t_[i]``."""
    out = VirtualRep.unit(field)
    for i in range(field.f):
        out = tensor(out, sym_class(field, i, t))
    return out


# -- ring structure ----------------------------------------------------------


@lru_cache(maxsize=None)
def _basis_product(field: BaseField, u: Weight, v: Weight) -> tuple[tuple[Weight, int], ...]:
    acc: dict[Weight, int] = defaultdict(int)
    choices = [range(min(m, n) + 1) for m, n in zip(u.n, v.n)]
    for js in product(*choices):
        a = u.a + v.a + sum(j * field.frob(i) for i, j in enumerate(js))
        ks = tuple(m + n - 2 * j for m, n, j in zip(u.n, v.n, js))
        for w, c in _straighten(field, a % (field.q - 1), ks):
            acc[w] += c
    return tuple((w, c) for w, c in acc.items() if c)


def tensor(x: VirtualRep, y: VirtualRep) -> VirtualRep:
    """Product in G_0, bilinear over the Clebsch-Gordan products of basis terms."""
    _check_same(x, y)
    field = x.field
    acc: dict[Weight, int] = defaultdict(int)
    for u, c in x.items():
        for v, d in y.items():
            pair = (u, v) if u <= v else (v, u)
            cd = c * d
            for w, m in _basis_product(field, *pair):
                acc[w] += cd * m
    return VirtualRep(field, acc)


def power(x: VirtualRep, e: int) -> VirtualRep:
    """``x^(tensor e)`` for ``e >= 1``."""
    if e < 1:
        raise ValueError("power needs e >= 1")
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else tensor(result, base)
        e >>= 1
        if e:
            base = tensor(base, base)
    return result


def leq(x: VirtualRep, y: VirtualRep) -> bool:
    """``x <= y``: every coefficient of ``y - x`` is nonnegative."""
    _check_same(x, y)
    keys = set(x.terms) | set(y.terms)
    return all(y[w] >= x[w] for w in keys)


def dimension(x: VirtualRep) -> int:
    return sum(c * prod(n + 1 for n in w.n) for w, c in x.items())


def central_character_exponent(field: BaseField, w: Weight) -> int:
    """Exponent ``c`` with the centre acting on ``w`` through ``tau_0^c``."""
    return (2 * w.a + sum(n * field.frob(i) for i, n in enumerate(w.n))) % (field.q - 1)


def norm_power_form(field: BaseField, w: Weight, e: int) -> int | None:
    """Smallest ``s >= 1`` with central character ``N^(e s)``, or ``None``.

    Since ``N`` has exponent ``(q-1)/(p-1)``, this asks for
    ``c = N'(q-1)/(p-1)`` with ``e s = N' mod p-1``.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    c = central_character_exponent(field, w)
    quo, rem = divmod(c, field.norm_exponent)
    if rem:
        return None
    for s in range(1, field.p):
        if (e * s - quo) % (field.p - 1) == 0:
            return s
    return None
