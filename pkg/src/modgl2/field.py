"""Base fields F_q and the labels of irreducible mod p representations of GL2(F_q)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from sympy import isprime

from .errors import OutOfRangeExponent

__all__ = ["BaseField", "Weight"]


@dataclass(frozen=True, order=True)
class Weight:
    """Label ``(a, n)`` of the irreducible ``det^a (x) S_n``.

    ``a`` is the determinant twist reduced mod ``q - 1`` and ``n`` holds one
    symmetric-power exponent per embedding ``tau_i``.  Ordering is by ``a``
    first, then ``n`` lexicographically, which is the canonical term order.
    Build instances through :meth:`BaseField.weight` so that they are
    normalized.
    """

    a: int
    n: tuple[int, ...]

    def to_json(self) -> dict:
        return {"a": self.a, "n": list(self.n)}

    def __str__(self) -> str:
        return f"det^{self.a}.S({','.join(map(str, self.n))})"


@dataclass(frozen=True)
class BaseField:
    """The finite field with ``q = p**f`` elements.

    Embeddings are indexed by residues mod ``f`` with ``tau_i = tau_0 o Frob^i``.
    """

    p: int
    f: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise ValueError(f"p must be a prime integer, got {self.p!r}")
        if not isinstance(self.f, int) or self.f < 1:
            raise ValueError(f"f must be a positive integer, got {self.f!r}")

    @property
    def q(self) -> int:
        return self.p**self.f

    @cached_property
    def norm_exponent(self) -> int:
        """``1 + p + ... + p^(f-1)``, the exponent of the norm to F_p."""
        return (self.q - 1) // (self.p - 1)

    def frob(self, i: int) -> int:
        """``p^i`` reduced mod ``q - 1``."""
        return pow(self.p, i % self.f, self.q - 1)

    def digits(self, a: int) -> tuple[int, ...]:
        """Base-p digits ``(b_0, ..., b_(f-1))`` of ``a mod (q-1)``."""
        a %= self.q - 1
        out = []
        for _ in range(self.f):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def weight(self, a: int, n: Sequence[int] | int) -> Weight:
        """Normalize raw data into a :class:`Weight`.

        Raises :class:`OutOfRangeExponent` unless every ``n_i`` is in ``0..p-1``.
        """
        if isinstance(n, int):
            n = (n,)
        n = tuple(int(x) for x in n)
        if len(n) != self.f:
            raise ValueError(f"weight vector must have length f={self.f}, got {len(n)}")
        for x in n:
            if not 0 <= x <= self.p - 1:
                raise OutOfRangeExponent(
                    f"exponent {x} outside 0..{self.p - 1} for p={self.p}"
                )
        return Weight(int(a) % (self.q - 1), n)

    @property
    def trivial_weight(self) -> Weight:
        return Weight(0, (0,) * self.f)

    def weights(self) -> Iterator[Weight]:
        """All ``q(q-1)`` irreducible labels in canonical order."""
        for a in range(self.q - 1):
            for n in product(range(self.p), repeat=self.f):
                yield Weight(a, n)

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f}

    def __str__(self) -> str:
        return f"F_{self.q}" if self.f == 1 else f"F_{self.p}^{self.f}"
