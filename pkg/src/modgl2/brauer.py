"""Exact Brauer characters on the p-regular classes of GL2(F_q).

A p-regular class is determined by its eigenvalues in ``F_{q^2}^x``.  Fixing a
primitive element ``g`` of ``F_{q^2}`` (root of the smallest primitive
polynomial) and sending ``g`` to ``x`` identifies the Teichmuller lifts with
powers of ``x`` in ``Z[x]/(x^M - 1)``, ``M = q^2 - 1``.  A character value is an
integer vector of length ``M`` and a character is an array of shape
``(n_classes, M)``.  Equality in this group ring implies equality of complex
values; ``strict=True`` reduces modulo the ``M``-th cyclotomic polynomial,
which is the ring of actual values at a primitive ``M``-th root of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from sympy import cyclotomic_poly, symbols, Poly

from .core import VirtualRep
from .errors import FieldMismatch, SizeBound
from .field import BaseField, Weight

__all__ = [
    "PRegularClass",
    "ExtensionField",
    "BrauerOracle",
    "oracle",
    "enumerate_classes",
    "brauer_char",
    "chars_equal",
    "DEFAULT_SIZE_BOUND",
]

DEFAULT_SIZE_BOUND = 27


class ExtensionField:
    """``F_{p^m}`` as ``F_p[x]/(P)`` with a discrete-log table.

    ``P`` is the monic primitive polynomial of degree ``m`` whose coefficient
    list ``(c_0, ..., c_(m-1))`` is smallest when read as the base-p integer
    ``sum c_i p^i``.  Elements are encoded the same way.
    """

    def __init__(self, p: int, m: int):
        self.p, self.m = p, m
        self.order = p**m
        for code in range(1, self.order):
            coeffs = [(code // p**i) % p for i in range(m)]
            if coeffs[0] == 0:
                continue
            table = self._powers(coeffs)
            if table is not None:
                self.modulus = coeffs
                self.antilog = table
                break
        else:  # pragma: no cover - a primitive polynomial always exists
            raise RuntimeError("no primitive polynomial found")
        self.log = {v: k for k, v in enumerate(self.antilog)}

    def _times_x(self, v: list[int], coeffs: list[int]) -> list[int]:
        top = v[-1]
        out = [0] + v[:-1]
        return [(o - top * c) % self.p for o, c in zip(out, coeffs)]

    def _powers(self, coeffs):
        n = self.order - 1
        one = [1] + [0] * (self.m - 1)
        v = one
        table = []
        for k in range(n):
            if k and v == one:
                return None
            table.append(sum(c * self.p**i for i, c in enumerate(v)))
            v = self._times_x(v, coeffs)
        return table if v == one else None

    def element(self, log: int) -> tuple[int, ...]:
        """Coefficient tuple of ``g^log``."""
        code = self.antilog[log % (self.order - 1)]
        return tuple((code // self.p**i) % self.p for i in range(self.m))


@dataclass(frozen=True, order=True)
class PRegularClass:
    """A semisimple conjugacy class given by the discrete logs of its eigenvalues.

    ``kind`` is ``"central"``, ``"split"`` or ``"nonsplit"``.  For nonsplit
    classes ``logs = (l, q*l mod M)`` with ``l`` the smaller representative.
    """

    kind: str
    logs: tuple[int, int]

    def to_json(self) -> dict:
        return {"kind": self.kind, "logs": list(self.logs)}


def _classes(q: int) -> list[PRegularClass]:
    M = q * q - 1
    out = []
    sub = range(0, M, q + 1)
    for l in sub:
        out.append(PRegularClass("central", (l, l)))
    for l1 in sub:
        for l2 in sub:
            if l1 < l2:
                out.append(PRegularClass("split", (l1, l2)))
    for l in range(M):
        if l % (q + 1) and l < (q * l) % M:
            out.append(PRegularClass("nonsplit", (l, (q * l) % M)))
    return out


class BrauerOracle:
    """Character table machinery for one base field."""

    def __init__(self, field: BaseField, size_bound: int = DEFAULT_SIZE_BOUND):
        if field.q > size_bound:
            raise SizeBound(f"q={field.q} exceeds size bound {size_bound}")
        self.field = field
        self.M = field.q**2 - 1
        self.classes = _classes(field.q)
        logs = np.array([c.logs for c in self.classes], dtype=np.int64)
        self._lam = logs[:, 0]
        self._mu = logs[:, 1]
        self._rows = np.arange(len(self.classes))

    @cached_property
    def extension(self) -> ExtensionField:
        return ExtensionField(self.field.p, 2 * self.field.f)

    @cached_property
    def cyclotomic(self) -> np.ndarray:
        """Coefficients of the ``M``-th cyclotomic polynomial, lowest degree first."""
        x = symbols("x")
        return np.array(Poly(cyclotomic_poly(self.M, x), x).all_coeffs()[::-1], dtype=np.int64)

    def _zeros(self) -> np.ndarray:
        return np.zeros((len(self.classes), self.M), dtype=np.int64)

    def _accumulate(self, out: np.ndarray, exps: np.ndarray, coeff: int) -> None:
        # exps: (n_classes, k) exponents of x to add with weight coeff
        ex = exps % self.M
        rows = np.broadcast_to(self._rows[:, None], ex.shape)
        np.add.at(out, (rows, ex), coeff)

    def _sym_exponents(self, i: int, k: int) -> np.ndarray:
        pi = pow(self.field.p, i % self.field.f)
        j = np.arange(k + 1)
        return pi * (self._lam[:, None] * j + self._mu[:, None] * (k - j))

    def sym_char(self, i: int, k: int) -> np.ndarray:
        """Character of ``Sym^k_[i]`` computed straight from the eigenvalues.

        For ``k < -1`` the value is the Laurent polynomial continuation
        ``(x^(k+1) - y^(k+1)) / (x - y)``.
        """
        out = self._zeros()
        if k >= 0:
            self._accumulate(out, self._sym_exponents(i, k), 1)
        elif k < -1:
            pi = pow(self.field.p, i % self.field.f)
            shift = pi * (k + 1) * (self._lam + self._mu)
            self._accumulate(out, self._sym_exponents(i, -k - 2) + shift[:, None], -1)
        return out

    def basis_char(self, w: Weight) -> np.ndarray:
        return self._dense(_basis_support(self, w))

    def _dense(self, flat: np.ndarray, weights: np.ndarray | None = None) -> np.ndarray:
        # float weights are exact here: every coefficient is far below 2^53
        out = np.bincount(flat, weights=weights, minlength=len(self.classes) * self.M)
        return out.astype(np.int64).reshape(len(self.classes), self.M)

    def brauer_char(self, x: VirtualRep, strict: bool = False) -> np.ndarray:
        if x.field != self.field:
            raise FieldMismatch(f"{x.field} vs {self.field}")
        if not x:
            out = self._zeros()
        else:
            supports = [_basis_support(self, w) for w in x.terms]
            coeffs = np.concatenate([np.full(sup.size, c, dtype=np.float64)
                                     for sup, c in zip(supports, x.terms.values())])
            out = self._dense(np.concatenate(supports), coeffs)
        return self.reduce(out) if strict else out

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Pointwise product of two characters in ``Z[x]/(x^M - 1)``.

        Row-wise cyclic convolution over the nonzero coefficients only.
        """
        rows, M = len(self.classes), self.M
        fu, fv = np.flatnonzero(u), np.flatnonzero(v)
        wu, wv = u.ravel()[fu], v.ravel()[fv]
        ru, cu = np.divmod(fu, M)
        rv, cv = np.divmod(fv, M)
        # pair every nonzero of u with every nonzero of v in the same row
        nv = np.bincount(rv, minlength=rows)
        start_v = np.cumsum(nv) - nv
        reps = nv[ru]
        iu = np.repeat(np.arange(ru.size), reps)
        offset = np.arange(iu.size) - np.repeat(np.cumsum(reps) - reps, reps)
        jv = start_v[ru[iu]] + offset
        flat = ru[iu] * M + (cu[iu] + cv[jv]) % M
        return self._dense(flat, (wu[iu] * wv[jv]).astype(np.float64))

    def reduce(self, chi: np.ndarray) -> np.ndarray:
        """Reduce rows modulo the cyclotomic polynomial (canonical value form)."""
        phi = self.cyclotomic
        d = phi.size - 1
        v = chi.copy()
        for deg in range(self.M - 1, d - 1, -1):
            c = v[:, deg].copy()
            if c.any():
                v[:, deg - d: deg + 1] -= c[:, None] * phi[None, :]
        return v[:, :d]

    def chars_equal(self, x: VirtualRep, y: VirtualRep, strict: bool = False) -> bool:
        if x.field != y.field:
            raise FieldMismatch(f"{x.field} vs {y.field}")
        return bool(np.array_equal(self.brauer_char(x, strict), self.brauer_char(y, strict)))

    def identity_index(self) -> int:
        return self.classes.index(PRegularClass("central", (0, 0)))

    def table(self) -> dict:
        """Character table of the irreducible basis as a JSON-ready dict."""
        ext = self.extension
        cols = []
        for c in self.classes:
            d = c.to_json()
            d["eigenvalues"] = [list(ext.element(l)) for l in c.logs]
            cols.append(d)
        rows = []
        for w in self.field.weights():
            chi = self.basis_char(w)
            rows.append({
                "weight": w.to_json(),
                "values": [_sparse(chi[r]) for r in range(len(self.classes))],
            })
        return {
            "p": self.field.p,
            "f": self.field.f,
            "modulus": self.M,
            "generator_polynomial": ext.modulus + [1],
            "classes": cols,
            "rows": rows,
        }


def _sparse(vec: np.ndarray) -> dict[str, int]:
    nz = np.nonzero(vec)[0]
    return {str(int(e)): int(vec[e]) for e in nz}


def _basis_support(orc: BrauerOracle, w: Weight) -> np.ndarray:
    """Flat positions ``row * M + exponent`` of the monomials of a basis character."""
    cache = orc.__dict__.setdefault("_basis_cache", {})
    flat = cache.get(w)
    if flat is None:
        # det^a (x) prod_i sum_j lam^(p^i j) mu^(p^i (n_i - j))
        exps = (w.a * (orc._lam + orc._mu))[:, None]
        for i in range(orc.field.f):
            e_i = orc._sym_exponents(i, w.n[i])
            exps = (exps[:, :, None] + e_i[:, None, :]).reshape(len(orc.classes), -1)
        flat = (orc._rows[:, None] * orc.M + exps % orc.M).ravel()
        flat.setflags(write=False)
        cache[w] = flat
    return flat


@lru_cache(maxsize=None)
def oracle(field: BaseField, size_bound: int = DEFAULT_SIZE_BOUND) -> BrauerOracle:
    """Shared oracle per field; its tables are read-only after construction."""
    return BrauerOracle(field, size_bound)


def enumerate_classes(field: BaseField, size_bound: int = DEFAULT_SIZE_BOUND) -> list[PRegularClass]:
    return list(oracle(field, size_bound).classes)


def brauer_char(x: VirtualRep, strict: bool = False) -> np.ndarray:
    return oracle(x.field).brauer_char(x, strict)


def chars_equal(x: VirtualRep, y: VirtualRep, strict: bool = False) -> bool:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    return oracle(x.field).chars_equal(x, y, strict)
