"""Weight-shifting inequalities in G_0 and the linear system behind parallel weights.

Each ``check_*`` function evaluates one inequality of theta/Hasse type
directly with :func:`modgl2.core.leq`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .core import VirtualRep, leq, sym_monomial
from .errors import DivisibilityFailed, LemmaFailure, PreconditionViolated
from .field import BaseField

__all__ = [
    "HasseOutcome",
    "check_theta_fp",
    "check_theta_fq",
    "check_hasse_fp",
    "check_hasse_fq",
    "check_dickson_fp",
    "apply_bigtheta",
    "SystemSolution",
    "solve_system",
    "congruence_period",
    "LEMMAS",
    "lemma_instances",
    "SweepReport",
    "sweep_lemmas",
]


def congruence_period(p: int, e: int) -> int:
    """``(p-1)/gcd(p-1, e)``."""
    return (p - 1) // gcd(p - 1, e)


def _slots(field: BaseField, pairs: dict[int, int]) -> list[int]:
    ks = [0] * field.f
    for i, k in pairs.items():
        ks[i % field.f] = k
    return ks


def _need_f1(field: BaseField, name: str) -> None:
    if field.f != 1:
        raise PreconditionViolated(f"{name} needs f = 1, got f = {field.f}")


def _need_fq(field: BaseField, name: str) -> None:
    if field.f < 2:
        raise PreconditionViolated(f"{name} needs f > 1")


def check_theta_fp(field: BaseField, n: int) -> bool:
    """``[S_n] <= [det^-1 (x) S_(n+p+1)]`` over F_p."""
    _need_f1(field, "check_theta_fp")
    if n < 0:
        raise PreconditionViolated("n must be >= 0")
    p = field.p
    return leq(sym_monomial(field, [n]), sym_monomial(field, [n + p + 1], a=-1))


def check_theta_fq(field: BaseField, i: int, m: int, n: int) -> bool:
    """``[Sym^m_[i] Sym^n_[i+1]] <= [det^(-p^(i+1)) Sym^(m+p)_[i] Sym^(n+1)_[i+1]]``."""
    _need_fq(field, "check_theta_fq")
    if m < 0 or n < 0:
        raise PreconditionViolated("m, n must be >= 0")
    p = field.p
    lhs = sym_monomial(field, _slots(field, {i: m, i + 1: n}))
    rhs = sym_monomial(field, _slots(field, {i: m + p, i + 1: n + 1}), a=-field.frob(i + 1))
    return leq(lhs, rhs)


@dataclass(frozen=True)
class HasseOutcome:
    """Result of :func:`check_hasse_fp`: plain, or exceptional with ``n = r(p+1)``."""

    r: int | None = None

    @property
    def exceptional(self) -> bool:
        return self.r is not None

    def __repr__(self) -> str:
        return "Plain" if self.r is None else f"Exceptional({self.r})"


def check_hasse_fp(field: BaseField, n: int) -> HasseOutcome:
    """``[S_n] <= [S_(n+p-1)]``, with ``+ [det^r]`` on the right when ``n = r(p+1)``.

    Raises :class:`LemmaFailure` if the applicable inequality is false.
    """
    _need_f1(field, "check_hasse_fp")
    if n < 0:
        raise PreconditionViolated("n must be >= 0")
    p = field.p
    lhs = sym_monomial(field, [n])
    rhs = sym_monomial(field, [n + p - 1])
    r, rem = divmod(n, p + 1)
    if rem:
        if not leq(lhs, rhs):
            raise LemmaFailure(f"[S_{n}] <= [S_{n + p - 1}] fails at p={p}")
        return HasseOutcome()
    if not leq(lhs, rhs + VirtualRep.det(field, r)):
        raise LemmaFailure(f"[S_{n}] <= [S_{n + p - 1}] + [det^{r}] fails at p={p}")
    return HasseOutcome(r)


def check_hasse_fq(field: BaseField, i: int, m: int, n: int) -> bool:
    """``[Sym^m_[i] Sym^n_[i+1]] <= [Sym^(m+p)_[i] Sym^(n-1)_[i+1]]`` when ``np > m >= 0``."""
    _need_fq(field, "check_hasse_fq")
    p = field.p
    if not (m >= 0 and n * p > m):
        raise PreconditionViolated(f"need n*p > m >= 0, got m={m}, n={n}, p={p}")
    lhs = sym_monomial(field, _slots(field, {i: m, i + 1: n}))
    rhs = sym_monomial(field, _slots(field, {i: m + p, i + 1: n - 1}))
    return leq(lhs, rhs)


def check_dickson_fp(field: BaseField, k: int) -> bool:
    """``[S_k] <= [S_(k+p(p-1))]`` over F_p."""
    _need_f1(field, "check_dickson_fp")
    if k < 0:
        raise PreconditionViolated("k must be >= 0")
    p = field.p
    return leq(sym_monomial(field, [k]), sym_monomial(field, [k + p * (p - 1)]))


def shifted_vector(field: BaseField, m: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``m'_i = m_i + b_i + p b_(i+1)``."""
    f, p = field.f, field.p
    return tuple(m[i] + b[i] + p * b[(i + 1) % f] for i in range(f))


def apply_bigtheta(x: VirtualRep, b: Sequence[int]) -> tuple[int, VirtualRep]:
    """Iterated theta shift by the vector ``b``.

    Every basis term ``det^a S_m`` of ``x`` is sent to ``det^a S_m'`` with
    ``m'_i = m_i + b_i + p b_(i+1)``.  Returns ``(twist, target)`` with
    ``twist = -sum b_i p^i``, so that ``x <= det^twist (x) target`` whenever
    ``x`` is effective.
    """
    field = x.field
    b = tuple(int(v) for v in b)
    if len(b) != field.f or any(v < 0 for v in b):
        raise PreconditionViolated(f"b must be {field.f} nonnegative integers")
    twist = -sum(v * field.p**i for i, v in enumerate(b))
    target = VirtualRep.zero(field)
    for w, c in x.items():
        target = target + c * sym_monomial(field, shifted_vector(field, w.n, b), a=w.a)
    return twist, target


@dataclass(frozen=True)
class SystemSolution:
    """Nonnegative solution of the parallel-weight system.

    ``n''_i = n'_i + r(p^2-1)`` and ``t = n''_i - x_i + p x_(i+1)`` for every ``i``.
    """

    p: int
    nprime: tuple[int, ...]
    x: tuple[int, ...]
    r: int
    t: int

    @property
    def nsecond(self) -> tuple[int, ...]:
        return tuple(n + self.r * (self.p**2 - 1) for n in self.nprime)

    def values(self) -> tuple[int, ...]:
        """The ``f`` quantities that the system forces to be equal."""
        f, p, x = len(self.x), self.p, self.x
        return tuple(n - x[i] + p * x[(i + 1) % f] for i, n in enumerate(self.nsecond))

    def margins(self) -> tuple[int, ...]:
        """``r(p-1)(p^2-1) - (n'_i - p n'_(i+1) + 2p x_(i+1))``, all positive for a valid ``r``."""
        f, p, x, n = len(self.x), self.p, self.x, self.nprime
        lhs = self.r * (p - 1) * (p * p - 1)
        return tuple(lhs - (n[i] - p * n[(i + 1) % f] + 2 * p * x[(i + 1) % f]) for i in range(f))


def _offsets(field: BaseField, nprime: Sequence[int]) -> list[int]:
    f, p, N = field.f, field.p, field.norm_exponent
    quotients = []
    for j in range(f):
        total = sum(nprime[(i + j) % f] * p**i for i in range(f))
        if total % N:
            raise DivisibilityFailed(
                f"sum_i n'_(i+{j}) p^i = {total} is not divisible by {N}"
            )
        quotients.append(total // N)
    c = [0] * f
    for j in range(1, f):
        c[j] = c[j - 1] - nprime[j - 1] + quotients[j]
    return c


def _min_r(field: BaseField, nprime: Sequence[int], x: Sequence[int]) -> int:
    f, p = field.f, field.p
    need = max(nprime[i] - p * nprime[(i + 1) % f] + 2 * p * x[(i + 1) % f] for i in range(f))
    step = (p - 1) * (p * p - 1)
    # smallest r >= 0 with r*step > need
    return max(0, need // step + 1)


def solve_system(field: BaseField, nprime: Sequence[int], t: int | None = None) -> SystemSolution:
    """Solve for ``x`` and ``r``.

    By default ``x_0`` is the least value making every ``x_j >= 0`` and ``r``
    the least value satisfying the strict margin inequality; this also gives
    the least reachable ``t``.  With ``t`` given, returns the solution with the
    smallest ``r`` whose common value equals ``t`` (raises
    :class:`PreconditionViolated` if there is none).
    """
    nprime = tuple(int(v) for v in nprime)
    if len(nprime) != field.f:
        raise ValueError(f"need {field.f} entries")
    p, f = field.p, field.f
    c = _offsets(field, nprime)
    x0_min = max(0, -min(c))

    def build(x0: int, r: int) -> SystemSolution:
        x = tuple(x0 + cj for cj in c)
        t_val = nprime[0] + r * (p * p - 1) - x[0] + p * x[1 % f]
        return SystemSolution(p, nprime, x, r, t_val)

    if t is None:
        x = [x0_min + cj for cj in c]
        return build(x0_min, _min_r(field, nprime, x))

    base = build(0, 0).t
    r = 0
    while True:
        rem = t - base - r * (p * p - 1)
        if rem < (p - 1) * x0_min:
            break
        if rem % (p - 1) == 0:
            x0 = rem // (p - 1)
            if r >= _min_r(field, nprime, [x0 + cj for cj in c]):
                return build(x0, r)
        r += 1
    raise PreconditionViolated(f"no admissible solution with common value t={t}")


# -- sweeps --------------------------------------------------------------------

LEMMAS = ("theta_fp", "hasse_fp", "dickson_fp", "theta_fq", "hasse_fq")


def lemma_instances(field: BaseField, max_n: int = 30):
    """Yield ``(lemma, args, lhs, rhs)`` for every admissible instance with entries ``<= max_n``.

    Each instance asserts ``lhs <= rhs``; for exceptional Hasse instances the
    correction term ``det^r`` is already included in ``rhs``.
    """
    p, f = field.p, field.f
    if f == 1:
        for n in range(max_n + 1):
            yield "theta_fp", (n,), sym_monomial(field, [n]), sym_monomial(field, [n + p + 1], a=-1)
        for n in range(max_n + 1):
            rhs = sym_monomial(field, [n + p - 1])
            r, rem = divmod(n, p + 1)
            if not rem:
                rhs = rhs + VirtualRep.det(field, r)
            yield "hasse_fp", (n,), sym_monomial(field, [n]), rhs
        for k in range(max_n + 1):
            yield "dickson_fp", (k,), sym_monomial(field, [k]), sym_monomial(field, [k + p * (p - 1)])
        return
    for i in range(f):
        for m in range(max_n + 1):
            for n in range(max_n + 1):
                lhs = sym_monomial(field, _slots(field, {i: m, i + 1: n}))
                rhs = sym_monomial(field, _slots(field, {i: m + p, i + 1: n + 1}), a=-field.frob(i + 1))
                yield "theta_fq", (i, m, n), lhs, rhs
                if n * p > m:
                    rhs = sym_monomial(field, _slots(field, {i: m + p, i + 1: n - 1}))
                    yield "hasse_fq", (i, m, n), lhs, rhs


@dataclass
class SweepReport:
    checked: dict[str, int]
    failures: list[tuple]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "failures": [
                {"p": p, "f": f, "lemma": name, "args": list(args)} for p, f, name, args in self.failures
            ],
        }


def sweep_lemmas(fields, max_n: int = 30, inject_fault: int | None = None) -> SweepReport:
    """Check every lemma instance over ``fields``.

    ``inject_fault`` is a seed: one instance, chosen from it, has its right
    side replaced by ``lhs - (one constituent of lhs)``, which must be caught.
    Used to test the sweep itself.
    """
    instances = [(fld, inst) for fld in fields for inst in lemma_instances(fld, max_n)]
    victim = random.Random(inject_fault).randrange(len(instances)) if inject_fault is not None else -1
    checked: dict[str, int] = {name: 0 for name in LEMMAS}
    failures = []
    for idx, (fld, (name, args, lhs, rhs)) in enumerate(instances):
        if idx == victim:
            w = next(iter(lhs))
            rhs = lhs - VirtualRep(fld, {w: 1})
        checked[name] += 1
        if not leq(lhs, rhs):
            failures.append((fld.p, fld.f, name, args))
    return SweepReport(checked, failures)
