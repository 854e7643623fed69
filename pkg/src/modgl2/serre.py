"""Inertial bookkeeping at the places above p and the parallel lift-weight schedule.

Characters of inertia are handled through one aggregate exponent: for a place
with residue field of size ``q_v = p^f_v``, ``prod_i omega_(tau_i)^(c_i)`` is
stored as ``sum_i c_i p^i mod q_v - 1`` (the exponent of ``omega_(tau_0)``).
The cyclotomic character is ``prod omega_tau^(e_v)``, i.e. ``e_v * N_v``
with ``N_v = 1 + p + ... + p^(f_v-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd, lcm
from typing import Iterable, Sequence

from .certificates import ShiftCertificate, dominate_parallel_weight, is_admissible
from .core import central_character_exponent, norm_power_form
from .errors import CentralCharacterMismatch, PreconditionViolated
from .field import BaseField, Weight
from .shifts import congruence_period

__all__ = [
    "PlaceData",
    "RamificationProfile",
    "Congruence",
    "InertialCharacter",
    "delta",
    "weight_central_character",
    "det_inertia_from_weight",
    "is_cyclotomic_power",
    "LiftSchedule",
    "lift_weight_schedule",
]


@dataclass(frozen=True)
class PlaceData:
    e: int
    f: int

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise ValueError(f"e and f must be >= 1, got e={self.e}, f={self.f}")


@dataclass(frozen=True)
class RamificationProfile:
    p: int
    places: tuple[PlaceData, ...]
    k: int = 2

    def __post_init__(self):
        if not self.places:
            raise ValueError("need at least one place above p")
        object.__setattr__(self, "places", tuple(self.places))

    @classmethod
    def parse(cls, p: int, text: str, k: int = 2) -> RamificationProfile:
        """Profile from ``"e:f,e:f,..."``."""
        places = []
        for chunk in text.split(","):
            e, _, f = chunk.strip().partition(":")
            places.append(PlaceData(int(e), int(f or 1)))
        return cls(p, tuple(places), k)

    def field(self, v: int) -> BaseField:
        return BaseField(self.p, self.places[v].f)


@dataclass(frozen=True)
class Congruence:
    """The residue class ``residue mod modulus``."""

    residue: int
    modulus: int

    def __contains__(self, k: int) -> bool:
        return (k - self.residue) % self.modulus == 0

    def to_json(self) -> dict:
        return {"residue": self.residue, "modulus": self.modulus}


@dataclass(frozen=True)
class InertialCharacter:
    """``omega_(tau_0)^exponent`` on inertia at a place with residue field ``F_(p^f)``."""

    p: int
    f: int
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % (self.p**self.f - 1))

    @classmethod
    def from_exponents(cls, p: int, exps: Sequence[int]) -> InertialCharacter:
        """``prod_i omega_(tau_i)^(exps[i])`` using ``omega_(tau_i) = omega_(tau_0)^(p^i)``."""
        return cls(p, len(exps), sum(c * p**i for i, c in enumerate(exps)))

    @classmethod
    def cyclotomic(cls, p: int, f: int, e: int) -> InertialCharacter:
        return cls.from_exponents(p, [e] * f)


def delta(profile: RamificationProfile) -> int:
    """``lcm_v (p-1)/gcd(p-1, e_v)``."""
    return lcm(*(congruence_period(profile.p, pl.e) for pl in profile.places))


def weight_central_character(fld: BaseField, sigma: Weight, e_v: int) -> Congruence | None:
    """Weights ``k`` for which ``sigma`` has central character ``N^(e_v (k-2))``.

    Returns the class of such ``k`` modulo ``(p-1)/gcd(p-1, e_v)``, or None.
    """
    s = norm_power_form(fld, sigma, e_v)
    if s is None:
        return None
    mod = congruence_period(fld.p, e_v)
    return Congruence((s + 2) % mod, mod)


def det_inertia_from_weight(fld: BaseField, sigma: Weight, e_v: int) -> InertialCharacter:
    """``det rho|_(I_v)`` forced by a Serre weight ``sigma``.

    With central character ``prod tau^(c_tau - 2e_v)`` the determinant is
    ``prod omega_tau^(c_tau - e_v)``; in aggregate exponents that is the
    central-character exponent of ``sigma`` plus ``e_v N_v``.
    """
    c = central_character_exponent(fld, sigma)
    return InertialCharacter(fld.p, fld.f, c + e_v * fld.norm_exponent)


def is_cyclotomic_power(chi: InertialCharacter, e_v: int) -> Congruence | None:
    """Solve ``chi = cyclotomic^(k-1)`` for ``k - 1``; None when unsolvable."""
    p, q = chi.p, chi.p**chi.f
    N = (q - 1) // (p - 1)
    quo, rem = divmod(chi.exponent, N)
    if rem:
        return None
    g = gcd(e_v, p - 1)
    if quo % g:
        return None
    mod = (p - 1) // g
    if mod == 1:
        return Congruence(0, 1)
    inv = pow(e_v // g, -1, mod)
    return Congruence((quo // g) * inv % mod, mod)


@dataclass
class LiftSchedule:
    """Output of :func:`lift_weight_schedule`.

    ``n_certified`` is the least ``n`` such that the construction yields a
    certificate for every weight at ``n``, ``n+1`` and ``n+2``; those are kept
    in ``certificates[n][v]``.  ``n0 <= n_certified`` is the least ``n`` from
    which every weight is a constituent at all of ``n, ..., n_certified``,
    checked by direct expansion.
    """

    profile: RamificationProfile
    delta: int
    n_floor: int
    n0: int
    n_certified: int
    weights: list[list[Weight]]
    certificates: dict[int, list[list[ShiftCertificate]]] = dc_field(default_factory=dict)

    def weight(self, n: int) -> int:
        return self.profile.k + n * self.delta

    def t(self, n: int) -> int:
        return self.profile.k - 2 + n * self.delta

    def to_json(self, samples: int = 5, certificates: bool = True) -> dict:
        pr = self.profile
        out = {
            "p": pr.p,
            "k": pr.k,
            "delta": self.delta,
            "n0": self.n0,
            "n_certified": self.n_certified,
            "n_floor": self.n_floor,
            "schedule": [
                {"n": n, "weight": self.weight(n), "t": self.t(n)}
                for n in range(self.n0, self.n0 + samples)
            ],
            "places": [
                {"e": pl.e, "f": pl.f, "weights": [w.to_json() for w in ws]}
                for pl, ws in zip(pr.places, self.weights)
            ],
        }
        if certificates:
            out["certificates"] = {
                str(n): [[c.to_json(intermediates=False) for c in cs] for cs in rows]
                for n, rows in self.certificates.items()
            }
        return out


def _place_weights(profile: RamificationProfile, v: int, given: Iterable[Weight] | None) -> list[Weight]:
    fld = profile.field(v)
    e_v = profile.places[v].e
    k = profile.k
    if given is None:
        return [w for w in fld.weights()
                if (cls := weight_central_character(fld, w, e_v)) is not None and k in cls]
    ws = list(given)
    for w in ws:
        cls = weight_central_character(fld, w, e_v)
        if cls is None or k not in cls:
            raise CentralCharacterMismatch(
                f"place {v}: {w} does not have central character N^(e_v(k-2)) for k={k}"
            )
    return ws


def lift_weight_schedule(
    profile: RamificationProfile,
    weights: Sequence[Iterable[Weight] | None] | None = None,
    max_n: int = 500,
) -> LiftSchedule:
    """Threshold ``n0`` and certificates for the weights ``k + n delta``.

    ``weights[v]`` lists the Serre weights to cover at place ``v`` (all
    irreducibles with the forced central character when omitted).  Raises
    :class:`CentralCharacterMismatch` if a supplied weight is incompatible
    with ``k``.
    """
    if profile.k < 2:
        raise ValueError("k must be >= 2")
    places = profile.places
    if weights is None:
        weights = [None] * len(places)
    if len(weights) != len(places):
        raise ValueError("one weight list per place is required")
    ws = [_place_weights(profile, v, weights[v]) for v in range(len(places))]
    d = delta(profile)
    n_floor = max(0, -(-(2 - profile.k) // d))

    def certify(n: int):
        t = profile.k - 2 + n * d
        out = []
        for v, pl in enumerate(places):
            fld = profile.field(v)
            row = []
            for w in ws[v]:
                try:
                    row.append(dominate_parallel_weight(fld, w, pl.e, t=t))
                except PreconditionViolated:
                    return None
            out.append(row)
        return out

    def holds(n: int) -> bool:
        t = profile.k - 2 + n * d
        return all(is_admissible(profile.field(v), w, pl.e, t)
                   for v, pl in enumerate(places) for w in ws[v])

    window = {}

    def certified_from(n: int) -> bool:
        for m in (n, n + 1, n + 2):
            if m not in window:
                window[m] = certify(m)
            if window[m] is None:
                return False
        return True

    n_cert = n_floor
    while not certified_from(n_cert):
        n_cert += 1
        if n_cert > max_n:
            raise PreconditionViolated(f"no certified n below max_n={max_n}")
    n0 = n_cert
    while n0 > n_floor and holds(n0 - 1):
        n0 -= 1
    certs = {m: window[m] for m in (n_cert, n_cert + 1, n_cert + 2)}
    return LiftSchedule(profile, d, n_floor, n0, n_cert, ws, certs)
