"""Exact Grothendieck-ring computations for mod p representations of GL2(F_q).

Quick tour::

    >>> from modgl2 import BaseField, sym_class
    >>> F = BaseField(3)
    >>> print(sym_class(F, 0, 3))
    det^0.S(1) + det^1.S(1)
"""

from .certificates import (
    ReplayResult,
    ShiftCertificate,
    ShiftStep,
    brute_force_min_t,
    check_surjection,
    dominate_parallel_weight,
    is_admissible,
    replay_certificate,
)
from .core import (
    VirtualRep,
    central_character_exponent,
    dimension,
    leq,
    norm_power_form,
    normalize,
    parallel_class,
    power,
    straighten,
    sym_class,
    sym_monomial,
    tensor,
)
from .errors import (
    CentralCharacterMismatch,
    DivisibilityFailed,
    FieldMismatch,
    LemmaFailure,
    ModGL2Error,
    NoNormPowerForm,
    OutOfRangeExponent,
    PreconditionViolated,
    SizeBound,
)
from .field import BaseField, Weight
from .serre import (
    Congruence,
    InertialCharacter,
    LiftSchedule,
    PlaceData,
    RamificationProfile,
    delta,
    det_inertia_from_weight,
    is_cyclotomic_power,
    lift_weight_schedule,
    weight_central_character,
)
from .shifts import (
    HasseOutcome,
    SystemSolution,
    apply_bigtheta,
    check_dickson_fp,
    check_hasse_fp,
    check_hasse_fq,
    check_theta_fp,
    check_theta_fq,
    congruence_period,
    solve_system,
    sweep_lemmas,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table (symmetric powers, basis products, oracles, parallel powers)."""
    from . import brauer, certificates, core

    for fn in (core._straighten, core._sym, core._basis_product, brauer.oracle, certificates._parallel_power):
        fn.cache_clear()
