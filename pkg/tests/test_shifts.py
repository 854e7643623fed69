import random

import pytest
from hypothesis import given, strategies as st

from modgl2 import BaseField, VirtualRep, leq, sym_monomial
from modgl2.errors import DivisibilityFailed, PreconditionViolated
from modgl2.shifts import (
    apply_bigtheta,
    check_dickson_fp,
    check_hasse_fp,
    check_hasse_fq,
    check_theta_fp,
    check_theta_fq,
    congruence_period,
    lemma_instances,
    shifted_vector,
    solve_system,
    sweep_lemmas,
)

F2, F3, F5 = BaseField(2), BaseField(3), BaseField(5)


def test_theta_fp_examples():
    assert check_theta_fp(F3, 0)
    assert check_theta_fp(F2, 1)
    assert all(check_theta_fp(F5, n) for n in range(31))


def test_theta_fq_examples():
    assert check_theta_fq(BaseField(2, 2), 0, 0, 0)
    assert check_theta_fq(BaseField(3, 2), 1, 1, 2)
    F = BaseField(3, 2)
    assert all(check_theta_fq(F, i, m, n) for i in range(2) for m in range(13) for n in range(13))


def test_hasse_fp_outcomes():
    assert check_hasse_fp(F3, 1).r is None
    assert repr(check_hasse_fp(F3, 1)) == "Plain"
    out = check_hasse_fp(F3, 4)
    assert out.exceptional and out.r == 1
    assert check_hasse_fp(F3, 0).r == 0
    assert not leq(sym_monomial(F3, [0]), sym_monomial(F3, [2]))


def test_hasse_exception_clause_is_needed():
    # the bare inequality fails exactly at some multiples of p+1 and never elsewhere
    for fld in (F3, F5):
        p = fld.p
        for n in range(40):
            bare = leq(sym_monomial(fld, [n]), sym_monomial(fld, [n + p - 1]))
            if n % (p + 1):
                assert bare, n
        assert not leq(sym_monomial(fld, [p + 1]), sym_monomial(fld, [2 * p]))


def test_hasse_fq_examples():
    assert check_hasse_fq(BaseField(2, 2), 0, 0, 1)
    assert check_hasse_fq(BaseField(3, 2), 0, 2, 1)
    for p in (2, 3):
        F = BaseField(p, 2)
        for i in range(2):
            for n in range(1, 6):
                for m in range(n * p):
                    assert check_hasse_fq(F, i, m, n)


def test_hasse_fq_precondition():
    with pytest.raises(PreconditionViolated):
        check_hasse_fq(BaseField(3, 2), 0, 3, 1)


def test_dickson_examples():
    assert check_dickson_fp(F3, 0)
    assert check_dickson_fp(F2, 5)
    assert all(check_dickson_fp(F, k) for F in (F2, F3, F5) for k in range(41))


def test_field_preconditions():
    with pytest.raises(PreconditionViolated):
        check_theta_fp(BaseField(3, 2), 0)
    with pytest.raises(PreconditionViolated):
        check_theta_fq(F3, 0, 0, 0)
    with pytest.raises(PreconditionViolated):
        check_dickson_fp(F3, -1)


def test_period():
    assert congruence_period(3, 1) == 2
    assert congruence_period(5, 2) == 2
    assert congruence_period(5, 4) == 1
    assert congruence_period(2, 7) == 1


def test_bigtheta_example():
    F = BaseField(3, 2)
    assert shifted_vector(F, (0, 0), (1, 0)) == (1, 3)
    twist, target = apply_bigtheta(VirtualRep.unit(F), (1, 0))
    assert twist == -1
    assert target == sym_monomial(F, (1, 3))
    x = VirtualRep.basis(F, 3, [2, 1])
    assert apply_bigtheta(x, (0, 0)) == (0, x)


def test_bigtheta_inequality():
    for p, f in [(2, 2), (3, 2), (2, 3)]:
        F = BaseField(p, f)
        rng = random.Random(p * 10 + f)
        for w in F.weights():
            b = [rng.randint(0, 3) for _ in range(f)]
            x = VirtualRep(F, {w: 1})
            twist, target = apply_bigtheta(x, b)
            assert leq(x, target.twist(twist)), (w, b)


def test_solve_system_example():
    sol = solve_system(BaseField(3, 2), (4, 0))
    assert len(set(sol.values())) == 1
    assert sol.values()[0] == sol.t
    assert all(v >= 0 for v in sol.x) and all(m > 0 for m in sol.margins())


def test_solve_system_divisibility():
    with pytest.raises(DivisibilityFailed):
        solve_system(BaseField(3, 2), (1, 0))


@given(st.data())
def test_solve_system_property(data):
    p, f = data.draw(st.sampled_from([(2, 2), (3, 2), (2, 3), (5, 2), (3, 3)]))
    F = BaseField(p, f)
    N = F.norm_exponent
    nprime = data.draw(st.lists(st.integers(0, 3 * p), min_size=f, max_size=f))
    total = sum(n * p**i for i, n in enumerate(nprime))
    nprime[0] += (-total) % N
    sol = solve_system(F, nprime)
    assert set(sol.values()) == {sol.t}
    assert all(v >= 0 for v in sol.x) and min(sol.x) == 0
    assert all(m > 0 for m in sol.margins())


def test_solve_system_requested_t():
    F = BaseField(3, 2)
    base = solve_system(F, (4, 0))
    later = solve_system(F, (4, 0), t=base.t + 16)
    assert later.t == base.t + 16 and set(later.values()) == {later.t}


def test_lemma_instances_hold():
    for fld in (F3, BaseField(2, 2)):
        for name, args, lhs, rhs in lemma_instances(fld, max_n=10):
            assert leq(lhs, rhs), (name, args)


def test_sweep_small():
    rep = sweep_lemmas([F2, F3, BaseField(2, 2)], max_n=10)
    assert rep.ok and sum(rep.checked.values()) > 0


@pytest.mark.parametrize("seed", [0, 1, 7, 123])
def test_injected_fault_is_detected(seed):
    rep = sweep_lemmas([F3, BaseField(3, 2)], max_n=8, inject_fault=seed)
    assert len(rep.failures) == 1
