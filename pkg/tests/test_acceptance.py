"""Acceptance criteria 1-6, each run from cold caches against its time budget."""

import random
import time
from math import gcd

import numpy as np
import pytest

from modgl2 import (
    BaseField,
    VirtualRep,
    brute_force_min_t,
    clear_caches,
    dominate_parallel_weight,
    leq,
    norm_power_form,
    replay_certificate,
    sym_class,
    sym_monomial,
    tensor,
)
from modgl2.brauer import oracle
from modgl2.serre import RamificationProfile, delta, lift_weight_schedule
from modgl2.shifts import sweep_lemmas

pytestmark = pytest.mark.acceptance

ORACLE_GRID = [(p, f) for p in (2, 3, 5) for f in (1, 2)]


@pytest.fixture(autouse=True)
def cold():
    clear_caches()
    yield


def test_criterion_1_oracle_equivalence(record_criterion):
    start = time.perf_counter()
    failures = []
    checked = 0
    for p, f in ORACLE_GRID:
        fld = BaseField(p, f)
        orc = oracle(fld)
        for i in range(f):
            for k in range(51):
                checked += 1
                if not np.array_equal(orc.brauer_char(sym_class(fld, i, k)), orc.sym_char(i, k)):
                    failures.append((p, f, i, k))
    elapsed = time.perf_counter() - start
    ok = record_criterion(1, "oracle equivalence", not failures, elapsed, 60,
                          f"{checked} symmetric powers, {len(failures)} mismatches")
    assert not failures, failures[:5]
    assert ok


def test_criterion_2_lemma_suite(record_criterion):
    start = time.perf_counter()
    fields = [BaseField(p, f) for p in (2, 3, 5) for f in (1, 2, 3)]
    report = sweep_lemmas(fields, max_n=30)
    elapsed = time.perf_counter() - start
    total = sum(report.checked.values())
    ok = record_criterion(2, "lemma suite", report.ok, elapsed, 120,
                          f"{total} instances, {len(report.failures)} failures")
    assert report.ok, report.failures[:5]
    assert total > 0 and set(report.checked) == {"theta_fp", "theta_fq", "hasse_fp", "hasse_fq", "dickson_fp"}
    assert ok


def test_criterion_3_parallel_domination(record_criterion):
    start = time.perf_counter()
    problems = []
    count = minimal = 0
    for p in (2, 3):
        for f in (1, 2):
            fld = BaseField(p, f)
            for e in (1, 2, 3):
                period = (p - 1) // gcd(p - 1, e)
                for w in fld.weights():
                    if norm_power_form(fld, w, e) is None:
                        continue
                    count += 1
                    cert = dominate_parallel_weight(fld, w, e)
                    res = replay_certificate(cert)
                    if not res:
                        problems.append((p, f, e, str(w), "replay", res.reason))
                        continue
                    admissible = set(brute_force_min_t(fld, w, e, t_max=200))
                    wanted = [cert.t + m * period for m in range(4)]
                    minimal += bool(admissible) and cert.t == min(admissible)
                    if any(t > 200 for t in wanted) or not admissible.issuperset(wanted):
                        problems.append((p, f, e, str(w), "brute force", wanted))
    elapsed = time.perf_counter() - start
    ok = record_criterion(3, "parallel domination", not problems, elapsed, 600,
                          f"{count} (weight, e) cases, {len(problems)} problems, certificate t minimal in {minimal}")
    assert not problems, problems[:5]
    assert ok


def test_criterion_4_exception_sharpness(record_criterion):
    start = time.perf_counter()
    cases, problems = [], []
    for p in (3, 5):
        fld = BaseField(p)
        r = 0
        while r * (p + 1) < p * p - 1:
            n = r * (p + 1)
            sn = sym_monomial(fld, [n])
            det_r = VirtualRep.det(fld, r)
            if sn[fld.weight(r, [0])] == 1:
                cases.append((p, r))
                upper = sym_monomial(fld, [n + p - 1])
                if leq(sn, upper) or not leq(sn, upper + det_r):
                    problems.append((p, r))
            r += 1
    elapsed = time.perf_counter() - start
    ok = record_criterion(4, "exception sharpness", bool(cases) and not problems, elapsed, 5,
                          f"cases (p, r) = {cases}")
    assert cases and not problems, problems
    assert ok


def test_criterion_5_ring_homomorphism(record_criterion):
    start = time.perf_counter()
    rng = random.Random(20261014)
    failures = []
    for p, f in ORACLE_GRID:
        fld = BaseField(p, f)
        orc = oracle(fld)
        ws = list(fld.weights())

        def draw():
            x = VirtualRep.zero(fld)
            for _ in range(rng.randint(1, 2)):
                x = x + rng.choice([-2, -1, 1, 2]) * VirtualRep(fld, {rng.choice(ws): 1})
            return x

        for _ in range(1000):
            x, y = draw(), draw()
            z = tensor(x, y)
            if z.dimension() != x.dimension() * y.dimension():
                failures.append((p, f, "dimension", x, y))
            elif not np.array_equal(orc.brauer_char(z), orc.multiply(orc.brauer_char(x), orc.brauer_char(y))):
                failures.append((p, f, "character", x, y))
    elapsed = time.perf_counter() - start
    ok = record_criterion(5, "ring homomorphism", not failures, elapsed, 30,
                          f"{1000 * len(ORACLE_GRID)} pairs over {len(ORACLE_GRID)} fields, {len(failures)} failures")
    assert not failures, failures[:3]
    assert ok


DELTA_TABLE = [
    (3, "1:1", 2),
    (2, "1:1", 1),
    (5, "2:1,4:1", 2),
    (2, "3:2,2:1", 1),
    (5, "1:1", 4),
    (5, "4:1", 1),
    (3, "2:1", 1),
    (7, "2:1", 3),
    (7, "3:1,2:1", 6),
    (3, "1:2,2:1", 2),
]


def test_criterion_6_delta_and_schedule(record_criterion):
    start = time.perf_counter()
    problems = []
    replayed = 0
    for p, places, expected in DELTA_TABLE:
        profile = RamificationProfile.parse(p, places, k=2)
        if delta(profile) != expected:
            problems.append((p, places, "delta", delta(profile), expected))
            continue
        sched = lift_weight_schedule(profile)
        if sched.delta != expected:
            problems.append((p, places, "schedule delta", sched.delta))
        for rows in sched.certificates.values():
            for certs in rows:
                for cert in certs:
                    replayed += 1
                    if not replay_certificate(cert):
                        problems.append((p, places, "replay", str(cert.sigma)))
    elapsed = time.perf_counter() - start
    ok = record_criterion(6, "delta table and schedules", not problems, elapsed, 60,
                          f"{len(DELTA_TABLE)} profiles, {replayed} certificates replayed")
    assert not problems, problems
    assert ok
