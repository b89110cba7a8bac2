"""Acceptance criteria, each run at its stated tolerance and time budget."""

import os
import time
from itertools import combinations

import pytest

from unitri import census as cen
from unitri.census import count, count_via_recursion, mu, sextuple, to_qminus1_basis
from unitri.ffmat import PrimeField
from unitri.oracle import (
    cache,
    character_degrees,
    check_histogram,
    conjugacy_classes,
    degree_census_oracle,
    enumerate_group,
)
from unitri.pattern import linear_character_count, pattern_P, pattern_Q, pattern_U
from unitri.qpoly import QPolynomial
from unitri.quasimonomial import (
    apply_action,
    brute_orbits,
    count_representatives,
    is_quasimonomial,
    orbit_size_formula,
    reduce,
    standard_form,
)

q = QPolynomial.x()

# every oracle run made here: (label, histogram, order, classes, p, n_full)
ORACLE_RUNS: list = []


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv(cache.ENV_VAR, raising=False)


def _oracle(pattern, p, n_full=None):
    g = enumerate_group(pattern, p)
    cl = conjugacy_classes(g)
    hist = character_degrees(g, cl)
    ORACLE_RUNS.append((f"{pattern.digest_key()} p={p}", hist, g.order, cl.count, p, n_full))
    return hist


def _census_vs_oracle(n, p):
    hist = _oracle(pattern_U(n), p, n_full=n)
    exps = hist.exponents(p)
    got = {e: exps.get(e, 0) for e in range(min(3, mu(n)) + 1)}
    want = {e: count(n, e).evaluate_int(p) for e in got}
    return got, want


@pytest.mark.criterion(1, "oracle agreement, small groups (< 10 s)")
def test_criterion_1_small_groups():
    t0 = time.perf_counter()
    results = {}
    for n, p in [(3, 2), (3, 3), (3, 5), (4, 2), (4, 3), (5, 2)]:
        got, want = _census_vs_oracle(n, p)
        assert got == want, (n, p)
        results[(n, p)] = got
    assert results[(4, 2)][1] == 6
    assert results[(4, 2)][2] == 2
    assert results[(5, 2)][2] == 18
    assert results[(5, 2)][3] == 6
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(2, "oracle agreement, U_5(3) (< 2 min)")
def test_criterion_2_u5_3():
    t0 = time.perf_counter()
    got, want = _census_vs_oracle(5, 3)
    assert got == want == {0: 81, 1: 126, 2: 120, 3: 30}
    assert time.perf_counter() - t0 < 120


@pytest.mark.criterion(2, "oracle agreement, U_6(2) (< 5 min)")
def test_criterion_2_u6_2():
    t0 = time.perf_counter()
    got, want = _census_vs_oracle(6, 2)
    assert got == want == {0: 32, 1: 56, 2: 80, 3: 60}
    assert time.perf_counter() - t0 < 300


@pytest.mark.slow
@pytest.mark.criterion("2*", "stretch, not gating: U_7(2) e=3 count 316 (< 30 min)")
@pytest.mark.skipif(not os.environ.get("UNITRI_STRETCH"), reason="set UNITRI_STRETCH=1 to run")
def test_criterion_2_stretch_u7_2():
    t0 = time.perf_counter()
    got, want = _census_vs_oracle(7, 2)
    assert got[3] == want[3] == 316
    assert got == want
    assert time.perf_counter() - t0 < 1800


@pytest.mark.criterion(3, "polynomial identities (< 5 s)")
def test_criterion_3_identities():
    t0 = time.perf_counter()
    for e, start in [(1, 5), (2, 6), (3, 8)]:
        for n in range(start, 41):
            assert count_via_recursion(n, e) == count(n, e), (n, e)
    assert tuple(sextuple(7)) == (0, 3, 6, -2, -5, 1)
    c = sextuple(7)
    general = q ** 2 * (q - 1) * (c.A * q ** 5 + c.B * q ** 4 + c.C * q ** 3 + c.D * q ** 2 + c.E * q + c.F)
    assert general == q ** 2 * (q - 1) * (3 * q ** 4 + 6 * q ** 3 - 2 * q ** 2 - 5 * q + 1) == count(7, 3)
    assert time.perf_counter() - t0 < 5


@pytest.mark.criterion(4, "orbit representatives, exhaustive s,t <= 3, p in {2,3} (< 30 s)")
def test_criterion_4_orbits():
    t0 = time.perf_counter()
    for p in (2, 3):
        f = PrimeField(p)
        for s in (1, 2, 3):
            for t in (1, 2, 3):
                orbits = brute_orbits(s, t, f)
                assert len(orbits) == count_representatives(s, t).evaluate_int(p)
                for orb in orbits:
                    qm = [x for x in orb if is_quasimonomial(x)]
                    assert len(qm) == 1
                    for x in orb:
                        r = reduce(x)
                        assert r.Q == qm[0]
                        assert r.A.is_unitriangular() and r.B.is_unitriangular()
                        assert apply_action(x, r.A, r.B) == r.Q
                        assert reduce(r.Q).Q == r.Q
                    if t <= 2:
                        assert orbit_size_formula(standard_form(qm[0]), p) == len(orb)
    assert time.perf_counter() - t0 < 30


def _all_patterns(n):
    yield "U", pattern_U(n)
    for i in range(1, n + 1):
        yield f"P{i}", pattern_P(n, i)
    for i, j in combinations(range(1, n + 1), 2):
        yield f"Q{i},{j}", pattern_Q(n, i, j)


@pytest.mark.criterion(5, "pattern-group linear character counts (< 30 s)")
def test_criterion_5_patterns():
    t0 = time.perf_counter()
    p = 2
    for n in range(1, 6):
        for label, pat in _all_patterns(n):
            hist = _oracle(pat, p, n_full=n if label == "U" else None)
            assert hist.get(1) == linear_character_count(pat).evaluate_int(p), (n, label)
    for n in range(2, 6):
        for i in range(1, n):
            assert linear_character_count(pattern_P(n, i)) == q ** (n - 1)
        assert linear_character_count(pattern_P(n, n)) == q ** (n - 2)
        for i in range(2, n - 1):
            assert linear_character_count(pattern_Q(n, i, i + 1)) == q ** (n - 1)
            for j in range(i + 2, n):
                assert linear_character_count(pattern_Q(n, i, j)) == q ** n
    assert linear_character_count(pattern_U(3)) == q ** 2
    assert linear_character_count(pattern_P(3, 3)) == q
    assert time.perf_counter() - t0 < 30


@pytest.mark.criterion(6, "integer-valuedness and (q-1)-basis nonnegativity (< 10 s)")
def test_criterion_6_integrality():
    t0 = time.perf_counter()
    for n in range(7, 10 ** 4 + 1):
        sextuple(n)
    for name, poly in cen.SEXTUPLE_POLYNOMIALS.items():
        assert poly.degree <= 3
        assert cen.is_integer_valued(poly, poly.degree, 7), name
        assert cen.is_integer_valued(poly, poly.degree, -poly.degree), name
    for n in range(1, 101):
        for e in range(4):
            b = to_qminus1_basis(count(n, e))
            assert b.nonnegative, (n, e)
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(7, "structural invariants on every oracle run")
def test_criterion_7_invariants():
    if not ORACLE_RUNS:
        for n, p in [(3, 2), (4, 3), (5, 2)]:
            _oracle(pattern_U(n), p, n_full=n)
    bad = []
    for label, hist, order, k, p, n_full in ORACLE_RUNS:
        checks = check_histogram(hist, order, k, p, n_full=n_full)
        bad += [f"{label}: {name}" for name, ok in checks.items() if not ok]
    assert not bad, bad
