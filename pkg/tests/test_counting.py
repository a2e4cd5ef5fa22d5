import functools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rprime.counting import (
    ORACLE_BOUND,
    brute_force_rprime,
    brute_force_rprime_series,
    count_rprime,
    enumerate_ideals,
    ideal_count,
)
from rprime.errors import OracleBoundExceeded, OutOfRange, UsageError
from rprime.multsieve import build_table

# V_m^r(100, K) for the five standing fields, cross-checked against the
# exhaustive enumeration oracle
V_AT_100 = {
    "rational": {(1, 2): 61, (2, 1): 6087, (2, 2): 9239, (3, 1): 832693},
    "quad:-1": {(1, 2): 54, (2, 1): 4073, (2, 2): 5824, (3, 1): 419581},
    "quad:-5": {(1, 2): 72, (2, 1): 10317, (2, 2): 17902, (3, 1): 2159821},
    "quad:2": {(1, 2): 44, (2, 1): 2869, (2, 2): 3960, (3, 1): 233659},
    "poly:-1,-1,0,1": {(1, 2): 32, (2, 1): 1093, (2, 2): 1222, (3, 1): 42193},
}

GAUSS_NORMS_20 = [1, 2, 4, 5, 5, 8, 9, 10, 10, 13, 13, 16, 17, 17, 18, 20, 20]


def test_ideal_count_rational(rat, tables_300):
    t = tables_300["rational"]
    for x in (1, 10, 99.7, 300):
        assert ideal_count(rat, t, x) == int(x)


def test_ideal_count_gauss(gauss, tables_300):
    t = tables_300["quad:-1"]
    assert ideal_count(gauss, t, 10) == 9
    assert ideal_count(gauss, t, 20) == 17
    assert ideal_count(gauss, t, 2.9) == 2


def test_ideal_count_cubic(cubic, tables_300):
    assert ideal_count(cubic, tables_300["poly:-1,-1,0,1"], 30) == 12


def test_ideal_count_out_of_range(rat, tables_300):
    t = tables_300["rational"]
    with pytest.raises(OutOfRange):
        ideal_count(rat, t, 0.5)
    with pytest.raises(OutOfRange):
        ideal_count(rat, t, 301)


def test_count_rprime_spec_values(rat, gauss, tables_300):
    tq = tables_300["rational"]
    tg = tables_300["quad:-1"]
    assert count_rprime(rat, tq, 10, 2, 1) == 63
    assert count_rprime(rat, tq, 10, 1, 2) == 7
    assert count_rprime(gauss, tg, 10, 1, 2) == 7


def test_count_rprime_frozen_table(five_fields, tables_300):
    for K in five_fields:
        t = tables_300[K.spec_string()]
        for (m, r), want in V_AT_100[K.spec_string()].items():
            assert count_rprime(K, t, 100, m, r) == want


def test_v11_is_one(five_fields, tables_300):
    for K in five_fields:
        t = tables_300[K.spec_string()]
        for x in (1, 2, 17, 100.5, 300):
            assert count_rprime(K, t, x, 1, 1) == 1


def test_count_rprime_guards(rat, tables_300):
    t = tables_300["rational"]
    with pytest.raises(UsageError):
        count_rprime(rat, t, 10, 0, 1)
    with pytest.raises(UsageError):
        count_rprime(rat, t, 10, 1, 0)
    with pytest.raises(OutOfRange):
        count_rprime(rat, t, 0.2, 2, 1)


def test_count_rprime_floor_invariance(gauss, tables_300):
    """Counts only change at integers, so x and floor(x) agree."""
    t = tables_300["quad:-1"]
    for x in (7.5, 99.99, 250.5):
        assert count_rprime(gauss, t, x, 2, 1) == \
            count_rprime(gauss, t, int(x), 2, 1)


def test_enumerate_ideals_gauss(gauss):
    handles = enumerate_ideals(gauss, 20)
    assert sorted(h.norm for h in handles) == GAUSS_NORMS_20


def test_enumerate_ideals_matches_table(qm5, tables_300):
    t = tables_300["quad:-5"]
    handles = enumerate_ideals(qm5, 150)
    counts = np.bincount([h.norm for h in handles], minlength=151)
    assert np.array_equal(counts[1:151], t.a[1:151])


def test_enumerate_ideals_bound():
    from rprime.numberfield import make_rational

    with pytest.raises(OracleBoundExceeded):
        enumerate_ideals(make_rational(), ORACLE_BOUND + 1)


def test_oracle_equivalence_small(five_fields, tables_300):
    for K in five_fields:
        t = tables_300[K.spec_string()]
        for m, r in ((1, 2), (2, 1), (2, 2)):
            series = brute_force_rprime_series(K, 60, m, r)
            for x in range(1, 61):
                assert count_rprime(K, t, x, m, r) == int(series[x]), (
                    K.spec_string(), m, r, x)


def test_brute_force_single_point(gauss):
    assert brute_force_rprime(gauss, 10, 1, 2) == 7
    assert brute_force_rprime(gauss, 10.9, 1, 2) == 7


@functools.lru_cache(maxsize=1)
def _gauss_setup():
    from rprime.numberfield import make_quadratic

    K = make_quadratic(-1)
    return K, build_table(K, 300)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 295), st.integers(1, 3), st.integers(1, 2))
def test_count_monotone_in_x(x, m, r):
    K, t = _gauss_setup()
    lo = count_rprime(K, t, x, m, r)
    hi = count_rprime(K, t, x + 5, m, r)
    assert 0 <= lo <= hi


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 300), st.integers(1, 3))
def test_count_bounded_by_tuples(x, m):
    """V_m^r counts a subset of the m-fold ideal tuples with norm <= x."""
    K, t = _gauss_setup()
    total = int(t.A[x]) ** m
    assert count_rprime(K, t, x, m, 2) <= total
