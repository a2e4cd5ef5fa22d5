import math

import pytest

from rprime.analytic import (
    REGRESSION_MIN_N,
    class_number_quadratic,
    dirichlet_L1,
    fundamental_unit_regulator,
    is_fundamental_discriminant,
    main_term,
    residue_c,
    zeta_K_real,
    zeta_K_value,
)
from rprime.errors import (
    InsufficientTable,
    NotFundamental,
    SNotGreaterThanOne,
    UsageError,
)
from rprime.multsieve import build_table

ZETA_GAUSS_2 = 1.5067030099229854  # zeta(2) * Catalan

# class numbers from standard tables
H_NEG = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -20: 2, -23: 3,
         -24: 2, -47: 5, -71: 7, -84: 4, -120: 4, -163: 1, -199: 9}
H_POS = {5: 1, 8: 1, 12: 1, 13: 1, 40: 2, 60: 2, 85: 2, 104: 2, 120: 2,
         136: 2, 140: 2, 156: 2, 184: 1}

# R = log of the fundamental unit
REGULATORS = {
    2: math.log(1 + math.sqrt(2)),
    3: math.log(2 + math.sqrt(3)),
    5: math.log((1 + math.sqrt(5)) / 2),
    13: math.log((3 + math.sqrt(13)) / 2),
    29: math.log((5 + math.sqrt(29)) / 2),
    61: math.log((39 + 5 * math.sqrt(61)) / 2),
    94: math.log(2143295 + 221064 * math.sqrt(94)),
}


def test_fundamental_discriminant_classifier():
    yes = [-3, -4, -7, -8, -11, -15, -19, -20, 5, 8, 12, 13, 17, 21, 24]
    no = [0, 1, -1, -2, -5, -9, -12, -16, 2, 3, 4, 6, 7, 9, 25, 100]
    for D in yes:
        assert is_fundamental_discriminant(D), D
    for D in no:
        assert not is_fundamental_discriminant(D), D


def test_fundamental_discriminant_census():
    fund = [D for D in range(-199, 200) if is_fundamental_discriminant(D)]
    assert len(fund) == 122
    assert sum(1 for D in fund if D > 0) == 60


@pytest.mark.parametrize("D,h", sorted(H_NEG.items()))
def test_class_number_imaginary(D, h):
    assert class_number_quadratic(D) == h


@pytest.mark.parametrize("D,h", sorted(H_POS.items()))
def test_class_number_real(D, h):
    assert class_number_quadratic(D) == h


def test_class_number_rejects_nonfundamental():
    for D in (-5, 100, -9, 0):
        with pytest.raises(NotFundamental):
            class_number_quadratic(D)


@pytest.mark.parametrize("d,R", sorted(REGULATORS.items()))
def test_regulators(d, R):
    assert fundamental_unit_regulator(d) == pytest.approx(R, rel=1e-12)


def test_regulator_rejects_bad_d():
    for d in (12, 1, 0, -2, 50):
        with pytest.raises(UsageError):
            fundamental_unit_regulator(d)


def test_dirichlet_L1_closed_forms():
    assert dirichlet_L1(-4) == pytest.approx(math.pi / 4, rel=1e-12)
    assert dirichlet_L1(-3) == pytest.approx(math.pi / (3 * math.sqrt(3)),
                                             rel=1e-12)
    assert dirichlet_L1(8) == pytest.approx(
        2 * math.log(1 + math.sqrt(2)) / math.sqrt(8), rel=1e-12)
    assert dirichlet_L1(5) == pytest.approx(
        2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5), rel=1e-12)
    with pytest.raises(NotFundamental):
        dirichlet_L1(-5)


def test_residue_rational(rat):
    res = residue_c(rat)
    assert res.c == 1.0
    assert res.method == "exact-rational"
    assert res.uncertainty == 0.0


def test_residue_gauss(gauss):
    res = residue_c(gauss)
    assert res.c == pytest.approx(math.pi / 4, rel=1e-12)
    assert res.method == "exact-quadratic"
    assert (res.h, res.w) == (1, 4)


def test_residue_qm5(qm5):
    res = residue_c(qm5)
    assert res.c == pytest.approx(math.pi / math.sqrt(5), rel=1e-12)
    assert res.h == 2


def test_residue_real_quadratic(real2):
    res = residue_c(real2)
    want = 4 * math.log(1 + math.sqrt(2)) / (2 * math.sqrt(8))
    assert res.c == pytest.approx(want, rel=1e-12)
    assert res.w == 2


def test_residue_regression_path(cubic):
    t = build_table(cubic, REGRESSION_MIN_N)
    res = residue_c(cubic, t)
    assert res.method == "regression-estimate"
    assert res.uncertainty > 0
    # truth from the class number formula: 2 pi R / (2 sqrt 23)
    truth = 0.3684933578
    assert abs(res.c - truth) / truth < 0.01


def test_residue_regression_needs_table(cubic):
    with pytest.raises(InsufficientTable):
        residue_c(cubic)
    with pytest.raises(InsufficientTable):
        residue_c(cubic, build_table(cubic, 10 ** 4))


def test_zeta_euler_product_brackets(rat, gauss):
    v, tb = zeta_K_real(rat, 2.0, 10 ** 4)
    assert abs(v - math.pi ** 2 / 6) <= tb
    v, tb = zeta_K_real(gauss, 2.0, 10 ** 4)
    assert abs(v - ZETA_GAUSS_2) <= tb
    v3, tb3 = zeta_K_real(gauss, 3.0, 10 ** 4)
    assert tb3 < tb


def test_zeta_guards(rat):
    with pytest.raises(SNotGreaterThanOne):
        zeta_K_real(rat, 1.0, 10 ** 4)
    with pytest.raises(SNotGreaterThanOne):
        zeta_K_real(rat, 0.5, 10 ** 4)
    with pytest.raises(UsageError):
        zeta_K_real(rat, 2.0, 50)


def test_zeta_exact_values(rat, gauss, cubic):
    v, tb = zeta_K_value(rat, 2.0)
    assert v == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert tb == 0.0
    v, tb = zeta_K_value(gauss, 2.0)
    assert v == pytest.approx(ZETA_GAUSS_2, rel=1e-14)
    assert tb == 0.0
    v, tb = zeta_K_value(cubic, 2.0)
    assert tb > 0
    assert v == pytest.approx(1.11000099, abs=2 * tb + 1e-8)


def test_main_term_values(rat, gauss):
    # the quadratic main term at x=10, (m,r)=(1,2): c * x / zeta_K(2)
    got = main_term(gauss, 10, 1, 2, residue_c(gauss))
    assert got == pytest.approx((math.pi / 4) * 10 / ZETA_GAUSS_2, rel=1e-12)
    assert got == pytest.approx(5.2126939, abs=1e-6)
    got = main_term(rat, 10, 2, 1, residue_c(rat))
    assert got == pytest.approx(100 / (math.pi ** 2 / 6), rel=1e-12)
    assert got == pytest.approx(60.7927102, abs=1e-6)


def test_main_term_guards(rat):
    with pytest.raises(UsageError):
        main_term(rat, 10, 1, 1, residue_c(rat))


def test_class_number_times_regulator_identity():
    """sqrt(D) L(1, chi) / 2 = h R for real fundamental D."""
    for d, D in ((2, 8), (3, 12), (10, 40), (29, 29)):
        lhs = math.sqrt(D) * dirichlet_L1(D) / 2
        want_h = {8: 1, 12: 1, 40: 2, 29: 1}[D]
        rhs = want_h * fundamental_unit_regulator(d)
        assert lhs == pytest.approx(rhs, rel=1e-9)
