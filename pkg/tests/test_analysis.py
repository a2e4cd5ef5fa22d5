import math

import pytest

from rprime.analysis import (
    DEFAULT_SLACK,
    PROBE_LABEL,
    applicable_targets,
    delta_series,
    discriminant_sweep,
    error_series,
    fit_exponent,
    target_catalog,
    target_verdicts,
    transfer_error_exponents,
)
from rprime.analytic import residue_c
from rprime.errors import InvalidCase, TooFewPoints, UsageError
from rprime.multsieve import build_table


class TestTransfer:
    def test_m2_r1(self):
        t = transfer_error_exponents(0.4, 0.2, 2, 1)
        assert t.terms == ((1.6, -0.3, 1.0), (1.6, -0.8, 0.0))
        assert t.case == "r=1, m=2"
        assert t.side_condition == "x^0.8 > D^1.4"

    def test_m1_r2(self):
        t = transfer_error_exponents(0.5, 0.0, 1, 2)
        assert t.terms == ((0.5, 0.0, 0.0), (0.75, 0.0, 0.0))
        assert t.case == "r>1, alpha != (mr-2)/(r-1)"

    def test_m3_r1(self):
        t = transfer_error_exponents(0.4, 0.2, 3, 1)
        assert t.terms == ((2.6, -0.8, 0.0), (1.6, -0.6, 0.0))
        assert t.case == "r=1, m>2"

    def test_critical_alpha(self):
        # (mr-2)/(r-1) = 1/2 at (m, r) = (1, 3)
        t = transfer_error_exponents(0.5, 0.1, 1, 3)
        assert t.case == "r>1, alpha = (mr-2)/(r-1)"
        assert t.terms[0] == (0.5, 0.1, 1.0)
        assert t.terms[1] == (0.5, pytest.approx(-0.4), 0.0)

    def test_log_factor_only_in_special_cases(self):
        for m, r in ((2, 2), (3, 1), (1, 2), (4, 3)):
            t = transfer_error_exponents(0.3, 0.1, m, r)
            assert all(term[2] == 0.0 for term in t.terms), (m, r)

    @pytest.mark.parametrize(
        "alpha,beta,m,r",
        [(2.0, 0.0, 2, 1), (0.0, 0.0, 2, 1), (-0.3, 0.0, 2, 1),
         (0.5, 0.0, 1, 1)],
    )
    def test_invalid(self, alpha, beta, m, r):
        with pytest.raises(InvalidCase):
            transfer_error_exponents(alpha, beta, m, r)


class TestCatalog:
    def setup_method(self):
        self.by_name = {t.name: t for t in target_catalog()}

    def test_uniform_pair_discrepancy(self):
        """Statement and proof display disagree for n > 2; both are kept."""
        for n in (2, 3, 5, 24):
            proof = self.by_name[f"ideal-uniform-proof-n{n}"]
            stmt = self.by_name[f"ideal-uniform-statement-n{n}"]
            assert proof.x_exp == pytest.approx(n / (n + 2))
            assert stmt.x_exp == pytest.approx(2 / (n + 2))
            assert proof.D_exp == stmt.D_exp == pytest.approx(1 / (n + 2))
            assert proof.status == "proof-display"
            assert stmt.status == "theorem"
            assert (proof.x_exp == stmt.x_exp) == (n == 2)
            assert proof.scope.side_condition == f"x^{2 * n} > D^{n + 4}"

    def test_cubic_entry(self):
        t = self.by_name["cubic-uniform"]
        assert t.x_exp == pytest.approx(43 / 96)
        assert t.D_exp == pytest.approx(1 / 3)
        assert t.status == "theorem"
        assert t.scope.n == 3
        assert t.scope.side_condition == "x^(53/96-eps) > D^(5/6)"

    def test_abelian_entries(self):
        c6 = 2388 / (70844 * 6 + 453093)
        t = self.by_name["abelian-uniform-n6"]
        assert c6 == pytest.approx(0.0027193, abs=1e-7)
        assert t.x_exp == pytest.approx(1 - 95 * c6)
        assert t.D_exp == pytest.approx(31 * c6)
        assert "abelian-uniform-n5" not in self.by_name
        assert "abelian-uniform-n95" in self.by_name
        assert "abelian-uniform-n96" not in self.by_name

    def test_conjecture_entry(self):
        t = self.by_name["ideal-square-root-conjecture"]
        assert (t.x_exp, t.D_exp, t.log_pow) == (0.5, 0.0, 0.0)
        assert t.status == "conjecture"
        assert t.scope.n == 0

    def test_fixed_field_entries(self):
        assert self.by_name["fixed-field-best-n1"].x_exp == 0.0
        t2 = self.by_name["fixed-field-best-n2"]
        assert t2.x_exp == pytest.approx(23 / 73)
        assert t2.log_pow == pytest.approx(315 / 146)
        assert self.by_name["fixed-field-best-n3"].x_exp == pytest.approx(43 / 96)
        assert self.by_name["fixed-field-best-n4"].x_exp == pytest.approx(41 / 72)
        assert self.by_name["fixed-field-best-n7"].x_exp == pytest.approx(1 - 4 / 15)
        assert self.by_name["fixed-field-best-n11"].x_exp == pytest.approx(1 - 3 / 17)
        for n in (2, 3, 4, 11):
            assert self.by_name[f"fixed-field-best-n{n}"].status == "prior-work"

    def test_tuple_prior_entries(self):
        t = self.by_name["tuple-prior-n3-m2r1"]
        alpha3 = 2 / 3 - 8 / 51
        assert t.x_exp == pytest.approx(2 - alpha3)
        assert t.log_pow == pytest.approx(2 * (10 / 17) + 1)
        assert t.scope.m_r == (2, 1)
        t = self.by_name["tuple-prior-n7-m1r2"]
        alpha7 = 2 / 7 - 3 / 98
        assert t.x_exp == pytest.approx(1 - alpha7 / 2)
        assert t.scope.m_r == (1, 2)
        t = self.by_name["tuple-prior-n12-m2r1"]
        assert t.x_exp == pytest.approx(2 - 3 / 18)


class TestFit:
    XS = [2.0 ** k for k in range(4, 16)]

    def test_exact_power_law(self):
        fit = fit_exponent([(x, 3 * x ** 0.5) for x in self.XS], envelope=True)
        assert fit.exponent == pytest.approx(0.5, abs=1e-12)
        assert fit.stderr < 1e-12
        assert fit.intercept == pytest.approx(math.log(3), abs=1e-10)

    def test_constant_series(self):
        fit = fit_exponent([(x, 7.0) for x in self.XS], envelope=False)
        assert fit.exponent == pytest.approx(0.0, abs=1e-12)

    def test_all_zero_sentinel(self):
        fit = fit_exponent([(x, 0.0) for x in self.XS], envelope=True)
        assert fit.exponent == float("-inf")

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            fit_exponent([(2.0, 1.0), (4.0, 2.0)], envelope=False)
        with pytest.raises(TooFewPoints):
            fit_exponent([(8.0, 1.0)] * 5, envelope=False)

    def test_envelope_takes_window_max(self):
        # 9 and 15 share the dyadic window [8, 16); only the 15-point
        # (larger magnitude) should survive
        pts = [(9.0, 100.0), (15.0, 1000.0), (30.0, 1.0), (70.0, 1.0),
               (130.0, 1.0)]
        fit = fit_exponent(pts, envelope=True)
        assert fit.points_used == 4
        raw = fit_exponent(pts, envelope=False)
        assert raw.points_used == 5

    def test_sign_is_dropped(self):
        fit = fit_exponent([(x, -2 * x) for x in self.XS], envelope=False)
        assert fit.exponent == pytest.approx(1.0, abs=1e-12)


class TestSeries:
    def test_error_series_rational(self, rat, tables_300):
        t = tables_300["rational"]
        res = residue_c(rat)
        pts = error_series(rat, t, res, [10], 2, 1)
        assert pts[0].V == 63
        assert pts[0].E == pytest.approx(63 - 100 / (math.pi ** 2 / 6),
                                         rel=1e-12)
        assert pts[0].E == pytest.approx(2.2072898, abs=1e-6)

    def test_error_series_rejects_rm1(self, rat, tables_300):
        with pytest.raises(UsageError):
            error_series(rat, tables_300["rational"], residue_c(rat),
                         [10], 1, 1)

    def test_delta_series_rational_vanishes(self, rat, tables_300):
        t = tables_300["rational"]
        pts = delta_series(rat, t, residue_c(rat), [1, 7, 300])
        assert [d for _, _, d in pts] == [0.0, 0.0, 0.0]
        half = delta_series(rat, t, residue_c(rat), [10.5])
        assert half[0][2] == pytest.approx(-0.5)

    def test_delta_series_gauss(self, gauss, tables_300):
        t = tables_300["quad:-1"]
        (x, I, d), = delta_series(gauss, t, residue_c(gauss), [20])
        assert (x, I) == (20.0, 17)
        assert d == pytest.approx(17 - 20 * math.pi / 4, rel=1e-12)


class TestTargetMatching:
    def test_degree_filter(self):
        names = {t.name for t, _ in applicable_targets(3, 2, 1, False)}
        assert "cubic-uniform" in names
        assert "ideal-uniform-proof-n3" in names
        assert "ideal-uniform-proof-n2" not in names
        assert "abelian-uniform-n6" not in names

    def test_abelian_guard(self):
        # degree 4 fields are not checked for abelianity, so the
        # abelian family must not appear even at a matching degree
        names = {t.name for t, _ in applicable_targets(6, 2, 1, False)}
        assert not any(n.startswith("abelian") for n in names)
        names2 = {t.name for t, _ in applicable_targets(2, 2, 1, False)}
        assert "ideal-square-root-conjecture" in names2

    def test_transferred_bound_dominates(self):
        rows = dict(
            (t.name, b) for t, b in applicable_targets(2, 2, 1, False))
        # proof-display n=2: alpha = 1/2 -> max(2 - 1/2, 2 - 1/2) = 1.5
        assert rows["ideal-uniform-proof-n2"] == pytest.approx(1.5)
        # conjecture: alpha = 1/2 under (2,1) -> 1.5 as well
        assert rows["ideal-square-root-conjecture"] == pytest.approx(1.5)

    def test_delta_mode_uses_raw_exponent(self):
        rows = dict(
            (t.name, b) for t, b in applicable_targets(2, 1, 1, True))
        assert rows["ideal-uniform-proof-n2"] == pytest.approx(0.5)
        assert rows["fixed-field-best-n2"] == pytest.approx(23 / 73)

    def test_verdict_rows(self):
        rows = target_verdicts(2, 2, 1, fitted_exponent=1.2)
        assert rows
        for row in rows:
            assert row["label"] == PROBE_LABEL
            want = "consistent" if 1.2 <= row["bound_x_exp"] + DEFAULT_SLACK \
                else "exceeds"
            assert row["verdict"] == want

    def test_verdict_exceeds(self):
        rows = target_verdicts(2, 1, 1, fitted_exponent=30.0, delta_mode=True)
        assert all(row["verdict"] == "exceeds" for row in rows)


class TestSweep:
    XS = [float(x) for x in (64, 100, 160, 256, 400, 640, 1024, 1600, 2048)]

    def test_basic(self):
        sw = discriminant_sweep([-1, -2, -3], self.XS, 2, 1)
        assert sw.label == PROBE_LABEL
        assert [row.d for row in sw.rows] == [-1, -2, -3]
        assert [row.disc_abs for row in sw.rows] == [4, 8, 3]
        assert sw.d_fit is not None
        assert sw.joint is not None
        assert sw.x_fit.envelope
        for row in sw.rows:
            assert row.max_absE > 0
            assert row.argmax_x in self.XS
            assert set(row.scaled) == {0.5, 1.0, 1.5}

    def test_d_fit_needs_three_fields(self):
        sw = discriminant_sweep([-1, -2], self.XS, 2, 1)
        assert sw.d_fit is None
        assert "3 distinct" in sw.d_fit_note

    def test_single_x_degrades(self):
        sw = discriminant_sweep([-1, -2, -3], [1000.0], 1, 2)
        assert sw.x_fit is None
        assert all(row.fit is None for row in sw.rows)
        assert sw.d_fit is not None

    def test_empty_family_rejected(self):
        with pytest.raises(UsageError):
            discriminant_sweep([], self.XS, 2, 1)

    def test_tiny_grid_rejected(self):
        with pytest.raises(UsageError):
            discriminant_sweep([-1], [1.0], 2, 1)
