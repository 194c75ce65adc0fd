import math

import numpy as np
import pytest
from scipy import integrate

from goaltime.distributions import GeneralizedBetaPrime, gb_prime_pdf, truncate
from goaltime.errors import DomainError, InvalidShapeError
from goaltime.predictive import (
    PredictionProblem,
    SufficientStat,
    log_restricted_base,
    marginal_flat,
    marginal_restricted,
    ordering_constant,
    ordering_constant_quadrature,
    predictive_pdf_from_marginal,
    predictive_summaries,
    restricted_predictive,
    unrestricted_predictive,
    weighted_beta_prime_logpdf,
)

X1_TABLE = 35.85
X2_TABLE = 39.07


class TestMarginals:
    def test_flat_values(self):
        assert marginal_flat(1.0, 1.0) == 1.0
        assert marginal_flat(5.0, 2.0) == 2.5
        assert marginal_flat(3.7, 0.4) == pytest.approx(9.25, rel=1e-14)

    def test_restricted_integer_case(self):
        assert marginal_restricted(1.0, 1.0, 1.0) == pytest.approx(2 * math.exp(-1.0), rel=1e-12)

    def test_restricted_tends_to_flat(self):
        for s1, s2 in [(2.0, 3.0), (0.7, 5.0), (4.4, 0.3)]:
            assert marginal_restricted(s1, s2, 1e9) == pytest.approx(
                marginal_flat(s1, s2), rel=1e-9
            )

    def test_restricted_against_defining_integral(self):
        # oracle: quadrature of int_0^upper (1/v) IG(s1, s2)(v) dv
        s1, s2, upper = 2.5, 3.0, 0.8

        def integrand(v):
            return (1 / v) * s2**s1 / math.gamma(s1) * v ** (-s1 - 1) * math.exp(-s2 / v)

        want, _ = integrate.quad(integrand, 0, upper, epsrel=1e-12)
        assert marginal_restricted(s1, s2, upper) == pytest.approx(want, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            marginal_flat(-1.0, 2.0)
        with pytest.raises(DomainError):
            marginal_restricted(1.0, 2.0, 0.0)


class TestOrderingConstant:
    def test_simple_point_against_quadrature(self):
        got = ordering_constant(2.0, 1.0, 2.0, 1.0)
        want = ordering_constant_quadrature(2.0, 1.0, 2.0, 1.0)
        assert got == pytest.approx(want, rel=1e-8)

    def test_data_scale_point_against_quadrature(self):
        got = ordering_constant(2.5, 40.0, 2.0, 36.0)
        want = ordering_constant_quadrature(2.5, 40.0, 2.0, 36.0)
        assert got == pytest.approx(want, rel=1e-8)

    def test_scaling_relation(self):
        # C(k1, c*k2, s1, c*s2) = c^-2 C(k1, k2, s1, s2)
        k1, k2, s1, s2 = 4.0, 70.0, 2.0, 40.0
        base = ordering_constant(k1, k2, s1, s2)
        for c in (0.1, 3.0, 10.0):
            assert ordering_constant(k1, c * k2, s1, c * s2) == pytest.approx(
                base / c**2, rel=1e-11
            )

    def test_grid_against_quadrature(self):
        for k1 in (1.5, 3.0, 5.0):
            for k2 in (5.0, 40.0, 90.0):
                for s1 in (1.0, 2.0, 4.0):
                    for s2 in (10.0, 39.0, 80.0):
                        got = ordering_constant(k1, k2, s1, s2)
                        want = ordering_constant_quadrature(k1, k2, s1, s2)
                        assert got == pytest.approx(want, rel=1e-6), (k1, k2, s1, s2)

    def test_vectorized_over_k2_s2(self):
        k2 = np.array([10.0, 40.0, 95.0])
        s2 = np.array([39.0, 20.0, 5.0])
        from goaltime.predictive import log_ordering_constant

        vec = log_ordering_constant(5.0, k2, 2.0, s2)
        scal = [math.log(ordering_constant(5.0, a, 2.0, b)) for a, b in zip(k2, s2)]
        np.testing.assert_allclose(vec, scal, rtol=1e-13)


class TestUnrestricted:
    def problem(self, window=(0.0, 60.0)):
        return PredictionProblem(
            obs_a=SufficientStat(x=X1_TABLE, r=3.0), r_prime=3.0, window=window
        )

    def test_matches_three_parameter_beta_prime(self):
        d = unrestricted_predictive(self.problem())
        model = GeneralizedBetaPrime(a=3.0, b=3.0, sigma=X1_TABLE)
        ys = np.linspace(0.5, 59.5, 40)
        np.testing.assert_allclose(d.pdf(ys), gb_prime_pdf(model, ys) / d.mass, rtol=1e-12)

    def test_marginal_ratio_form_reduces_to_beta_prime(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            r1 = rng.uniform(1.5, 6.0)
            rp = rng.uniform(0.5, 5.0)
            x1 = rng.uniform(5.0, 80.0)
            y = rng.uniform(0.1, 120.0)
            got = predictive_pdf_from_marginal(y, x1, r1, rp, marginal=marginal_flat)
            want = gb_prime_pdf(GeneralizedBetaPrime(a=rp, b=r1, sigma=x1), y)
            assert got == pytest.approx(want, rel=1e-10)

    def test_truncated_coefficient(self):
        # truncated density is coeff * y^2 / (x1 + y)^6 with coeff near 1901470
        d = unrestricted_predictive(self.problem())
        y = 23.0
        coeff = d.pdf(y) * (X1_TABLE + y) ** 6 / y**2
        assert coeff == pytest.approx(1901470.0, rel=5e-3)

    def test_mode_closed_form(self):
        d = unrestricted_predictive(self.problem())
        row = predictive_summaries(d)
        assert row.mode == pytest.approx(X1_TABLE * 2.0 / 4.0, abs=1e-3)

    def test_untruncated_mean(self):
        d = unrestricted_predictive(self.problem(window=(0.0, np.inf)))
        mean, _ = integrate.quad(lambda y: y * d.pdf(y), 0, np.inf, epsrel=1e-10, limit=300)
        assert mean == pytest.approx(X1_TABLE * 3.0 / 2.0, rel=1e-8)

    def test_rejects_small_shape(self):
        with pytest.raises(InvalidShapeError):
            SufficientStat(x=10.0, r=1.0)
        with pytest.raises(InvalidShapeError):
            predictive_pdf_from_marginal(1.0, 10.0, 1.0, 3.0)


class TestRestricted:
    def problem(self, x1=X1_TABLE, x2=X2_TABLE, r1=3.0, r2=3.0, rp=3.0, window=(0.0, 60.0)):
        return PredictionProblem(
            obs_a=SufficientStat(x=x1, r=r1),
            obs_b=SufficientStat(x=x2, r=r2),
            r_prime=rp,
            window=window,
        )

    def test_requires_rival_statistic(self):
        with pytest.raises(DomainError):
            restricted_predictive(
                PredictionProblem(obs_a=SufficientStat(x=X1_TABLE, r=3.0))
            )

    def test_normalization_over_parameter_grid(self):
        for r1 in (2.0, 3.0, 5.0):
            for r2 in (2.0, 3.0, 5.0):
                for rp in (1.0, 3.0):
                    for ratio in (0.25, 1.0, 4.0):
                        p = self.problem(x1=30.0, x2=30.0 / ratio, r1=r1, r2=r2, rp=rp)
                        d = restricted_predictive(p)
                        total, _ = integrate.quad(d.pdf, 0, 60, epsabs=0, epsrel=1e-9, limit=200)
                        assert total == pytest.approx(1.0, abs=1e-6), (r1, r2, rp, ratio)

    def test_untruncated_density_is_proper(self):
        p = self.problem(window=(0.0, np.inf))
        d = restricted_predictive(p)
        assert d.mass == pytest.approx(1.0, abs=1e-7)

    def test_weighted_beta_prime_form_agrees(self):
        ys = np.linspace(0.2, 150.0, 120)
        got = log_restricted_base(ys, X1_TABLE, X2_TABLE, 3.0, 3.0, 3.0)
        want = weighted_beta_prime_logpdf(ys, X1_TABLE, X2_TABLE, 3.0, 3.0, 3.0)
        np.testing.assert_allclose(got, want, rtol=1e-11)
        got2 = log_restricted_base(ys, 12.0, 44.0, 4.5, 2.5, 1.5)
        want2 = weighted_beta_prime_logpdf(ys, 12.0, 44.0, 4.5, 2.5, 1.5)
        np.testing.assert_allclose(got2, want2, rtol=1e-11)

    def test_quadrature_backend_agrees_with_closed_form(self):
        p = self.problem()
        d_closed = restricted_predictive(p, c_method="closed")
        d_quad = restricted_predictive(p, c_method="quadrature")
        ys = np.linspace(0.1, 59.9, 600)
        np.testing.assert_allclose(d_quad.pdf(ys), d_closed.pdf(ys), rtol=1e-6)

    def test_brute_force_posterior_oracle(self):
        # full 2-D integration of prior x likelihood over {lam2 <= lam1}
        def gam(x, r, lam):
            return x ** (r - 1) * math.exp(-x / lam) / (math.gamma(r) * lam**r)

        def brute(y, x1, x2, r1, r2, rp):
            def num(l1):
                inner, _ = integrate.quad(lambda l2: gam(x2, r2, l2) / l2, 0, l1, epsrel=1e-10)
                return gam(y, rp, l1) * gam(x1, r1, l1) / l1 * inner

            def den(l1):
                inner, _ = integrate.quad(lambda l2: gam(x2, r2, l2) / l2, 0, l1, epsrel=1e-10)
                return gam(x1, r1, l1) / l1 * inner

            a, _ = integrate.quad(num, 0, np.inf, epsrel=1e-9, limit=200)
            b, _ = integrate.quad(den, 0, np.inf, epsrel=1e-9, limit=200)
            return a / b

        for (x1, x2, y) in [(X1_TABLE, X2_TABLE, 20.0), (10.0, 40.0, 5.0), (40.0, 10.0, 45.0)]:
            got = math.exp(log_restricted_base(y, x1, x2, 3.0, 3.0, 3.0))
            assert got == pytest.approx(brute(y, x1, x2, 3, 3, 3), rel=1e-8)

    def test_vanishing_rival_statistic_limit(self):
        # x2 -> 0 removes the information in the ordering: q1 -> q0
        p1 = self.problem(x2=X1_TABLE * 1e-3)
        d1 = restricted_predictive(p1)
        d0 = unrestricted_predictive(
            PredictionProblem(obs_a=p1.obs_a, r_prime=3.0, window=p1.window)
        )
        ys = np.linspace(0.05, 59.95, 600)
        assert np.max(np.abs(d1.pdf(ys) - d0.pdf(ys))) < 1e-3

    def test_scale_equivariance(self):
        ys = np.linspace(0.5, 55.0, 25)
        base = np.exp(log_restricted_base(ys, X1_TABLE, X2_TABLE, 3.0, 3.0, 3.0))
        base0 = gb_prime_pdf(GeneralizedBetaPrime(3.0, 3.0, sigma=X1_TABLE), ys)
        for c in (0.1, 10.0):
            scaled = np.exp(log_restricted_base(c * ys, c * X1_TABLE, c * X2_TABLE, 3.0, 3.0, 3.0))
            np.testing.assert_allclose(scaled, base / c, rtol=1e-10)
            scaled0 = gb_prime_pdf(GeneralizedBetaPrime(3.0, 3.0, sigma=c * X1_TABLE), c * ys)
            np.testing.assert_allclose(scaled0, base0 / c, rtol=1e-12)

    def test_rejects_small_shapes(self):
        with pytest.raises(InvalidShapeError):
            log_restricted_base(1.0, 10.0, 10.0, 1.0 + 1e-12, 3.0, 3.0)
        with pytest.raises(InvalidShapeError):
            log_restricted_base(1.0, 10.0, 10.0, 3.0, 1.0, 3.0)


class TestSummaries:
    def test_table_row_unrestricted(self):
        p = PredictionProblem(obs_a=SufficientStat(x=X1_TABLE, r=3.0), r_prime=3.0)
        row = predictive_summaries(unrestricted_predictive(p))
        assert row.mode == pytest.approx(17.92, abs=0.05)
        assert row.mean == pytest.approx(28.35, abs=0.1)
        assert row.p20 == pytest.approx(14.38, abs=0.1)
        assert row.p50 == pytest.approx(26.62, abs=0.1)
        assert row.p90 == pytest.approx(50.3, abs=0.1)

    def test_table_row_restricted_raw_rival_mean(self):
        p = PredictionProblem(
            obs_a=SufficientStat(x=X1_TABLE, r=3.0),
            obs_b=SufficientStat(x=X2_TABLE, r=3.0),
            r_prime=3.0,
        )
        row = predictive_summaries(restricted_predictive(p))
        for got, want in zip(row.as_tuple(), (28.13, 33.12, 19.06, 32.82, 53.48)):
            assert got == pytest.approx(want, abs=1.5)

    def test_monotone_decreasing_for_unit_future_shape(self):
        p = PredictionProblem(obs_a=SufficientStat(x=X1_TABLE, r=3.0), r_prime=1.0)
        d = unrestricted_predictive(p)
        ys = np.linspace(0.01, 59.9, 300)
        assert np.all(np.diff(d.pdf(ys)) < 0)
        assert predictive_summaries(d).mode == pytest.approx(0.0, abs=1e-3)
