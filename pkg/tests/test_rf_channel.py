import math

import numpy as np
import pytest
from scipy import integrate, stats

import oracles
from rfvlc.rf_channel import (
    RfParams,
    mrc_snr_cdf,
    mrc_snr_pdf,
    rf_avg_ber,
    rician_snr_pdf,
    sample_mrc_snr,
)
GRID = [
    (0.0, 1, 1.0),
    (0.0, 2, 0.5),
    (1.0, 1, 1.0),
    (1.0, 2, 4.0),
    (3.162, 2, 5.0),
    (3.162, 4, 10.0),
    (5.0, 3, 0.2),
    (10.0, 2, 100.0),
]


class TestRfParams:
    def test_accepts_valid(self):
        p = RfParams(k_factor=2.0, branches=3, avg_snr=1.5)
        assert p.branches == 3

    @pytest.mark.parametrize(
        "kw",
        [
            dict(k_factor=-0.1, branches=1, avg_snr=1.0),
            dict(k_factor=math.nan, branches=1, avg_snr=1.0),
            dict(k_factor=math.inf, branches=1, avg_snr=1.0),
            dict(k_factor=1.0, branches=0, avg_snr=1.0),
            dict(k_factor=1.0, branches=2.5, avg_snr=1.0),
            dict(k_factor=1.0, branches=1, avg_snr=0.0),
            dict(k_factor=1.0, branches=1, avg_snr=-2.0),
            dict(k_factor=1.0, branches=1, avg_snr=math.nan),
        ],
    )
    def test_rejects_invalid(self, kw):
        with pytest.raises(ValueError):
            RfParams(**kw)


class TestRicianPdf:
    def test_spot_value(self):
        # 2 e^{-3} I_0(2 sqrt 2), frozen via mpmath
        got = rician_snr_pdf(1.0, RfParams(k_factor=1.0, branches=1, avg_snr=1.0))
        assert got == pytest.approx(0.4234241679238870, rel=1e-13)

    def test_no_los_is_exponential(self):
        p = RfParams(k_factor=0.0, branches=1, avg_snr=2.5)
        g = np.linspace(0.0, 20.0, 41)
        np.testing.assert_allclose(rician_snr_pdf(g, p), np.exp(-g / 2.5) / 2.5, rtol=1e-14)

    @pytest.mark.parametrize("k,mu", [(0.0, 1.0), (1.0, 0.5), (3.162, 5.0), (15.0, 2.0)])
    def test_normalizes(self, k, mu):
        p = RfParams(k_factor=k, branches=1, avg_snr=mu)
        val, err = integrate.quad(lambda g: rician_snr_pdf(g, p), 0.0, np.inf, limit=300)
        assert val == pytest.approx(1.0, rel=1e-9)

    def test_single_branch_equals_combined(self):
        g = np.linspace(0.0, 12.0, 25)
        for k, mu in [(0.0, 1.0), (2.0, 3.0), (7.0, 0.4)]:
            p = RfParams(k_factor=k, branches=1, avg_snr=mu)
            np.testing.assert_allclose(rician_snr_pdf(g, p), mrc_snr_pdf(g, p), rtol=1e-13)

    def test_rejects_negative_snr(self):
        p = RfParams(k_factor=1.0, branches=1, avg_snr=1.0)
        with pytest.raises(ValueError):
            rician_snr_pdf(-0.5, p)


class TestMrcPdf:
    @pytest.mark.parametrize("k,m,mu", GRID)
    def test_matches_ncx2(self, k, m, mu):
        p = RfParams(k_factor=k, branches=m, avg_snr=mu)
        g = np.linspace(1e-6, 12.0 * mu, 60)
        want = oracles.mrc_pdf_ref(g, k, m, mu)
        got = mrc_snr_pdf(g, p)
        np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-300)

    def test_vanishing_los_matches_gamma_limit(self):
        # K = 1e-9 with two branches at unit mean pins the gamma fallback
        p = RfParams(k_factor=1e-9, branches=2, avg_snr=1.0)
        assert mrc_snr_pdf(1.0, p) == pytest.approx(math.exp(-1.0), rel=1e-7)

    def test_value_at_origin(self):
        assert mrc_snr_pdf(0.0, RfParams(k_factor=2.0, branches=1, avg_snr=1.0)) == pytest.approx(
            3.0 * math.exp(-2.0), rel=1e-13
        )
        assert mrc_snr_pdf(0.0, RfParams(k_factor=2.0, branches=3, avg_snr=1.0)) == 0.0

    @pytest.mark.parametrize("k,m,mu", [(0.0, 2, 1.0), (1.0, 3, 2.0), (3.162, 4, 5.0)])
    def test_normalizes(self, k, m, mu):
        p = RfParams(k_factor=k, branches=m, avg_snr=mu)
        val, err = integrate.quad(lambda g: mrc_snr_pdf(g, p), 0.0, np.inf, limit=300)
        assert val == pytest.approx(1.0, rel=1e-9)

    def test_mean_is_branches_times_avg(self):
        p = RfParams(k_factor=2.0, branches=3, avg_snr=1.5)
        val, err = integrate.quad(lambda g: g * mrc_snr_pdf(g, p), 0.0, np.inf, limit=300)
        assert val == pytest.approx(3 * 1.5, rel=1e-9)


class TestMrcCdf:
    @pytest.mark.parametrize("k,m,mu", GRID)
    def test_matches_ncx2(self, k, m, mu):
        p = RfParams(k_factor=k, branches=m, avg_snr=mu)
        g = np.geomspace(1e-3 * mu, 20.0 * mu, 50)
        want = oracles.mrc_cdf_ref(g, k, m, mu)
        got = mrc_snr_cdf(g, p)
        np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-300)

    def test_deep_left_tail_keeps_relative_accuracy(self):
        p = RfParams(k_factor=3.162, branches=4, avg_snr=10.0)
        got = mrc_snr_cdf(0.1, p)
        want = oracles.mrc_cdf_ref(0.1, 3.162, 4, 10.0)
        assert want < 1e-10  # genuinely deep tail
        assert got == pytest.approx(want, rel=1e-9)

    def test_at_zero(self):
        p = RfParams(k_factor=1.0, branches=2, avg_snr=1.0)
        assert mrc_snr_cdf(0.0, p) == 0.0
        out = mrc_snr_cdf(np.array([0.0, 1.0]), p)
        assert out[0] == 0.0 and 0.0 < out[1] < 1.0
        with pytest.raises(ValueError):
            mrc_snr_cdf(-1.0, p)

    def test_spot_value(self):
        # frozen from scipy.stats.ncx2.cdf(4/2 * 1, 4, 4) with scale 4/(2*2)
        p = RfParams(k_factor=1.0, branches=2, avg_snr=4.0)
        assert mrc_snr_cdf(1.0, p) == pytest.approx(0.01660859161858006, rel=1e-11)

    def test_matches_pdf_integration(self):
        # the distribution function is the integral of the density
        p = RfParams(k_factor=3.162, branches=2, avg_snr=5.0)
        grid = np.linspace(0.0, 25.0, 26)
        acc = 0.0
        for lo, hi in zip(grid[:-1], grid[1:]):
            piece, _ = integrate.quad(lambda g: mrc_snr_pdf(g, p), lo, hi, epsabs=1e-14, epsrel=1e-12)
            acc += piece
            assert mrc_snr_cdf(hi, p) == pytest.approx(acc, abs=1e-10)

    def test_derivative_matches_pdf(self):
        p = RfParams(k_factor=2.0, branches=3, avg_snr=2.0)
        h = 1e-5
        for g in [0.5, 2.0, 6.0, 12.0]:
            num = (mrc_snr_cdf(g + h, p) - mrc_snr_cdf(g - h, p)) / (2 * h)
            assert num == pytest.approx(mrc_snr_pdf(g, p), rel=1e-6)

    def test_monotone_nondecreasing(self):
        p = RfParams(k_factor=4.0, branches=2, avg_snr=3.0)
        f = mrc_snr_cdf(np.linspace(0.0, 40.0, 200), p)
        assert np.all(np.diff(f) >= 0.0)
        assert f[-1] == pytest.approx(1.0, abs=1e-12)

    def test_equals_marcum_complement(self):
        from rfvlc.specfun import marcum_q

        p = RfParams(k_factor=2.0, branches=3, avg_snr=2.0)
        for g in [0.1, 1.0, 5.0, 15.0]:
            a = math.sqrt(2.0 * p.k_factor * p.branches)
            b = math.sqrt(2.0 * (p.k_factor + 1.0) * g / p.avg_snr)
            # the complement route carries the series' 1e-10 absolute budget
            assert mrc_snr_cdf(g, p) == pytest.approx(1.0 - marcum_q(p.branches, a, b), abs=2e-10)


class TestSampling:
    def test_reproducible(self):
        p = RfParams(k_factor=1.0, branches=2, avg_snr=3.0)
        a = sample_mrc_snr(p, np.random.default_rng(7), size=5)
        b = sample_mrc_snr(p, np.random.default_rng(7), size=5)
        np.testing.assert_array_equal(a, b)

    def test_scalar_and_shape(self):
        p = RfParams(k_factor=1.0, branches=2, avg_snr=3.0)
        assert np.shape(sample_mrc_snr(p, np.random.default_rng(0))) == ()
        assert sample_mrc_snr(p, np.random.default_rng(0), size=(3, 4)).shape == (3, 4)

    @pytest.mark.parametrize("k,m,mu", [(0.0, 1, 1.0), (1.0, 2, 4.0), (3.162, 4, 2.0)])
    def test_distribution_ks(self, k, m, mu):
        p = RfParams(k_factor=k, branches=m, avg_snr=mu)
        draws = sample_mrc_snr(p, np.random.default_rng(1234), size=200_000)
        stat = stats.kstest(draws, lambda x: oracles.mrc_cdf_ref(x, k, m, mu)).statistic
        assert stat < 0.005  # ~4.4x the 1/sqrt(n) scale at n=2e5

    def test_distribution_ks_million(self):
        # reference configuration at a million draws, tight KS bound
        p = RfParams(k_factor=3.162, branches=2, avg_snr=1.0)
        draws = sample_mrc_snr(p, np.random.default_rng(20260816), size=1_000_000)
        stat = stats.kstest(draws, lambda x: oracles.mrc_cdf_ref(x, 3.162, 2, 1.0)).statistic
        assert stat < 0.002  # alpha ~ 1e-3 critical value at n=1e6

    def test_mean(self):
        p = RfParams(k_factor=2.0, branches=3, avg_snr=1.5)
        draws = sample_mrc_snr(p, np.random.default_rng(99), size=400_000)
        assert draws.mean() == pytest.approx(3 * 1.5, rel=5e-3)
        assert draws.min() > 0.0


class TestAvgBer:
    def test_spot_value(self):
        # frozen from quadrature against the ncx2 density (epsabs 1e-300)
        p = RfParams(k_factor=3.162, branches=2, avg_snr=5.0)
        assert rf_avg_ber(p) == pytest.approx(0.0010730749659135978, rel=1e-10)

    def test_rayleigh_closed_form(self):
        for mu in [0.1, 1.0, 10.0, 1000.0]:
            p = RfParams(k_factor=0.0, branches=1, avg_snr=mu)
            assert rf_avg_ber(p) == pytest.approx(oracles.rayleigh_ber(mu), rel=1e-12)

    @pytest.mark.parametrize("k,m,mu", GRID)
    def test_matches_quadrature(self, k, m, mu):
        p = RfParams(k_factor=k, branches=m, avg_snr=mu)
        want = oracles.rf_ber_quad(k, m, mu)
        assert rf_avg_ber(p) == pytest.approx(want, rel=1e-8)

    def test_extreme_diversity_stays_finite(self):
        # forces series indices past the Gamma overflow point of naive forms
        p = RfParams(k_factor=10.0, branches=2, avg_snr=100.0)
        val = rf_avg_ber(p)
        assert 0.0 < val < 1e-9
        assert val == pytest.approx(oracles.rf_ber_quad(10.0, 2, 100.0), rel=1e-8)

    def test_matches_meijer_term_route(self):
        # same series with each term routed through the Meijer-G reduction
        from rfvlc.specfun import meijer_g_2122, poisson_weighted_sum

        for k, m, mu in [(1.0, 2, 4.0), (0.5, 1, 1.0), (2.0, 3, 10.0)]:
            p = RfParams(k_factor=k, branches=m, avg_snr=mu)
            z = mu / (k + 1.0)

            def term(j):
                return meijer_g_2122(1 - (m + j), z) / (math.sqrt(math.pi) * math.gamma(m + j))

            want = 0.5 * poisson_weighted_sum(k * m, term)
            assert rf_avg_ber(p) == pytest.approx(want, rel=1e-10)

    def test_vanishing_snr_limit(self):
        # series truncation budget is 1e-10 relative on a value of 1/2
        p = RfParams(k_factor=2.0, branches=2, avg_snr=1e-300)
        assert rf_avg_ber(p) == pytest.approx(0.5, abs=1e-10)

    def test_monotone_in_snr_and_branches(self):
        vals = [rf_avg_ber(RfParams(k_factor=1.0, branches=2, avg_snr=mu)) for mu in np.geomspace(0.1, 100, 12)]
        assert all(x > y for x, y in zip(vals, vals[1:]))
        by_m = [rf_avg_ber(RfParams(k_factor=1.0, branches=m, avg_snr=2.0)) for m in [1, 2, 3, 4]]
        assert all(x > y for x, y in zip(by_m, by_m[1:]))
