import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindley.bayes import (
    BayesConfig,
    bayes_factor,
    likelihood_h0,
    log_bayes_factor,
    log_marginal_slab,
    marginal_slab,
    marginal_slab_quadrature,
    posterior_h0,
)
from lindley.freq import SampleSummary
from lindley.numerics import DomainError, LogValue, normal_pdf

from . import oracles

COIN_N = 104_490_000


def at_t(t, n, sigma=1.0, theta0=0.0):
    return SampleSummary(n, theta0 + t * sigma / math.sqrt(n), sigma)


class TestMarginalSlab:
    def test_centered(self):
        m = marginal_slab(SampleSummary(1, 0.0, 1.0), BayesConfig(0.0, prior_sd=1.0))
        assert m == pytest.approx(normal_pdf(0, 0, math.sqrt(2)), rel=1e-15)
        assert m == pytest.approx(0.2820948, abs=1e-7)

    def test_coin_matches_quadrature(self):
        s = SampleSummary(COIN_N, 0.5001768, 0.5)
        c = BayesConfig(0.5, prior_sd=0.5)
        assert marginal_slab_quadrature(s, c) == pytest.approx(marginal_slab(s, c), rel=1e-8)

    def test_random_grid_matches_quadrature(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            n = int(10 ** rng.uniform(0, 9))
            sigma = float(rng.uniform(0.1, 3))
            s = SampleSummary(n, float(rng.normal(0, 3 * sigma / math.sqrt(n))), sigma)
            theta0 = s.mean - float(rng.normal(0, 3)) * s.std_error
            c = BayesConfig(theta0, prior_sd=float(sigma * rng.uniform(0.3, 6)))
            assert marginal_slab_quadrature(s, c) == pytest.approx(marginal_slab(s, c), rel=1e-8)

    def test_custom_prior_density(self):
        # a uniform slab on [-1, 1]: m = (Phi((1-x)/se) - Phi((-1-x)/se)) / 2
        s = SampleSummary(400, 0.3, 1.0)
        got = marginal_slab_quadrature(
            s, BayesConfig(0.0, prior_sd=1.0), prior_pdf=lambda th: 0.5 if -1 <= th <= 1 else 0.0
        )
        se = s.std_error
        ref = 0.5 * (oracles.phi((1 - 0.3) / se) - oracles.phi((-1 - 0.3) / se))
        assert got == pytest.approx(ref, rel=1e-8)


class TestBayesFactor:
    @pytest.mark.parametrize("n", [1, 99, 10_000, 10**9])
    def test_zero_t(self, n):
        assert bayes_factor(at_t(0.0, n), BayesConfig(0.0)) == pytest.approx(math.sqrt(1 + n), rel=1e-12)

    def test_coin_paradox_instance(self):
        s = at_t(3.614, COIN_N, sigma=0.5, theta0=0.5)
        b = bayes_factor(s, BayesConfig(0.5))
        assert b == pytest.approx(14.9, abs=0.2)
        assert math.log(b) == pytest.approx(float(oracles.log_bf_sigma1_eq_sigma(3.614, COIN_N)), abs=1e-8)
        quad = likelihood_h0(s, BayesConfig(0.5)).value / marginal_slab_quadrature(s, BayesConfig(0.5))
        assert b == pytest.approx(quad, rel=1e-8)

    def test_crossover_at_196(self):
        assert bayes_factor(at_t(1.96, 42), BayesConfig(0.0)) > 1
        assert bayes_factor(at_t(1.96, 41), BayesConfig(0.0)) < 1

    def test_crossover_brute_force(self):
        # smallest n on 1..100 with B > 1 at t = 1.96, scanned with the oracle formula
        first = next(n for n in range(1, 101) if oracles.log_bf_sigma1_eq_sigma(1.96, n) > 0)
        assert first == 42

    @pytest.mark.parametrize("n", [10, 1000, 10**6, 10**9])
    @pytest.mark.parametrize("t", [0.0, 1.0, 3.0, 8.0])
    @pytest.mark.parametrize("ratio", [0.5, 1.0, 5.0])
    def test_closed_form_vs_density_ratio(self, n, t, ratio):
        s = at_t(t, n, sigma=2.0, theta0=0.3)
        c = BayesConfig(0.3, prior_sd=2.0 * ratio)
        direct = likelihood_h0(s, c) / LogValue(log_marginal_slab(s, c))
        assert math.exp(log_bayes_factor(s, c)) == pytest.approx(direct.value, rel=1e-10)

    def test_general_sigma1_formula(self):
        n, sigma, s1, d = 50, 2.0, 7.0, 0.4
        v = sigma**2 / n + s1**2
        expected = math.sqrt(v / (sigma**2 / n)) * math.exp(-0.5 * d * d * (n / sigma**2 - 1 / v))
        assert bayes_factor(SampleSummary(n, d, sigma), BayesConfig(0.0, prior_sd=s1)) == pytest.approx(expected, rel=1e-12)

    def test_no_overflow(self):
        lb = log_bayes_factor(at_t(5000.0, 10**9), BayesConfig(0.0))
        assert math.isfinite(lb) and lb < -1e6


class TestPosterior:
    def test_zero_t_n99(self):
        r = posterior_h0(at_t(0.0, 99), BayesConfig(0.0, pi0=0.5))
        assert r.bayes_factor == pytest.approx(10.0, rel=1e-12)
        assert r.posterior_h0 == pytest.approx(10 / 11, rel=1e-12)

    def test_headline(self):
        r = posterior_h0(at_t(3.614, COIN_N, 0.5, 0.5), BayesConfig(0.5))
        assert r.posterior_h0 == pytest.approx(0.937, abs=0.005)

    def test_large_n_limit(self):
        r = posterior_h0(at_t(2.576, 10**8), BayesConfig(0.0))
        assert r.posterior_h0 == pytest.approx(0.9972, abs=2e-4)
        assert r.posterior_h0 == pytest.approx(oracles.posterior_sigma1_eq_sigma(2.576, 10**8), rel=1e-10)

    @given(st.integers(1, 10**9), st.floats(-30, 30), st.floats(0.01, 0.99))
    def test_result_invariants(self, n, t, pi0):
        r = posterior_h0(at_t(t, n), BayesConfig(0.0, pi0=pi0))
        assert r.posterior_odds == pytest.approx(r.prior_odds * r.bayes_factor, rel=1e-12)
        assert r.posterior_h0 == pytest.approx(r.posterior_odds / (1 + r.posterior_odds), rel=1e-12)
        assert r.log_posterior_odds - math.log(r.prior_odds) == pytest.approx(r.log_bayes_factor, rel=1e-12, abs=1e-12)

    @given(st.integers(1, 10**9), st.floats(0, 6), st.floats(0.01, 2))
    def test_decreasing_in_t(self, n, t, h):
        a = posterior_h0(at_t(t, n), BayesConfig(0.0)).log_posterior_odds
        b = posterior_h0(at_t(t + h, n), BayesConfig(0.0)).log_posterior_odds
        assert b < a

    @settings(max_examples=200)
    @given(st.floats(0, 6), st.integers(1, 10**8))
    def test_increasing_in_n_past_bound(self, t, n):
        if n <= t * t - 1:
            return
        a = posterior_h0(at_t(t, n), BayesConfig(0.0)).log_posterior_odds
        b = posterior_h0(at_t(t, n + 1), BayesConfig(0.0)).log_posterior_odds
        assert b > a

    def test_doubling_sequence(self):
        ns = [1000 * 2**k for k in range(21)]
        posts = [posterior_h0(at_t(2.576, n), BayesConfig(0.0)).posterior_h0 for n in ns]
        assert all(b > a for a, b in zip(posts, posts[1:]))
        assert posts[-1] > 0.999

    def test_prior_continuity(self):
        s = at_t(3.0, 1000)
        assert posterior_h0(s, BayesConfig(0.0, pi0=1 - 1e-12)).posterior_h0 > 1 - 1e-9
        assert posterior_h0(s, BayesConfig(0.0, pi0=1e-12)).posterior_h0 < 1e-9

    def test_implausible_t_warns(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            posterior_h0(at_t(2e6, 10), BayesConfig(0.0))
        assert any(issubclass(x.category, RuntimeWarning) for x in w)

    @pytest.mark.parametrize("kw", [dict(pi0=0.0), dict(pi0=1.0), dict(prior_sd=0.0), dict(prior_sd=-1.0)])
    def test_bad_config(self, kw):
        with pytest.raises(DomainError):
            BayesConfig(0.0, **kw)
