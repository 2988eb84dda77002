import math

import numpy as np
import pytest

from lindley.bayes import BayesConfig, log_bayes_factor
from lindley.freq import SampleSummary, z_test
from lindley.mc import BLOCK_SIZE, McConfig, analytic_paradox_rate, block_normals, run_mc
from lindley.numerics import DomainError

from . import oracles


def within(rate, target, reps, k=3.0):
    return abs(rate - target) <= k * math.sqrt(target * (1 - target) / reps)


class TestCalibration:
    @pytest.mark.parametrize("n,alpha", [(10, 0.05), (100, 0.01), (10**6, 0.1)])
    def test_type_one_error(self, n, alpha):
        rep = run_mc(McConfig(1.0, 1.0, 2.0, n, alpha, replications=100_000, seed=11))
        assert within(rep.reject_rate, alpha, rep.replications)

    def test_coverage(self):
        rep = run_mc(McConfig(0.0, 0.0, 1.0, 100, 0.05, replications=100_000, seed=3, confidence_level=0.9))
        assert within(rep.coverage_rate, 0.9, rep.replications)

    @pytest.mark.parametrize("n", [100, 1000, 10**5])
    def test_paradox_band(self, n):
        rep = run_mc(McConfig(0.0, 0.0, 1.0, n, 0.01, replications=400_000, seed=5))
        band = oracles.paradox_band(n, oracles.quantile_bisect(0.995))
        assert band == pytest.approx(analytic_paradox_rate(n, 0.01), rel=1e-10, abs=1e-15)
        if band == 0.0:
            assert rep.paradox_count == 0
        else:
            assert abs(rep.paradox_rate - band) <= 3 * math.sqrt(band * (1 - band) / rep.replications)

    def test_small_n_band_empty(self):
        # t*(n) below the critical value: rejection and B > 1 never coincide
        assert analytic_paradox_rate(5, 0.01) == 0.0
        rep = run_mc(McConfig(0.0, 0.0, 1.0, 5, 0.01, replications=50_000, seed=1))
        assert rep.paradox_count == 0

    def test_power_grows_with_n(self):
        rates = [
            run_mc(McConfig(0.05, 0.0, 1.0, 2**k, 0.05, replications=20_000, seed=9)).reject_rate
            for k in range(4, 14)
        ]
        assert all(b >= a for a, b in zip(rates, rates[1:]))


class TestDeterminism:
    def test_same_seed_same_report(self):
        cfg = McConfig(0.0, 0.0, 1.0, 100, replications=150_000, seed=2024)
        assert run_mc(cfg) == run_mc(cfg)

    def test_worker_count_irrelevant(self):
        cfg = McConfig(0.0, 0.0, 1.0, 1000, 0.01, replications=3 * BLOCK_SIZE + 17, seed=77)
        assert run_mc(cfg, workers=1) == run_mc(cfg, workers=4) == run_mc(cfg, workers=7)

    def test_different_seed_differs(self):
        a = run_mc(McConfig(0.0, 0.0, 1.0, 100, replications=50_000, seed=1))
        b = run_mc(McConfig(0.0, 0.0, 1.0, 100, replications=50_000, seed=2))
        assert a != b

    def test_substreams_distinct(self):
        assert not np.array_equal(block_normals(5, 0, 8), block_normals(5, 1, 8))

    def test_vectorised_matches_scalar_path(self):
        # replay the first block through the scalar z_test / bayes_factor code
        cfg = McConfig(0.2, 0.0, 1.5, 400, 0.05, replications=2000, seed=31)
        se = cfg.sigma / math.sqrt(cfg.n)
        means = cfg.theta_true + se * block_normals(cfg.seed, 0, cfg.replications)
        rej = cov = par = 0
        for m in means:
            s = SampleSummary(cfg.n, float(m), cfg.sigma)
            r = z_test(s, cfg.theta0, cfg.alpha, 0.95)
            rej += r.reject
            cov += r.ci_lower <= cfg.theta0 <= r.ci_upper
            par += r.reject and log_bayes_factor(s, BayesConfig(cfg.theta0)) > 0
        rep = run_mc(cfg)
        assert (rep.reject_count, rep.coverage_count, rep.paradox_count) == (rej, cov, par)


class TestReport:
    def test_std_errors(self):
        rep = run_mc(McConfig(0.0, 0.0, 1.0, 50, replications=10_000, seed=4))
        for rate, se in [(rep.reject_rate, rep.mc_std_error), (rep.coverage_rate, rep.coverage_std_error),
                         (rep.paradox_rate, rep.paradox_std_error)]:
            assert 0.0 <= rate <= 1.0
            assert se == pytest.approx(math.sqrt(rate * (1 - rate) / 10_000))
        assert rep.seed == 4 and rep.replications == 10_000

    def test_large_seed(self):
        run_mc(McConfig(0.0, 0.0, 1.0, 10, replications=10, seed=2**64 - 1))

    @pytest.mark.parametrize(
        "kw",
        [dict(replications=0), dict(seed=-1), dict(seed=2**64), dict(alpha=1.0), dict(pi0=0.0),
         dict(sigma=0.0), dict(n=0), dict(confidence_level=1.0)],
    )
    def test_bad_config(self, kw):
        base = dict(theta_true=0.0, theta0=0.0, sigma=1.0, n=10)
        with pytest.raises(DomainError):
            McConfig(**{**base, **kw})
