"""Seeded Monte Carlo for type-I error, CI coverage and paradox frequency.

Replications are simulated at the level of the sample mean, which is
sufficient for the normal model, so n = 1e8 costs the same as n = 10.
Replication ``i`` always draws from block ``i // BLOCK_SIZE``, whose stream
is ``SeedSequence(seed, spawn_key=(block,))``; any number of workers yields
the same counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .freq import critical_value
from .numerics import DomainError, normal_cdf

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class McConfig:
    theta_true: float
    theta0: float
    sigma: float
    n: int
    alpha: float = 0.05
    pi0: float = 0.5
    replications: int = 100_000
    seed: int = 0
    confidence_level: float | None = None  # None: 1 - alpha
    posterior_threshold: float = 0.5

    def __post_init__(self):
        if not (math.isfinite(self.theta_true) and math.isfinite(self.theta0)):
            raise DomainError("theta_true and theta0 must be finite")
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("n must be a positive integer")
        if int(self.replications) != self.replications or self.replications < 1:
            raise DomainError("replications must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        for name in ("alpha", "pi0", "posterior_threshold"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {v!r}")
        if self.confidence_level is not None and not 0.0 < self.confidence_level < 1.0:
            raise DomainError("confidence_level must lie in (0, 1)")

    @property
    def ci_level(self) -> float:
        return 1.0 - self.alpha if self.confidence_level is None else self.confidence_level


@dataclass(frozen=True)
class McReport:
    reject_rate: float
    coverage_rate: float
    paradox_rate: float
    mc_std_error: float
    coverage_std_error: float
    paradox_std_error: float
    replications: int
    seed: int
    reject_count: int
    coverage_count: int
    paradox_count: int

    def as_dict(self) -> dict:
        return asdict(self)


def binomial_se(rate: float, reps: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / reps)


def block_normals(seed: int, block: int, size: int) -> np.ndarray:
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.PCG64(ss)).standard_normal(size)


def _simulate_block(cfg: McConfig, block: int, size: int) -> tuple[int, int, int]:
    se = cfg.sigma / math.sqrt(cfg.n)
    xbar = cfg.theta_true + se * block_normals(cfg.seed, block, size)
    t = np.abs(xbar - cfg.theta0) / se

    # p < alpha  <=>  |t| > z_{1 - alpha/2}
    reject = t > critical_value(1.0 - cfg.alpha)
    covered = t <= critical_value(cfg.ci_level)

    # log B with the slab sd equal to sigma; favors H0 when posterior > threshold
    log_bf = 0.5 * math.log1p(cfg.n) - 0.5 * t * t * (cfg.n / (1.0 + cfg.n))
    log_prior_odds = math.log(cfg.pi0) - math.log1p(-cfg.pi0)
    logit_thr = math.log(cfg.posterior_threshold) - math.log1p(-cfg.posterior_threshold)
    favors = log_bf + log_prior_odds > logit_thr

    return int(reject.sum()), int(covered.sum()), int((reject & favors).sum())


def run_mc(cfg: McConfig, workers: int = 1) -> McReport:
    """Simulate ``cfg.replications`` sample means and tally both tests."""
    reps = int(cfg.replications)
    blocks = [(b, min(BLOCK_SIZE, reps - b * BLOCK_SIZE)) for b in range(-(-reps // BLOCK_SIZE))]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda bs: _simulate_block(cfg, *bs), blocks))
    else:
        parts = [_simulate_block(cfg, b, size) for b, size in blocks]

    rej = sum(p[0] for p in parts)
    cov = sum(p[1] for p in parts)
    par = sum(p[2] for p in parts)
    rr, cr, pr = rej / reps, cov / reps, par / reps
    return McReport(
        reject_rate=rr,
        coverage_rate=cr,
        paradox_rate=pr,
        mc_std_error=binomial_se(rr, reps),
        coverage_std_error=binomial_se(cr, reps),
        paradox_std_error=binomial_se(pr, reps),
        replications=reps,
        seed=int(cfg.seed),
        reject_count=rej,
        coverage_count=cov,
        paradox_count=par,
    )


def analytic_paradox_rate(n: int, alpha: float) -> float:
    """P(reject and B > 1) under H0 with pi0 = 1/2 and slab sd = sigma.

    B > 1 iff t^2 < (1 + 1/n) log(1 + n), so the event is the band
    z_{1-alpha/2} < |t| < t*(n).
    """
    t_star = math.sqrt((1.0 + 1.0 / n) * math.log1p(n))
    z = critical_value(1.0 - alpha)
    if t_star <= z:
        return 0.0
    return 2.0 * (normal_cdf(t_star) - normal_cdf(z))
