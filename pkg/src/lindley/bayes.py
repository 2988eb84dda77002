"""Bayesian test of a point null under a spike-and-slab prior.

The sampling density is that of the sample mean, N(theta, sigma^2/n). The
slab is N(theta0, prior_sd^2), so the slab marginal of the mean is again
normal with variance sigma^2/n + prior_sd^2. All factors are kept as logs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from .freq import SampleSummary
from .numerics import (
    DomainError,
    LogValue,
    QuadratureSpec,
    expit,
    integrate,
    normal_logpdf,
    normal_pdf,
)

IMPLAUSIBLE_T = 1e6


@dataclass(frozen=True)
class BayesConfig:
    theta0: float
    pi0: float = 0.5
    prior_sd: float | None = None  # None: use the sample's sigma

    def __post_init__(self):
        if not math.isfinite(self.theta0):
            raise DomainError("theta0 must be finite")
        if not 0.0 < self.pi0 < 1.0:
            raise DomainError(f"pi0 must lie strictly inside (0, 1), got {self.pi0!r}")
        if self.prior_sd is not None and not (math.isfinite(self.prior_sd) and self.prior_sd > 0):
            raise DomainError(f"prior_sd must be positive, got {self.prior_sd!r}")

    def slab_sd(self, sample: SampleSummary) -> float:
        return sample.sigma if self.prior_sd is None else self.prior_sd

    @property
    def log_prior_odds(self) -> float:
        return math.log(self.pi0) - math.log1p(-self.pi0)


@dataclass(frozen=True)
class BhtResult:
    bayes_factor: float
    log_bayes_factor: float
    posterior_h0: float
    posterior_odds: float
    prior_odds: float
    log_posterior_odds: float
    pi0: float
    theta0: float
    prior_sd: float


def log_bayes_factor_t(t: float, n: int, prior_ratio: float = 1.0) -> float:
    """log B for H0 vs the slab, as a function of the z statistic.

    ``prior_ratio`` is prior_sd / sigma. With ratio r and k = n r^2,
    log B = log(1 + k)/2 - t^2 k / (2 (1 + k)), which for r = 1 is the
    familiar sqrt(1+n) exp(-t^2 / (2 (1 + 1/n))).
    """
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    if n < 1:
        raise DomainError("n must be positive")
    if not prior_ratio > 0:
        raise DomainError("prior_ratio must be positive")
    k = n * prior_ratio * prior_ratio
    return 0.5 * math.log1p(k) - 0.5 * t * t * (k / (1.0 + k))


def _z(sample: SampleSummary, theta0: float) -> float:
    return (sample.mean - theta0) / sample.std_error


def likelihood_h0(sample: SampleSummary, config: BayesConfig) -> LogValue:
    """f(xbar | theta0) as a log value."""
    return LogValue(normal_logpdf(sample.mean, config.theta0, sample.std_error))


def log_marginal_slab(sample: SampleSummary, config: BayesConfig) -> float:
    sd = math.hypot(sample.std_error, config.slab_sd(sample))
    return normal_logpdf(sample.mean, config.theta0, sd)


def marginal_slab(sample: SampleSummary, config: BayesConfig) -> float:
    """Closed-form slab marginal density of the sample mean."""
    return math.exp(log_marginal_slab(sample, config))


def marginal_slab_quadrature(
    sample: SampleSummary,
    config: BayesConfig,
    prior_pdf: Callable[[float], float] | None = None,
    rel_tol: float = 1e-12,
) -> float:
    """Slab marginal by direct numerical integration over theta.

    ``prior_pdf`` replaces the normal slab with any density; the default is
    N(theta0, prior_sd^2). The likelihood becomes a needle of width
    sigma/sqrt(n) around the sample mean, which is handed to the integrator
    as a point of interest.
    """
    se = sample.std_error
    slab = config.slab_sd(sample)
    if prior_pdf is None:
        def prior_pdf(theta: float) -> float:
            return normal_pdf(theta, config.theta0, slab)

    xbar = sample.mean
    lo = min(config.theta0 - 12.0 * slab, xbar - 40.0 * se)
    hi = max(config.theta0 + 12.0 * slab, xbar + 40.0 * se)
    pts = [config.theta0, xbar]

    def integrand(theta: float) -> float:
        return normal_pdf(xbar, theta, se) * prior_pdf(theta)

    spec = QuadratureSpec(lo, hi, abs_tol=1e-300, rel_tol=rel_tol)
    return integrate(integrand, spec, points=pts)


def bayes_factor(sample: SampleSummary, config: BayesConfig) -> float:
    return math.exp(log_bayes_factor(sample, config))


def log_bayes_factor(sample: SampleSummary, config: BayesConfig) -> float:
    ratio = config.slab_sd(sample) / sample.sigma
    return log_bayes_factor_t(_z(sample, config.theta0), sample.n, ratio)


def posterior_from_log_bf(log_bf: float, pi0: float) -> tuple[float, float, float]:
    """(posterior_h0, posterior_odds, log_posterior_odds) from log B and pi0."""
    log_post = math.log(pi0) - math.log1p(-pi0) + log_bf
    try:
        odds = math.exp(log_post)
    except OverflowError:
        odds = math.inf
    return expit(log_post), odds, log_post


def posterior_h0(sample: SampleSummary, config: BayesConfig) -> BhtResult:
    """Full Bayesian report for H0: theta = theta0."""
    t = _z(sample, config.theta0)
    if abs(t) > IMPLAUSIBLE_T:
        warnings.warn(f"|t| = {abs(t):.3g} is implausibly large; check the inputs", RuntimeWarning)
    log_bf = log_bayes_factor(sample, config)
    post, odds, log_post = posterior_from_log_bf(log_bf, config.pi0)
    return BhtResult(
        bayes_factor=LogValue(log_bf).value,
        log_bayes_factor=log_bf,
        posterior_h0=post,
        posterior_odds=odds,
        prior_odds=config.pi0 / (1.0 - config.pi0),
        log_posterior_odds=log_post,
        pi0=config.pi0,
        theta0=config.theta0,
        prior_sd=config.slab_sd(sample),
    )
