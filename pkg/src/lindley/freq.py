"""Frequentist tests of a point null: z-test, binomial proportion, one-sided t."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .numerics import DegenerateError, DomainError, normal_quantile, normal_sf, student_t_sf


@dataclass(frozen=True)
class SampleSummary:
    """Sufficient statistics of a normal sample with known sigma."""

    n: int
    mean: float
    sigma: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not math.isfinite(self.mean):
            raise DomainError("mean must be finite")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")

    @property
    def std_error(self) -> float:
        return self.sigma / math.sqrt(self.n)


@dataclass(frozen=True)
class BinomialSummary:
    n: int
    successes: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if int(self.successes) != self.successes or not 0 <= self.successes <= self.n:
            raise DomainError(f"successes must be an integer in [0, n], got {self.successes!r}")

    @property
    def proportion(self) -> float:
        return self.successes / self.n


class SEMode(str, Enum):
    NULL_BASED = "null_based"
    ESTIMATE_BASED = "estimate_based"


@dataclass(frozen=True)
class NhtResult:
    theta0: float
    estimate: float
    std_error: float
    t_stat: float
    p_value: float
    ci_lower: float
    ci_upper: float
    confidence_level: float
    reject: bool
    alpha: float


def _check_levels(alpha: float, confidence_level: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not 0.0 < confidence_level < 1.0:
        raise DomainError(f"confidence_level must lie in (0, 1), got {confidence_level!r}")


def two_sided_p(t: float) -> float:
    """2(1 - Phi(|t|)), evaluated on the upper tail."""
    return min(1.0, 2.0 * normal_sf(abs(t)))


def critical_value(confidence_level: float) -> float:
    return normal_quantile(0.5 * (1.0 + confidence_level))


def z_test(
    sample: SampleSummary,
    theta0: float,
    alpha: float = 0.05,
    confidence_level: float = 0.95,
) -> NhtResult:
    """Two-sided z-test of ``mean == theta0`` with known sigma."""
    _check_levels(alpha, confidence_level)
    if not math.isfinite(theta0):
        raise DomainError("theta0 must be finite")
    se = sample.std_error
    t = abs(sample.mean - theta0) / se
    p = two_sided_p(t)
    half = critical_value(confidence_level) * se
    return NhtResult(
        theta0=theta0,
        estimate=sample.mean,
        std_error=se,
        t_stat=t,
        p_value=p,
        ci_lower=sample.mean - half,
        ci_upper=sample.mean + half,
        confidence_level=confidence_level,
        reject=p < alpha,
        alpha=alpha,
    )


def binomial_test(
    data: BinomialSummary,
    p0: float,
    alpha: float = 0.05,
    confidence_level: float = 0.95,
    se_mode: SEMode | str = SEMode.ESTIMATE_BASED,
) -> NhtResult:
    """Normal-approximation test of a binomial proportion.

    The test statistic uses the standard error selected by ``se_mode``; the
    confidence interval is always the Wald interval built from the estimate.
    """
    _check_levels(alpha, confidence_level)
    if not 0.0 < p0 < 1.0:
        raise DomainError(f"p0 must lie in (0, 1), got {p0!r}")
    se_mode = SEMode(se_mode)
    n = data.n
    p_hat = data.proportion
    wald_se = math.sqrt(p_hat * (1.0 - p_hat) / n)
    if se_mode is SEMode.ESTIMATE_BASED:
        if data.successes in (0, n):
            raise DegenerateError("estimate-based standard error is zero when p_hat is 0 or 1")
        se = wald_se
    else:
        se = math.sqrt(p0 * (1.0 - p0) / n)
    t = abs(p_hat - p0) / se
    p = two_sided_p(t)
    half = critical_value(confidence_level) * wald_se
    return NhtResult(
        theta0=p0,
        estimate=p_hat,
        std_error=se,
        t_stat=t,
        p_value=p,
        ci_lower=p_hat - half,
        ci_upper=p_hat + half,
        confidence_level=confidence_level,
        reject=p < alpha,
        alpha=alpha,
    )


def t_test_one_sided(n: int, t_observed: float) -> float:
    """P(T >= t_observed) for T ~ t with n - 1 degrees of freedom."""
    if int(n) != n or n < 2:
        raise DomainError(f"one-sided t-test needs n >= 2, got {n!r}")
    return student_t_sf(t_observed, int(n) - 1)
