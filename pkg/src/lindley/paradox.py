"""Fixed-t sweeps over n and the algebra behind the Jeffreys-Lindley regime."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bayes import log_bayes_factor_t, posterior_from_log_bf
from .freq import two_sided_p
from .numerics import DegenerateError, DomainError


@dataclass(frozen=True)
class SweepRow:
    n: int
    t: float
    p_value: float
    bayes_factor: float
    log_bayes_factor: float
    posterior_h0: float
    nht_reject: bool
    bht_favors_h0: bool


@dataclass(frozen=True)
class ParadoxReport:
    rows: list[SweepRow]
    crossover_n: int | None
    limit_check: bool
    alpha: float = 0.05
    pi0: float = 0.5
    posterior_threshold: float = 0.5


def _check_open_unit(**values: float) -> None:
    for name, v in values.items():
        if not 0.0 < v < 1.0:
            raise DomainError(f"{name} must lie in (0, 1), got {v!r}")


def sweep_row(t: float, n: int, alpha: float, pi0: float, posterior_threshold: float) -> SweepRow:
    p = two_sided_p(t)
    log_bf = log_bayes_factor_t(t, n)
    post, _, _ = posterior_from_log_bf(log_bf, pi0)
    return SweepRow(
        n=n,
        t=t,
        p_value=p,
        bayes_factor=math.exp(log_bf) if log_bf < 709 else math.inf,
        log_bayes_factor=log_bf,
        posterior_h0=post,
        nht_reject=p < alpha,
        bht_favors_h0=post > posterior_threshold,
    )


def sweep_fixed_t(
    t: float,
    n_values: Sequence[int],
    alpha: float = 0.05,
    pi0: float = 0.5,
    posterior_threshold: float = 0.5,
) -> ParadoxReport:
    """Hold the z statistic at ``t`` and vary the sample size.

    The p-value is the same in every row; the posterior of H0 climbs towards
    one once n exceeds t^2 - 1 (slab sd equal to sigma). ``limit_check``
    records whether the posterior is strictly increasing over those rows.
    """
    if len(n_values) == 0:
        raise DomainError("n_values must be nonempty")
    ns = [int(n) for n in n_values]
    if any(n < 1 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError("n_values must be positive and strictly increasing")
    _check_open_unit(alpha=alpha, pi0=pi0, posterior_threshold=posterior_threshold)

    rows = [sweep_row(t, n, alpha, pi0, posterior_threshold) for n in ns]
    crossover = next((r.n for r in rows if r.nht_reject and r.bht_favors_h0), None)
    tail = [r.log_bayes_factor for r in rows if r.n > t * t - 1]
    limit_ok = all(b > a for a, b in zip(tail, tail[1:]))
    return ParadoxReport(rows, crossover, limit_ok, alpha, pi0, posterior_threshold)


def refine_crossover(
    t: float,
    n_lo: int,
    n_hi: int,
    alpha: float = 0.05,
    pi0: float = 0.5,
    posterior_threshold: float = 0.5,
) -> int | None:
    """Smallest n in (n_lo, n_hi] where NHT rejects and the posterior favors H0.

    Bisection relies on the posterior increasing in n, which holds for
    n > t^2 - 1, so the search starts no lower than that bound.
    """
    _check_open_unit(alpha=alpha, pi0=pi0, posterior_threshold=posterior_threshold)
    if two_sided_p(t) >= alpha:
        return None

    def favors(n: int) -> bool:
        return sweep_row(t, n, alpha, pi0, posterior_threshold).bht_favors_h0

    start = max(n_lo + 1, math.ceil(t * t - 1))
    if start > n_hi or not favors(n_hi):
        return None
    if favors(start):
        return start
    lo, hi = start, n_hi  # favors(lo) is False, favors(hi) is True
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if favors(mid):
            hi = mid
        else:
            lo = mid
    return hi


def mean_shrink_identity(n: int, m: int, xbar_n: float, theta0: float) -> float:
    """Sample mean after n + m draws that leaves the z statistic unchanged.

    Keeping t fixed forces (xbar_n - theta0)^2 / (xbar_{n+m} - theta0)^2 - 1
    to equal m / n, so the offset shrinks by sqrt(n / (n + m)). The returned
    root keeps the sign of the original offset.
    """
    if int(n) != n or int(m) != m or n < 1 or m < 1:
        raise DomainError("n and m must be positive integers")
    if xbar_n == theta0:
        raise DegenerateError("xbar_n equals theta0: t = 0 places no constraint on later means")
    return theta0 + (xbar_n - theta0) * math.sqrt(n / (n + m))


def divergence_check(theta_a: float, theta0: float, sigma: float, n_values: Sequence[int]) -> list[float]:
    """z statistic sqrt(n)(theta_a - theta0)/sigma along a grid of n.

    When theta_a == theta0 every entry is zero; that is the H0-true case,
    not an error.
    """
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    d = theta_a - theta0
    return [math.sqrt(n) * d / sigma for n in n_values]
