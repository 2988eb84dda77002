"""Practical-significance decisions and p-value inflation.

A point null is treated as shorthand for an acceptance range of parameter
values. H0 is accepted whenever the confidence interval touches that range,
whatever the p-value says. Separately, an observed p-value can be divided by
the probability that the modelling assumptions hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .freq import NhtResult
from .numerics import DegenerateError, DomainError


class RangeKind(str, Enum):
    RELATIVE_DELTA = "relative_delta"
    ABSOLUTE = "absolute"


class Decision(str, Enum):
    ACCEPT_H0 = "accept_h0"
    REJECT_H0 = "reject_h0"


@dataclass(frozen=True)
class PracticalRange:
    lower: float
    upper: float
    kind: RangeKind = RangeKind.ABSOLUTE
    delta: float | None = None
    theta0: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise DomainError("range bounds must be finite")
        if self.lower > self.upper:
            raise DomainError(f"range lower {self.lower!r} exceeds upper {self.upper!r}")

    @classmethod
    def relative(cls, delta: float, theta0: float) -> "PracticalRange":
        """[(1 - delta) theta0, (1 + delta) theta0], endpoints ordered."""
        if not 0.0 < delta < 1.0:
            raise DomainError(f"delta must lie in (0, 1), got {delta!r}")
        if theta0 == 0:
            raise DegenerateError(
                "a relative range around theta0 = 0 is the single point 0; "
                "give absolute bounds instead"
            )
        a, b = (1.0 - delta) * theta0, (1.0 + delta) * theta0
        return cls(min(a, b), max(a, b), RangeKind.RELATIVE_DELTA, delta, theta0)

    @classmethod
    def absolute(cls, lower: float, upper: float) -> "PracticalRange":
        return cls(lower, upper, RangeKind.ABSOLUTE)

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper


def make_range(
    delta: float | None = None,
    theta0: float | None = None,
    lower: float | None = None,
    upper: float | None = None,
) -> PracticalRange:
    """Build a range from either (delta, theta0) or (lower, upper)."""
    relative = delta is not None
    absolute = lower is not None or upper is not None
    if relative == absolute:
        raise DomainError("give either delta with theta0, or both lower and upper")
    if relative:
        if theta0 is None:
            raise DomainError("a relative range needs theta0")
        return PracticalRange.relative(delta, theta0)
    if lower is None or upper is None:
        raise DomainError("an absolute range needs both lower and upper")
    return PracticalRange.absolute(lower, upper)


@dataclass(frozen=True)
class AdjustedDecision:
    ci_lower: float
    ci_upper: float
    range: PracticalRange
    overlap: bool
    estimate_inside_range: bool
    decision: Decision
    boundary_critical_t: float
    overridden: bool
    theta0: float
    estimate: float
    t_stat: float
    p_value: float
    nht_reject: bool


def adjusted_decision(nht: NhtResult, rng: PracticalRange) -> AdjustedDecision:
    """Accept H0 iff the closed CI intersects the closed acceptance range.

    The NHT p-value is carried through untouched; ``overridden`` flags the
    cases where the range verdict disagrees with the p-value verdict.
    ``boundary_critical_t`` is the farther range endpoint expressed in
    standard errors from theta0, i.e. the z value the range would imply.
    """
    if not nht.ci_lower <= nht.ci_upper:
        raise DomainError("NHT result carries an invalid confidence interval")
    overlap = nht.ci_lower <= rng.upper and rng.lower <= nht.ci_upper
    decision = Decision.ACCEPT_H0 if overlap else Decision.REJECT_H0
    reach = max(abs(rng.lower - nht.theta0), abs(rng.upper - nht.theta0))
    return AdjustedDecision(
        ci_lower=nht.ci_lower,
        ci_upper=nht.ci_upper,
        range=rng,
        overlap=overlap,
        estimate_inside_range=rng.contains(nht.estimate),
        decision=decision,
        boundary_critical_t=reach / nht.std_error,
        overridden=overlap == nht.reject,
        theta0=nht.theta0,
        estimate=nht.estimate,
        t_stat=nht.t_stat,
        p_value=nht.p_value,
        nht_reject=nht.reject,
    )


@dataclass(frozen=True)
class InflationInput:
    p_observed: float
    prob_assumptions: float

    def __post_init__(self):
        if not 0.0 <= self.p_observed <= 1.0:
            raise DomainError(f"p_observed must lie in [0, 1], got {self.p_observed!r}")
        if not 0.0 < self.prob_assumptions <= 1.0:
            raise DomainError(
                f"prob_assumptions must lie in (0, 1], got {self.prob_assumptions!r}"
            )


def inflate_p(inp: InflationInput | float, prob_assumptions: float | None = None) -> float:
    """min(1, p_o / P(R)).

    Accepts an :class:`InflationInput` or the two numbers directly. The
    result never falls below the observed p-value.
    """
    if not isinstance(inp, InflationInput):
        if prob_assumptions is None:
            raise DomainError("prob_assumptions is required")
        inp = InflationInput(float(inp), float(prob_assumptions))
    return min(1.0, inp.p_observed / inp.prob_assumptions)
