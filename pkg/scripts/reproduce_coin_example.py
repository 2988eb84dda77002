"""Coin-toss example: frequentist rejection next to Bayesian support for H0."""

from lindley import (
    BayesConfig,
    BinomialSummary,
    SampleSummary,
    binomial_test,
    make_range,
    posterior_h0,
)
from lindley.practical import adjusted_decision

N, HEADS = 104_490_000, 52_263_471


def main() -> None:
    nht = binomial_test(BinomialSummary(N, HEADS), 0.5, alpha=0.01, confidence_level=0.99)
    print(f"estimate      {nht.estimate:.10f}")
    print(f"std error     {nht.std_error:.10e}")
    print(f"99% CI        ({nht.ci_lower:.7f}, {nht.ci_upper:.7f})")
    print(f"z             {nht.t_stat:.4f}   p = {nht.p_value:.3e}   reject = {nht.reject}")

    bht = posterior_h0(SampleSummary(N, nht.estimate, 0.5), BayesConfig(0.5, pi0=0.5))
    print(f"Bayes factor  {bht.bayes_factor:.4f}   P(H0 | x) = {bht.posterior_h0:.5f}")

    for label, rng in [("near", make_range(lower=0.4995, upper=0.5005)),
                       ("far", make_range(lower=0.52, upper=0.53)),
                       ("point", make_range(lower=0.5, upper=0.5))]:
        d = adjusted_decision(nht, rng)
        print(f"range {label:5s} [{rng.lower}, {rng.upper}] -> {d.decision.value}"
              f" (overridden={d.overridden})")


if __name__ == "__main__":
    main()
