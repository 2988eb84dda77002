"""Posterior of H0 at a fixed z statistic as the sample size grows."""

import argparse

from lindley.paradox import refine_crossover, sweep_fixed_t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=2.576)
    ap.add_argument("--alpha", type=float, default=0.01)
    ap.add_argument("--max-exp", type=int, default=12)
    args = ap.parse_args()

    ns = [10**k for k in range(1, args.max_exp + 1)]
    rep = sweep_fixed_t(args.t, ns, alpha=args.alpha)
    print(f"{'n':>14} {'p':>10} {'B':>12} {'P(H0|x)':>10}")
    for r in rep.rows:
        print(f"{r.n:>14d} {r.p_value:>10.5f} {r.bayes_factor:>12.4f} {r.posterior_h0:>10.6f}")
    exact = refine_crossover(args.t, 1, ns[-1], alpha=args.alpha)
    print(f"grid crossover {rep.crossover_n}, exact crossover {exact}, limit check {rep.limit_check}")


if __name__ == "__main__":
    main()
