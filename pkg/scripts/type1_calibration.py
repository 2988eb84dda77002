"""Monte Carlo check of size, coverage and paradox frequency under H0."""

import argparse

from lindley.mc import McConfig, analytic_paradox_rate, run_mc


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=4)
    args = ap.parse_args()

    print(f"{'n':>8} {'alpha':>6} {'reject':>9} {'coverage':>9} {'paradox':>9} {'band':>9}")
    for n in (10, 100, 1000, 10_000, 100_000):
        for alpha in (0.05, 0.01):
            cfg = McConfig(0.0, 0.0, 1.0, n, alpha, replications=args.reps, seed=args.seed)
            rep = run_mc(cfg, workers=args.workers)
            print(f"{n:>8d} {alpha:>6.2f} {rep.reject_rate:>9.5f} {rep.coverage_rate:>9.5f}"
                  f" {rep.paradox_rate:>9.5f} {analytic_paradox_rate(n, alpha):>9.5f}")


if __name__ == "__main__":
    main()
