"""Compare inference with brute-force enumeration over many small random graphs."""

import argparse
import time

from mdse.generate import corpus_graph
from mdse.oracle import oracle_check


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=500)
    parser.add_argument("--start", type=int, default=0)
    parser.add_argument("--max-vertices", type=int, default=12)
    args = parser.parse_args(argv)

    t0 = time.perf_counter()
    worst, checks, failing = 0.0, 0, []
    for seed in range(args.start, args.start + args.seeds):
        report = oracle_check(corpus_graph(seed, args.max_vertices), all_checks=True)
        checks += len(report.checks)
        worst = max(worst, report.max_delta)
        if not report.agrees:
            failing.append(seed)
    print(f"seeds {args.seeds}  checks {checks}  max delta {worst:.3e}  {time.perf_counter() - t0:.2f} s")
    if failing:
        print("disagreeing seeds:", " ".join(map(str, failing)))
        raise SystemExit(3)


if __name__ == "__main__":
    main()
