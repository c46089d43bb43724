#!/usr/bin/env python3
"""Run the full verification suite and write the JSON report.

Usage: python scripts/run_verification.py [--seed N] [--out report.json]
"""

import argparse
import sys
import time

from painleve_calogero.verify import reports_to_json, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="verification_report.json")
    args = ap.parse_args()

    t0 = time.perf_counter()
    reports = run_suite("all", seed=args.seed)
    elapsed = time.perf_counter() - t0

    with open(args.out, "w") as fh:
        fh.write(reports_to_json(reports) + "\n")

    n_pass = sum(r.passed for r in reports)
    for r in sorted(reports, key=lambda r: r.check_id):
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.check_id}: max_error={r.max_error:.3e} tol={r.tolerance:.3e}")
    print(f"\n{n_pass}/{len(reports)} checks passed in {elapsed:.1f}s "
          f"(seed {args.seed}) -> {args.out}")
    return 0 if n_pass == len(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
