"""Run the acceptance checks and print one line per check.

    python3 scripts/run_acceptance.py [--suite 1,2] [--seed 0]
"""
import argparse
import sys

from hessrec.acceptance import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--suite", default="all")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    checks = run_suite(args.suite, args.seed)
    for c in checks:
        print(c.line())
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
