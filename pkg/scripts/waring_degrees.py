"""Degree of the image hypersurface and fiber size for diagonal forms.

    python3 scripts/waring_degrees.py [--budget 20]
"""
import argparse
import time

from hessrec.waring import DegreeBudgetExceeded, DiagonalForm, fiber_enumerate, image_degree


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int, default=10, help="skip cases whose image degree exceeds this")
    args = ap.parse_args()
    print(f"{'d':>2} {'k':>2} {'deg':>4} {'fiber':>5} {'secs':>6}", flush=True)
    for d in (3, 4, 5, 6):
        for k in (2, 3):
            deg = image_degree(d, k)
            t = time.perf_counter()
            try:
                size = len(fiber_enumerate(DiagonalForm(d, (1,) * k), args.budget))
            except DegreeBudgetExceeded:
                size = "-"
            print(f"{d:>2} {k:>2} {deg:>4} {size!s:>5} {time.perf_counter() - t:6.2f}", flush=True)


if __name__ == "__main__":
    main()
