"""Time random forward/recover round trips.

    python3 scripts/timing_round_trips.py [--count 20] [--seed 0]
"""
import argparse
import random
import time

from hessrec.forward import ideal_graded_piece, is_squarefree
from hessrec.mpoly import proportional, random_form
from hessrec.recover3 import recover_cubic
from hessrec.recover4 import recover_quartic


def squarefree_form(nvars, degree, rng):
    while True:
        F = random_form(nvars, degree, rng)
        if not F.is_zero() and is_squarefree(F):
            return F


def batch(label, count, make, recover):
    ok = 0
    t = time.perf_counter()
    for _ in range(count):
        F = make()
        ok += proportional(recover(F), F)
    dt = time.perf_counter() - t
    print(f"{label:<28} {ok}/{count} ok  {dt:6.2f}s total  {dt / count:6.3f}s each")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for n in (2, 3, 4):
        batch(f"cubics n={n}", args.count, lambda: squarefree_form(n + 1, 3, rng),
              lambda F: recover_cubic(ideal_graded_piece(F, 1), n))
    batch("quartics n=2 (modular)", args.count, lambda: squarefree_form(3, 4, rng),
          lambda F: recover_quartic(ideal_graded_piece(F, 2), 2, method="modular"))
    batch("quartics n=2 (direct)", max(1, args.count // 4), lambda: squarefree_form(3, 4, rng),
          lambda F: recover_quartic(ideal_graded_piece(F, 2), 2, method="direct"))


if __name__ == "__main__":
    main()
