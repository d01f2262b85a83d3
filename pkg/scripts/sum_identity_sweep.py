"""Check the D-sum identity on a grid of slopes for random V sequences."""

import argparse
import random

from surgery_lattices.knot_invariants import VHSeq, check_sum_identity
from surgery_lattices.rationals_cf import coprime_slopes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pmax", type=int, default=200)
    ap.add_argument("--qmax", type=int, default=12)
    ap.add_argument("--knots", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    seqs = [VHSeq(sorted((rng.randint(0, 12) for _ in range(rng.randint(0, 10))), reverse=True))
            for _ in range(args.knots)]
    checks = failures = 0
    for r in coprime_slopes(args.pmax, args.qmax):
        for V in seqs:
            checks += 1
            if not check_sum_identity(r, V):
                failures += 1
                print(f"FAIL {r} {V.V}")
    print(f"seed {args.seed}: {checks} checks, {failures} failures")


if __name__ == "__main__":
    main()
