"""Compare the (0,..,0,-1) and (0,..,0,+1) endings when c_t = 2 - a_t with a_t > 2.

Sweeps nested pairs and reports where the -1 ending changes D while the
+1 ending keeps it.
"""

import argparse

from surgery_lattices.knot_invariants import KnotModel
from surgery_lattices.rationals_cf import coprime_slopes, expand_neg_cf
from surgery_lattices.sharp_extension import (ExtensionPair, check_extension_d_equality,
                                              extension_case)

TAILS = [(1,), (2,), (3,), (2, 1), (2, 2), (3, 1), (2, 2, 1), (4,)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pmax", type=int, default=40)
    ap.add_argument("--qmax", type=int, default=8)
    args = ap.parse_args()
    knots = [KnotModel.torus(3, 2), KnotModel.torus(5, 2), KnotModel.torus(4, 3)]
    literal_bad = corrected_bad = rows = 0
    example = None
    for r in coprime_slopes(args.pmax, args.qmax):
        base = expand_neg_cf(r).terms
        for tail in TAILS:
            try:
                pair = ExtensionPair.of(base, base + tail)
            except (ValueError, AssertionError):
                continue
            for K in knots:
                lit = check_extension_d_equality(pair, K.V, mode="raw", literal=True)
                fix = check_extension_d_equality(pair, K.V, mode="raw")
                for a, b in zip(lit, fix):
                    rows += 1
                    corrected_bad += not b["ok"]
                    if not a["ok"]:
                        literal_bad += 1
                        assert extension_case(pair, tuple(a["class"])) == "middle-low"
                        if example is None:
                            example = (K.name, base, base + tail, a, b)
    print(f"{rows} rows; -1 ending changes D in {literal_bad}; +1 ending in {corrected_bad}")
    if example:
        name, base, ext, a, b = example
        print(f"first: {name} {list(base)} -> {list(ext)} class {a['class']}")
        print(f"  -1 ending {a['extension']}: D {a['lhs']} -> {a['rhs']}")
        print(f"  +1 ending {b['extension']}: D {b['lhs']} -> {b['rhs']}")


if __name__ == "__main__":
    main()
