"""Show the two changemaker structures on one lattice at slope 21, and uniqueness at 9."""

from surgery_lattices.changemaker import (build_changemaker, genus, genus_bound_B, recover_torsion,
                                          uniqueness_search)
from surgery_lattices.intlattice import isometric
from surgery_lattices.knot_invariants import alex_from_torsion

GRAM = [[5, -1, 0, 0, 0], [-1, 2, -1, 0, 0], [0, -1, 2, -1, 0],
        [0, 0, -1, 2, -1], [0, 0, 0, -1, 2]]


def describe(slope, sigma):
    cm = build_changemaker(slope, sigma)
    t = recover_torsion(cm)
    print(f"  sigma {sigma}: torsion {t.values}, genus {genus(cm)}, "
          f"Alexander {alex_from_torsion(t)}, B = {genus_bound_B(cm)}")
    return cm


def main():
    print("slope 21")
    for sigma in [(1, 1, 1, 1, 1, 4), (1, 2, 2, 2, 2, 2)]:
        cm = describe(21, sigma)
        print(f"    complement isometric to tridiagonal [5,2,2,2,2]: {isometric(cm.gram, GRAM)}")
    found = uniqueness_search(21, GRAM)
    print(f"  structures found: {[v.sigma for v in found]}")
    print("slope 9")
    cm = describe(9, (1, 1, 1, 1, 1, 2))
    print(f"  structures found: {[v.sigma for v in uniqueness_search(9, cm.gram)]}")


if __name__ == "__main__":
    main()
