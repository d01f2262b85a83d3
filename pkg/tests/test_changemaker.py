from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from surgery_lattices.changemaker import (ChangemakerVec, all_changemakers, build_changemaker,
                                          enumerate_changemakers, genus, genus_bound_B,
                                          genus_consistent, is_changemaker, uniqueness_hypothesis_met,
                                          recover_torsion, recover_torsion_values,
                                          uniqueness_search)
from surgery_lattices.intlattice import det, is_positive_definite
from surgery_lattices.knot_invariants import KnotModel
from strategies import changemakers


def torsion_oracle(cm):
    """Plain enumeration of odd vectors, with a radius that provably suffices."""
    n, N = cm.n, cm.N
    targets = [(n + 2 * i) % (2 * n) for i in range(n // 2 + 1)]
    R = 1
    while True:
        best = {}
        for c in product(range(-R, R + 1, 2), repeat=N):
            r = sum(x * w for x, w in zip(c, cm.weights)) % (2 * n)
            v = sum(x * x for x in c)
            best[r] = min(best.get(r, v), v)
        if all(r in best for r in targets):
            worst = max(best[r] for r in targets)
            if (R + 2) ** 2 + N - 1 > worst:
                return [(best[r] - N) // 8 for r in targets]
        R += 2


def test_changemaker_condition():
    assert is_changemaker((1, 1, 1, 2))
    assert is_changemaker((0, 1, 2))
    assert not is_changemaker((2,))
    assert not is_changemaker((1, 1, 4))
    assert not is_changemaker((1, 2, 1))


def test_seven_over_one_example():
    cm = build_changemaker(7, (1, 1, 1, 2))
    assert cm.N == 4 and len(cm.gram) == 3
    assert recover_torsion(cm).values == (1,)
    assert genus(cm) == 1
    assert genus_bound_B(cm) == 8
    assert not uniqueness_hypothesis_met(7, cm)


def test_twenty_one_examples():
    a = build_changemaker(21, (1, 1, 1, 1, 1, 4))
    assert recover_torsion(a) == KnotModel.torus(5, 4).torsion
    assert genus(a) == 6
    b = build_changemaker(21, (1, 2, 2, 2, 2, 2))
    assert recover_torsion(b) == KnotModel.torus(11, 2).torsion
    assert genus(b) == 5


def test_bad_inputs():
    with pytest.raises(ValueError):
        build_changemaker(7, (0, 2))
    with pytest.raises(ValueError):
        build_changemaker(7, (1, 1, 1))
    with pytest.raises(ValueError):
        build_changemaker("13/2", (1, 1, 1, 2))


def test_non_integral_example():
    cm = build_changemaker("13/2", (1, 1, 1, 1, 1, 1))
    assert cm.cf == (7, 2) and cm.N == 8
    assert ChangemakerVec((1, 1, 1, 1, 1, 1), True).n == 7 and cm.vec.n == 7
    assert len(cm.gram) == cm.N - cm.l - 1


@given(changemakers(max_len=5), st.integers(0, 3))
def test_pairing_and_complement(sigma, tail):
    sq = sum(x * x for x in sigma)
    assume(sq >= 1)
    if tail == 0:
        assume(sq >= 2)
        slope = Fraction(sq)
    else:
        slope = Fraction((sq + 1) * (tail + 1) - 1, tail + 1)
    cm = build_changemaker(slope, sigma)
    assert cm.N == len(sigma) + (0 if tail == 0 else tail + 1)
    for v in cm.basis:
        assert all(sum(a * b for a, b in zip(v, w)) == 0 for w in cm.w)
    if cm.gram:
        assert is_positive_definite(cm.gram)
        # the complement of w_0..w_l in Z^N has determinant p
        assert det(cm.gram) == slope.numerator


@settings(max_examples=60)
@given(changemakers(max_len=4, max_value=4), st.integers(0, 2))
def test_recovery_matches_enumeration(sigma, tail):
    sq = sum(x * x for x in sigma)
    assume(sq >= 2 and sq <= 24)
    slope = Fraction(sq) if tail == 0 else Fraction((sq + 1) * (tail + 1) - 1, tail + 1)
    cm = build_changemaker(slope, sigma)
    assume(cm.N <= 5)
    values = recover_torsion_values(cm)
    assert values == torsion_oracle(cm)
    assert genus_consistent(cm)


def test_genus_bound_chain():
    for sigma in all_changemakers(6, 40):
        stable = tuple(x for x in sigma if x > 1)
        B = genus_bound_B(stable)
        g = genus(sigma)
        if stable:
            assert B <= 4 * g - (stable[-1] - 2) ** 2 + 4 <= 4 * g + 4
        else:
            assert B == 0


def test_enumeration_matches_filter():
    for length in range(1, 5):
        for sq in range(1, 20):
            want = [s for s in product(range(0, 5), repeat=length)
                    if is_changemaker(s) and sum(x * x for x in s) == sq]
            assert enumerate_changemakers(length, sq) == sorted(want)


def test_uniqueness_at_twenty_one():
    for sigma in [(1, 1, 1, 1, 1, 4), (1, 2, 2, 2, 2, 2)]:
        found = {v.sigma for v in uniqueness_search(21, build_changemaker(21, sigma).gram)}
        assert found == {(1, 1, 1, 1, 1, 4), (1, 2, 2, 2, 2, 2)}


def test_uniqueness_at_nine():
    G = build_changemaker(9, (1, 2, 2)).gram
    found = [v.sigma for v in uniqueness_search(9, G)]
    assert found == [(1, 2, 2)]


def test_uniqueness_rank_bound():
    G = build_changemaker(21, (1, 1, 1, 1, 1, 4)).gram
    with pytest.raises(ValueError):
        uniqueness_search(21, G, max_rank=2)
