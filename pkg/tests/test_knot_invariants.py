from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from surgery_lattices.knot_invariants import (AlexPoly, KnotModel, TorsionSeq, VHSeq,
                                              alex_from_torsion, build_dtable, check_sum_identity,
                                              d_by_class, d_for_covector, d_tilde,
                                              sum_identity_sides, torsion_from_alex, torus_alexander)
from surgery_lattices.linear_lattice import LinearLattice, enumerate_C, pd_shift
from strategies import slopes, v_sequences


def semigroup_gaps(r, s):
    members = {a * r + b * s for a in range(s) for b in range(r)}
    return [k for k in range((r - 1) * (s - 1)) if k not in members]


def torsion_oracle(r, s):
    """t_i counts semigroup gaps at or above g + i."""
    gaps = semigroup_gaps(r, s)
    g = len(gaps)
    return tuple(sum(1 for x in gaps if x >= g + i) for i in range(g))


def alexander_oracle(r, s):
    """(1 - t) times the semigroup series, recentred on t^g."""
    gaps = set(semigroup_gaps(r, s))
    top = (r - 1) * (s - 1)
    series = [0 if k in gaps else 1 for k in range(top + 1)]
    poly = [series[0]] + [series[k] - series[k - 1] for k in range(1, top + 1)]
    g = top // 2
    return tuple(poly[g:])


torus_pairs = st.tuples(st.integers(2, 9), st.integers(2, 9)).filter(
    lambda t: t[0] > t[1] and gcd(*t) == 1)


def test_torus_examples():
    assert torsion_from_alex(torus_alexander(3, 2)).values == (1,)
    assert torsion_from_alex(torus_alexander(5, 4)).values == (3, 2, 1, 1, 1, 1)
    assert torus_alexander(5, 2).coeffs == (1, -1, 1)
    assert str(torus_alexander(3, 2)) == "t - 1 + t^-1"


def test_trefoil_d_examples():
    V = KnotModel.torus(3, 2).V
    assert d_tilde("5/2", V) == [-2, -2, 0, 0, 0]
    assert d_tilde(7, V) == [-2, 0, 0, 0, 0, 0, 0]


def test_vh_conventions():
    V = VHSeq((2, 1, 1))
    assert V.zero_index == 3
    assert V.h(-1) == 1 and V.h(0) == 2 and V.v(9) == 0
    with pytest.raises(ValueError):
        V.h(1)
    with pytest.raises(ValueError):
        VHSeq((1, 2))
    with pytest.raises(ValueError):
        VHSeq((-1,))


def test_alex_forms():
    assert AlexPoly((1, -1, 1)).is_lspace_form()
    assert not AlexPoly((3, -1)).is_lspace_form()
    assert not AlexPoly((1, 1)).is_lspace_form()
    assert AlexPoly((1, -1, 1)).at_one() == 1
    with pytest.raises(ValueError):
        KnotModel.from_alex((3, -1))


@given(torus_pairs)
def test_torus_torsion_matches_semigroup(rs):
    r, s = rs
    poly = torus_alexander(r, s)
    assert poly.coeffs == alexander_oracle(r, s)
    assert torsion_from_alex(poly).values == torsion_oracle(r, s)
    assert poly.g == (r - 1) * (s - 1) // 2
    assert poly.is_lspace_form() and poly.at_one() == 1


@given(st.lists(st.integers(0, 1), max_size=10))
def test_torsion_alex_roundtrip(steps):
    # L-space torsion drops by 0 or 1 at each step and ends at 1
    vals = []
    for x in reversed(steps):
        vals.insert(0, (vals[0] if vals else 0) + (x if vals else 1))
    t = TorsionSeq(vals)
    poly = alex_from_torsion(t)
    assert poly.is_lspace_form()
    assert torsion_from_alex(poly) == t
    assert poly.at_one() == 1


def test_torsion_without_lspace_form_raises():
    with pytest.raises(ValueError):
        alex_from_torsion(TorsionSeq((2,)))


@settings(max_examples=80)
@given(slopes(pmax=60, qmax=8), v_sequences())
def test_class_and_residue_multisets_agree(r, vals):
    table = build_dtable(r, VHSeq(vals))
    assert table.multisets_agree()


@given(slopes(pmax=200, qmax=20), v_sequences(max_len=10, top=20))
def test_sum_identity(r, vals):
    assert check_sum_identity(r, VHSeq(vals))


def test_sum_identity_example():
    lhs, rhs = sum_identity_sides("5/2", KnotModel.torus(3, 2).V)
    assert lhs == rhs == -4


@settings(max_examples=40)
@given(slopes(pmax=40, qmax=6), v_sequences(), st.data())
def test_d_is_a_class_function(r, vals, data):
    lat = LinearLattice.from_slope(r)
    V = VHSeq(vals)
    table = d_by_class(lat, V)
    s = data.draw(st.sampled_from(enumerate_C(lat)))
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=lat.rank, max_size=lat.rank))
    assert d_for_covector(lat, V, pd_shift(lat, s, coeffs)) == table[s]


def test_unknot_d_is_zero():
    lat = LinearLattice.from_slope("7/3")
    assert set(d_by_class(lat, KnotModel.unknot().V).values()) == {0}
