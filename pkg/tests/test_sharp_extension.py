import pytest
from hypothesis import assume, given, settings, strategies as st

from surgery_lattices.knot_invariants import KnotModel, VHSeq, d_by_class, d_for_covector
from surgery_lattices.linear_lattice import class_key, class_minima, enumerate_C, is_short, norm
from surgery_lattices.rationals_cf import interpolation_sequence
from surgery_lattices.sharp_extension import (ExtensionPair, check_extension_d_equality,
                                              extend_spinc, extension_case, extension_pairs_along,
                                              genus_bound_consequence, lemma28_bound, middle_case_shift,
                                              sharpness_identity_check)
from strategies import canonical_terms, v_sequences

TREFOIL = KnotModel.torus(3, 2).V

tails = st.tuples(st.lists(st.integers(2, 4), max_size=3), st.integers(1, 3)).map(
    lambda t: tuple(t[0]) + (t[1],))


def make_pair(base, tail):
    try:
        return ExtensionPair.of(base, base + tail)
    except (ValueError, AssertionError):
        return None


def test_extension_examples():
    pair = ExtensionPair.of((3, 2), (3, 2, 3))
    assert extend_spinc(pair, (1, 0)) == (1, 0, -1)
    assert extension_case(pair, (1, 0)) == "append"
    pair = ExtensionPair.of((4,), (4, 2, 2, 1))
    assert extend_spinc(pair, (0,)) == (0, 0, 0, 1)
    pair = ExtensionPair.of((3,), (3, 2))
    assert extend_spinc(pair, (3,)) == (3, 0)


def test_invalid_pairs():
    with pytest.raises(ValueError):
        ExtensionPair.of((3, 2), (3, 3, 2))
    with pytest.raises(ValueError):
        ExtensionPair.of((3, 2), (3, 2))
    with pytest.raises(ValueError):
        ExtensionPair.of((1,), (1, 1))
    with pytest.raises(ValueError):
        extend_spinc(ExtensionPair.of((3,), (3, 2)), (5,))


def test_middle_low_case_needs_the_plus_one_ending():
    pair = ExtensionPair.of((2, 3), (2, 3, 1))
    s = (0, -1)
    assert extension_case(pair, s) == "middle-low"
    D = d_by_class(pair.base, TREFOIL)[s]
    corrected = extend_spinc(pair, s)
    literal = extend_spinc(pair, s, literal=True)
    assert corrected == (0, -1, 1) and literal == (0, -1, -1)
    assert is_short(pair.ext, corrected) and is_short(pair.ext, literal)
    assert d_for_covector(pair.ext, TREFOIL, corrected) == D
    assert d_for_covector(pair.ext, TREFOIL, literal) != D


def test_middle_case_shift_keeps_class():
    pair = ExtensionPair.of((3, 3), (3, 3, 2, 1))
    s1, s2, t = middle_case_shift(pair, (1, 1))
    assert t == 1 and s1 == (1, 1, 0, -1)
    assert class_key(pair.ext, s1) == class_key(pair.ext, s2)
    with pytest.raises(ValueError):
        middle_case_shift(ExtensionPair.of((3, 2), (3, 2, 3)), (1, 0))


@settings(max_examples=150)
@given(canonical_terms(max_len=4, a0_max=8, a_max=4), tails, v_sequences())
def test_extensions_are_short_and_keep_D(base, tail, vals):
    pair = make_pair(base, tail)
    assume(pair is not None)
    V = VHSeq(vals)
    mins = class_minima(pair.ext, "chain")
    id_rows = sharpness_identity_check(pair, V)
    for row, id_row in zip(check_extension_d_equality(pair, V, mode="raw"), id_rows):
        assert row["ok"], row
        s1 = tuple(row["extension"])
        assert norm(pair.ext, s1) == mins[class_key(pair.ext, s1)]
        if row["case"] != "exceptional":
            assert row["lhs"] == row["rhs"]
            assert id_row["ok"], id_row
        elif row["lhs"] == row["rhs"]:
            assert id_row["ok"], id_row


@settings(max_examples=60)
@given(canonical_terms(max_len=4, a0_max=8, a_max=4), tails)
def test_literal_form_is_short(base, tail):
    pair = make_pair(base, tail)
    assume(pair is not None)
    for s in enumerate_C(pair.base):
        assert is_short(pair.ext, extend_spinc(pair, s, literal=True))


@pytest.mark.parametrize("rs", [(3, 2), (4, 3), (5, 2)])
def test_chain_above_rs_minus_one(rs):
    r, s = rs
    V = KnotModel.torus(r, s).V
    pairs = extension_pairs_along(interpolation_sequence(r * s - 1, r * s + 6))
    assert pairs
    for pair in pairs:
        assert all(row["ok"] for row in check_extension_d_equality(pair, V))
        assert all(row["ok"] for row in sharpness_identity_check(pair, V))


def test_hypothesis_mode_flags_nonzero_exceptional_values():
    pair = ExtensionPair.of((2, 2), (2, 2, 1))
    V = VHSeq((2,))
    rows = {tuple(r["class"]): r for r in check_extension_d_equality(pair, V)}
    raw = {tuple(r["class"]): r for r in check_extension_d_equality(pair, V, mode="raw")}
    assert rows[(0, 0)]["case"] == "exceptional"
    assert raw[(0, 0)]["ok"] and not rows[(0, 0)]["ok"]
    with pytest.raises(ValueError):
        check_extension_d_equality(pair, V, mode="other")


def test_genus_slope_bound_examples():
    V = KnotModel.torus(3, 2).V  # zero index 1
    assert not lemma28_bound(2, V)
    assert lemma28_bound(4, V)  # 7^2 >= 25
    assert genus_bound_consequence(4, V)
    with pytest.raises(ValueError):
        lemma28_bound(0, V)


@given(v_sequences(max_len=8), st.integers(1, 60))
def test_genus_slope_bound_is_monotone(vals, n):
    V = VHSeq(vals)
    if lemma28_bound(n, V):
        assert lemma28_bound(n + 1, V)
        assert genus_bound_consequence(n, V)
