from fractions import Fraction
from math import gcd

import pytest

from surgery_lattices.slope_pipeline import (TorusKnot, alexander_pipeline, charslope_threshold,
                                             comparison_table, lspace_zone, ni_zhang_threshold,
                                             satellite_chain, sharp_base_zone, slope_verdict,
                                             thm_A_zone, torus_changemakers)


def torus_pairs(limit):
    return [(r, s) for r in range(3, limit + 1) for s in range(2, r) if gcd(r, s) == 1]


def test_threshold_examples():
    assert charslope_threshold(TorusKnot(5, 4))["threshold"] == Fraction(473, 4)
    assert charslope_threshold(TorusKnot(3, 2))["threshold"] == Fraction(43, 4)
    assert charslope_threshold(TorusKnot(5, 2))["threshold"] == Fraction(129, 4)
    assert charslope_threshold(TorusKnot(5, 4))["fourGPlus4"] == 28


def test_ni_zhang_examples():
    assert ni_zhang_threshold(TorusKnot(5, 4)) == Fraction(10800, 67)
    assert ni_zhang_threshold(TorusKnot(3, 2)) == Fraction(720, 67)


def test_invalid_knots():
    for r, s in [(4, 6), (2, 3), (3, 3), (5, 1)]:
        with pytest.raises(ValueError):
            TorusKnot(r, s)


def test_zones():
    tk = TorusKnot(3, 2)
    assert lspace_zone(tk, 1) and not thm_A_zone(tk, 1)
    assert not sharp_base_zone(tk, Fraction(9, 2)) and sharp_base_zone(tk, 5)
    assert not thm_A_zone(tk, Fraction(15, 2)) and thm_A_zone(tk, 8)
    # for T(5,4) the genus bound decides: 4g + 4 = 28 > rs - 1 = 19
    assert thm_A_zone(TorusKnot(5, 4), 28) and not thm_A_zone(TorusKnot(5, 4), 27)


def test_threshold_above_lspace_bound():
    for r, s in torus_pairs(30):
        if r * s > 60:
            continue
        th = charslope_threshold(TorusKnot(r, s))
        assert th["threshold"] >= th["twoGMinus1"] == 2 * TorusKnot(r, s).genus - 1


def test_satellite_chain_at_threshold():
    report = satellite_chain(TorusKnot(5, 4), Fraction(473, 4))
    assert report.values == [393, 393, Fraction(81, 4), Fraction(81, 4), 5]
    assert all(report.lines_ok) and report.auxiliary_ok and report.holds
    assert report.failed_line is None
    assert satellite_chain(TorusKnot(3, 2), Fraction(43, 4)).values[0] == 19


def test_satellite_chain_below_threshold_raises():
    with pytest.raises(ValueError):
        satellite_chain(TorusKnot(5, 4), 100)


def test_satellite_chain_grid():
    for r, s in torus_pairs(12):
        tk = TorusKnot(r, s)
        th = charslope_threshold(tk)["threshold"]
        for q in range(1, 5):
            p = -(-th.numerator * q // th.denominator)
            if gcd(p, q) != 1:
                continue
            report = satellite_chain(tk, Fraction(p, q))
            assert report.auxiliary_ok
            assert report.lines_ok[1:] == [True, True, True]


def test_slope_verdict_fields():
    v = slope_verdict(TorusKnot(5, 4), 119)
    assert v.checks["charSlopeZone"] and not v.checks["niZhangZone"]
    assert v.checks["satelliteChain"] is True
    assert v.thresholds["rsMinus1"] == 19
    low = slope_verdict(TorusKnot(3, 2), 1)
    assert low.checks["lspace"] and not low.checks["thmA_zone"]
    assert low.chain is None and low.checks["satelliteChain"] is None
    assert v.to_json()["thresholds"]["threshold"] == "473/4"


def test_comparison_table_shape():
    rows = comparison_table(30)
    assert len(rows) == len(torus_pairs(30))
    assert all(row["ratio"] == row["threshold"] / row["niZhang"] for row in rows)
    # small knots are where the new constant does not win
    losers = sorted((row["r"], row["s"]) for row in rows if not row["improved"])
    assert losers == [(3, 2), (4, 3), (5, 2)]


def test_torus_changemakers_example():
    assert torus_changemakers(TorusKnot(5, 4), 21) == [(1, 1, 1, 1, 1, 4)]


@pytest.mark.slow
@pytest.mark.parametrize("rs", [(3, 2), (4, 3), (5, 2)])
def test_pipeline_over_uniqueness_zone(rs):
    tk = TorusKnot(*rs)
    g = tk.genus
    for n in range(4 * g + 4, 4 * g + 15):
        res = alexander_pipeline(tk, n)
        assert res.ok, res.to_json()
        for sigma, found in res.structures.items():
            assert sigma in found


def test_pipeline_outside_zone_raises():
    with pytest.raises(ValueError):
        alexander_pipeline(TorusKnot(3, 2), 7)
