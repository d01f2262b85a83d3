"""Slope thresholds for torus knots and the Alexander-uniqueness pipeline.

All thresholds are exact rationals.  The pipeline reports which hypotheses
hold at a given slope; it does not try to decide knot types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .changemaker import (DEFAULT_MAX_RANK, build_changemaker, enumerate_changemakers, genus,
                          recover_torsion, uniqueness_search)
from .knot_invariants import KnotModel, alex_from_torsion
from .rationals_cf import as_slope, format_rational

HYPERBOLIC_CONSTANT = Fraction(43, 4)


@dataclass(frozen=True)
class TorusKnot:
    r: int
    s: int

    def __post_init__(self):
        if not (self.r > self.s > 1) or gcd(self.r, self.s) != 1:
            raise ValueError(f"need r > s > 1 coprime, got ({self.r}, {self.s})")

    @property
    def genus(self) -> int:
        return (self.r - 1) * (self.s - 1) // 2

    @property
    def model(self) -> KnotModel:
        return KnotModel.torus(self.r, self.s)

    def __str__(self):
        return f"T({self.r},{self.s})"


def charslope_threshold(tk: TorusKnot) -> dict:
    """43/4 (rs - r - s), alongside 2g - 1 = rs - r - s and 4g + 4."""
    g = tk.genus
    two_g_minus_1 = tk.r * tk.s - tk.r - tk.s
    assert two_g_minus_1 == 2 * g - 1
    return {"threshold": HYPERBOLIC_CONSTANT * two_g_minus_1,
            "twoGMinus1": Fraction(two_g_minus_1),
            "fourGPlus4": Fraction(4 * g + 4)}


def ni_zhang_threshold(tk: TorusKnot) -> Fraction:
    return Fraction(30 * (tk.r ** 2 - 1) * (tk.s ** 2 - 1), 67)


def lspace_zone(tk: TorusKnot, slope) -> bool:
    return as_slope(slope) >= 2 * tk.genus - 1


def sharp_base_zone(tk: TorusKnot, slope) -> bool:
    """At or above rs - 1, where surgery on the torus knot bounds a sharp manifold."""
    return as_slope(slope) >= tk.r * tk.s - 1


def thm_A_zone(tk: TorusKnot, slope) -> bool:
    slope = as_slope(slope)
    return slope >= 4 * tk.genus + 4 and slope > tk.r * tk.s - 1


@dataclass
class ChainReport:
    values: list[Fraction]
    lines_ok: list[bool]
    auxiliary_ok: bool
    holds: bool

    @property
    def failed_line(self):
        return next((i + 1 for i, ok in enumerate(self.lines_ok) if not ok), None)

    def to_json(self) -> dict:
        return {"values": [format_rational(v) for v in self.values],
                "linesOk": self.lines_ok, "auxiliaryOk": self.auxiliary_ok,
                "failedLine": self.failed_line, "holds": self.holds}


def satellite_chain(tk: TorusKnot, slope) -> ChainReport:
    """Check p - rsq >= 39/4 q(rs-r-s) - q(r+s) >= 39/4 (M-2) - (2M-1) = 31/4 M - 37/2 >= M.

    M = max(r, s).  The auxiliary facts used silently in the second step
    (q >= 1, rs - r - s >= M - 2, and a non-negative bracket) are checked
    separately.
    """
    slope = as_slope(slope)
    if slope < HYPERBOLIC_CONSTANT * (tk.r * tk.s - tk.r - tk.s):
        raise ValueError(f"{slope} is below 43/4 (rs - r - s)")
    p, q, r, s = slope.numerator, slope.denominator, tk.r, tk.s
    M = max(r, s)
    c = Fraction(39, 4)
    v0 = Fraction(p - r * s * q)
    v1 = c * q * (r * s - r - s) - q * (r + s)
    v2 = c * (M - 2) - (2 * M - 1)
    v3 = Fraction(31, 4) * M - Fraction(37, 2)
    v4 = Fraction(M)
    lines_ok = [v0 >= v1, v1 >= v2, v2 == v3, v3 >= v4]
    bracket = c * (r * s - r - s) - (r + s)
    aux = q >= 1 and r * s - r - s >= M - 2 and bracket >= 0 and r + s <= 2 * M - 1
    return ChainReport([v0, v1, v2, v3, v4], lines_ok, aux, v0 >= M)


@dataclass
class SlopeVerdict:
    knot: TorusKnot
    slope: Fraction
    checks: dict
    thresholds: dict
    chain: ChainReport | None = None

    def to_json(self) -> dict:
        out = {"knot": str(self.knot), "slope": format_rational(self.slope),
               "checks": dict(self.checks),
               "thresholds": {k: format_rational(v) for k, v in self.thresholds.items()}}
        if self.chain is not None:
            out["satelliteChain"] = self.chain.to_json()
        return out


def slope_verdict(tk: TorusKnot, slope) -> SlopeVerdict:
    slope = as_slope(slope)
    th = charslope_threshold(tk)
    nz = ni_zhang_threshold(tk)
    chain = satellite_chain(tk, slope) if slope >= th["threshold"] else None
    checks = {
        "lspace": lspace_zone(tk, slope),
        "sharpBase": sharp_base_zone(tk, slope),
        "thmA_zone": thm_A_zone(tk, slope),
        "charSlopeZone": slope >= th["threshold"],
        "niZhangZone": slope >= nz,
        "satelliteChain": None if chain is None else chain.holds,
    }
    thresholds = dict(th, niZhang=nz, rsMinus1=Fraction(tk.r * tk.s - 1))
    return SlopeVerdict(tk, slope, checks, thresholds, chain)


def torus_changemakers(tk: TorusKnot, n: int, max_len: int | None = None) -> list[tuple[int, ...]]:
    """Zero-free changemaker tuples with sum of squares n that recover the torsion of tk."""
    target = tk.model.torsion
    g = tk.genus
    found = []
    for length in range(1, (max_len or n) + 1):
        for sigma in enumerate_changemakers(length, n, allow_zero=False):
            if genus(sigma) != g:
                continue
            if recover_torsion(build_changemaker(n, sigma, reduce=False)) == target:
                found.append(sigma)
    return found


@dataclass
class PipelineResult:
    knot: TorusKnot
    slope: int
    inputs: list[tuple[int, ...]]
    structures: dict = field(default_factory=dict)
    ok: bool = True

    def to_json(self) -> dict:
        return {"knot": str(self.knot), "slope": f"{self.slope}/1",
                "inputs": [list(x) for x in self.inputs],
                "structures": {",".join(map(str, k)): [list(x) for x in v]
                               for k, v in self.structures.items()},
                "ok": self.ok}


def alexander_pipeline(tk: TorusKnot, n: int, max_rank: int | None = None) -> PipelineResult:
    """At integer slope n in the uniqueness zone: every changemaker structure isometric to
    one realising tk must recover the torsion (hence Alexander polynomial) of tk."""
    if not thm_A_zone(tk, n):
        raise ValueError(f"{n} is outside the uniqueness zone of {tk}")
    target = tk.model.torsion
    inputs = torus_changemakers(tk, n)
    res = PipelineResult(tk, n, inputs, ok=bool(inputs))
    for sigma in inputs:
        cm = build_changemaker(n, sigma)
        bound = max(max_rank or DEFAULT_MAX_RANK, cm.N)
        others = uniqueness_search(n, cm.gram, max_rank=bound)
        res.structures[sigma] = [v.sigma for v in others]
        for v in others:
            t = recover_torsion(build_changemaker(n, v.sigma, reduce=False))
            if t != target or alex_from_torsion(t) != tk.model.alex or genus(v.sigma) != tk.genus:
                res.ok = False
        if sigma not in res.structures[sigma]:
            res.ok = False
    return res


def comparison_table(rmax: int) -> list[dict]:
    """43/4 (rs - r - s) against 30(r^2-1)(s^2-1)/67 for all r > s > 1, r <= rmax."""
    rows = []
    for r in range(3, rmax + 1):
        for s in range(2, r):
            if gcd(r, s) != 1:
                continue
            tk = TorusKnot(r, s)
            ours = charslope_threshold(tk)["threshold"]
            theirs = ni_zhang_threshold(tk)
            rows.append({"r": r, "s": s, "threshold": ours, "niZhang": theirs,
                         "ratio": ours / theirs, "improved": ours < theirs})
    return rows


__all__ = [
    "ChainReport", "HYPERBOLIC_CONSTANT", "PipelineResult", "SlopeVerdict", "TorusKnot",
    "alexander_pipeline", "charslope_threshold", "comparison_table", "lspace_zone",
    "ni_zhang_threshold", "satellite_chain", "sharp_base_zone", "slope_verdict",
    "thm_A_zone", "torus_changemakers",
]
