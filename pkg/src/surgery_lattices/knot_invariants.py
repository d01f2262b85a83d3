"""Alexander polynomials, torsion coefficients and surgery d-invariants.

d-invariants of ``S^3_{p/q}(K)`` are handled through their difference from
the unknot surgery, ``D(i) = d(S^3_{p/q}(K), i) - d(S^3_{p/q}(U), i)``.  Two
independent routes are provided:

* :func:`d_tilde`, indexed by residues ``i mod p`` and driven by the
  V-sequence of the knot;
* :func:`d_by_class`, indexed by spin-c classes of the linear lattice and
  read off from the first coordinate of each C-set representative.

They use different labellings of the spin-c structures, so only their value
multisets are comparable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linear_lattice import (LinearLattice, canonical_rep, enumerate_C, f_image,
                             is_short, left_full, norm)
from .rationals_cf import as_slope, format_rational, split_slope


@dataclass(frozen=True)
class AlexPoly:
    """Symmetric Alexander polynomial a0 + sum_{i=1}^g a_i (t^i + t^-i).

    ``coeffs[i]`` is a_i; trailing zeros are stripped so ``g`` is the degree.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs] or [1]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def g(self) -> int:
        return len(self.coeffs) - 1

    def at_one(self) -> int:
        return self.coeffs[0] + 2 * sum(self.coeffs[1:])

    def is_lspace_form(self) -> bool:
        """Non-zero coefficients are +-1, alternate in sign, and a_g = 1."""
        nz = [a for a in reversed(self.coeffs) if a]
        if not nz or any(a not in (1, -1) for a in nz):
            return False
        if self.g > 0 and self.coeffs[-1] != 1:
            return False
        return all(x == -y for x, y in zip(nz, nz[1:]))

    def laurent(self) -> dict[int, int]:
        out = {0: self.coeffs[0]}
        for i, a in enumerate(self.coeffs[1:], start=1):
            if a:
                out[i] = out[-i] = a
        return out

    def __str__(self):
        terms = []
        for e in range(self.g, -self.g - 1, -1):
            a = self.coeffs[abs(e)]
            if not a:
                continue
            mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if e != 0 and abs(a) == 1:
                body = mono
            else:
                body = str(abs(a)) if e == 0 else f"{abs(a)}{mono}"
            terms.append(("-" if a < 0 else "+") + " " + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class TorsionSeq:
    """t_0, t_1, ... with trailing zeros stripped; t_i = 0 beyond the stored values."""

    values: tuple[int, ...]

    def __post_init__(self):
        v = [int(x) for x in self.values]
        while v and v[-1] == 0:
            v.pop()
        object.__setattr__(self, "values", tuple(v))

    def at(self, i: int) -> int:
        i = abs(i)
        return self.values[i] if i < len(self.values) else 0

    def is_valid(self) -> bool:
        v = self.values
        return all(x >= 0 for x in v) and all(x >= y for x, y in zip(v, v[1:]))


@dataclass(frozen=True)
class VHSeq:
    """V_0, V_1, ... (non-negative, non-increasing, eventually zero); H_{-i} = V_i."""

    V: tuple[int, ...]

    def __post_init__(self):
        v = [int(x) for x in self.V]
        while v and v[-1] == 0:
            v.pop()
        if any(x < 0 for x in v) or any(x < y for x, y in zip(v, v[1:])):
            raise ValueError(f"V must be non-negative and non-increasing: {v}")
        object.__setattr__(self, "V", tuple(v))

    def v(self, i: int) -> int:
        if i < 0:
            raise ValueError("V is indexed by i >= 0")
        return self.V[i] if i < len(self.V) else 0

    def h(self, j: int) -> int:
        if j > 0:
            raise ValueError("only H_j with j <= 0 is determined by H_{-i} = V_i")
        return self.v(-j)

    @property
    def zero_index(self) -> int:
        """min{i : V_i = 0}."""
        return len(self.V)


def torsion_from_alex(poly: AlexPoly) -> TorsionSeq:
    """t_i = sum_{j >= 1} j a_{i+j}."""
    a = poly.coeffs
    g = poly.g
    return TorsionSeq(tuple(sum(j * a[i + j] for j in range(1, g - i + 1))
                            for i in range(g)))


def alex_from_torsion(t: TorsionSeq) -> AlexPoly:
    """Invert via a_{j+1} = t_j - 2 t_{j+1} + t_{j+2}; a_0 from sign alternation."""
    g = len(t.values)
    upper = [t.at(j) - 2 * t.at(j + 1) + t.at(j + 2) for j in range(g)]
    first = next((x for x in upper if x), 0)
    a0 = -first if first else 1
    poly = AlexPoly((a0, *upper))
    if not poly.is_lspace_form() or poly.at_one() != 1:
        raise ValueError(f"torsion sequence {t.values} is not realised by an L-space-form polynomial")
    return poly


def _poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return out


def _poly_divexact(f, g):
    f = list(f)
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(f[k + len(g) - 1], g[-1])
        if r:
            raise ArithmeticError("inexact division")
        q[k] = c
        for j, y in enumerate(g):
            f[k + j] -= c * y
    if any(f):
        raise ArithmeticError("inexact division")
    return q


def torus_alexander(r: int, s: int) -> AlexPoly:
    """Symmetrised (t^{rs}-1)(t-1) / ((t^r-1)(t^s-1)) for r > s > 1 coprime."""
    if not (r > s > 1) or gcd(r, s) != 1:
        raise ValueError(f"need r > s > 1 coprime, got ({r}, {s})")

    def xm1(k):
        return [-1] + [0] * (k - 1) + [1]

    num = _poly_mul(xm1(r * s), xm1(1))
    den = _poly_mul(xm1(r), xm1(s))
    coeffs = _poly_divexact(num, den)
    g = (r - 1) * (s - 1) // 2
    assert len(coeffs) == 2 * g + 1
    return AlexPoly(tuple(coeffs[g:]))


def v_from_torsion(t: TorsionSeq) -> VHSeq:
    return VHSeq(t.values)


@dataclass(frozen=True)
class KnotModel:
    name: str
    V: VHSeq
    alex: AlexPoly | None = None

    @classmethod
    def unknot(cls) -> "KnotModel":
        return cls("unknot", VHSeq(()), AlexPoly((1,)))

    @classmethod
    def torus(cls, r: int, s: int) -> "KnotModel":
        poly = torus_alexander(r, s)
        return cls(f"T({r},{s})", v_from_torsion(torsion_from_alex(poly)), poly)

    @classmethod
    def from_alex(cls, coeffs) -> "KnotModel":
        poly = AlexPoly(tuple(coeffs))
        if not poly.is_lspace_form():
            raise ValueError(f"{poly} is not of L-space form")
        return cls(f"alex:{','.join(map(str, poly.coeffs))}",
                   v_from_torsion(torsion_from_alex(poly)), poly)

    @classmethod
    def from_v(cls, values) -> "KnotModel":
        V = VHSeq(tuple(values))
        return cls(f"v:{','.join(map(str, V.V)) or '0'}", V, None)

    @property
    def torsion(self) -> TorsionSeq:
        return TorsionSeq(self.V.V)


def _ceil_div(a, b):
    return -(-a // b)


def d_tilde(slope, V: VHSeq) -> list[Fraction]:
    """D(i) for 0 <= i < p, indexed by residues.

    Evaluated as -2 V_{min(floor(i/q), ceil((p-i)/q))} and checked against
    -2 max(V_{floor(i/q)}, H_{floor((i-p)/q)}).
    """
    slope = as_slope(slope)
    p, q = slope.numerator, slope.denominator
    out = []
    for i in range(p):
        vonly = -2 * V.v(min(i // q, _ceil_div(p - i, q)))
        with_h = -2 * max(V.v(i // q), V.h((i - p) // q))
        if vonly != with_h:
            raise AssertionError(f"V-only and V/H formulas disagree at i={i}")
        out.append(Fraction(vonly))
    return out


def lens_d(lat: LinearLattice, s) -> Fraction:
    """d(S^3_{p/q}(U), [s]) = (||s|| - (l + 1)) / 4 for short s."""
    if not is_short(lat, s):
        raise ValueError(f"{tuple(s)} is not short")
    return (norm(lat, s) - lat.rank) / 4


def d_of_C_element(lat: LinearLattice, s, V: VHSeq) -> Fraction:
    """D for an element of the C-set, read off from c_0 and left-fullness."""
    a0 = lat.terms[0]
    c0 = s[0]
    if 0 <= c0 < a0 and left_full(lat, s):
        return Fraction(-2 * V.v((a0 - 2 - c0) // 2))
    return Fraction(-2 * V.v((a0 - abs(c0)) // 2))


def d_of_F_element(lat: LinearLattice, s, V: VHSeq) -> Fraction:
    a0 = lat.terms[0]
    return Fraction(-2 * V.v((a0 - abs(s[0])) // 2))


def d_by_class(lat: LinearLattice, V: VHSeq, check_F: bool = False) -> dict:
    """canonical class representative -> D.

    With ``check_F`` the plain formula on the F-set is evaluated as well and
    must agree class by class.
    """
    table = {s: d_of_C_element(lat, s, V) for s in enumerate_C(lat)}
    if check_F:
        for s in enumerate_C(lat):
            f = f_image(lat, s)
            if d_of_F_element(lat, f, V) != table[s]:
                raise AssertionError(f"C and F routes disagree on class of {s}")
    return table


def d_for_covector(lat: LinearLattice, V: VHSeq, s) -> Fraction:
    """D of the class of an arbitrary characteristic covector."""
    return d_of_C_element(lat, canonical_rep(lat, s), V)


def sum_identity_sides(slope, V: VHSeq) -> tuple[Fraction, Fraction]:
    """Both sides of sum_i D^{p/q}(i) = 2 r V_{floor(n/2)} + q sum_j D^n(j)."""
    slope = as_slope(slope)
    n, r, q = split_slope(slope)
    lhs = sum(d_tilde(slope, V), Fraction(0))
    rhs = 2 * r * V.v(n // 2) + q * sum(d_tilde(n, V), Fraction(0))
    return lhs, rhs


def check_sum_identity(slope, V: VHSeq) -> bool:
    lhs, rhs = sum_identity_sides(slope, V)
    return lhs == rhs


@dataclass
class DTable:
    slope: Fraction
    by_residue: list[Fraction]
    by_class: dict = field(default_factory=dict)

    def multisets_agree(self) -> bool:
        return Counter(self.by_residue) == Counter(self.by_class.values())

    def to_json(self) -> dict:
        return {
            "slope": format_rational(self.slope),
            "byResidue": [format_rational(x) for x in self.by_residue],
            "byClassMultiset": sorted((format_rational(x) for x in self.by_class.values()),
                                      key=lambda t: Fraction(t)),
        }


def build_dtable(slope, V: VHSeq) -> DTable:
    slope = as_slope(slope)
    lat = LinearLattice.from_slope(slope)
    return DTable(slope, d_tilde(slope, V), d_by_class(lat, V, check_F=True))
