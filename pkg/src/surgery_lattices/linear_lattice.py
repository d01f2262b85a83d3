"""The linear lattice of the plumbing attached to a continued fraction.

Characteristic covectors are integer tuples ``c`` with ``c[i] = a[i] (mod 2)``.
Two of them represent the same spin-c structure on the boundary when their
difference is twice an integer combination of rows of the intersection
matrix ``M``.

Sets used throughout:

* ``M-set``: ``|c_i| <= a_i`` and neither ``c`` nor ``-c`` contains a full tank
  (these are exactly the short covectors);
* ``C-set``: the part of the M-set with ``2 - a_i <= c_i``, one per class;
* ``F-set``: the C-set with left-full covectors of non-negative first
  coordinate shifted as in :func:`build_F`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import isqrt

from .rationals_cf import NegCF, as_slope, evaluate_neg_cf, expand_neg_cf

DEFAULT_MAX_P = 200
BOX_ENUMERATION_LIMIT = 2_000


def max_p_bound() -> int:
    return int(os.environ.get("SLT_MAX_P", DEFAULT_MAX_P))


def gauss_jordan_inverse(m):
    """Exact inverse of a square integer matrix by Gauss-Jordan over Fractions."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def tridiagonal_det(terms) -> int:
    """Continuant: determinant of the tridiagonal (a_i; -1) matrix."""
    prev, cur = 1, 0
    for a in reversed(terms):
        prev, cur = a * prev - cur, prev
    return prev


@dataclass(frozen=True)
class LinearLattice:
    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(a) for a in self.terms)
        object.__setattr__(self, "terms", terms)
        if not NegCF(terms).relaxed:
            raise ValueError(f"not a valid continued fraction: {list(terms)}")

    @classmethod
    def from_slope(cls, r) -> "LinearLattice":
        return cls(expand_neg_cf(as_slope(r)).terms)

    @property
    def l(self) -> int:
        return len(self.terms) - 1

    @property
    def rank(self) -> int:
        return len(self.terms)

    @cached_property
    def slope(self) -> Fraction:
        return evaluate_neg_cf(self.terms)

    @property
    def p(self) -> int:
        return self.slope.numerator

    @property
    def q(self) -> int:
        return self.slope.denominator

    @cached_property
    def M(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        rows = []
        for i in range(n):
            row = [0] * n
            row[i] = self.terms[i]
            if i > 0:
                row[i - 1] = -1
            if i < n - 1:
                row[i + 1] = -1
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def det(self) -> int:
        return tridiagonal_det(self.terms)

    @cached_property
    def continuants(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(head, tail) with head[k] = K(a_0..a_{k-1}) and tail[k] = K(a_k..a_l)."""
        a = self.terms
        n = self.rank
        head = [1] * (n + 1)
        prev = 0
        for k in range(n):
            head[k + 1], prev = a[k] * head[k] - prev, head[k]
        tail = [1] * (n + 1)
        nxt = 0
        for k in range(n - 1, -1, -1):
            tail[k], nxt = a[k] * tail[k + 1] - nxt, tail[k + 1]
        return tuple(head), tuple(tail)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """det(M) * M^{-1}, from continuants: entry (i, j), i <= j, is
        K(a_0..a_{i-1}) * K(a_{j+1}..a_l)."""
        head, tail = self.continuants
        n = self.rank
        return tuple(
            tuple(head[min(i, j)] * tail[max(i, j) + 1] for j in range(n))
            for i in range(n))

    def adj_apply(self, s) -> list[int]:
        """adj(M) s in O(rank) using the rank-one structure of each triangle."""
        head, tail = self.continuants
        n = self.rank
        right = [0] * (n + 1)  # sum_{j >= i} tail[j+1] s_j
        for j in range(n - 1, -1, -1):
            right[j] = right[j + 1] + tail[j + 1] * s[j]
        out = []
        left = 0  # sum_{j < i} head[j] s_j
        for i in range(n):
            out.append(head[i] * right[i] + tail[i + 1] * left)
            left += head[i] * s[i]
        return out

    @cached_property
    def Minv(self) -> tuple[tuple[Fraction, ...], ...]:
        d = self.det
        return tuple(tuple(Fraction(x, d) for x in row) for row in self.adj)

    def row(self, i: int) -> tuple[int, ...]:
        """PD(h_i) in the dual basis: the i-th row of M."""
        return self.M[i]

    def __str__(self):
        return f"LinearLattice({list(self.terms)}; {self.p}/{self.q})"


def _check(lat: LinearLattice, s) -> tuple[int, ...]:
    if type(s) is not tuple:
        s = tuple(int(x) for x in s)
    if len(s) != lat.rank:
        raise ValueError(f"dimension mismatch: {len(s)} vs {lat.rank}")
    return s


def is_characteristic(lat: LinearLattice, s) -> bool:
    s = _check(lat, s)
    return all((c - a) % 2 == 0 for c, a in zip(s, lat.terms))


def norm(lat: LinearLattice, s) -> Fraction:
    """s M^{-1} s^T, exactly."""
    s = _check(lat, s)
    return Fraction(sum(x * u for x, u in zip(s, lat.adj_apply(s))), lat.det)


def pd_shift(lat: LinearLattice, s, coeffs) -> tuple[int, ...]:
    """s + 2 * sum_i coeffs[i] * PD(h_i)."""
    s = list(_check(lat, s))
    for i, k in enumerate(coeffs):
        if k:
            for j, m in enumerate(lat.M[i]):
                s[j] += 2 * k * m
    return tuple(s)


def class_key(lat: LinearLattice, s) -> tuple[int, ...]:
    """Invariant of the class of ``s``: adj(M) s reduced mod 2 det(M)."""
    s = _check(lat, s)
    mod = 2 * lat.det
    return tuple(u % mod for u in lat.adj_apply(s))


def same_class(lat: LinearLattice, s1, s2) -> bool:
    """Whether (s1 - s2)/2 is an integer combination of rows of M (exact solve)."""
    s1, s2 = _check(lat, s1), _check(lat, s2)
    diff = [a - b for a, b in zip(s1, s2)]
    if any(d % 2 for d in diff):
        raise ValueError("difference is not even; inputs are not both characteristic")
    half = [d // 2 for d in diff]
    x = [sum(m * h for m, h in zip(row, half)) for row in lat.Minv]
    return all(v.denominator == 1 for v in x)


def full_tank(lat: LinearLattice, s) -> bool:
    """Some i < j has c_i = a_i, c_j = a_j and c_k = a_k - 2 strictly between."""
    s = _check(lat, s)
    open_tank = False
    for c, a in zip(s, lat.terms):
        if c == a:
            if open_tank:
                return True
            open_tank = True
        elif c != a - 2:
            open_tank = False
    return False


def left_full_index(lat: LinearLattice, s):
    """The k > 0 with c_k = a_k and c_j = a_j - 2 for 0 < j < k, or None."""
    s = _check(lat, s)
    for k in range(1, lat.rank):
        if s[k] == lat.terms[k]:
            return k
        if s[k] != lat.terms[k] - 2:
            return None
    return None


def left_full(lat: LinearLattice, s) -> bool:
    return left_full_index(lat, s) is not None


def is_short(lat: LinearLattice, s) -> bool:
    """Membership in the M-set, which coincides with shortness."""
    s = _check(lat, s)
    if any(abs(c) > a for c, a in zip(s, lat.terms)):
        return False
    return not full_tank(lat, s) and not full_tank(lat, tuple(-c for c in s))


def in_C(lat: LinearLattice, s) -> bool:
    s = _check(lat, s)
    return all(2 - a <= c <= a for c, a in zip(s, lat.terms)) and is_short(lat, s)


def _dfs(lat, ranges, track_neg):
    a = lat.terms
    out = []

    def rec(i, prefix, pos_open, neg_open):
        if i == len(a):
            out.append(tuple(prefix))
            return
        for c in ranges[i]:
            if c == a[i]:
                if pos_open:
                    continue
                po = True
            else:
                po = pos_open and c == a[i] - 2
            if track_neg:
                if c == -a[i]:
                    if neg_open:
                        continue
                    no = True
                else:
                    no = neg_open and c == 2 - a[i]
            else:
                no = False
            prefix.append(c)
            rec(i + 1, prefix, po, no)
            prefix.pop()

    rec(0, [], False, False)
    return out


@lru_cache(maxsize=512)
def _C(lat):
    ranges = [range(2 - a, a + 1, 2) for a in lat.terms]
    return tuple(_dfs(lat, ranges, track_neg=False))


def enumerate_C(lat: LinearLattice) -> list[tuple[int, ...]]:
    """The C-set in lexicographic order.

    No element of the box ``2 - a_i <= c_i`` has a trough, so ``-c`` can
    never contain a full tank and only ``c`` needs checking.
    """
    return list(_C(lat))


def enumerate_M(lat: LinearLattice) -> list[tuple[int, ...]]:
    ranges = [range(-a, a + 1, 2) for a in lat.terms]
    return _dfs(lat, ranges, track_neg=True)


def _m_step(a, c, pos_open, neg_open):
    """Tank state after appending c, or None if a full tank closes in s or -s."""
    if c == a:
        if pos_open:
            return None
        po = True
    else:
        po = pos_open and c == a - 2
    if c == -a:
        if neg_open:
            return None
        no = True
    else:
        no = neg_open and c == 2 - a
    return po, no


def _m_counts(lat):
    """counts[i][state] = number of ways to complete an M-set prefix of length i."""
    a = lat.terms
    states = [(x, y) for x in (False, True) for y in (False, True)]
    counts = [None] * (len(a) + 1)
    counts[-1] = {st: 1 for st in states}
    for i in range(len(a) - 1, -1, -1):
        row = {}
        for st in states:
            total = 0
            for c in range(-a[i], a[i] + 1, 2):
                nxt = _m_step(a[i], c, *st)
                if nxt is not None:
                    total += counts[i + 1][nxt]
            row[st] = total
        counts[i] = row
    return counts


def count_M(lat: LinearLattice) -> int:
    return _m_counts(lat)[0][(False, False)]


def sample_M(lat: LinearLattice, k: int, rng) -> list[tuple[int, ...]]:
    """k independent uniform draws from the M-set, using ``rng.randrange``."""
    a = lat.terms
    counts = _m_counts(lat)
    out = []
    for _ in range(k):
        st = (False, False)
        s = []
        for i in range(len(a)):
            pick = rng.randrange(counts[i][st])
            for c in range(-a[i], a[i] + 1, 2):
                nxt = _m_step(a[i], c, *st)
                if nxt is None:
                    continue
                w = counts[i + 1][nxt]
                if pick < w:
                    s.append(c)
                    st = nxt
                    break
                pick -= w
        out.append(tuple(s))
    return out


def f_image(lat: LinearLattice, s) -> tuple[int, ...]:
    """The element of the F-set replacing ``s`` (an element of the C-set)."""
    s = _check(lat, s)
    k = left_full_index(lat, s)
    if k is None or s[0] < 0:
        return s
    a = lat.terms
    if k > 1:
        out = [s[0] + 2, -a[1]] + [2 - a[i] for i in range(2, k + 1)]
        if k + 1 <= lat.l:
            out.append(s[k + 1] + 2)
            out.extend(s[k + 2:])
    else:
        out = [s[0] + 2, -a[1]]
        if lat.l >= 2:
            out.append(s[2] + 2)
            out.extend(s[3:])
    return tuple(out)


def build_F(lat: LinearLattice) -> list[tuple[int, ...]]:
    return [f_image(lat, s) for s in enumerate_C(lat)]


@lru_cache(maxsize=512)
def _classes(lat):
    reps = {}
    for s in _C(lat):
        reps.setdefault(class_key(lat, s), s)
    return reps


def spinc_classes(lat: LinearLattice) -> dict[tuple[int, ...], tuple[int, ...]]:
    """class key -> canonical representative (the lexicographically least C-set member).

    The C-set has exactly one member per class, so the representative is that member.
    """
    return dict(_classes(lat))


def canonical_rep(lat: LinearLattice, s) -> tuple[int, ...]:
    return _classes(lat)[class_key(lat, s)]


def remove_troughs(lat: LinearLattice, s, max_steps: int = 10_000) -> tuple[int, ...]:
    """Move an element of the M-set into the C-set without changing class or norm.

    Repeatedly take the minimal trough k (c_k = -a_k) and the minimal j with
    c_i = 2 - a_i for j <= i < k, then add 2 * sum_{i=j}^{k} PD(h_i).
    """
    s = _check(lat, s)
    if not is_short(lat, s):
        raise ValueError(f"{s} is not in the M-set")
    a = lat.terms
    for _ in range(max_steps):
        troughs = [i for i, (c, ai) in enumerate(zip(s, a)) if c == -ai]
        if not troughs:
            return s
        k = troughs[0]
        j = k
        while j > 0 and s[j - 1] == 2 - a[j - 1]:
            j -= 1
        coeffs = [1 if j <= i <= k else 0 for i in range(lat.rank)]
        s = pd_shift(lat, s, coeffs)
    raise RuntimeError("trough removal did not terminate")


def box_size(lat: LinearLattice) -> int:
    size = 1
    for a in lat.terms:
        size *= a + 1
    return size


def _min_norm_box(lat, s):
    key = class_key(lat, s)
    best = None
    for c in product(*(range(-a, a + 1, 2) for a in lat.terms)):
        if class_key(lat, c) == key:
            v = norm(lat, c)
            if best is None or v < best:
                best = v
    return best


def _min_norm_chain(lat, s):
    """Exact minimum of ||s + 2Mx|| over all integer x.

    ||s + 2Mx|| = ||s|| + 4(x.Mx + s.x).  Any minimiser satisfies
    x.Mx + s.x <= 0, i.e. it lies in the ellipsoid
    (x - y)M(x - y) <= ||s||/4 centred at y = -M^{-1}s/2, which bounds each
    coordinate by |x_i - y_i|^2 <= ||s|| (M^{-1})_ii / 4.  M is tridiagonal,
    so x.Mx + s.x is minimised by a dynamic program along the chain.
    """
    a = lat.terms
    d = lat.det
    u = lat.adj_apply(s)
    n0 = sum(c * x for c, x in zip(s, u))  # ||s|| = n0 / d
    ranges = []
    for i in range(lat.rank):
        # y_i = -u_i / 2d ; radius^2 = n0 * adj_ii / 4d^2
        den = 4 * d * d
        r = isqrt(-(-n0 * lat.adj[i][i] // den)) + 1
        lo = (-u[i]) // (2 * d) - r
        hi = -(u[i] // (2 * d)) + r
        ranges.append(range(lo, hi + 1))
    xs = list(ranges[0])
    f = [a[0] * x * x + s[0] * x for x in xs]
    for i in range(1, lat.rank):
        ys = list(ranges[i])
        g = []
        for y in ys:
            y2 = 2 * y
            g.append(a[i] * y * y + s[i] * y + min(v - y2 * x for x, v in zip(xs, f)))
        xs, f = ys, g
    return Fraction(n0 + 4 * d * min(min(f), 0), d)


def class_minima(lat: LinearLattice, method: str = "auto") -> dict:
    """class key -> minimum norm over the class, for every class."""
    if method == "auto":
        method = "box" if box_size(lat) <= BOX_ENUMERATION_LIMIT else "chain"
    if method == "box":
        best = {}
        for c in product(*(range(-a, a + 1, 2) for a in lat.terms)):
            key = class_key(lat, c)
            v = norm(lat, c)
            if key not in best or v < best[key]:
                best[key] = v
        return best
    if method == "chain":
        return {key: _min_norm_chain(lat, s) for key, s in spinc_classes(lat).items()}
    raise ValueError(f"unknown method {method!r}")


def brute_min_norm_in_class(lat: LinearLattice, s, method: str = "auto",
                            max_p: int | None = None) -> Fraction:
    """Minimum norm over characteristic covectors in the class of ``s``.

    ``box`` enumerates every characteristic covector with |c_i| <= a_i;
    ``chain`` minimises over the whole coset by a dynamic program and does
    not rely on the box.  ``auto`` picks ``box`` when it is small.
    """
    s = _check(lat, s)
    if not is_characteristic(lat, s):
        raise ValueError(f"{s} is not characteristic")
    bound = max_p_bound() if max_p is None else max_p
    if lat.p > bound:
        raise ValueError(f"p = {lat.p} exceeds brute-force bound {bound}")
    if method == "auto":
        method = "box" if box_size(lat) <= BOX_ENUMERATION_LIMIT else "chain"
    if method == "box":
        return _min_norm_box(lat, s)
    if method == "chain":
        return _min_norm_chain(lat, s)
    raise ValueError(f"unknown method {method!r}")


def count_tables(lat: LinearLattice):
    """Observed and predicted first-coordinate counts for the C- and F-sets.

    Returns ``{c: (observed_C, expected_C, observed_leftfull, expected_leftfull,
    observed_F, expected_F)}`` over c = a0 (mod 2), -a0 < c <= a0.
    """
    a0 = lat.terms[0]
    q = lat.q
    r = a0 * q - lat.p
    C = enumerate_C(lat)
    F = [f_image(lat, s) for s in C]
    table = {}
    for c in range(2 - a0, a0 + 1, 2):
        obs_c = sum(1 for s in C if s[0] == c)
        obs_lf = sum(1 for s in C if s[0] == c and left_full(lat, s))
        obs_f = sum(1 for s in F if s[0] == c)
        exp_c = q - r if c == a0 else q
        exp_lf = 0 if c == a0 else r
        exp_f = q - r if c in (0, 1) else q
        table[c] = (obs_c, exp_c, obs_lf, exp_lf, obs_f, exp_f)
    return table
