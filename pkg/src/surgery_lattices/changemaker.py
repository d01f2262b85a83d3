"""Changemaker lattices and torsion-coefficient recovery.

A p/q-changemaker lattice is the orthogonal complement, in an orthonormal
lattice Z^N, of vectors w_0, ..., w_l where w_0 carries the changemaker
coefficients.  Ambient coordinates are ordered f_1..f_t (integral case) or
f_1..f_t, e_0..e_s (non-integral case, s = m_l).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .intlattice import (SearchLimitExceeded, det, find_isometry, gram, integer_kernel,
                         is_positive_definite, lll_gram, theta_counts)
from .knot_invariants import TorsionSeq
from .rationals_cf import as_slope, expand_neg_cf, split_slope

DEFAULT_MAX_RANK = 8


def is_changemaker(sigma) -> bool:
    """0 <= s_1 <= 1 and s_{i-1} <= s_i <= s_1 + ... + s_{i-1} + 1."""
    total = 0
    prev = 0
    for i, x in enumerate(sigma):
        if i == 0:
            if not 0 <= x <= 1:
                return False
        elif not prev <= x <= total + 1:
            return False
        total += x
        prev = x
    return True


@dataclass(frozen=True)
class ChangemakerVec:
    sigma: tuple[int, ...]
    non_integral: bool = False

    @property
    def n(self) -> int:
        return sum(x * x for x in self.sigma) + (1 if self.non_integral else 0)


@dataclass
class ChangemakerLattice:
    slope: Fraction
    sigma: tuple[int, ...]
    cf: tuple[int, ...]
    w: list[list[int]]
    N: int
    basis: list[list[int]] = field(repr=False)
    gram: list[list[int]]
    weights: list[int] = field(repr=False)

    @property
    def n(self) -> int:
        return self.cf[0]

    @property
    def l(self) -> int:
        return len(self.cf) - 1

    @property
    def integral(self) -> bool:
        return self.slope.denominator == 1

    @property
    def stable(self) -> tuple[int, ...]:
        return tuple(x for x in self.sigma if x > 1)

    @property
    def vec(self) -> ChangemakerVec:
        return ChangemakerVec(self.sigma, not self.integral)


def build_changemaker(slope, sigma, reduce: bool = True) -> ChangemakerLattice:
    """Vectors w_0..w_l, an integral basis of their complement and its Gram matrix."""
    slope = as_slope(slope)
    sigma = tuple(int(x) for x in sigma)
    if not is_changemaker(sigma):
        raise ValueError(f"{sigma} violates the changemaker condition")
    n, _, q = split_slope(slope)
    cf = expand_neg_cf(slope).terms
    t = len(sigma)
    sq = sum(x * x for x in sigma)
    if q == 1:
        if sq != n:
            raise ValueError(f"|w_0|^2 = {sq} but the slope needs {n}")
        w = [list(sigma)]
        N = t
        weights = list(sigma)
    else:
        if sq + 1 != n:
            raise ValueError(f"|w_0|^2 = {sq + 1} but the slope needs {n}")
        m = [0]
        for a in cf[1:]:
            m.append(m[-1] + a - 1)
        s = m[-1]
        N = t + s + 1
        e = lambda i: t + i  # noqa: E731  (index of e_i)
        w0 = list(sigma) + [0] * (s + 1)
        w0[e(0)] = 1
        w = [w0]
        for k in range(1, len(cf)):
            wk = [0] * N
            wk[e(m[k - 1])] = -1
            for i in range(m[k - 1] + 1, m[k] + 1):
                wk[e(i)] = 1
            w.append(wk)
        weights = list(sigma) + [1] + [0] * s
    if N == 0:
        raise ValueError("empty changemaker vector")
    for i in range(len(w)):
        for j in range(len(w)):
            expect = cf[j] if i == j else (-1 if abs(i - j) == 1 else 0)
            if sum(x * y for x, y in zip(w[i], w[j])) != expect:
                raise AssertionError("pairing of w-vectors is not the linear-lattice matrix")
    basis = integer_kernel(w, N)
    G = gram(basis)
    if reduce and basis:
        U, G = lll_gram(G)
        basis = [[sum(U[i][k] * basis[k][c] for k in range(len(basis))) for c in range(N)]
                 for i in range(len(basis))]
    return ChangemakerLattice(slope, sigma, cf, w, N, basis, G, weights)


def _residue_options(weight: int, n: int) -> dict[int, int]:
    """residue of c*weight mod 2n -> least c^2 over odd c.

    c -> c + 2k fixes the residue exactly when k is a multiple of
    n / gcd(weight, n), so odd c in [-P, P] with P = n/gcd + 1 cover a full
    period and contain the smallest |c| of every attainable residue.
    """
    mod = 2 * n
    P = n // gcd(weight, n) + 1
    opts = {}
    for c in range(-P, P + 1):
        if c % 2:
            r = (c * weight) % mod
            if r not in opts or c * c < opts[r]:
                opts[r] = c * c
    return opts


def min_char_norms(cm: ChangemakerLattice) -> list[int | None]:
    """For each residue rho mod 2n: min ||c|| over all-odd c in Z^N with c.w_0 = rho."""
    n = cm.n
    mod = 2 * n
    INF = None
    dist = [INF] * mod
    dist[0] = 0
    for wgt in cm.weights:
        opts = _residue_options(wgt, n)
        new = [INF] * mod
        for r, d in enumerate(dist):
            if d is None:
                continue
            for dr, cost in opts.items():
                k = (r + dr) % mod
                v = d + cost
                if new[k] is None or v < new[k]:
                    new[k] = v
        dist = new
    return dist


def recover_torsion_values(cm: ChangemakerLattice) -> list[int]:
    """t_i = (min ||c|| - N) / 8 over c.w_0 = n + 2i (mod 2n), for 0 <= i <= n/2."""
    n = cm.n
    if n < 1:
        raise ValueError("need n >= 1")
    dist = min_char_norms(cm)
    out = []
    for i in range(n // 2 + 1):
        d = dist[(n + 2 * i) % (2 * n)]
        if d is None:
            raise ArithmeticError(f"residue {n + 2 * i} is not attained")
        if (d - cm.N) % 8:
            raise ArithmeticError("minimum is not congruent to N mod 8")
        out.append((d - cm.N) // 8)
    return out


def recover_torsion(cm: ChangemakerLattice) -> TorsionSeq:
    return TorsionSeq(tuple(recover_torsion_values(cm)))


def brute_torsion_values(cm: ChangemakerLattice, extra: int = 3) -> list[int]:
    """Exhaustive oracle: every odd vector with |c_j| <= 2 w_j + extra.

    Coordinates with weight 0 contribute 1 at best and are not enumerated.
    The box is grown until it provably contains every vector of norm at most
    the largest minimum found, which makes the result exact.
    """
    n = cm.n
    mod = 2 * n
    idx = [j for j, w in enumerate(cm.weights) if w]
    free = len(cm.weights) - len(idx)
    targets = [(n + 2 * i) % mod for i in range(n // 2 + 1)]
    while True:
        radii = [2 * cm.weights[j] + extra for j in idx]
        axes = [np.arange(-r, r + 1, 2, dtype=np.int64) for r in radii]
        norms = np.zeros(1, dtype=np.int64)
        res = np.zeros(1, dtype=np.int64)
        for j, ax in zip(idx, axes):
            norms = (norms[:, None] + ax[None, :] ** 2).ravel()
            res = ((res[:, None] + ax[None, :] * cm.weights[j]) % mod).ravel()
        best = np.full(mod, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(best, res, norms)
        mins = [int(best[r]) + free for r in targets]
        worst = max(mins)
        # a vector outside the box has some |c_j| >= r_j + 2, so norm >= (r_j+2)^2 + (N-1)
        if all((r + 2) ** 2 + cm.N - 1 > worst for r in radii):
            return [(m - cm.N) // 8 for m in mins]
        extra += 2


def genus(cm_or_sigma) -> int:
    sigma = cm_or_sigma.sigma if hasattr(cm_or_sigma, "sigma") else tuple(cm_or_sigma)
    twice = sum(x * (x - 1) for x in sigma)
    return twice // 2


def genus_consistent(cm: ChangemakerLattice) -> bool:
    t = recover_torsion_values(cm)
    nz = [i for i, x in enumerate(t) if x]
    g = genus(cm)
    if not nz:
        return g == 0
    return max(nz) + 1 == g


def genus_bound_B(cm_or_stable) -> Fraction:
    """B = sum rho_i^2 + 2 rho_t over the stable coefficients (0 if there are none)."""
    if hasattr(cm_or_stable, "stable"):
        rho = cm_or_stable.stable
        g = genus(cm_or_stable)
    else:
        rho = tuple(cm_or_stable)
        g = sum(x * (x - 1) for x in rho) // 2
    if not rho:
        return Fraction(0)
    B = sum(x * x for x in rho) + 2 * rho[-1]
    middle = 4 * g - (rho[-1] - 2) ** 2 + 4
    if not (B <= middle <= 4 * g + 4):
        raise AssertionError(f"genus bound chain fails for stable coefficients {rho}")
    return Fraction(B)


def enumerate_changemakers(length: int, sumsq: int, allow_zero: bool = True):
    """Changemaker tuples of the given length and sum of squares, in lexicographic order."""
    out = []

    def rec(prefix, total, sq):
        i = len(prefix)
        if i == length:
            if sq == sumsq:
                out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else (0 if allow_zero else 1)
        hi = 1 if i == 0 else total + 1
        left = length - i
        for x in range(max(lo, 0 if allow_zero else 1), hi + 1):
            # every later coefficient is at least x
            if sq + left * x * x > sumsq:
                break
            prefix.append(x)
            rec(prefix, total + x, sq + x * x)
            prefix.pop()

    rec([], 0, 0)
    return out


def all_changemakers(max_len: int, max_sumsq: int, allow_zero: bool = False):
    """Every changemaker tuple with length <= max_len and 1 <= sum of squares <= max_sumsq."""
    out = []
    for length in range(1, max_len + 1):
        for sq in range(1, max_sumsq + 1):
            out.extend(enumerate_changemakers(length, sq, allow_zero))
    return out


def uniqueness_search(slope, G, max_rank: int = DEFAULT_MAX_RANK,
                      node_limit: int = 2_000_000) -> list[ChangemakerVec]:
    """All p/q-changemaker vectors whose complement is isometric to the lattice with Gram G.

    Ambient rank is N = rank(G) + l + 1.  Ambient automorphisms are signed
    permutations, so distinct sorted tuples are distinct structures.
    """
    slope = as_slope(slope)
    n, _, q = split_slope(slope)
    cf = expand_neg_cf(slope).terms
    G = [[int(x) for x in row] for row in G]
    rank = len(G)
    if rank == 0:
        raise ValueError("empty Gram matrix")
    if not is_positive_definite(G):
        raise ValueError("Gram matrix is not positive definite")
    N = rank + len(cf)
    if N > max_rank:
        raise ValueError(f"ambient rank {N} exceeds bound {max_rank}")
    if q == 1:
        t, target = N, n
    else:
        s = sum(a - 1 for a in cf[1:])
        t, target = N - s - 1, n - 1
        if t < 0:
            return []
    _, Gred = lll_gram(G)
    top = max(Gred[i][i] for i in range(rank))
    theta = theta_counts(Gred, min(top, 3))
    found = []
    for sigma in enumerate_changemakers(t, target, allow_zero=True):
        cm = build_changemaker(slope, sigma)
        if det(cm.gram) != det(Gred):
            continue
        if theta_counts(cm.gram, len(theta)) != theta:
            continue
        if find_isometry(Gred, cm.gram, node_limit) is not None:
            found.append(ChangemakerVec(sigma, q != 1))
    return found


def uniqueness_hypothesis_met(slope, cm_or_stable) -> bool:
    """Whether p/q >= sum rho_i^2 + 2 rho_t."""
    return as_slope(slope) >= genus_bound_B(cm_or_stable)


__all__ = [
    "ChangemakerLattice", "ChangemakerVec", "SearchLimitExceeded", "all_changemakers",
    "brute_torsion_values", "build_changemaker", "enumerate_changemakers", "genus",
    "genus_bound_B", "genus_consistent", "is_changemaker", "min_char_norms", "recover_torsion",
    "recover_torsion_values", "uniqueness_hypothesis_met", "uniqueness_search",
]
