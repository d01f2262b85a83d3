"""Exact integer lattice utilities: kernels, LLL, short vectors, isometry search.

Lattices are handled through their Gram matrices (lists of integer rows).
Everything is exact except the range computation in :func:`short_vectors`,
which uses floats with slack and then filters with exact integer norms.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, ceil, sqrt


def integer_kernel(rows, ncols: int) -> list[list[int]]:
    """A Z-basis of {x in Z^ncols : r . x = 0 for all r in rows}.

    Row-reduce [W^T | I] with unimodular integer operations; rows whose
    W^T part vanishes carry the kernel.
    """
    m = len(rows)
    aug = [[rows[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    piv_row = 0
    for col in range(m):
        # gcd-reduce column `col` among rows piv_row..end
        while True:
            nz = [r for r in range(piv_row, ncols) if aug[r][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda r: abs(aug[r][col]))
            aug[piv_row], aug[best] = aug[best], aug[piv_row]
            done = True
            for r in range(piv_row + 1, ncols):
                if aug[r][col]:
                    f = aug[r][col] // aug[piv_row][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[piv_row])]
                    if aug[r][col]:
                        done = False
            if done:
                piv_row += 1
                break
    return [row[m:] for row in aug[piv_row:]]


def gram(basis) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]


def det(matrix) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def is_positive_definite(G) -> bool:
    return all(det([row[:k] for row in G[:k]]) > 0 for k in range(1, len(G) + 1))


def lll_gram(G, delta=Fraction(3, 4)):
    """LLL reduction driven by a Gram matrix.

    Returns ``(U, H)`` with U unimodular (rows express the new basis in the old
    one) and H = U G U^T.
    """
    n = len(G)
    G = [[int(x) for x in row] for row in G]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return U, G

    def ip(i, j):
        return G[i][j]

    def recompute():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                mu[i][j] = (ip(i, j) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))) / bstar[j]
            bstar[i] = ip(i, i) - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        return mu, bstar

    G0 = [row[:] for row in G]
    mu, bstar = recompute()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            c = round(mu[k][j])
            if c:
                U[k] = [x - c * y for x, y in zip(U[k], U[j])]
                G = _gram_from(U, G0)
                mu, bstar = recompute()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            U[k], U[k - 1] = U[k - 1], U[k]
            G = _gram_from(U, G0)
            mu, bstar = recompute()
            k = max(k - 1, 1)
    return U, G


def _gram_from(U, G0):
    n = len(U)
    UG = [[sum(U[i][a] * G0[a][b] for a in range(n)) for b in range(n)] for i in range(n)]
    return [[sum(UG[i][b] * U[j][b] for b in range(n)) for j in range(n)] for i in range(n)]


def _fp_coefficients(G):
    n = len(G)
    q = [[Fraction(x) for x in row] for row in G]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return [[float(x) for x in row] for row in q]


def short_vectors(G, bound: int, exact: bool = False) -> list[tuple[int, ...]]:
    """Coefficient vectors x != 0 with x G x^T <= bound (== bound if ``exact``).

    Fincke-Pohst enumeration; both x and -x are returned.
    """
    n = len(G)
    if n == 0:
        return []
    q = _fp_coefficients(G)
    out = []
    x = [0] * n
    eps = 1e-7

    def norm_of(v):
        return sum(v[i] * G[i][j] * v[j] for i in range(n) for j in range(n))

    def rec(i, remaining):
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        r = sqrt(max(remaining, 0.0) / q[i][i]) + eps
        for xi in range(ceil(c - r), floor(c + r) + 1):
            x[i] = xi
            used = q[i][i] * (xi - c) ** 2
            if used > remaining + eps:
                continue
            if i == 0:
                if any(x):
                    v = tuple(x)
                    nv = norm_of(v)
                    if (nv == bound) if exact else (nv <= bound):
                        out.append(v)
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, float(bound))
    return out


def theta_counts(G, upto: int) -> list[int]:
    """Number of lattice vectors of each norm 1..upto."""
    counts = [0] * (upto + 1)
    for v in short_vectors(G, upto):
        counts[sum(v[i] * G[i][j] * v[j] for i in range(len(G)) for j in range(len(G)))] += 1
    return counts[1:]


class SearchLimitExceeded(RuntimeError):
    pass


def find_isometry(G1, G2, node_limit: int = 2_000_000):
    """Images y_i (coefficient vectors in the basis of G2) with y_i G2 y_j = G1[i][j].

    Returns the list of images or None.  Equal determinants make any such
    Gram-preserving assignment an isometry onto the second lattice.
    """
    n = len(G1)
    if len(G2) != n:
        return None
    if n == 0:
        return []
    if det(G1) != det(G2):
        return None
    norms = sorted({G1[i][i] for i in range(n)})
    top = max(norms)
    pool = {}
    for v in short_vectors(G2, top):
        nv = sum(v[i] * G2[i][j] * v[j] for i in range(n) for j in range(n))
        pool.setdefault(nv, []).append(v)
    for d in norms:
        if len(pool.get(d, [])) < sum(1 for i in range(n) if G1[i][i] == d):
            return None

    # place basis vectors so each new one meets as many placed ones as possible
    order = []
    remaining = set(range(n))
    while remaining:
        placed = set(order)
        nxt = max(remaining, key=lambda i: (sum(1 for j in placed if G1[i][j]), -G1[i][i], -i))
        order.append(nxt)
        remaining.remove(nxt)

    images = [None] * n
    duals = [None] * n
    nodes = 0

    def rec(pos):
        nonlocal nodes
        if pos == n:
            return True
        i = order[pos]
        for v in pool.get(G1[i][i], ()):
            nodes += 1
            if nodes > node_limit:
                raise SearchLimitExceeded("isometry search exceeded node limit")
            if pos == 0 and next(x for x in v if x) < 0:
                continue  # -phi is an isometry whenever phi is
            ok = True
            for j in order[:pos]:
                if sum(a * b for a, b in zip(v, duals[j])) != G1[i][j]:
                    ok = False
                    break
            if not ok:
                continue
            images[i] = v
            duals[i] = [sum(G2[r][c] * v[c] for c in range(n)) for r in range(n)]
            if rec(pos + 1):
                return True
        images[i] = None
        return False

    return list(images) if rec(0) else None


def isometric(G1, G2, node_limit: int = 2_000_000) -> bool:
    if len(G1) != len(G2):
        return False
    return find_isometry(G1, G2, node_limit) is not None
