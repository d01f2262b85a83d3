"""Named verification suites shared by the CLI, the tests and the scripts.

Each suite returns a :class:`SuiteResult` with the number of checks run and
a list of failure descriptions (empty when everything passes).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .changemaker import (brute_torsion_values, build_changemaker, enumerate_changemakers,
                          genus, genus_bound_B, genus_consistent, recover_torsion_values)
from .knot_invariants import KnotModel, check_sum_identity, d_by_class, d_tilde
from .linear_lattice import (BOX_ENUMERATION_LIMIT, LinearLattice, box_size, build_F, class_key,
                             class_minima, count_M, count_tables, enumerate_C, enumerate_M, in_C,
                             norm, remove_troughs, sample_M)
from .rationals_cf import coprime_slopes, interpolation_sequence
from .sharp_extension import (check_extension_d_equality, extend_spinc, extension_pairs_along,
                              sharpness_identity_check)

SUITES = ("counts", "shortness", "multiset", "sum", "dp-oracle", "extension", "identity")

DEFAULTS = {
    "counts": {"pmax": 150, "qmax": 20},
    "shortness": {"pmax": 60, "qmax": 60},
    "multiset": {"pmax": 120, "qmax": 6},
    "sum": {"pmax": 120, "qmax": 6},
    "dp-oracle": {"pmax": 30, "qmax": 6},
    "extension": {"pmax": 10, "qmax": 1},
    "identity": {"pmax": 10, "qmax": 1},
}
QUICK = {
    "counts": {"pmax": 40, "qmax": 8},
    "shortness": {"pmax": 20, "qmax": 20},
    "multiset": {"pmax": 30, "qmax": 4},
    "sum": {"pmax": 30, "qmax": 4},
    "dp-oracle": {"pmax": 16, "qmax": 5},
    "extension": {"pmax": 4, "qmax": 1},
    "identity": {"pmax": 4, "qmax": 1},
}

TEST_KNOTS = ((None,), (3, 2), (4, 3), (5, 2), (5, 4))
CHAIN_KNOTS = ((3, 2), (4, 3))
M_ENUMERATION_LIMIT = 1_000
M_SAMPLES = 200


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg):
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "checks": self.checks,
                "failures": [str(f) for f in self.failures[:50]],
                "failureCount": len(self.failures), "params": self.params}


def standard_knots():
    return [KnotModel.unknot() if k == (None,) else KnotModel.torus(*k) for k in TEST_KNOTS]


def canonical_lattices(pmax, qmax, slopes_below_one=False):
    for r in coprime_slopes(pmax, qmax):
        if r >= 1 or slopes_below_one:
            yield LinearLattice.from_slope(r)


def run_counts(pmax=150, qmax=20) -> SuiteResult:
    """|C| = p, the first-coordinate count tables for C and its left-full part, and F."""
    res = SuiteResult("counts", params={"pmax": pmax, "qmax": qmax})
    for r in coprime_slopes(pmax, qmax):
        lat = LinearLattice.from_slope(r)
        res.checks += 1
        C = enumerate_C(lat)
        if len(C) != lat.p:
            res.fail(f"{r}: |C| = {len(C)}")
        if len({class_key(lat, s) for s in C}) != lat.p:
            res.fail(f"{r}: C-set classes not distinct")
        for c, (oc, ec, olf, elf, of, ef) in count_tables(lat).items():
            if (oc, olf, of) != (ec, elf, ef):
                res.fail(f"{r}: c0 = {c} observed {(oc, olf, of)} expected {(ec, elf, ef)}")
        F = build_F(lat)
        if len({class_key(lat, s) for s in F}) != lat.p:
            res.fail(f"{r}: F-set classes not distinct")
    return res


def m_set_members(lat, limit=M_ENUMERATION_LIMIT, samples=M_SAMPLES, seed=0):
    """The whole M-set when it is small, else a seeded uniform sample."""
    if count_M(lat) <= limit:
        return enumerate_M(lat)
    return sample_M(lat, samples, random.Random(f"{seed}:{lat.terms}"))


def run_shortness(pmax=60, qmax=60, method="chain", seed=0) -> SuiteResult:
    """Every C and F element attains its class minimum; trough removal lands in C.

    M-set elements are all checked too: also short, and trough removal keeps
    class and norm and ends in the C-set.
    """
    res = SuiteResult("shortness", params={"pmax": pmax, "qmax": qmax, "method": method,
                                           "mLimit": M_ENUMERATION_LIMIT, "seed": seed})
    for lat in canonical_lattices(pmax, qmax):
        mins = class_minima(lat, method)
        for s in list(enumerate_C(lat)) + list(build_F(lat)):
            res.checks += 1
            if norm(lat, s) != mins[class_key(lat, s)]:
                res.fail(f"{lat.slope}: {s} is not short")
        for s in m_set_members(lat, seed=seed):
            if norm(lat, s) != mins[class_key(lat, s)]:
                res.fail(f"{lat.slope}: M-set element {s} is not short")
            res.checks += 1
            t = remove_troughs(lat, s)
            if class_key(lat, t) != class_key(lat, s) or norm(lat, t) != norm(lat, s) or not in_C(lat, t):
                res.fail(f"{lat.slope}: trough removal failed on {s}")
    return res


def run_multiset(pmax=120, qmax=6) -> SuiteResult:
    """Class-indexed and residue-indexed D agree as multisets."""
    res = SuiteResult("multiset", params={"pmax": pmax, "qmax": qmax})
    knots = standard_knots()
    for lat in canonical_lattices(pmax, qmax, slopes_below_one=True):
        for K in knots:
            res.checks += 1
            by_class = d_by_class(lat, K.V, check_F=True)
            if Counter(by_class.values()) != Counter(d_tilde(lat.slope, K.V)):
                res.fail(f"{K.name} at {lat.slope}")
    return res


def run_sum(pmax=120, qmax=6) -> SuiteResult:
    res = SuiteResult("sum", params={"pmax": pmax, "qmax": qmax})
    knots = standard_knots()
    for r in coprime_slopes(pmax, qmax):
        for K in knots:
            res.checks += 1
            if not check_sum_identity(r, K.V):
                res.fail(f"{K.name} at {r}")
    return res


def dp_cases(nmax=30, Nmax=6):
    """All (slope, sigma) with ambient rank <= Nmax and 2 <= n <= nmax.

    Non-integral slopes are represented by n - 1/(e+1) = [n, e+1], whose
    ambient has e extra coordinates; recovery depends only on n and the
    weights, so this covers every non-integral weight pattern.
    """
    cases = []
    for t in range(1, Nmax + 1):
        for sq in range(2, nmax + 1):
            for s in enumerate_changemakers(t, sq, True):
                cases.append((Fraction(sq), s))
    for t in range(0, Nmax):
        for sq in range(1, nmax):
            for s in enumerate_changemakers(t, sq, True):
                n = sq + 1
                for extra in range(1, Nmax - t):
                    cases.append((Fraction(n * (extra + 1) - 1, extra + 1), s))
    return cases


def run_dp_oracle(nmax=30, Nmax=6) -> SuiteResult:
    """Residue DP against the brute-force box oracle, plus genus consistency and the B chain."""
    res = SuiteResult("dp-oracle", params={"nmax": nmax, "Nmax": Nmax})
    for slope, sigma in dp_cases(nmax, Nmax):
        cm = build_changemaker(slope, sigma)
        if cm.N > Nmax:
            continue
        res.checks += 1
        dp = recover_torsion_values(cm)
        if dp != brute_torsion_values(cm):
            res.fail(f"{slope} {sigma}: DP {dp}")
        if any(x < 0 for x in dp) or any(x < y for x, y in zip(dp, dp[1:])):
            res.fail(f"{slope} {sigma}: invalid torsion {dp}")
        if not genus_consistent(cm):
            res.fail(f"{slope} {sigma}: genus {genus(cm)} vs torsion {dp}")
        try:
            B = genus_bound_B(cm)
        except AssertionError as exc:
            res.fail(f"{slope} {sigma}: {exc}")
        else:
            if B > 4 * genus(cm) + 4:
                res.fail(f"{slope} {sigma}: B = {B}")
    return res


def chain_pairs(r, s, extra=10):
    return extension_pairs_along(interpolation_sequence(r * s - 1, r * s + extra))


def run_extension(extra=10, knots=CHAIN_KNOTS, brute=True) -> SuiteResult:
    """Along each chain from rs - 1 to rs + extra: extensions are short and keep D."""
    res = SuiteResult("extension", params={"extra": extra, "knots": [list(k) for k in knots]})
    for r, s in knots:
        V = KnotModel.torus(r, s).V
        for pair in chain_pairs(r, s, extra):
            for row in check_extension_d_equality(pair, V):
                res.checks += 1
                if not row["ok"]:
                    res.fail(f"T({r},{s}) {pair.base} -> {pair.ext}: {row}")
            if brute:
                mins = class_minima(pair.ext, "chain")
                for s0 in enumerate_C(pair.base):
                    s1 = extend_spinc(pair, s0)
                    res.checks += 1
                    if norm(pair.ext, s1) != mins[class_key(pair.ext, s1)]:
                        res.fail(f"T({r},{s}) {pair.ext}: {s1} not minimal")
    return res


def run_identity(extra=10, knots=CHAIN_KNOTS) -> SuiteResult:
    res = SuiteResult("identity", params={"extra": extra, "knots": [list(k) for k in knots]})
    for r, s in knots:
        V = KnotModel.torus(r, s).V
        for pair in chain_pairs(r, s, extra):
            for row in sharpness_identity_check(pair, V):
                res.checks += 1
                if not row["ok"]:
                    res.fail(f"T({r},{s}) {pair.base} -> {pair.ext}: {row}")
    return res


def run_box_agreement(pmax=60, qmax=60, limit=None) -> SuiteResult:
    """Literal box enumeration (|c_i| <= a_i) against the whole-coset chain DP.

    Only lattices whose box has at most ``limit`` points are enumerated.
    """
    limit = BOX_ENUMERATION_LIMIT if limit is None else limit
    res = SuiteResult("box", params={"pmax": pmax, "qmax": qmax, "limit": limit})
    for lat in canonical_lattices(pmax, qmax):
        if box_size(lat) > limit:
            continue
        res.checks += 1
        box, chain = class_minima(lat, "box"), class_minima(lat, "chain")
        if box != chain:
            res.fail(f"{lat.slope}: box and chain minima differ")
    return res


def run_suite(name: str, quick: bool = False, pmax=None, qmax=None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    params = dict((QUICK if quick else DEFAULTS)[name])
    if pmax is not None:
        params["pmax"] = pmax
    if qmax is not None:
        params["qmax"] = qmax
    p, q = params["pmax"], params["qmax"]
    if name == "counts":
        return run_counts(p, q)
    if name == "shortness":
        return run_shortness(p, q, seed=seed)
    if name == "multiset":
        return run_multiset(p, q)
    if name == "sum":
        return run_sum(p, q)
    if name == "dp-oracle":
        return run_dp_oracle(p, q)
    if name == "extension":
        return run_extension(p)
    return run_identity(p)
