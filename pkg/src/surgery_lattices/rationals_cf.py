"""Negative continued fractions of positive slopes.

A slope is a positive :class:`fractions.Fraction`.  Expansions are written
``[a0, a1, ..., al]`` and evaluate to ``a0 - 1/(a1 - 1/(... - 1/al))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def as_slope(x) -> Fraction:
    """Coerce ``x`` (Fraction, int, ``"p/q"`` string or ``(p, q)``) to a positive Fraction."""
    if isinstance(x, tuple):
        x = Fraction(*x)
    elif isinstance(x, str):
        x = parse_slope(x)
    else:
        x = Fraction(x)
    if x <= 0:
        raise ValueError(f"slope must be positive, got {x}")
    return x


def parse_slope(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; rejects non-positive values and q = 0."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        p, q = int(num), int(den)
    else:
        p, q = int(text), 1
    if q == 0:
        raise ValueError("zero denominator")
    value = Fraction(p, q)
    if value <= 0:
        raise ValueError(f"slope must be positive, got {text}")
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class NegCF:
    """Terms of a negative continued fraction.

    ``canonical`` means a0 >= 1 and every later term >= 2, the form produced
    by :func:`expand_neg_cf`.  ``relaxed`` additionally allows the last term
    to be 1, as needed by the trailing-one identity.
    """

    terms: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))
        if not self.terms:
            raise ValueError("empty continued fraction")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def canonical(self) -> bool:
        a = self.terms
        return a[0] >= 1 and all(x >= 2 for x in a[1:])

    @property
    def relaxed(self) -> bool:
        a = self.terms
        if a[0] < 1:
            return False
        if len(a) == 1:
            return True
        return all(x >= 2 for x in a[1:-1]) and a[-1] >= 1

    @property
    def value(self) -> Fraction:
        return evaluate_neg_cf(self)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __str__(self):
        return "[" + ",".join(map(str, self.terms)) + "]-"


def expand_neg_cf(r) -> NegCF:
    """Canonical expansion: a0 = ceil(p/q), then recurse on q/(a0*q - p)."""
    r = as_slope(r)
    p, q = r.numerator, r.denominator
    terms = []
    while True:
        a = -(-p // q)
        terms.append(a)
        rem = a * q - p
        if rem == 0:
            break
        p, q = q, rem
    return NegCF(tuple(terms))


def evaluate_neg_cf(cf) -> Fraction:
    terms = cf.terms if isinstance(cf, NegCF) else tuple(cf)
    if not terms:
        raise ValueError("empty continued fraction")
    x = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if x == 0:
            raise ZeroDivisionError(f"tail of {list(terms)} evaluates to zero")
        x = a - 1 / x
    return x


def split_slope(r) -> tuple[int, int, int]:
    """Write p/q = n - rem/q with n = ceil(p/q) and 0 <= rem < q."""
    r = as_slope(r)
    p, q = r.numerator, r.denominator
    n = -(-p // q)
    return n, n * q - p, q


def trailing_one(cf: NegCF) -> NegCF:
    """[a0, ..., al] -> [a0, ..., al + 1, 1]; both evaluate to the same value."""
    a = list(cf.terms)
    a[-1] += 1
    return NegCF(tuple(a) + (1,))


def interpolation_sequence(r, r2) -> list[NegCF]:
    """Increasing chain of slopes from ``r`` to ``r2`` in single sharpness-preserving moves.

    Moves are: truncating a canonical tail, or raising the last term by one
    (a truncation of the trailing-one form).  When a term of the target is
    reached before the final one, the chain switches to the
    ``[..., b, 1]`` representation and keeps raising the new last term.
    """
    r, r2 = as_slope(r), as_slope(r2)
    if not r < r2:
        raise ValueError(f"need r < r2, got {r} and {r2}")
    a = expand_neg_cf(r).terms
    b = expand_neg_cf(r2).terms
    m = 0
    while m < min(len(a), len(b)) and a[m] == b[m]:
        m += 1
    seq = [NegCF(a)]
    if m == len(b):
        # r2's expansion is a prefix of r's: a single truncation
        seq.append(NegCF(b))
        return seq
    # m < len(a) here: a cannot be a proper prefix of b when r < r2
    prefix = a[:m]
    if len(a) > m + 1:
        seq.append(NegCF(prefix + (a[m],)))
    tail = b[m:]
    cur = a[m]
    for j, target in enumerate(tail):
        last = j == len(tail) - 1
        goal = target if last else target - 1
        head = prefix + tail[:j]
        while cur < goal:
            cur += 1
            if not last and cur == goal:
                seq.append(NegCF(head + (target, 1)))
            else:
                seq.append(NegCF(head + (cur,)))
        if not last:
            cur = 1
    return seq


def coprime_slopes(pmax: int, qmax: int, pmin: int = 1):
    """All p/q with gcd(p, q) = 1, pmin <= p <= pmax, 1 <= q <= qmax."""
    for p in range(pmin, pmax + 1):
        for q in range(1, qmax + 1):
            if gcd(p, q) == 1:
                yield Fraction(p, q)
