from fractions import Fraction

from hypothesis import strategies as st

from surgery_lattices.changemaker import is_changemaker


@st.composite
def slopes(draw, pmax=80, qmax=12, at_least_one=False):
    q = draw(st.integers(1, qmax))
    lo = q if at_least_one else 1
    p = draw(st.integers(lo, max(lo, pmax)))
    return Fraction(p, q)


@st.composite
def canonical_terms(draw, max_len=5, a0_max=12, a_max=6):
    a0 = draw(st.integers(1, a0_max))
    rest = draw(st.lists(st.integers(2, a_max), max_size=max_len - 1))
    return (a0, *rest)


@st.composite
def changemakers(draw, max_len=6, max_value=None):
    sigma = []
    total = 0
    length = draw(st.integers(1, max_len))
    for i in range(length):
        lo = sigma[-1] if sigma else 0
        hi = 1 if i == 0 else total + 1
        if max_value is not None:
            hi = min(hi, max_value)
        x = draw(st.integers(lo, max(lo, hi)))
        sigma.append(x)
        total += x
    sigma = tuple(sigma)
    assert is_changemaker(sigma)
    return sigma


@st.composite
def v_sequences(draw, max_len=6, top=5):
    vals = sorted(draw(st.lists(st.integers(0, top), max_size=max_len)), reverse=True)
    return tuple(vals)
