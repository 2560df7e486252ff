"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from fermat2310.arith.poly import UniPoly

small_ints = st.integers(-20, 20)
rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))


def polys(max_degree=6, coeffs=rationals, nonzero=False):
    s = st.lists(coeffs, min_size=1, max_size=max_degree + 1).map(UniPoly)
    return s.filter(lambda f: not f.is_zero()) if nonzero else s


def int_polys(max_degree=4, lo=-9, hi=9, monic=False):
    body = st.lists(st.integers(lo, hi), min_size=0 if monic else 1, max_size=max_degree if monic else max_degree + 1)
    if monic:
        return body.map(lambda cs: UniPoly(cs + [1]))
    return body.map(UniPoly).filter(lambda f: not f.is_zero())
