"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from ybfuse.exact import Polynomial, RationalFunction

small_int = st.integers(min_value=-9, max_value=9)
rationals = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=5))
polys = st.lists(rationals, min_size=0, max_size=4).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuns = st.builds(RationalFunction, polys, nonzero_polys)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)
