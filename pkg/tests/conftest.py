from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from hesstop.poly import HPoly

X, Y = sp.symbols("x y")

small_rats = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=4),
)


def hpolys(min_degree=0, max_degree=8):
    return st.integers(min_value=min_degree, max_value=max_degree).flatmap(
        lambda n: st.lists(small_rats, min_size=n + 1, max_size=n + 1).map(HPoly.of)
    )


def to_sympy(f: HPoly):
    n = f.degree
    return sum(sp.Rational(c.numerator, c.denominator) * X ** (n - j) * Y ** j for j, c in enumerate(f.coeffs))


def from_sympy(expr, degree: int) -> HPoly:
    p = sp.Poly(sp.expand(expr), X, Y)
    cs = [Fraction(0)] * (degree + 1)
    for (a, b), c in p.terms():
        if c == 0:
            continue
        assert a + b == degree, "not homogeneous of the expected degree"
        cs[b] = Fraction(int(c.p), int(c.q))
    return HPoly(degree, tuple(cs))
