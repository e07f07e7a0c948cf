"""Hypothesis strategies for polynomials and actions."""


from hypothesis import strategies as st

from solvquot.poly import QQ, Field, Poly, PolyRing, Var
from solvquot.randgen import random_action

RING3 = PolyRing(QQ, [Var("x"), Var("y"), Var("w")])
F5 = Field(5)
RING3_F5 = PolyRing(F5, [Var("x"), Var("y"), Var("w")])
LRING = PolyRing(QQ, [Var("x"), Var("t", "torus")])

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, ring=RING3, max_terms=4, max_deg=3, coeffs=rationals, laurent_min=0):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(laurent_min if lau else 0, max_deg)) for lau in ring.laurent)
        terms[e] = terms.get(e, 0) + draw(coeffs)
    return Poly(ring, terms, check=True)


def fp_polys(max_terms=4, max_deg=3):
    return polys(RING3_F5, max_terms, max_deg, st.integers(0, 4))


def laurent_polys(max_terms=3, max_deg=2):
    return polys(LRING, max_terms, max_deg, rationals, laurent_min=-2)


@st.composite
def actions(draw, max_n=4, max_l=2, max_m=2):
    n = draw(st.integers(2, max_n))
    l = draw(st.integers(0, max_l))
    m = draw(st.integers(0, max_m))
    seed = draw(st.integers(0, 10 ** 6))
    return random_action(n, l, m, seed=seed)


__all__ = ["LRING", "RING3", "RING3_F5", "actions", "fp_polys", "laurent_polys", "polys"]
