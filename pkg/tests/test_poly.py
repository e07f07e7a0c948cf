from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from solvquot.poly import (QQ, Field, Poly, PolyRing, Var, divide_univ, divides_power,
                           exact_divide, format_poly, order_key)

from strategies import LRING, RING3, fp_polys, laurent_polys, polys

x, y, w = RING3.gens()


@given(polys(), polys(), polys())
def test_ring_axioms_q(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RING3.zero()
    assert a * RING3.one() == a


@given(fp_polys(), fp_polys(), fp_polys())
def test_ring_axioms_fp(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert all(0 < v < 5 for v in (a * b).terms.values())


@given(laurent_polys(), laurent_polys())
def test_laurent_product_commutes(a, b):
    assert a * b == b * a


@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_exact_divide_recovers_factor(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a


@given(polys(max_terms=3, max_deg=2))
def test_exact_divide_rejects_nondivisor(a):
    if a.is_zero():
        return
    assert exact_divide(a * x + 1, x) is None


def test_exact_divide_laurent_units():
    t = LRING.gen("t")
    xl = LRING.gen("x")
    p = xl * t ** 2 + t ** -1
    assert exact_divide(p, t ** -3) == p * t ** 3


@given(polys(max_terms=3, max_deg=3), polys(max_terms=2, max_deg=2))
def test_divide_univ_identity(f, g):
    gz = g * x + 1 if g.is_zero() else g * x + y
    d = gz.deg_in("x")
    if d < 1:
        return
    lead = gz.coeff("x", d)
    if not lead.is_constant():
        return
    q, r = divide_univ(f, gz, "x", RING3.const(QQ.inv(lead.constant_value())))
    assert q * gz + r == f
    assert r.deg_in("x") < d


def test_divides_power():
    assert divides_power(x ** 3 * y, x * y) == 3
    assert divides_power(x + y, x * y) is None
    assert divides_power(RING3.const(2), x) == 0


def test_substitute_homomorphism():
    sig = {"x": x + y, "w": y * y}
    a, b = x * w + 1, x - w * w
    sub = lambda p: p.substitute({RING3.idx(k): v for k, v in sig.items()})
    assert sub(a * b) == sub(a) * sub(b)
    assert sub(a + b) == sub(a) + sub(b)


def test_field_coercion_fp():
    f = Field(7)
    assert f(Fraction(1, 2)) == 4
    assert f(-1) == 6
    with pytest.raises(ValueError):
        Field(9)


def test_format_descending_order():
    p = x * x - Fraction(1, 2) * y + 3
    assert format_poly(p) == "x^2 - (1/2)*y + 3"
    assert order_key((2, 0, 0)) > order_key((1, 1, 0))


def test_negative_exponent_rejected_on_base_variable():
    with pytest.raises(ValueError):
        Poly(RING3, {(-1, 0, 0): 1}, check=True)


def test_duplicate_variable_names_rejected():
    with pytest.raises(ValueError):
        PolyRing(QQ, [Var("x"), Var("x")])


@given(polys(max_terms=3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_evaluate_is_homomorphism(a, vx, vy, vw):
    pt = {"x": vx, "y": vy, "w": vw}
    b = a * a + x
    assert b.evaluate(pt) == a.evaluate(pt) ** 2 + vx


def brute_divides_power(n, c):
    cm = c.ring.one()
    for m in range(int(n.total_degree()) + 1):
        if exact_divide(cm, n) is not None:
            return m
        cm = cm * c
    return None


@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_divides_power_matches_brute_force(n, c):
    if n.is_zero() or c.is_zero():
        return
    assert divides_power(n, c) == brute_divides_power(n, c)


@given(fp_polys(max_terms=3, max_deg=2), fp_polys(max_terms=3, max_deg=2))
def test_divides_power_matches_brute_force_fp(n, c):
    if n.is_zero() or c.is_zero():
        return
    assert divides_power(n, c) == brute_divides_power(n, c)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3))
def test_divides_power_on_products_of_factors(i, j, k):
    f, g = x + y * w, x * x - 3 * w + 1
    c = f * g * y
    n = f ** i * g ** j * y ** k
    m = divides_power(n, c)
    assert m == max(i, j, k)
    assert exact_divide(c ** m, n) is not None
