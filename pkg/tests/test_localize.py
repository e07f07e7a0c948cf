from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from solvquot.action import Character
from solvquot.dsl import parse
from solvquot.gallery import EXAMPLES
from solvquot.localize import (DenominatorMismatch, Epoch, Localized, invert, is_zero, loc_add,
                               loc_mul, loc_pow, rebase, semi_invariant_numerator)

from strategies import RING3, polys

x, y, w = RING3.gens()


def loc(p, e, c=y):
    return Localized(p, e, c)


@given(polys(max_terms=3), polys(max_terms=3), st.integers(0, 3), st.integers(0, 3))
def test_field_operations_consistent(a, b, ea, eb):
    A, B = loc(a, ea), loc(b, eb)
    assert A + B == B + A
    assert A * B == B * A
    assert (A + B) - B == A
    # clearing denominators gives the product of numerators
    assert (A * B) * loc(y ** (ea + eb), 0) == loc(a * b, 0)


@given(polys(max_terms=3), st.integers(0, 3))
def test_reduce_preserves_value(a, e):
    A = loc(a * y * y, e + 2)
    R = A.reduce()
    assert R == A
    assert R.exp <= A.exp


def test_reduce_cancels_whole_powers_only():
    A = loc(x * y, 3, x * y)
    assert A.reduce().exp == 2
    B = loc(x, 1, x * y)
    assert B.reduce().exp == 1


def test_constant_denominator_is_absorbed():
    A = Localized(x, 2, RING3.const(2))
    assert A.exp == 0 and A.num == x * Fraction(1, 4)


def test_invert_unit_and_nonunit():
    wit = invert(loc(y ** 2, 1))
    assert wit is not None and wit.check()
    assert wit.inverse == loc(RING3.one(), 1)
    assert invert(loc(x + y, 0)) is None
    with pytest.raises(ZeroDivisionError):
        invert(loc(RING3.zero(), 0))


def test_rebase_preserves_value():
    A = loc(x, 1, y)
    B = rebase(A, x * y)
    assert B.c == x * y
    assert B * loc(y, 0, x * y) == loc(x, 0, x * y)
    with pytest.raises(ValueError):
        rebase(A, x)


def test_mismatched_denominators_refuse_arithmetic():
    with pytest.raises(DenominatorMismatch):
        loc(x, 1, y) + loc(x, 1, x)


def test_epoch_extend_keeps_fine_factors():
    weigh = lambda p: Character(())
    e0 = Epoch(RING3.one(), Character(()))
    e1 = e0.extend(x * x * (y + w), weigh)
    assert {f for f, _ in e1.factors} == {x, y + w}
    assert e1.c == (x * (y + w)).monic()
    # a numerator made of known factors is already a unit
    assert e1.extend((y + w) ** 3 * x, weigh) is e1
    e2 = e1.extend(w * (y + w), weigh)
    assert e2.c == (x * w * (y + w)).monic()
    assert e2.lift(loc(RING3.one(), 1, e1.c)).c == e2.c


@given(polys(max_terms=3), polys(max_terms=3), st.integers(0, 2), st.integers(0, 3))
def test_functional_arithmetic_matches_operators(a, b, e, k):
    la, lb = loc(a, e), loc(b, 1)
    assert loc_add(la, lb) == la + lb
    assert loc_mul(la, lb) == la * lb
    assert loc_pow(la, k) == la ** k
    assert is_zero(la) == a.is_zero()


def test_semi_invariant_numerator_examples():
    spec = parse("vars y\ntorus t\nmap y = t*y\n")
    (yy,) = spec.base_gens()
    num, wt = semi_invariant_numerator(Localized(yy, 2, yy * yy), spec)
    assert num == yy and wt == Character((1,))
    num, wt = semi_invariant_numerator(Localized(yy.ring.one(), 0, yy), spec)
    assert num == yy.ring.one() and wt.is_trivial()
    spec = parse(EXAMPLES["weitzenboeck"])
    X, Y, W = spec.base_gens()
    a = Localized(2 * Y * W - X * X, 1, Y) * Localized(Y.ring.one() * Fraction(1, 2), 0, Y)
    num, wt = semi_invariant_numerator(a, spec)
    assert num == Y * W - X * X * Fraction(1, 2) and wt == Character(())
    with pytest.raises(ValueError):
        semi_invariant_numerator(Localized(X, 0, Y), spec)
