import pytest
from hypothesis import given, strategies as st

from solvquot.action import Character
from solvquot.dsl import parse
from solvquot.errors import IterationCapError, TrivialActionError
from solvquot.gallery import EXAMPLES
from solvquot.localize import Epoch, Localized
from solvquot.pipeline import solvable_invariants, weigher
from solvquot.randgen import random_action
from solvquot.torus_slice import (_shorten, gm_degree, gm_expand, gm_slice, int_solve, pi_gm,
                                  symmetric_remainder, torus_coeff_decompose)

TWO = parse("field Q\nvars x y u\ntorus t\nmap x = t^2*x\nmap y = t*y\nmap u = u\n")
SCALING = parse(EXAMPLES["scaling"])


def run_slice(spec, gens=None, max_iter=100):
    co = spec.restrict_torus(0)
    epoch = Epoch(spec.ring.one(), Character.trivial(spec.m))
    gens = [Localized(g) for g in (gens or spec.base_gens())]
    return gm_slice(co, spec.torus[0], gens, epoch, weigher(spec), max_iter)


def test_gm_degree_examples():
    co = TWO.restrict_torus(0)
    x, y, u = TWO.base_gens()
    assert gm_degree(Localized(x), co, TWO.torus[0]) == 2
    assert gm_degree(Localized(y), co, TWO.torus[0]) == 1
    assert gm_degree(Localized(u), co, TWO.torus[0]) == 0


def test_decompose_examples():
    co = TWO.restrict_torus(0)
    x, y, u = TWO.base_gens()
    parts = torus_coeff_decompose(Localized(x + y), co)
    assert parts == [(Character((2,)), Localized(x)), (Character((1,)), Localized(y))]
    assert torus_coeff_decompose(Localized(u), co) == [(Character((0,)), Localized(u))]


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_decompose_sums_back_with_exact_weights(i, j, k):
    co = TWO.restrict_torus(0)
    x, y, u = TWO.base_gens()
    a = Localized(x ** i + y ** j * u + u ** k * x)
    parts = torus_coeff_decompose(a, co)
    total = sum((p for _, p in parts), Localized(a.num - a.num))
    assert total == a
    for ch, p in parts:
        assert co.apply_loc(p) == p * co.char_monomial(ch)


def test_symmetric_remainder():
    assert symmetric_remainder(5, 2) == (2, 1)
    assert symmetric_remainder(-5, 2) == (-3, 1)
    assert symmetric_remainder(7, 3) == (2, 1)
    assert symmetric_remainder(8, 3) == (3, -1)


def test_scaling_slice():
    sl, epoch, gens = run_slice(SCALING)
    x1, x2 = SCALING.base_gens()
    assert sl.d == 1
    assert sl.weight == Character((-1,))
    assert epoch.c == x1
    assert sl.s.elem == Localized(x1 ** 0, 1, x1)
    assert sl.s.check()
    assert pi_gm(gens[1], sl, SCALING.restrict_torus(0), epoch.weight) == Localized(x2, 1, x1)
    assert pi_gm(sl.s.elem, sl, SCALING.restrict_torus(0), epoch.weight).is_one()


def test_weight_two_slice():
    spec = parse("field Q\nvars x\ntorus t\nmap x = t^2*x\n")
    sl, epoch, _ = run_slice(spec)
    assert sl.d == 2
    assert sl.weight == Character((-2,))
    assert sl.s.inverse == Localized(spec.base_gens()[0], 0, epoch.c)


def test_definition_conditions_hold_on_exit():
    sl, epoch, gens = run_slice(TWO)
    co = TWO.restrict_torus(0)
    assert sl.weight.exps[0] == -sl.d
    assert sl.s.check()
    for g in gens:
        for ch, _ in torus_coeff_decompose(g, co, epoch.weight):
            assert ch.exps[0] % sl.d == 0


def test_pi_gm_multiplicative():
    sl, epoch, gens = run_slice(TWO)
    co = TWO.restrict_torus(0)
    x, y, u = gens
    for a, b in [(x, y), (y * y, u), (x + u, y)]:
        lhs = pi_gm(a * b, sl, co, epoch.weight)
        assert lhs == pi_gm(a, sl, co, epoch.weight) * pi_gm(b, sl, co, epoch.weight)


def test_gm_expand_sums_back():
    sl, epoch, gens = run_slice(TWO)
    co = TWO.restrict_torus(0)
    a = gens[0] * gens[1] + gens[2]
    parts = gm_expand(a, sl, co, epoch.weight)
    total = sum((f * sl.s.power(k) for k, f in parts.items()), a - a)
    assert total == a


def test_trivial_and_capped():
    spec = parse("field Q\nvars x\ntorus t\nmap x = x\n")
    with pytest.raises(TrivialActionError):
        run_slice(spec)
    with pytest.raises(IterationCapError):
        run_slice(SCALING, max_iter=1)


matrices = st.integers(1, 3).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.tuples(st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                                 min_size=r, max_size=r),
                        st.lists(st.integers(-3, 3), min_size=c, max_size=c))))


@given(matrices)
def test_int_solve_finds_planted_solutions(data):
    A, x0 = data
    cols = len(x0)
    b = [sum(a * v for a, v in zip(row, x0)) for row in A]
    x, kernel = int_solve(A, b, cols)
    assert x is not None
    assert [sum(a * v for a, v in zip(row, x)) for row in A] == b
    for k in kernel:
        assert all(sum(a * v for a, v in zip(row, k)) == 0 for row in A)
    short = _shorten(x, kernel)
    assert [sum(a * v for a, v in zip(row, short)) for row in A] == b
    assert sum(map(abs, short)) <= sum(map(abs, x))


def test_int_solve_reports_unsolvable():
    assert int_solve([[2, 4]], [1], 2)[0] is None
    x, kernel = int_solve([[2, 4]], [6], 2)
    assert 2 * x[0] + 4 * x[1] == 6 and len(kernel) == 1


def test_balanced_slices_have_no_stray_weight():
    spec = random_action(6, 3, 2, seed=72)
    q = solvable_invariants(spec)
    torus_stages = [st for st in q.stages if st.kind == "torus"]
    assert torus_stages
    first = torus_stages[0].slice
    assert first.weight.exps[0] == -first.d
    assert all(e == 0 for e in first.weight.exps[1:])
    for st_ in torus_stages:
        sl = st_.slice
        assert (sl.s.elem * sl.s.inverse).is_one()
