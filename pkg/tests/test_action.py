import pytest
from hypothesis import given

from solvquot.action import (ActionSpec, Character, check_axioms, check_compat, check_ga_coaction,
                             check_torus_coaction, leading_torus_monomial, require_valid, validate)
from solvquot.dsl import parse
from solvquot.errors import ValidationError
from solvquot.gallery import EXAMPLES
from solvquot.localize import Localized

from strategies import actions

GA_GM = parse(EXAMPLES["ga_gm"])
WEITZ = parse(EXAMPLES["weitzenboeck"])


def test_character_group_laws():
    a, b = Character((1, -2)), Character((0, 3))
    assert (a * b).exps == (1, 1)
    assert (a * a.inverse()).is_trivial()
    assert (a ** 3).exps == (3, -6)
    assert a.format(["t1", "t2"]) == "t1*t2^-2"
    assert Character((0, 0)).format(["t1", "t2"]) == "1"


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_gallery_satisfies_axioms(name):
    spec = parse(EXAMPLES[name])
    assert all(r.ok for r in check_axioms(spec))


@given(actions())
def test_random_actions_satisfy_axioms(spec):
    for i in range(spec.l):
        assert check_ga_coaction(spec, i).ok
    assert check_torus_coaction(spec).ok
    for j in range(spec.m):
        assert check_torus_coaction(spec, j).ok
    if spec.l:
        assert check_compat(spec, 0).ok


def test_broken_additive_law_detected():
    spec = parse("field Q\nvars x\nunipotent z\nmap x = x + z^2\n")
    assert not check_ga_coaction(spec, 0).ok
    with pytest.raises(ValidationError):
        require_valid(spec)


def test_wrong_character_detected():
    spec = parse("field Q\nvars x y\nunipotent z\ntorus t\nchar z = t\n"
                 "map x = t*x + t*y*z\nmap y = t*y\n")
    assert not check_compat(spec, 0).ok


def test_identity_axiom_enforced():
    with pytest.raises(ValidationError):
        parse("field Q\nvars x\nunipotent z\nmap x = 2*x + z\n")


def test_weight_of_semi_invariant():
    ring = GA_GM.ring
    y = ring.gen("y")
    assert GA_GM.weight_of(y) == Character((1,))
    assert GA_GM.weight_of(ring.gen("x")) is None
    assert GA_GM.weight_of(ring.gen("u")).is_trivial()


def test_apply_loc_twists_by_denominator_weight():
    ring = GA_GM.ring
    y, u = ring.gen("y"), ring.gen("u")
    a = Localized(u, 1, y)
    img = GA_GM.apply_loc(a, Character((1,)))
    t = ring.gen("t1")
    assert img == Localized(u * t ** -1, 1, y)


def test_semi_registry_gives_same_images():
    spec = parse(EXAMPLES["ga_gm"])
    ring = spec.ring
    x, y = ring.gen("x"), ring.gen("y")
    p = (y ** 3) * (x + y) + y ** 2
    plain = spec.full().apply(p, plain=True)
    assert spec.register_semi(y) == Character((1,))
    assert spec.register_semi(x) is None
    assert spec.full().apply(p) == plain


def test_leading_torus_monomial():
    p = GA_GM.images[0]
    assert leading_torus_monomial(p, GA_GM.torus) == (1,)


def test_validate_rejects_wrong_lengths():
    spec = WEITZ
    bad = ActionSpec(spec.ring, spec.chars, spec.images[:2])
    with pytest.raises(ValidationError):
        validate(bad)
