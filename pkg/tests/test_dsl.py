import json
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, strategies as st

from solvquot.action import Character
from solvquot.dsl import (emit_json, format_loc, format_spec, load_result, load_schema, parse,
                          parse_expr, parse_loc)
from solvquot.errors import ParseError, ValidationError
from solvquot.gallery import EXAMPLES
from solvquot.localize import Localized
from solvquot.pipeline import solvable_invariants
from solvquot.randgen import random_action
from solvquot.verify import verify_output

from strategies import RING3, polys

x, y, w = RING3.gens()


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_gallery_round_trip(name):
    spec = parse(EXAMPLES[name])
    again = parse(format_spec(spec))
    assert again == spec
    assert format_spec(again) == format_spec(spec)


@pytest.mark.parametrize("seed", range(100))
def test_random_spec_round_trip(seed):
    spec = random_action(1 + seed % 4, seed % 3, (seed // 3) % 3, seed=seed)
    assert parse(format_spec(spec)) == spec


def test_field_defaults_to_q_and_char_to_trivial():
    spec = parse("vars x\nunipotent z\ntorus t\nmap x = x + z\n")
    assert spec.field.char == 0
    assert spec.chars == (Character((0,)),)


def test_comments_and_blank_lines():
    spec = parse("# header\n\nvars x   # the only variable\nmap x = x\n")
    assert spec.n == 1


def test_expression_grammar():
    assert parse_expr("(1/2)*x^2 - 3*(y + w)", RING3) == x * x * Fraction(1, 2) - 3 * y - 3 * w
    assert parse_expr("-x^2", RING3) == -(x * x)
    assert parse_expr("2^3*x", RING3) == 8 * x


BAD = [
    ("vars x\nmap x = x +\n", 2, 12),
    ("vars x\nmap x = x ** 2\n", 2, 12),
    ("vars x\nmap x = 2 x\n", 2, 11),
    ("vars x\nmap x = (x\n", 2, 11),
    ("vars x\nmap y = x\n", 2, 5),
    ("vars x\nmap x x\n", 2, 7),
    ("vars x\nmap x = x\nmap x = x\n", 3, 1),
    ("vars x\nmap x = x^-1\n", 2, 9),
    ("field Fp 4\nvars x\nmap x = x\n", 1, 10),
    ("field R\nvars x\nmap x = x\n", 1, 7),
    ("vars x x\nmap x = x\n", 1, 8),
    ("vars x\n", 1, 1),
    ("vars x\nfoo x\nmap x = x\n", 2, 1),
    ("vars x\nunipotent z\ntorus t\nchar z = 2*t\nmap x = x + z\n", 4, 10),
    ("vars x\nmap x = x $ 1\n", 2, 11),
]


@pytest.mark.parametrize("text,line,col", BAD)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.col) == (line, col)
    assert f"line {line}, column {col}" in str(exc.value)


def test_format_loc_examples():
    q = solvable_invariants(parse(EXAMPLES["weitzenboeck"]))
    assert [format_loc(b) for b in q.b_images] == ["0", "y", "(-x^2 + 2*y*w)/(2*y)"]
    q = solvable_invariants(parse(EXAMPLES["scaling"]))
    assert format_loc(q.s[0].elem) == "1/x1"
    assert format_loc(q.s[0].inverse) == "x1"
    assert format_loc(q.b_images[1]) == "x2/x1"


@given(polys(), st.integers(0, 3), polys(max_terms=2, max_deg=2))
def test_parse_loc_inverts_format_loc(num, e, c):
    if c.is_zero() or c.is_constant():
        return
    a = Localized(num, e, c)
    assert parse_loc(format_loc(a), RING3, c) == a


def test_parse_loc_rejects_foreign_denominator():
    with pytest.raises(ValidationError):
        parse_loc("x/(y + 1)", RING3, y)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_json_schema_determinism_and_reload(name):
    spec = parse(EXAMPLES[name])
    q = solvable_invariants(spec)
    checks = verify_output(spec, q).checks()
    text = emit_json(q, checks)
    jsonschema.validate(json.loads(text), load_schema())
    assert text == emit_json(solvable_invariants(parse(EXAMPLES[name])), checks)
    q2, doc = load_result(text, parse(EXAMPLES[name]))
    assert doc == json.loads(text)
    assert q2.c == q.c and q2.b == q.b and q2.b_images == q.b_images
    assert emit_json(q2, checks) == text
    assert verify_output(q2.spec, q2).ok


def test_load_result_errors():
    spec = parse(EXAMPLES["scaling"])
    text = emit_json(solvable_invariants(spec))
    with pytest.raises(ParseError):
        load_result("{not json", spec)
    doc = json.loads(text)
    doc["extra"] = 1
    with pytest.raises(ParseError):
        load_result(json.dumps(doc), spec)
    doc = json.loads(text)
    doc["field"] = "Fp 3"
    with pytest.raises(ValidationError):
        load_result(json.dumps(doc), spec)
    doc = json.loads(text)
    doc["b_images"][1] = "x2/(x1 + 1)"
    with pytest.raises(ValidationError):
        load_result(json.dumps(doc), spec)
    with pytest.raises(ValidationError):
        load_result(text, parse(EXAMPLES["weitzenboeck"]))
