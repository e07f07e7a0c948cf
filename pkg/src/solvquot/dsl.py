"""The ``.sq`` action-spec language and the JSON result format.

A spec is a sequence of line statements::

    field Q                      # or: field Fp 3
    vars x y w
    unipotent z1                 # optional
    torus t1                     # optional
    char z1 = t1^2               # optional; trivial by default
    map x = x + y*z1

Expressions use integers, rationals ``a/b``, variables, ``+ - * ^`` and
parentheses.  Exponents are integers, negative only on torus variables.
"""

from __future__ import annotations

import json
import re
from importlib import resources
from math import lcm
from typing import Optional, Sequence

import jsonschema

from .action import ActionSpec, Character, validate
from .errors import ParseError, ValidationError
from .localize import Localized, UnitWitness
from .poly import Field, Poly, PolyRing, format_poly

SCHEMA_ID = "solvquot/1"
KEYWORDS = ("field", "vars", "unipotent", "torus", "char", "map")

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()=]))")


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind: str, text: str, line: int, col: int):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text: str, line: int = 1, col0: int = 1) -> list[Token]:
    """Tokens of one line; ``col0`` is the column of ``text[0]``."""
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), line, col0 + start))
        pos = m.end()
    return out


class _Expr:
    """Recursive-descent parser for one expression; values are
    ``(numerator, denominator)`` pairs of polynomials."""

    def __init__(self, tokens: Sequence[Token], ring: PolyRing, line: int, end_col: int):
        self.toks = list(tokens)
        self.i = 0
        self.ring = ring
        self.line = line
        self.end_col = end_col

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line, self.end_col)
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, got {tok.text!r}", tok.line, tok.col)
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression", self.line, self.end_col)
        val = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)
        return val

    def expr(self):
        num, den = self.term()
        while (tok := self.peek()) is not None and tok.text in "+-":
            self.take()
            n2, d2 = self.term()
            if tok.text == "+":
                num, den = num * d2 + n2 * den, den * d2
            else:
                num, den = num * d2 - n2 * den, den * d2
            num, den = _tidy(num, den)
        return num, den

    def term(self):
        num, den = self.unary()
        while (tok := self.peek()) is not None and tok.text in "*/":
            self.take()
            n2, d2 = self.unary()
            if tok.text == "*":
                num, den = num * n2, den * d2
            else:
                if n2.is_zero():
                    raise ParseError("division by zero", tok.line, tok.col)
                num, den = num * d2, den * n2
            num, den = _tidy(num, den)
        return num, den

    def unary(self):
        tok = self.peek()
        if tok is not None and tok.text in "+-":
            self.take()
            num, den = self.unary()
            return (-num, den) if tok.text == "-" else (num, den)
        return self.power()

    def power(self):
        start = self.peek()
        num, den = self.atom()
        tok = self.peek()
        if tok is None or tok.text != "^":
            return num, den
        self.take()
        sign = 1
        nxt = self.take()
        if nxt.text == "-":
            sign, nxt = -1, self.take()
        if nxt.kind != "num":
            raise ParseError("exponent must be an integer", nxt.line, nxt.col)
        k = sign * int(nxt.text)
        if k >= 0:
            return num ** k, den ** k
        if not den.is_constant():
            raise ParseError("negative power of a quotient", start.line, start.col)
        if num.is_monomial_unit():
            return (num ** k) * den.constant_value() ** (-k), self.ring.one()
        if num.is_constant() and not num.is_zero():
            return den ** (-k), num ** (-k)
        raise ParseError("negative exponent on a non-Laurent expression", start.line, start.col)

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return self.ring.const(int(tok.text)), self.ring.one()
        if tok.kind == "name":
            if tok.text not in self.ring.index:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.col)
            return self.ring.gen(tok.text), self.ring.one()
        if tok.text == "(":
            val = self.expr()
            self.expect(")")
            return val
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)


def _tidy(num: Poly, den: Poly):
    if den.is_constant():
        c = den.constant_value()
        return num.scale(num.ring.field.inv(c)), num.ring.one()
    return num, den


def parse_expr(text: str, ring: PolyRing, line: int = 1, col0: int = 1) -> Poly:
    """A polynomial; divisions only by constants."""
    toks = tokenize(text, line, col0)
    num, den = _Expr(toks, ring, line, col0 + len(text.rstrip())).parse()
    if not den.is_constant():
        raise ParseError("division by a non-constant expression", line, col0)
    return num


def parse_fraction(text: str, ring: PolyRing) -> tuple[Poly, Poly]:
    toks = tokenize(text)
    return _Expr(toks, ring, 1, len(text) + 1).parse()


# -- specs ---------------------------------------------------------------

def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse(text: str) -> ActionSpec:
    """Parse and validate a ``.sq`` document."""
    lines = text.splitlines()
    decl: dict[str, tuple[int, list[Token]]] = {}
    body: list[tuple[int, Token, list[Token], str, int]] = []
    for ln, raw in enumerate(lines, start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        toks = tokenize(line, ln)
        head = toks[0]
        if head.kind != "name" or head.text not in KEYWORDS:
            raise ParseError(f"expected one of {', '.join(KEYWORDS)}, got {head.text!r}", ln, head.col)
        if head.text in ("char", "map"):
            if len(toks) < 2 or toks[1].kind != "name":
                raise ParseError(f"{head.text} needs a variable name", ln, toks[-1].col)
            if len(toks) < 3 or toks[2].text != "=":
                col = toks[2].col if len(toks) > 2 else len(line.rstrip()) + 1
                raise ParseError("expected '='", ln, col)
            col0 = toks[2].col + 1
            body.append((ln, head, toks, line[col0 - 1:], col0))
        else:
            if head.text in decl:
                raise ParseError(f"duplicate {head.text} line", ln, head.col)
            decl[head.text] = (ln, toks[1:])
    fld = _parse_field(decl.get("field"))
    names: list[str] = []
    kinds = (("vars", "base"), ("unipotent", "additive"), ("torus", "torus"))
    groups = {}
    for key, kind in kinds:
        ln, toks = decl.get(key, (0, []))
        group = []
        for tok in toks:
            if tok.kind != "name" or tok.text in KEYWORDS:
                raise ParseError(f"expected a variable name, got {tok.text!r}", tok.line, tok.col)
            if tok.text in names:
                raise ParseError(f"variable {tok.text!r} declared twice", tok.line, tok.col)
            names.append(tok.text)
            group.append(tok.text)
        groups[kind] = group
    if "vars" not in decl or not groups["base"]:
        raise ParseError("missing vars line", 1, 1)
    spec0 = ActionSpec.build(fld, groups["base"], groups["additive"], groups["torus"])
    ring = spec0.ring
    chars: dict[str, Character] = {}
    maps: dict[str, Poly] = {}
    for ln, head, toks, rest, col0 in body:
        target = toks[1]
        if head.text == "char":
            if target.text not in groups["additive"]:
                raise ParseError(f"{target.text!r} is not a unipotent variable", ln, target.col)
            if target.text in chars:
                raise ParseError(f"duplicate char line for {target.text!r}", ln, head.col)
            chars[target.text] = _parse_char(rest, ring, spec0.torus, ln, col0)
        else:
            if target.text not in groups["base"]:
                raise ParseError(f"{target.text!r} is not a declared base variable", ln, target.col)
            if target.text in maps:
                raise ParseError(f"duplicate map line for {target.text!r}", ln, head.col)
            maps[target.text] = parse_expr(rest, ring, ln, col0)
    for v in groups["base"]:
        if v not in maps:
            raise ParseError(f"missing map line for {v!r}", len(lines) or 1, 1)
    m = len(groups["torus"])
    spec = ActionSpec(ring, tuple(chars.get(z, Character.trivial(m)) for z in groups["additive"]),
                      tuple(maps[v] for v in groups["base"]))
    return validate(spec)


def _parse_field(entry) -> Field:
    if entry is None:
        return Field(0)
    ln, toks = entry
    if len(toks) == 1 and toks[0].text == "Q":
        return Field(0)
    if len(toks) == 2 and toks[0].text == "Fp" and toks[1].kind == "num":
        p = int(toks[1].text)
        try:
            return Field(p)
        except ValueError:
            raise ParseError(f"modulus {p} is not prime", ln, toks[1].col) from None
    col = toks[0].col if toks else 6
    raise ParseError("field must be 'Q' or 'Fp <prime>'", ln, col)


def _parse_char(text: str, ring: PolyRing, torus: Sequence[int], ln: int, col0: int) -> Character:
    p = parse_expr(text, ring, ln, col0)
    col0 += len(text) - len(text.lstrip())
    if len(p.terms) != 1:
        raise ParseError("a character is a single torus monomial", ln, col0)
    ((e, c),) = p.terms.items()
    if c != 1 or any(x for i, x in enumerate(e) if i not in torus):
        raise ParseError("a character is a monic monomial in torus variables", ln, col0)
    return Character(tuple(e[i] for i in torus))


def format_spec(spec: ActionSpec) -> str:
    ring = spec.ring
    f = spec.field
    out = ["field Q" if f.char == 0 else f"field Fp {f.char}"]
    out.append("vars " + " ".join(ring.names("base")))
    if spec.l:
        out.append("unipotent " + " ".join(ring.names("additive")))
    if spec.m:
        out.append("torus " + " ".join(ring.names("torus")))
    tnames = ring.names("torus")
    for z, ch in zip(ring.names("additive"), spec.chars):
        if not ch.is_trivial():
            out.append(f"char {z} = {ch.format(tnames)}")
    for x, p in zip(ring.names("base"), spec.images):
        out.append(f"map {x} = {format_poly(p)}")
    return "\n".join(out) + "\n"


# -- localized values ------------------------------------------------------

def _denominator_lcm(p: Poly) -> int:
    out = 1
    for c in p.terms.values():
        if not isinstance(c, int):
            out = lcm(out, int(c.denominator))
    return out


def format_loc(a: Localized) -> str:
    """``N/(L*c^e)`` with integer coefficients in ``N`` when over Q."""
    if a.exp == 0 or a.is_zero():
        return format_poly(a.num)
    L = _denominator_lcm(a.num)
    num = format_poly(a.num.scale(L))
    cs = format_poly(a.c)
    base = cs if len(a.c.terms) == 1 and not any(ch in cs for ch in "*^") else f"({cs})"
    if a.exp > 1:
        base = f"{base}^{a.exp}"
    factors = ([str(L)] if L != 1 else []) + [base]
    den = "*".join(factors)
    if len(factors) > 1 or a.exp > 1:
        den = f"({den})"
    if len(a.num.terms) > 1:
        num = f"({num})"
    return f"{num}/{den}"


def parse_loc(text: str, ring: PolyRing, c: Poly) -> Localized:
    """Inverse of :func:`format_loc`: the denominator must be a constant
    times a power of ``c``."""
    num, den = parse_fraction(text, ring)
    if den.is_constant():
        return Localized(num.scale(ring.field.inv(den.constant_value())), 0, c)
    dc = c.total_degree()
    e = den.total_degree() // dc if dc else 0
    if e <= 0:
        raise ValidationError(f"denominator of {text!r} is not a power of c")
    ce = c ** e
    lc = den.leading_coeff() * ring.field.inv(ce.leading_coeff())
    if den != ce.scale(lc):
        raise ValidationError(f"denominator of {text!r} is not a power of c")
    return Localized(num.scale(ring.field.inv(lc)), e, c)


# -- JSON results ----------------------------------------------------------

def load_schema() -> dict:
    return json.loads(resources.files("solvquot").joinpath("result.schema.json").read_text())


def field_name(f: Field) -> str:
    return "Q" if f.char == 0 else f"Fp {f.char}"


def result_dict(q, checks: Optional[dict] = None, spotcheck: Optional[dict] = None) -> dict:
    from .pipeline import presentation
    spec = q.spec
    tnames = spec.ring.names("torus")
    vars_, rels = presentation(q)
    doc = {
        "schema": SCHEMA_ID,
        "field": field_name(spec.field),
        "c": format_poly(q.c),
        "c_factors": [format_poly(f) for f in q.factors],
        "weight": q.weight.format(tnames),
        "b": format_loc(q.b),
        "b_images": [format_loc(b) for b in q.b_images],
        "slices": {
            "u": [format_loc(u) for u in q.u],
            "s": [format_loc(w.elem) for w in q.s],
            "s_inverse": [format_loc(w.inverse) for w in q.s],
        },
        "kernel": [format_poly(p) for p in q.kernel()],
        "presentation": {"vars": vars_, "relations": [format_poly(p) for p in rels]},
        "stages": [_stage_dict(st) for st in q.stages],
        "checks": dict(checks or {}),
    }
    if spotcheck is not None:
        doc["spotcheck"] = spotcheck
    return doc


def _stage_dict(st) -> dict:
    out = {"kind": st.kind, "index": st.index, "d": st.slice.d, "c": format_poly(st.c_after)}
    if st.kind == "additive":
        out["slice"] = format_loc(st.slice.s)
    else:
        out["slice"] = format_loc(st.slice.s.elem)
        out["slice_inverse"] = format_loc(st.slice.s.inverse)
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def emit_json(q, checks: Optional[dict] = None, spotcheck: Optional[dict] = None) -> str:
    doc = result_dict(q, checks, spotcheck)
    jsonschema.validate(doc, load_schema())
    return dumps(doc)


def load_result(text: str, spec: ActionSpec):
    """Rebuild a :class:`QuotientPresentation` from emitted JSON.

    Raises :class:`ParseError` when the text is not schema-valid JSON and
    :class:`ValidationError` when it does not fit ``spec``."""
    from .ga_slice import GaSlice
    from .pipeline import QuotientPresentation, StageRecord, weigher
    from .torus_slice import GmSlice
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        raise ParseError(f"result does not match schema {SCHEMA_ID}: {exc.message}") from None
    ring = spec.ring
    if doc["field"] != field_name(spec.field):
        raise ValidationError("result field differs from the field of the action")
    if len(doc["b_images"]) != spec.n:
        raise ValidationError("need one b-image per base variable")

    def poly(s):
        try:
            return parse_expr(s, ring)
        except ParseError as exc:
            raise ValidationError(f"bad polynomial {s!r}: {exc}") from None

    def loc(s, c):
        try:
            return parse_loc(s, ring, c)
        except ParseError as exc:
            raise ValidationError(f"bad value {s!r}: {exc}") from None

    c = poly(doc["c"])
    if c.is_zero():
        raise ValidationError("c must be nonzero")
    weight = _char_from(doc["weight"], spec)
    sl = doc["slices"]
    if len(sl["s"]) != len(sl["s_inverse"]):
        raise ValidationError("s and s_inverse differ in length")
    u = [loc(x, c) for x in sl["u"]]
    s = [UnitWitness(loc(a, c), loc(b, c)) for a, b in zip(sl["s"], sl["s_inverse"])]
    weigh = weigher(spec)
    stages = []
    prev = ring.one()
    for st in doc["stages"]:
        cs = poly(st["c"])
        if cs.is_zero():
            raise ValidationError("stage denominator must be nonzero")
        idx = st["index"]
        try:
            if st["kind"] == "additive":
                if not 0 <= idx < spec.l:
                    raise ValidationError(f"no additive factor {idx}")
                phi = spec.restrict_phi(idx)
                z = spec.additive[idx]
                a = loc(st["slice"], cs)
                g = phi.apply_loc(a)
                d = g.deg_in(z)
                if d != st["d"]:
                    raise ValidationError(f"stage slice degree {d} differs from recorded {st['d']}")
                slc = GaSlice(a, d, g.coeff(z, d), g, z).over(cs)
            else:
                if not 0 <= idx < spec.m or "slice_inverse" not in st:
                    raise ValidationError(f"no torus factor {idx}")
                w = UnitWitness(loc(st["slice"], cs), loc(st["slice_inverse"], cs))
                cw = weigh(cs)
                sw = spec.weight_of_loc(w.elem, cw)
                if sw is None:
                    raise ValidationError("torus slice is not a semi-invariant")
                slc = GmSlice(w, st["d"], cs, sw, spec.torus[idx], idx)
        except (ValueError, AssertionError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"bad stage record: {exc}") from None
        stages.append(StageRecord(st["kind"], idx, slc, [], prev, cs))
        prev = cs
    factors = [poly(f) for f in doc["c_factors"]]
    if any(f.is_zero() for f in factors):
        raise ValidationError("factors of c must be nonzero")
    q = QuotientPresentation(spec, c, weight, loc(doc["b"], c),
                             [loc(x, c) for x in doc["b_images"]], u, s, stages, factors)
    return q, doc


def _char_from(text: str, spec: ActionSpec) -> Character:
    if text.strip() == "1":
        return Character.trivial(spec.m)
    try:
        return _parse_char(text, spec.ring, spec.torus, 1, 1)
    except ParseError as exc:
        raise ValidationError(f"bad weight {text!r}: {exc}") from None

