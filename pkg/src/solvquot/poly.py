"""Sparse multivariate (Laurent) polynomials over Q and F_p.

A :class:`PolyRing` fixes the coefficient field and an ordered variable
table.  Variables of kind ``torus`` and ``slice-laurent`` may carry negative
exponents; all others are ordinary polynomial variables.  The order of the
table determines the monomial order used everywhere (graded, ties broken
lexicographically with the first variable largest).
"""

from __future__ import annotations

import heapq
import random as _random
from operator import add
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from gmpy2 import mpq

RATIONAL = (int, Fraction, type(mpq(0)))

NEG_INF = float("-inf")

VAR_KINDS = ("base", "additive", "torus", "slice", "slice-laurent", "auxiliary")
LAURENT_KINDS = ("torus", "slice-laurent")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Q (``char == 0``) or the prime field F_p.

    Rational elements are ``gmpy2.mpq`` (they compare and hash like
    :class:`fractions.Fraction`), mod-p elements are ints in ``range(p)``.
    """

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char != 0 and not _is_prime(char):
            raise ValueError(f"modulus {char} is not prime")
        self.char = char

    def __call__(self, v):
        if self.char == 0:
            return mpq(v)
        if isinstance(v, int):
            return v % self.char
        return int(v.numerator) * pow(int(v.denominator), -1, self.char) % self.char

    def norm(self, v):
        return v % self.char if self.char else v

    def pow(self, v, k: int):
        return v ** k if self.char == 0 else pow(v, k, self.char)

    def inv(self, v):
        if not v:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return 1 / mpq(v)
        return pow(v, -1, self.char)

    @property
    def zero(self):
        return mpq(0) if self.char == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.char == 0 else 1

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "Q" if self.char == 0 else f"Fp {self.char}"


QQ = Field(0)


@dataclass(frozen=True)
class Var:
    name: str
    kind: str = "base"

    @property
    def laurent(self) -> bool:
        return self.kind in LAURENT_KINDS


class PolyRing:
    """Coefficient field plus an ordered table of variables."""

    def __init__(self, field: Field, variables: Iterable[Var | tuple[str, str]]):
        vs = tuple(v if isinstance(v, Var) else Var(*v) for v in variables)
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in vs:
            if v.kind not in VAR_KINDS:
                raise ValueError(f"unknown variable kind {v.kind!r}")
        self.field = field
        self.vars = vs
        self.nvars = len(vs)
        self.index = {v.name: i for i, v in enumerate(vs)}
        self.laurent = tuple(v.laurent for v in vs)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.field, self.vars))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {[v.name for v in self.vars]})"

    def idx(self, v: int | str) -> int:
        return v if isinstance(v, int) else self.index[v]

    def names(self, kind: Optional[str] = None) -> list[str]:
        return [v.name for v in self.vars if kind is None or v.kind == kind]

    def indices(self, kind: str) -> list[int]:
        return [i for i, v in enumerate(self.vars) if v.kind == kind]

    def extend(self, variables: Iterable[Var | tuple[str, str]]) -> "PolyRing":
        return PolyRing(self.field, self.vars + tuple(
            v if isinstance(v, Var) else Var(*v) for v in variables))

    def fresh_name(self, stem: str) -> str:
        if stem not in self.index:
            return stem
        k = 1
        while f"{stem}{k}" in self.index:
            k += 1
        return f"{stem}{k}"

    # constructors
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, v) -> "Poly":
        c = self.field(v)
        return Poly(self, {self._zero_exp: c} if c else {})

    def gen(self, v: int | str) -> "Poly":
        i = self.idx(v)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self, kind: Optional[str] = None) -> list["Poly"]:
        return [self.gen(i) for i, v in enumerate(self.vars) if kind is None or v.kind == kind]

    def monomial(self, exps: Mapping[int | str, int] | Sequence[int], coeff=1) -> "Poly":
        if isinstance(exps, Mapping):
            e = [0] * self.nvars
            for k, x in exps.items():
                e[self.idx(k)] = x
            exps = e
        return Poly(self, {tuple(exps): self.field(coeff)})


def order_key(e: tuple[int, ...]) -> tuple:
    """Graded order, ties broken lexicographically (first variable largest)."""
    return (sum(e), e)


def _check_exps(ring: PolyRing, e: tuple[int, ...]) -> None:
    for x, lau, v in zip(e, ring.laurent, ring.vars):
        if x < 0 and not lau:
            raise ValueError(f"negative exponent on non-Laurent variable {v.name}")


class Poly:
    """Immutable sparse polynomial: a dict from exponent tuples to nonzero
    coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], object], check: bool = False):
        self.ring = ring
        if check:
            f = ring.field
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != ring.nvars:
                    raise ValueError("exponent vector length does not match ring")
                _check_exps(ring, e)
                c = f(c)
                if c:
                    clean[e] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # -- basic queries ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def is_monomial_unit(self) -> bool:
        """Single term whose monomial only involves Laurent variables."""
        if len(self.terms) != 1:
            return False
        (e,) = self.terms
        return all(x == 0 or lau for x, lau in zip(e, self.ring.laurent))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, RATIONAL):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("mismatched variable tables")
            return other
        if isinstance(other, RATIONAL):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = f.norm(res.get(e, 0) + c)
            if v:
                res[e] = v
            else:
                res.pop(e, None)
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {e: f.norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res: dict = {}
        get = res.get
        a_items = list(a.items())
        for e2, c2 in b.items():
            for e1, c1 in a_items:
                e = tuple(map(add, e1, e2))
                res[e] = get(e, 0) + c1 * c2
        if f.char:
            p = f.char
            res = {e: c % p for e, c in res.items() if c % p}
        else:
            res = {e: c for e, c in res.items() if c}
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: f.norm(v * c) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial_unit():
                raise ValueError("negative power of a non-unit polynomial")
            ((e, c),) = self.terms.items()
            f = self.ring.field
            return Poly(self.ring, {tuple(x * k for x in e): f.pow(f.inv(c), -k)})
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, v: int | str, k: int) -> "Poly":
        """Multiply by ``v**k``."""
        i = self.ring.idx(v)
        res = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[i] += k
            res[tuple(e2)] = c
        out = Poly(self.ring, res)
        if k < 0 and not self.ring.laurent[i]:
            for e in res:
                _check_exps(self.ring, e)
        return out

    def mul_monomial(self, exps: Sequence[int], coeff=None) -> "Poly":
        res = {tuple(x + y for x, y in zip(e, exps)): c for e, c in self.terms.items()}
        out = Poly(self.ring, res)
        if coeff is not None:
            out = out.scale(coeff)
        return out

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ring.field.inv(self.leading_coeff()))

    # -- order -----------------------------------------------------------
    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self, descending: bool = True) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: order_key(t[0]), reverse=descending)

    # -- degrees and coefficients ---------------------------------------
    def deg_in(self, v: int | str):
        """Ordinary degree in ``v`` (NEG_INF for zero); for Laurent variables
        the largest absolute exponent (0 for zero)."""
        i = self.ring.idx(v)
        if self.ring.laurent[i]:
            return max((abs(e[i]) for e in self.terms), default=0)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def max_exp(self, v: int | str):
        i = self.ring.idx(v)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def min_exp(self, v: int | str):
        i = self.ring.idx(v)
        return min((e[i] for e in self.terms), default=float("inf"))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def involves(self, v: int | str) -> bool:
        i = self.ring.idx(v)
        return any(e[i] for e in self.terms)

    def support_vars(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def coeff(self, v: int | str, k: int) -> "Poly":
        """Coefficient of ``v**k``; a polynomial not involving ``v``."""
        i = self.ring.idx(v)
        res = {}
        for e, c in self.terms.items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                res[tuple(e2)] = c
        return Poly(self.ring, res)

    def coeff_monomial(self, vs: Sequence[int | str], exps: Sequence[int]) -> "Poly":
        """Coefficient of the monomial ``prod(vs[i]**exps[i])``."""
        idx = [self.ring.idx(v) for v in vs]
        target = tuple(exps)
        res = {}
        for e, c in self.terms.items():
            if tuple(e[i] for i in idx) == target:
                e2 = list(e)
                for i in idx:
                    e2[i] = 0
                res[tuple(e2)] = c
        return Poly(self.ring, res)

    def split_by(self, vs: Sequence[int | str]) -> dict[tuple[int, ...], "Poly"]:
        """Group terms by their exponents in ``vs``: ``{exps: coefficient}``."""
        idx = [self.ring.idx(v) for v in vs]
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            e2 = list(e)
            for i in idx:
                e2[i] = 0
            groups.setdefault(key, {})[tuple(e2)] = c
        return {k: Poly(self.ring, t) for k, t in groups.items()}

    def derivative(self, v: int | str) -> "Poly":
        i = self.ring.idx(v)
        f = self.ring.field
        res = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                val = f.norm(c * e[i])
                if val:
                    res[tuple(e2)] = val
        return Poly(self.ring, res)

    # -- homomorphisms ---------------------------------------------------
    def substitute(
        self,
        sigma: Mapping[int | str, "Poly"],
        inverses: Optional[Mapping[int | str, "Poly"]] = None,
        cache: Optional[dict] = None,
    ) -> "Poly":
        """Image under the homomorphism extending ``sigma`` (unmapped
        variables are fixed).

        A Laurent variable occurring with a negative exponent must map to a
        monomial unit or come with an explicit inverse in ``inverses``.
        ``cache`` may be shared between calls with the same ``sigma``.
        """
        ring = self.ring
        sig = {ring.idx(k): v for k, v in sigma.items()}
        inv = {ring.idx(k): v for k, v in (inverses or {}).items()}
        if not sig:
            return self
        target = next(iter(sig.values())).ring
        mapped = sorted(sig)
        if cache is None:
            cache = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            p = cache.get(key)
            if p is None:
                if k < 0:
                    if i in inv:
                        p = inv[i] ** (-k)
                    else:
                        img = sig[i]
                        if not img.is_monomial_unit():
                            raise ValueError(
                                f"Laurent variable {ring.vars[i].name} mapped to a non-invertible image")
                        p = img ** k
                elif k == 1:
                    p = sig[i]
                elif (i, k - 1) in cache:
                    p = cache[(i, k - 1)] * sig[i]
                else:
                    p = sig[i] ** k
                cache[key] = p
            return p

        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in mapped)
            rest = list(e)
            for i in mapped:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        if target is not ring:
            if target.vars[: ring.nvars] != ring.vars:
                raise ValueError("substitution target must extend the source ring")
            pad = (0,) * (target.nvars - ring.nvars)
        else:
            pad = ()
        out = target.zero()
        for key, rest in groups.items():
            term = Poly(target, {e + pad: c for e, c in rest.items()})
            for i, k in zip(mapped, key):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, values: Mapping[int | str, object]):
        """Evaluate at field values for every variable that occurs."""
        f = self.ring.field
        vals = {self.ring.idx(k): f(v) for k, v in values.items()}
        total = f.zero
        for e, c in self.terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    base = vals[i]
                    if x < 0:
                        base = f.inv(base)
                        x = -x
                    t = f.norm(t * f.pow(base, x))
            total = f.norm(total + t)
        return total

    def lift(self, ring: PolyRing) -> "Poly":
        """Re-express in ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        pos = [ring.index[v.name] for v in self.ring.vars]
        res = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    e2[pos[i]] = x
            res[tuple(e2)] = c
        return Poly(ring, res, check=True)

    # -- printing --------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _fmt_coeff(c) -> str:
    if isinstance(c, int):
        return str(c)
    if c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_monomial(ring: PolyRing, e: Sequence[int]) -> str:
    parts = []
    for v, x in zip(ring.vars, e):
        if x == 1:
            parts.append(v.name)
        elif x:
            parts.append(f"{v.name}^{x}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Render in the expression grammar, terms in descending monomial order."""
    if p.is_zero():
        return "0"
    out = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        neg = not isinstance(c, int) and c < 0
        a = -c if neg else c
        mono = format_monomial(p.ring, e)
        cs = _fmt_coeff(a)
        if not mono:
            body = cs
        elif a == 1:
            body = mono
        elif "/" in cs:
            body = f"({cs})*{mono}"
        else:
            body = f"{cs}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- division ------------------------------------------------------------

def divide_univ(f, g, v, inv_lead):
    """Division with remainder by ``g`` in the variable ``v``.

    Works for any values exposing ``deg_in``, ``coeff``, ``shift`` and ring
    arithmetic (:class:`Poly` and ``Localized``).  ``inv_lead`` must invert
    the leading ``v``-coefficient of ``g``.  Returns ``(q, r)`` with
    ``f == q*g + r`` and ``deg_v(r) < deg_v(g)``.
    """
    d = g.deg_in(v)
    if d < 1:
        raise ValueError("divisor must have positive degree in the division variable")
    lead = g.coeff(v, d)
    if not (lead * inv_lead - 1).is_zero():
        raise ValueError("inv_lead does not invert the leading coefficient")
    q = f - f
    r = f
    while True:
        k = r.deg_in(v)
        if k < d:
            break
        t = (r.coeff(v, k) * inv_lead).shift(v, k - d)
        q = q + t
        r = r - t * g
    return q, r


def _laurent_shift(p: Poly) -> tuple[int, ...]:
    """Per-variable minimum exponent over Laurent variables (0 elsewhere)."""
    ring = p.ring
    mins = [0] * ring.nvars
    for i, lau in enumerate(ring.laurent):
        if lau:
            mins[i] = min(e[i] for e in p.terms)
    return tuple(mins)


def _neg_key(e: tuple[int, ...]) -> tuple:
    # heap key: smallest key = largest monomial in the global order
    return (-sum(e), tuple(-x for x in e))


def _divide_nonneg(f: Poly, n: Poly) -> Optional[Poly]:
    ring = f.ring
    fld = ring.field
    nv = ring.nvars
    # cheap necessary conditions: degree bounds and the two extreme terms
    for i in range(nv):
        if max(e[i] for e in n.terms) > max(e[i] for e in f.terms):
            return None
    lm_n = n.leading_monomial()
    tm_n = min(n.terms, key=order_key)
    tm_f = min(f.terms, key=order_key)
    if any(a < b for a, b in zip(tm_f, tm_n)):
        return None
    inv = fld.inv(n.terms[lm_n])
    n_terms = [(e, c) for e, c in n.terms.items() if e != lm_n]
    rem = dict(f.terms)
    heap = [_neg_key(e) + (e,) for e in rem]
    heapq.heapify(heap)
    q = {}
    deg_n = sum(lm_n)
    while rem:
        m = heapq.heappop(heap)[2]
        if m not in rem:
            continue
        if sum(m) < deg_n:
            return None
        diff = tuple([a - b for a, b in zip(m, lm_n)])
        if any(x < 0 for x in diff):
            return None
        coef = fld.norm(rem.pop(m) * inv)
        q[diff] = coef
        for e, c in n_terms:
            e2 = tuple([a + b for a, b in zip(e, diff)])
            old = rem.get(e2)
            val = fld.norm((old or 0) - coef * c)
            if val:
                if old is None:
                    heapq.heappush(heap, _neg_key(e2) + (e2,))
                rem[e2] = val
            elif old is not None:
                del rem[e2]
    return Poly(ring, q)


def exact_divide(f: Poly, n: Poly) -> Optional[Poly]:
    """``q`` with ``q*n == f`` if ``n`` divides ``f``, else ``None``.

    Exact for a single divisor: if ``n | f`` then leading-term reduction
    never gets stuck.  Laurent monomial content is a unit and is stripped
    before dividing in the polynomial ring.
    """
    if n.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    sn, sf = _laurent_shift(n), _laurent_shift(f)
    n0 = n.mul_monomial(tuple(-x for x in sn)) if any(sn) else n
    f0 = f.mul_monomial(tuple(-x for x in sf)) if any(sf) else f
    q = _divide_nonneg(f0, n0)
    if q is None:
        return None
    back = tuple(a - b for a, b in zip(sf, sn))
    return q.mul_monomial(back) if any(back) else q


_LINE_PRIME = (1 << 61) - 1


def _up_trim(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def _up_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        q = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - q * x) % p
        _up_trim(a)
    return a


def _up_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _up_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _up_mod(a, b, p)
    return a


def _up_divmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        k = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = k
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - k * x) % p
        _up_trim(a)
    return q


def _interpolate(values: list[int], p: int) -> list[int]:
    """Coefficients of the polynomial of degree < len(values) taking
    ``values[k]`` at ``k``, mod ``p`` (Newton form, then expanded)."""
    coef = list(values)
    n = len(coef)
    for j in range(1, n):
        inv = pow(j, -1, p)
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * inv % p
    out = [0]
    for i in range(n - 1, -1, -1):
        out = _up_mul(out, [(-i) % p, 1], p) if any(out) else [0]
        out[0] = (out[0] + coef[i]) % p
    return _up_trim(out)


def _on_line(f: Poly, line, p: int) -> Optional[list[int]]:
    """``f(a + b T)`` reduced mod ``p`` as a coefficient list, or ``None``
    when a coefficient has a denominator divisible by ``p``."""
    coefs = []
    for e, coef in f.terms.items():
        if f.ring.field.char:
            coefs.append((e, int(coef) % p))
        else:
            den = int(coef.denominator)
            if den % p == 0:
                return None
            coefs.append((e, int(coef.numerator) * pow(den, -1, p) % p))
    deg = int(f.total_degree())
    if deg + 1 > p:
        return None
    used = [i for i in range(f.ring.nvars) if any(e[i] for e in f.terms)]
    values = []
    for tau in range(deg + 1):
        pt = {i: (line[i][0] + line[i][1] * tau) % p for i in used}
        acc = 0
        for e, cv in coefs:
            for i in used:
                if e[i]:
                    cv = cv * pow(pt[i], e[i], p) % p
            acc += cv
        values.append(acc % p)
    return _interpolate(values, p)


def _line_test(n: Poly, c: Poly, lines: int = 2) -> bool:
    """Necessary condition for ``n | c**m``: restricted to random lines,
    every root of ``n`` must be a root of ``c``.  ``False`` is a proof that no
    power of ``c`` is divisible by ``n``; ``True`` decides nothing."""
    if any(k < 0 for e in list(n.terms) + list(c.terms) for k in e):
        return True
    p = n.ring.field.char or _LINE_PRIME
    rng = _random.Random(n.ring.nvars * 7919 + len(n.terms))
    for _ in range(lines):
        line = [(rng.randrange(p), rng.randrange(p)) for _ in range(n.ring.nvars)]
        nl, cl = _on_line(n, line, p), _on_line(c, line, p)
        if not nl or cl is None or not cl:
            continue
        g = nl
        while len(g) > 1:
            h = _up_gcd(g, cl, p)
            if len(h) <= 1:
                return False
            g = _up_divmod(g, h, p)
    return True


def divides_power(n: Poly, c: Poly) -> Optional[int]:
    """Least ``m`` with ``n | c**m``, or ``None`` if there is none.

    If ``n | c**m`` for some ``m`` then every irreducible factor of ``n``
    divides ``c``, and its multiplicity in ``n`` is at most ``deg(n)``, so
    ``n | c**deg(n)``.  Searching ``m = 0 .. deg(n)`` therefore decides the
    question and finds the minimum.
    """
    if n.is_zero() or c.is_zero():
        raise ZeroDivisionError("divides_power needs nonzero arguments")
    if not _line_test(n, c):
        return None
    bound = int(n.total_degree())
    cm = c.ring.one()
    for m in range(bound + 1):
        if exact_divide(cm, n) is not None:
            return m
        if m < bound:
            cm = cm * c
    return None


def poly_map(p: Poly, fn: Callable[[object], object]) -> Poly:
    """Apply ``fn`` to every coefficient."""
    f = p.ring.field
    res = {}
    for e, c in p.terms.items():
        v = f(fn(c))
        if v:
            res[e] = v
    return Poly(p.ring, res)
