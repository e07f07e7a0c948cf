"""Elements of the localization R_c, stored as ``num / c**exp``.

Fractions are never brought to lowest terms (that would need multivariate
gcds); only whole powers of ``c`` are cancelled, and only on request via
:meth:`Localized.reduce`.  Equality is decided by cross-multiplication,
which is sound because R is a domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .poly import RATIONAL, Poly, divides_power, exact_divide


class DenominatorMismatch(ValueError):
    pass


_POW_CACHE: dict = {}


def cpow(c: Poly, k: int) -> Poly:
    """``c ** k``, cached since the same denominator recurs everywhere."""
    if k <= 1:
        return c.ring.one() if k == 0 else c
    key = (c, k)
    p = _POW_CACHE.get(key)
    if p is None:
        if len(_POW_CACHE) > 512:
            _POW_CACHE.clear()
        p = cpow(c, k - 1) * c if (c, k - 1) in _POW_CACHE else c ** k
        _POW_CACHE[key] = p
    return p


class Localized:
    __slots__ = ("num", "exp", "c")

    def __init__(self, num: Poly, exp: int = 0, c: Optional[Poly] = None):
        if c is None:
            c = num.ring.one()
        if c.is_zero():
            raise ZeroDivisionError("localizing at zero")
        if exp < 0:
            raise ValueError("denominator exponent must be nonnegative")
        if c.is_constant() and exp:
            f = c.ring.field
            num = num.scale(f.pow(f.inv(c.constant_value()), exp))
            exp = 0
        if num.is_zero():
            exp = 0
        self.num = num
        self.exp = exp
        self.c = c

    @property
    def ring(self):
        return self.num.ring

    def like(self, p: Poly, exp: int = 0) -> "Localized":
        return Localized(p, exp, self.c)

    def _coerce(self, other) -> "Localized":
        if isinstance(other, Localized):
            if other.c != self.c:
                raise DenominatorMismatch("elements live over different denominators")
            return other
        if isinstance(other, Poly):
            return Localized(other, 0, self.c)
        if isinstance(other, RATIONAL):
            return Localized(self.num.ring.const(other), 0, self.c)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exp == other.exp:
            return Localized(self.num + other.num, self.exp, self.c)
        if self.exp > other.exp:
            return Localized(self.num + other.num * cpow(self.c, self.exp - other.exp), self.exp, self.c)
        return Localized(self.num * cpow(self.c, other.exp - self.exp) + other.num, other.exp, self.c)

    __radd__ = __add__

    def __neg__(self):
        return Localized(-self.num, self.exp, self.c)

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
        return Localized(self.num * other.num, self.exp + other.exp, self.c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use invert() for negative powers")
        return Localized(self.num ** k, self.exp * k, self.c)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except DenominatorMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return (self - other).num.is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self == 1

    # polynomial-in-a-variable view, used by division with remainder
    def deg_in(self, v):
        return self.num.deg_in(v)

    def coeff(self, v, k: int) -> "Localized":
        return Localized(self.num.coeff(v, k), self.exp, self.c)

    def coeff_monomial(self, vs, exps) -> "Localized":
        return Localized(self.num.coeff_monomial(vs, exps), self.exp, self.c)

    def shift(self, v, k: int) -> "Localized":
        return Localized(self.num.shift(v, k), self.exp, self.c)

    def involves(self, v) -> bool:
        return self.num.involves(v)

    def substitute(self, sigma, **kw) -> "Localized":
        """Substitute in the numerator; ``sigma`` must fix ``c``."""
        return Localized(self.num.substitute(sigma, **kw), self.exp, self.c)

    def reduce(self) -> "Localized":
        """Cancel whole powers of ``c`` from the numerator."""
        num, exp = self.num, self.exp
        while exp:
            q = exact_divide(num, self.c)
            if q is None:
                break
            num, exp = q, exp - 1
        return Localized(num, exp, self.c)

    def __repr__(self):
        return f"Localized({self.num!s} / ({self.c!s})^{self.exp})"


def loc_add(a: Localized, b: Localized) -> Localized:
    return a + b


def loc_mul(a: Localized, b: Localized) -> Localized:
    return a * b


def loc_pow(a: Localized, k: int) -> Localized:
    return a ** k


def is_zero(a: Localized) -> bool:
    return a.is_zero()


@dataclass(frozen=True)
class UnitWitness:
    elem: Localized
    inverse: Localized

    def swapped(self) -> "UnitWitness":
        return UnitWitness(self.inverse, self.elem)

    def power(self, k: int) -> Localized:
        return self.elem ** k if k >= 0 else self.inverse ** (-k)

    def check(self) -> bool:
        return (self.elem * self.inverse).is_one()

    def rebase(self, c_new: Poly) -> "UnitWitness":
        return UnitWitness(rebase(self.elem, c_new), rebase(self.inverse, c_new))

    def reduce(self) -> "UnitWitness":
        return UnitWitness(self.elem.reduce(), self.inverse.reduce())


def invert(a: Localized, factors: Sequence[Poly] = ()) -> Optional[UnitWitness]:
    """Unit witness for ``a`` if it is invertible in R_c, else ``None``.

    ``num/c^e`` is a unit iff ``num`` divides a power of ``c``.  Known factors
    of ``c`` are divided out first so the remaining test is on a smaller
    polynomial.
    """
    if a.is_zero():
        raise ZeroDivisionError("zero is not invertible")
    base = set(a.ring.indices("base"))
    if not a.num.support_vars() <= base:
        return None
    rest = a.num
    mult = 0
    for f in factors:
        k = 0
        while not rest.is_constant():
            q = exact_divide(rest, f)
            if q is None:
                break
            rest, k = q, k + 1
        mult = max(mult, k)
    q = None
    if rest.is_constant() and factors:
        m = mult
        q = exact_divide(a.c ** m, a.num)
    if q is None:
        if not rest.is_constant() and divides_power(rest, a.c) is None:
            return None
        m = divides_power(a.num, a.c)
        if m is None:
            return None
        q = exact_divide(a.c ** m, a.num)
    inverse = Localized(q * a.c ** a.exp, m, a.c).reduce()
    return UnitWitness(a, inverse)


def rebase(a: Localized, c_new: Poly, _cache: dict = {}) -> Localized:
    """Express ``a`` over powers of ``c_new``; ``a.c`` must divide a power of it."""
    c_old = a.c
    if c_old == c_new:
        return a
    key = (c_old, c_new)
    hit = _cache.get(key)
    if hit is None:
        m = divides_power(c_old, c_new)
        if m is None:
            raise ValueError("old denominator does not divide a power of the new one")
        hit = (m, exact_divide(c_new ** m, c_old))
        if len(_cache) > 256:
            _cache.clear()
        _cache[key] = hit
    m, h = hit
    if a.exp == 0:
        return Localized(a.num, 0, c_new)
    return Localized(a.num * h ** a.exp, m * a.exp, c_new)


def semi_invariant_numerator(a: Localized, action):
    """Numerator ``a * c**exp`` of a semi-invariant ``a``, with its weight.

    Since ``c`` is a semi-invariant too, the numerator is one.  Raises
    ``ValueError`` if it is not (i.e. ``a`` was not a semi-invariant).
    """
    if a.is_zero():
        raise ValueError("zero has no semi-invariant numerator")
    w = action.weight_of(a.num)
    if w is None:
        raise ValueError("element is not a semi-invariant")
    return a.num, w


class Epoch:
    """The current denominator ``c`` with its weight and the monic factors it
    was built from.  Localizing further only ever multiplies ``c``."""

    def __init__(self, c: Poly, weight, factors: tuple = ()):
        self.c = c
        self.weight = weight
        self.factors = tuple(factors)

    def extend(self, n: Poly, weigh) -> "Epoch":
        """Epoch in which the semi-invariant ``n`` is a unit.  ``weigh``
        returns the weight of a semi-invariant polynomial and raises for
        anything else; only the new factors are weighed.

        Factors are kept fine: ``n`` is stripped of known factors, then its
        monomial content is split into single variables."""
        for f, _ in self.factors:
            while not n.is_constant():
                q = exact_divide(n, f)
                if q is None:
                    break
                n = q
        if n.is_constant() or divides_power(n, self.c) is not None:
            return self
        new = []
        content = [min(e[i] for e in n.terms) for i in range(n.ring.nvars)]
        for i, k in enumerate(content):
            if k:
                v = n.ring.gen(i)
                new.append(v)
                n = exact_divide(n, v ** k)
        if not n.is_constant():
            new.append(n.monic())
        c = self.c
        factors = list(self.factors)
        weight = self.weight
        for f in new:
            wf = weigh(f)
            factors.append((f, wf))
            c = c * f
            weight = weight * wf
        return Epoch(c.monic(), weight, tuple(factors))

    def lift(self, a: Localized) -> Localized:
        return rebase(a, self.c)

    def inverse_of_c(self) -> Localized:
        return Localized(self.c.ring.one(), 1, self.c)

    def __repr__(self):
        return f"Epoch(c={self.c!s})"
