"""Additive-group machinery: degrees, division with remainder, local slices.

Everything here works over a localization ``R_c`` (elements are
:class:`Localized`); plain polynomials are the case ``c = 1``.  A unary
coaction is a :class:`Coaction` together with the index of its additive
variable ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .action import Coaction
from .errors import DEFAULT_MAX_ITER, IterationCapError, TrivialActionError
from .localize import Localized, UnitWitness, invert, rebase
from .poly import NEG_INF, Poly, divide_univ, exact_divide


def as_loc(a, c: Optional[Poly] = None) -> Localized:
    if isinstance(a, Localized):
        return a
    return Localized(a, 0, c)


def ga_degree(a, phi: Coaction, z: int):
    """``deg_z phi(a)``; ``NEG_INF`` for zero."""
    return phi.apply_loc(as_loc(a)).deg_in(z)


def loc_exact_divide(x: Localized, y: Localized) -> Optional[Localized]:
    """``x / y`` if the numerator of ``y`` divides that of ``x``."""
    q = exact_divide(x.num, y.num)
    if q is None:
        return None
    # (N/c^f) / (L/c^e) = (N/L) c^e / c^f
    if y.exp >= x.exp:
        return Localized(q * x.c ** (y.exp - x.exp), 0, x.c)
    return Localized(q, x.exp - y.exp, x.c)


@dataclass
class GaSlice:
    """Local slice ``s`` of degree ``d``; ``c`` is the top z-coefficient of
    ``g = phi(s)``.  ``lead_inverse`` is set once ``c`` is a unit of the
    ambient localization (see :meth:`over`)."""

    s: Localized
    d: int
    c: Localized
    g: Localized
    z: int
    lead_inverse: Optional[UnitWitness] = None

    def over(self, c_new: Poly) -> "GaSlice":
        """Rebase to denominator ``c_new``, in which ``c`` must be a unit."""
        s, c, g = (rebase(x, c_new) for x in (self.s, self.c, self.g))
        w = invert(c)
        if w is None:
            raise ValueError("slice denominator is not a unit after rebasing")
        return GaSlice(s, self.d, c, g, self.z, w)

    def localized(self) -> "GaSlice":
        """Convenience: localize at (the numerator of) ``c`` itself."""
        base = self.c.c
        num = self.c.num.monic()
        if num.is_constant():
            return self.over(base)
        return self.over(num if base.is_constant() else num * base)


def coefficient_degrees(g: Localized, z: int, char: int) -> list:
    """Degrees of the z-coefficients ``c_i`` of ``g = phi(s)`` predicted by
    ``phi(c_i) = sum_j binom(i+j, i) c_{i+j} z^j``."""
    top = g.deg_in(z)
    if top == NEG_INF:
        return []
    nz = [not g.coeff(z, k).is_zero() for k in range(top + 1)]
    out = []
    for i in range(top + 1):
        deg = NEG_INF
        if nz[i]:
            for j in range(top - i, -1, -1):
                b = comb(i + j, i)
                if nz[i + j] and (b % char if char else b):
                    deg = j
                    break
        out.append(deg)
    return out


def dwr(s, a, phi: Coaction, z: int) -> tuple[int, Localized, Localized]:
    """``(m, r, b)`` with ``c^m a = r s + b`` and ``deg(b) < deg(s)``, where
    ``c`` is the top coefficient of ``phi(s)``.

    Pseudo-division by ``phi(s)`` followed by cancelling common factors of
    ``c`` from ``r`` and ``b``.
    """
    s, a = as_loc(s), as_loc(a)
    g = phi.apply_loc(s)
    d = g.deg_in(z)
    if d < 1:
        raise ValueError("dwr needs a noninvariant divisor")
    lead = g.coeff(z, d)
    f = phi.apply_loc(a)
    q = f - f
    rem = f
    m = 0
    while True:
        k = rem.deg_in(z)
        if k < d:
            break
        lc = rem.coeff(z, k)
        q = q * lead + lc.shift(z, k - d)
        rem = rem * lead - (lc * g).shift(z, k - d)
        m += 1
    r = q.coeff(z, 0)
    b = rem.coeff(z, 0)
    while m:
        r2 = loc_exact_divide(r, lead)
        b2 = loc_exact_divide(b, lead)
        if r2 is None or b2 is None:
            break
        r, b, m = r2, b2, m - 1
    return m, r, b


def find_local_slice(phi: Coaction, z: int, gens: Sequence, char: int = 0,
                     max_iter: int = DEFAULT_MAX_ITER) -> GaSlice:
    """Search a local slice among the z-coefficients of the images of the
    generators, shrinking the generators by division until they are all
    invariant."""
    orig = [as_loc(a) for a in gens]
    bs = list(orig)
    prev_max = None
    for _ in range(max_iter):
        best = None
        images = [phi.apply_loc(b) for b in bs]
        for i, g in enumerate(images):
            for k, deg in enumerate(coefficient_degrees(g, z, char)):
                if deg == NEG_INF or deg < 1:
                    continue
                if best is None or deg < best[0]:
                    best = (deg, i, k)
        if best is None:
            if prev_max is None:
                raise TrivialActionError("the additive factor acts trivially on the generators")
            break
        d, i, k = best
        s = images[i].coeff(z, k)
        g = phi.apply_loc(s)
        if g.deg_in(z) != d:
            raise ValueError("coaction violates the additive law; coefficient degree mismatch")
        slice_ = GaSlice(s, d, g.coeff(z, d), g, z)
        if char == 0:
            return slice_
        bs = [dwr(s, a, phi, z)[2] for a in orig]
        new_max = max(ga_degree(b, phi, z) for b in bs)
        if new_max >= d:
            raise AssertionError("generator degrees failed to decrease")
        prev_max = new_max
        if new_max <= 0:
            return slice_
    raise IterationCapError(f"no local slice after {max_iter} iterations")


def _divide_by_slice(a, sl: GaSlice, phi: Coaction):
    if sl.lead_inverse is None:
        raise ValueError("slice must be localized at its denominator first")
    f = phi.apply_loc(rebase(as_loc(a, sl.s.c), sl.s.c))
    return divide_univ(f, sl.g, sl.z, sl.lead_inverse.inverse)


def pi_ga(a, sl: GaSlice, phi: Coaction) -> Localized:
    """The retraction: remainder of ``phi(a)`` modulo ``phi(s)``."""
    _, h = _divide_by_slice(a, sl, phi)
    if h.involves(sl.z):
        raise ValueError("remainder is not invariant; not a local slice")
    return h.reduce()


def expand_in_slice(a, sl: GaSlice, phi: Coaction) -> list[Localized]:
    """Invariant coefficients ``f_0, f_1, ...`` with ``a = sum f_j s^j``."""
    out = []
    cur = rebase(as_loc(a, sl.s.c), sl.s.c)
    while not cur.is_zero():
        q, h = _divide_by_slice(cur, sl, phi)
        if h.involves(sl.z):
            raise ValueError("remainder is not invariant; not a local slice")
        out.append(h.reduce())
        cur = q.coeff(sl.z, 0)
    return out or [cur]
