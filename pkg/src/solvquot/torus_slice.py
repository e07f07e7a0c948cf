"""Multiplicative-group machinery: Laurent degree, weight decomposition and
local slices for one torus factor inside an ambient torus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .action import Character, Coaction
from .errors import DEFAULT_MAX_ITER, IterationCapError, TrivialActionError
from .localize import Epoch, Localized, UnitWitness, invert, rebase
from .poly import exact_divide, order_key


@dataclass
class GmSlice:
    s: UnitWitness
    d: int
    c: object
    weight: Character
    tpos: int           # ring index of the torus variable
    tpos_k: int         # its position among the torus variables

    @property
    def elem(self) -> Localized:
        return self.s.elem


def _components(a: Localized, co: Coaction, c_weight: Optional[Character]):
    """``{torus exponents: coefficient}`` of ``Phi_T(a)``."""
    image = co.apply_loc(a, c_weight)
    parts = image.num.split_by(co.torus)
    return {e: Localized(p, image.exp, image.c) for e, p in parts.items()}


def gm_degree(a: Localized, co: Coaction, tpos: int, c_weight: Optional[Character] = None) -> int:
    """``max |k|`` over the ``t``-exponents ``k`` in ``Phi_T(a)``; 0 for zero."""
    if a.is_zero():
        return 0
    k = co.torus.index(tpos)
    return max(abs(e[k]) for e in _components(a, co, c_weight))


def torus_coeff_decompose(a: Localized, co: Coaction,
                          c_weight: Optional[Character] = None) -> list[tuple[Character, Localized]]:
    """Weight components ``a_t`` of ``a``, each checked to be semi-invariant of
    weight ``t``; they sum to ``a``."""
    out = []
    for e, part in sorted(_components(a, co, c_weight).items(), key=lambda kv: order_key(kv[0]), reverse=True):
        ch = Character(e)
        if co.apply_loc(part, c_weight) != part * co.char_monomial(ch):
            raise ValueError(f"component of weight {e} is not semi-invariant; invalid torus coaction")
        out.append((ch, part))
    return out


def symmetric_remainder(e: int, d: int) -> tuple[int, int]:
    """``(q, r)`` with ``e = q d + r`` and ``-d/2 < r <= d/2``."""
    r = e % d
    if 2 * r > d:
        r -= d
    return (e - r) // d, r


def gm_slice(co: Coaction, tpos: int, gens: Sequence[Localized], epoch: Epoch,
             weigh: Callable, max_iter: int = DEFAULT_MAX_ITER):
    """Local slice for the torus factor ``t = tpos`` whose slice and
    denominator are semi-invariant for the whole torus of ``co``.

    ``weigh`` returns the full weight of a semi-invariant polynomial and is
    used whenever the denominator grows.  Returns ``(slice, epoch, gens)``
    with ``gens`` rebased to the final epoch.
    """
    k_t = co.torus.index(tpos)
    ring = epoch.c.ring
    one = Localized(ring.one(), 0, epoch.c)
    s = UnitWitness(one, one)
    s_weight = Character.trivial(len(co.torus))
    d = 0
    gens = [epoch.lift(a) for a in gens]
    for _ in range(max_iter):
        best = None
        for i, a in enumerate(gens):
            comps = _components(a, co, epoch.weight)
            for e in sorted(comps, key=order_key, reverse=True):
                e1 = e[k_t]
                if (e1 == 0) if d == 0 else (e1 % d == 0):
                    continue
                q, r = (0, e1) if d == 0 else symmetric_remainder(e1, d)
                if best is None or (abs(r), i) < best[0]:
                    best = ((abs(r), i), q, r, e, comps[e])
        if best is None:
            if d == 0:
                raise TrivialActionError("the torus factor acts trivially on the generators")
            s, s_weight = balance(s, s_weight, epoch, k_t)
            return GmSlice(s, d, epoch.c, s_weight, tpos, k_t), epoch, gens
        _, q, r, e, b = best
        s_hat = s.power(q) * b
        w_hat = s_weight ** q * Character(e)
        wit = invert(s_hat, [f for f, _ in epoch.factors])
        if wit is None:
            num = s_hat.num
            epoch = epoch.extend(num, weigh)
            gens = [epoch.lift(a) for a in gens]
            s = s.rebase(epoch.c)
            s_hat = rebase(s_hat, epoch.c)
            wit = invert(s_hat, [f for f, _ in epoch.factors])
            if wit is None:
                raise AssertionError("localization failed to invert the slice candidate")
        if r < 0:
            s, s_weight = wit, w_hat
        else:
            s, s_weight = wit.swapped(), w_hat.inverse()
        new_d = abs(r)
        if d and new_d >= d:
            raise AssertionError("slice degree failed to decrease")
        d = new_d
        s = s.reduce()
    raise IterationCapError(f"no torus slice after {max_iter} iterations")


def _echelon(rows: list[list[int]], ncols: int):
    """Unimodular ``U`` with ``rows * U`` in column echelon form; returns
    ``(H, U, pivots)`` where ``pivots`` lists ``(row, col)``."""
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(dst, src, k):           # col_dst -= k * col_src
        for M in (H, U):
            for r in M:
                r[dst] -= k * r[src]

    def swap(a, b):
        for M in (H, U):
            for r in M:
                r[a], r[b] = r[b], r[a]

    pivots = []
    p = 0
    for i, row in enumerate(H):
        if p == ncols:
            break
        while True:
            nz = [j for j in range(p, ncols) if row[j]]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(row[j]))
            swap(p, j)
            done = True
            for j in range(p + 1, ncols):
                if row[j]:
                    colop(j, p, row[j] // row[p])
                    done = done and not row[j]
            if done:
                break
        if row[p]:
            pivots.append((i, p))
            p += 1
    return H, U, pivots


def int_solve(rows: list[list[int]], rhs: list[int], ncols: int):
    """An integer solution of ``rows * x = rhs`` (or ``None``) and a basis of
    the integer kernel."""
    H, U, pivots = _echelon(rows, ncols)
    npiv = len(pivots)
    kernel = [[U[i][j] for i in range(ncols)] for j in range(npiv, ncols)]
    y = [0] * ncols
    pivot_of = dict(pivots)
    for i, row in enumerate(H):
        acc = sum(row[j] * y[j] for j in range(npiv))
        if i in pivot_of:
            j = pivot_of[i]
            acc -= row[j] * y[j]
            q, r = divmod(rhs[i] - acc, row[j])
            if r:
                return None, kernel
            y[j] = q
        elif acc != rhs[i]:
            return None, kernel
    return [sum(U[i][j] * y[j] for j in range(ncols)) for i in range(ncols)], kernel


def _shorten(a: list[int], kernel: list[list[int]]) -> list[int]:
    """Reduce ``a`` modulo the lattice spanned by ``kernel`` toward small
    ``l1`` norm: nearest-plane rounding, then greedy unit steps."""
    for k in kernel:
        kk = sum(x * x for x in k)
        lam = round(sum(x * y for x, y in zip(a, k)) / kk)
        a = [x - lam * y for x, y in zip(a, k)]
    norm = sum(abs(x) for x in a)
    improved = True
    while improved:
        improved = False
        for k in kernel:
            for sign in (1, -1):
                v = [x + sign * y for x, y in zip(a, k)]
                nv = sum(abs(x) for x in v)
                if nv < norm:
                    a, norm, improved = v, nv, True
    return a


def balance(s: UnitWitness, s_weight: Character, epoch: Epoch, k_t: int):
    """Multiply ``s`` by a unit made of the factors of ``c`` that has weight 1
    in ``t`` and the earlier torus variables, pulling the weights of ``s`` in
    the later torus variables as close to 0 as the factors allow.

    ``s`` stays a semi-invariant unit with the same ``t``-degree; a slice
    without stray weights keeps the images of later stages small."""
    m_co = len(s_weight.exps)
    factors = [(f, w) for f, w in epoch.factors if not f.is_constant()]
    if not factors or m_co <= k_t + 1:
        return s, s_weight
    off = len(factors[0][1].exps) - m_co
    fixed = off + k_t + 1
    cols = len(factors)
    W = [[w.exps[r] for _, w in factors] for r in range(off + m_co)]
    target = [-e for e in s_weight.exps[k_t + 1:]]
    a, kernel = int_solve(W, [0] * fixed + target, cols)
    if a is not None:
        a = _shorten(a, kernel)
    else:
        _, kernel = int_solve(W[:fixed], [0] * fixed, cols)
        a = [0] * cols

        def cost(v):
            rest = [sum(W[fixed + r][i] * v[i] for i in range(cols)) - t for r, t in enumerate(target)]
            return sum(abs(x) for x in rest), sum(abs(x) for x in v)

        best = cost(a)
        improved = True
        while improved and best[0]:
            improved = False
            for k in kernel:
                for sign in (1, -1):
                    v = [x + sign * y for x, y in zip(a, k)]
                    cv = cost(v)
                    if cv < best:
                        a, best, improved = v, cv, True
    if not any(a):
        return s, s_weight
    c = epoch.c
    one = Localized(c.ring.one(), 0, c)
    unit = UnitWitness(one, one)
    weight = Character.trivial(m_co)
    for (f, w), e in zip(factors, a):
        if not e:
            continue
        wf = UnitWitness(Localized(f, 0, c), Localized(exact_divide(c, f), 1, c))
        unit = UnitWitness(unit.elem * wf.power(e), unit.inverse * wf.power(-e))
        weight = weight * Character(w.exps[off:]) ** e
    out = UnitWitness(s.elem * unit.elem, s.inverse * unit.inverse).reduce()
    return out, s_weight * weight


def pi_gm(a: Localized, sl: GmSlice, co: Coaction, c_weight: Optional[Character] = None) -> Localized:
    """Substitute ``t^(kd) -> s^k`` for the slice variable and 1 for the
    remaining torus variables in ``Phi_T(a)``."""
    k_t = co.torus.index(sl.tpos)
    a = rebase(a, sl.s.elem.c)
    out = a - a
    for e, part in _components(a, co, c_weight).items():
        k, rem = divmod(e[k_t], sl.d)
        if rem:
            raise ValueError(f"exponent {e[k_t]} is not divisible by the slice degree {sl.d}")
        out = out + part * sl.s.power(k)
    return out.reduce()


def gm_expand(a: Localized, sl: GmSlice, co: Coaction,
              c_weight: Optional[Character] = None) -> dict[int, Localized]:
    """Coefficients ``F_k`` (invariant for this factor) with ``a = sum F_k s^k``."""
    k_t = co.torus.index(sl.tpos)
    a = rebase(a, sl.s.elem.c)
    out: dict[int, Localized] = {}
    for e, part in _components(a, co, c_weight).items():
        k, rem = divmod(e[k_t], sl.d)
        if rem:
            raise ValueError(f"exponent {e[k_t]} is not divisible by the slice degree {sl.d}")
        term = part * sl.s.power(k)
        out[-k] = out[-k] + term if -k in out else term
    return {k: v.reduce() for k, v in sorted(out.items()) if not v.is_zero()}
