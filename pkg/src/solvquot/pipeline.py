"""Invariants of a solvable group in standard solvable form.

The additive factors are processed first, one at a time, each yielding a
slice ``u`` with a semi-invariant denominator; then the torus factors, each
yielding an invertible slice ``s``.  After every stage the generator images
are replaced by their retractions, so at the end they generate the invariant
ring of ``R_c`` together with the inverse of ``b = pi(c)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .action import ActionSpec, Character
from .errors import DEFAULT_MAX_ITER
from .ga_slice import GaSlice, find_local_slice, expand_in_slice, pi_ga
from .localize import Epoch, Localized, UnitWitness, invert, rebase
from .poly import Poly, Var, order_key
from .torus_slice import GmSlice, gm_expand, gm_slice, pi_gm


@dataclass
class StageRecord:
    kind: str                       # "additive" or "torus"
    index: int                      # 0-based position of z_i or t_j
    slice: Union[GaSlice, GmSlice]
    images: list[Localized]
    c_before: Poly
    c_after: Poly


@dataclass
class QuotientPresentation:
    spec: ActionSpec
    c: Poly
    weight: Character
    b: Localized
    b_images: list[Localized]
    u: list[Localized]
    s: list[UnitWitness]
    stages: list[StageRecord] = field(default_factory=list)
    factors: list[Poly] = field(default_factory=list)   # monic, product ~ c

    @property
    def k(self) -> int:
        return len(self.u)

    @property
    def r(self) -> int:
        return len(self.s)

    def kernel(self) -> list[Poly]:
        """Denominator-cleared generators of ``ker(pi)``."""
        out = [u.num for u in self.u]
        for w in self.s:
            e = w.elem
            out.append(e.num - e.c ** e.exp)
        return out

    def presentation(self):
        return presentation(self)


def weigher(spec: ActionSpec):
    """Weight of a semi-invariant polynomial; also registers its monic form
    with the action so later coaction images can factor it out."""
    def weigh(p: Poly) -> Character:
        w = spec.weight_of(p)
        if w is None:
            raise AssertionError(f"expected a semi-invariant, got {p}")
        if not p.is_constant() and p.monic() not in spec.semi:
            spec.register_semi(p)
        return w
    return weigh


def eval_at(p: Poly, values: Sequence[Localized], base: Sequence[int]) -> Localized:
    """``p(values)``, all values over the same denominator."""
    c = values[0].c if values else p.ring.one()
    out = Localized(p.ring.zero(), 0, c)
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = values[i] if e == 1 else power(i, e - 1) * values[i]
        return powers[key]

    for e, coef in p.terms.items():
        term = Localized(p.ring.const(coef), 0, c)
        for i, x in enumerate(base):
            if e[x]:
                term = term * power(i, e[x])
        out = out + term
    return out.reduce()


def pi_semiinvariant(a: Localized, weight: Character, done: Sequence[GmSlice]) -> Localized:
    """Retraction through the finished torus stages of a semi-invariant of
    the given weight: each stage multiplies by a power of its slice."""
    w = weight
    out = a
    for sl in done:
        k_t = sl.tpos_k
        k, rem = divmod(w.exps[k_t], sl.d)
        if rem:
            raise AssertionError("semi-invariant weight is not divisible by the slice degree")
        out = rebase(out, sl.s.elem.c) * sl.s.power(k)
        w = w * sl.weight ** k
    return out.reduce()


def slice_semiinv(spec: ActionSpec, i: int, gens: Sequence[Localized], epoch: Epoch,
                  max_iter: int = DEFAULT_MAX_ITER):
    """Slice for the i-th additive factor whose denominator is a
    semi-invariant; returns ``(slice, epoch, images of gens)``."""
    ring = spec.ring
    phi = spec.restrict_phi(i)
    z = spec.additive[i]
    sl = find_local_slice(phi, z, gens, ring.field.char, max_iter)
    s, ct, d = sl.s, sl.c, sl.d
    for i2 in range(i + 1, spec.l):
        phi2 = spec.restrict_phi(i2)
        z2 = spec.additive[i2]
        cimg = phi2.apply_loc(ct)
        k = cimg.deg_in(z2)
        s = phi2.apply_loc(s).coeff(z2, k)
        ct = cimg.coeff(z2, k)
    full = spec.full()
    zs = spec.additive
    cimg = full.apply_loc(ct, epoch.weight)
    if any(cimg.involves(v) for v in zs):
        raise AssertionError("slice denominator is not invariant under the unipotent part")
    torus = spec.torus
    parts = cimg.num.split_by(torus)
    tstar = max(parts, key=order_key)
    ct = Localized(parts[tstar], cimg.exp, cimg.c)
    shift = spec.chars[i] ** d * Character(tstar)
    simg = full.apply_loc(s, epoch.weight)
    s = simg.coeff_monomial(list(zs) + torus, (0,) * len(zs) + shift.exps)
    g = phi.apply_loc(s)
    if g.deg_in(z) != d or g.coeff(z, d) != ct:
        raise AssertionError("semi-invariant slice lost its degree or denominator")
    num = ct.num
    epoch = epoch.extend(num, weigher(spec))
    sl = GaSlice(s, d, ct, g, z).over(epoch.c)
    images = [pi_ga(epoch.lift(b), sl, phi) for b in gens]
    return sl, epoch, images


def _involves(spec: ActionSpec, bs, epoch: Epoch, v: int) -> bool:
    full = spec.full()
    return any(full.apply_loc(b, epoch.weight).involves(v) for b in bs)


def unipotent_invariants(spec: ActionSpec, max_iter: int = DEFAULT_MAX_ITER):
    """Returns ``(epoch, b_images, u, stages)`` for the unipotent part."""
    ring = spec.ring
    epoch = Epoch(ring.one(), Character.trivial(spec.m))
    bs = [Localized(x) for x in spec.base_gens()]
    u: list[Localized] = []
    stages: list[StageRecord] = []
    for i, z in enumerate(spec.additive):
        if not _involves(spec, bs, epoch, z):
            continue
        before = epoch.c
        sl, epoch, bs = slice_semiinv(spec, i, bs, epoch, max_iter)
        u = [epoch.lift(x) for x in u] + [sl.s]
        stages.append(StageRecord("additive", i, sl, bs, before, epoch.c))
    return epoch, bs, u, stages


def solvable_invariants(spec: ActionSpec, max_iter: int = DEFAULT_MAX_ITER) -> QuotientPresentation:
    epoch, bs, u, stages = unipotent_invariants(spec, max_iter)
    weigh = weigher(spec)
    s_list: list[UnitWitness] = []
    done: list[GmSlice] = []
    for j, t in enumerate(spec.torus):
        if not _involves(spec, bs, epoch, t):
            continue
        before = epoch.c
        b_cur = pi_semiinvariant(Localized(epoch.c, 0, epoch.c), epoch.weight, done)
        wit = invert(b_cur, [f for f, _ in epoch.factors])
        if wit is None:
            raise AssertionError("pi(c) is not a unit")
        co = spec.restrict_torus(j)
        sl, epoch, gens = gm_slice(co, t, [wit.inverse] + bs, epoch, weigh, max_iter)
        bs = [pi_gm(b, sl, co, epoch.weight) for b in gens[1:]]
        u = [epoch.lift(x) for x in u]
        s_list = [w.rebase(epoch.c) for w in s_list] + [sl.s]
        done = [GmSlice(x.s.rebase(epoch.c), x.d, epoch.c, x.weight, x.tpos, x.tpos_k) for x in done] + [sl]
        stages.append(StageRecord("torus", j, sl, bs, before, epoch.c))
    bs = [b.reduce() for b in bs]
    b = pi_semiinvariant(Localized(epoch.c, 0, epoch.c), epoch.weight, done)
    return QuotientPresentation(spec, epoch.c, epoch.weight, b, bs,
                                [x.reduce() for x in u], [w.reduce() for w in s_list], stages,
                                [f for f, _ in epoch.factors])


# -- presentation and reconstruction --------------------------------------

def presentation(q: QuotientPresentation):
    """``(ring, relations)``: ``R_c`` is ``K[x, w]/(w c - 1)`` and the
    invariant ring is its quotient by the kernel generators."""
    ring = q.spec.ring
    name = next(n for n in ("w", "v") + tuple(f"w{k}" for k in range(1, 100))
                if n not in ring.index)
    big = ring.extend([Var(name, "auxiliary")])
    w = big.gen(name)
    rels = [w * q.c.lift(big) - 1] + [p.lift(big) for p in q.kernel()]
    keep = [big.index[v.name] for v in ring.vars if v.kind == "base"] + [big.index[name]]
    return [big.vars[i].name for i in keep], rels


@dataclass
class Term:
    coef: Localized                 # G-invariant coefficient
    u_exps: tuple[int, ...]
    s_exps: tuple[int, ...]


@dataclass
class Reconstruction:
    terms: list[Term]
    ok: bool
    failures: list[str]


def _stage_slices(q: QuotientPresentation):
    """Per stage: kind, slice position, factor index, the slice over the
    stage's own denominator and that denominator's weight."""
    weigh = weigher(q.spec)
    out = []
    ui = si = 0
    for st in q.stages:
        w = weigh(st.c_after)
        if st.kind == "additive":
            out.append(("additive", ui, st.index, st.slice, w))
            ui += 1
        else:
            out.append(("torus", si, st.index, st.slice, w))
            si += 1
    return out


def loc_value(a: Localized, point: dict):
    """Field value of ``a`` at a point where ``c`` does not vanish."""
    f = a.ring.field
    return f.norm(a.num.evaluate(point) * f.pow(f.inv(a.c.evaluate(point)), a.exp))


def sample_points(c: Poly, base: Sequence[int], count: int = 3, seed: int = 0,
                  tries: int = 200) -> list[dict]:
    """Seeded random points of the base variables off ``c = 0``."""
    f = c.ring.field
    rng = random.Random(seed)
    hi = 1000 if f.char == 0 else f.char - 1
    lo = -hi if f.char == 0 else 0
    out = []
    for _ in range(tries):
        pt = {x: f(rng.randint(lo, hi)) for x in base}
        if c.evaluate(pt):
            out.append(pt)
            if len(out) == count:
                break
    return out


def reconstruct(a: Poly, q: QuotientPresentation, points: Optional[list] = None) -> Reconstruction:
    """Write ``a`` as a polynomial in the ``u`` and a Laurent polynomial in the
    ``s`` with G-invariant coefficients, and certify the result: the terms
    must sum to ``a`` exactly, and each coefficient ``N/c^e`` must agree with
    ``N(b_1..b_n)/b^e`` at seeded random points off ``c = 0`` (symbolically
    when no such point is found)."""
    spec = q.spec
    k, r = q.k, q.r
    terms = [Term(Localized(a), (0,) * k, (0,) * r)]
    for kind, pos, idx, sl, cw in _stage_slices(q):
        nxt = []
        c_st = sl.s.c if kind == "additive" else sl.s.elem.c
        if kind == "additive":
            phi = spec.restrict_phi(idx)
            for t in terms:
                for j, f in enumerate(expand_in_slice(rebase(t.coef, c_st), sl, phi)):
                    if not f.is_zero():
                        ue = list(t.u_exps)
                        ue[pos] += j
                        nxt.append(Term(f, tuple(ue), t.s_exps))
        else:
            co = spec.restrict_torus(idx)
            for t in terms:
                for j, f in gm_expand(rebase(t.coef, c_st), sl, co, cw).items():
                    se = list(t.s_exps)
                    se[pos] += j
                    nxt.append(Term(f, t.u_exps, tuple(se)))
        terms = nxt
    failures = []
    total = Localized(spec.ring.zero(), 0, q.c)
    fld = spec.ring.field
    if points is None:
        points = sample_points(q.c, spec.base)
    b_inv = invert(q.b) if q.b_images and not points else None
    at = [(pt, [loc_value(b, pt) for b in q.b_images], loc_value(q.b, pt)) for pt in points]
    for t in terms:
        coef = rebase(t.coef, q.c)
        if at and q.b_images:
            for pt, bvals, bval in at:
                img = coef.num.evaluate(dict(zip(spec.base, bvals)))
                img = fld.norm(img * fld.pow(fld.inv(bval), coef.exp))
                if img != loc_value(coef, pt):
                    failures.append(f"coefficient {coef.num}/c^{coef.exp} differs from its image under pi")
                    break
        elif b_inv is not None:
            cert = eval_at(coef.num, q.b_images, spec.base) * b_inv.power(-coef.exp)
            if cert != coef:
                failures.append(f"coefficient {coef.num}/c^{coef.exp} differs from its image under pi")
        piece = coef
        for x, e in zip(q.u, t.u_exps):
            piece = piece * x ** e
        for w, e in zip(q.s, t.s_exps):
            piece = piece * w.power(e)
        total = total + piece
    if total != Localized(a, 0, q.c):
        failures.append(f"reconstruction of {a} does not sum back")
    return Reconstruction(terms, not failures, failures)
