"""Independent checks of a computed quotient presentation.

:func:`verify_output` re-derives every property symbolically from the
reported data; :func:`numeric_spotcheck` evaluates the invariants at random
points and at their translates under random group elements, in exact
arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .action import ActionSpec
from .ga_slice import pi_ga
from .localize import Localized, rebase
from .pipeline import QuotientPresentation, reconstruct, weigher
from .poly import Poly, divides_power, format_poly
from .torus_slice import GmSlice, pi_gm

PROPERTIES = ("invariance", "semi_invariance", "kernel", "reconstruction", "counting", "idempotence")


@dataclass
class PropertyResult:
    name: str
    witnesses: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses


@dataclass
class VerifyReport:
    results: dict[str, PropertyResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results.values())

    def checks(self) -> dict[str, bool]:
        return {k: r.ok for k, r in self.results.items()}

    def summary(self) -> str:
        lines = []
        for name, r in self.results.items():
            lines.append(f"{name}: {'pass' if r.ok else 'FAIL'}")
            lines.extend(f"  {w}" for w in r.witnesses)
        return "\n".join(lines)


class Retraction:
    """The composite of the stage retractions, applied stage by stage over
    the smallest denominator that accommodates the argument."""

    def __init__(self, q: QuotientPresentation):
        self.q = q
        self.weigh = weigher(q.spec)
        self._over: dict = {}

    def _slice(self, k: int, c: Poly):
        key = (k, c)
        if key not in self._over:
            st = self.q.stages[k]
            sl = st.slice
            if st.kind == "additive":
                self._over[key] = sl.over(c) if sl.s.c != c else sl
            else:
                self._over[key] = GmSlice(sl.s.rebase(c), sl.d, c, sl.weight, sl.tpos, sl.tpos_k)
        return self._over[key]

    def __call__(self, a: Localized) -> Localized:
        spec = self.q.spec
        for k, st in enumerate(self.q.stages):
            c = st.c_after
            if a.c != c and divides_power(a.c, c) is not None:
                a = rebase(a, c)
            else:
                c = a.c
            sl = self._slice(k, c)
            if st.kind == "additive":
                a = pi_ga(a, sl, spec.restrict_phi(st.index))
            else:
                a = pi_gm(a, sl, spec.restrict_torus(st.index), self.weigh(c))
        return rebase(a, self.q.c).reduce() if a.c != self.q.c else a.reduce()


def _name(spec: ActionSpec, k: int) -> str:
    return spec.ring.names("base")[k]


def _safe(check, res: PropertyResult, label: str):
    try:
        check()
    except (ValueError, AssertionError, ZeroDivisionError) as exc:
        res.witnesses.append(f"{label}: {exc}")


def verify_output(spec: ActionSpec, q: QuotientPresentation) -> VerifyReport:
    """Check every property; each failure carries a witness."""
    results = {p: PropertyResult(p) for p in PROPERTIES}
    full = spec.full()
    w = q.weight
    c_loc = Localized(q.c, 0, q.c)

    semi = results["semi_invariance"]
    def check_semi():
        img = full.apply(q.c, plain=True)
        if img != q.c * w.monomial(spec.ring, spec.torus):
            semi.witnesses.append(f"Phi(c) = {format_poly(img)} is not weight * c")
        prod = spec.ring.one()
        for f in q.factors:
            if spec.register_semi(f) is None:
                semi.witnesses.append(f"factor {format_poly(f)} of c is not a semi-invariant")
            prod = prod * f
        if q.factors and prod.monic() != q.c.monic():
            semi.witnesses.append("the recorded factors do not multiply to c")
    _safe(check_semi, semi, "c")

    inv = results["invariance"]
    for label, b in [("b", q.b)] + [(f"b_{_name(spec, k)}", b) for k, b in enumerate(q.b_images)]:
        def check(b=b, label=label):
            img = full.apply_loc(b, w)
            if img != b:
                diff = img - b
                den = f" / c^{diff.exp}" if diff.exp else ""
                inv.witnesses.append(f"Phi({label}) - {label} = {format_poly(diff.num)}{den}")
        _safe(check, inv, label)

    pi = Retraction(q)
    ker = results["kernel"]
    for k, u in enumerate(q.u):
        def check_u(u=u, k=k):
            img = pi(u)
            if not img.is_zero():
                ker.witnesses.append(f"pi(u_{k + 1}) = {img} != 0")
        _safe(check_u, ker, f"u_{k + 1}")
    for j, s in enumerate(q.s):
        def check_s(s=s, j=j):
            if not (s.elem * s.inverse).is_one():
                ker.witnesses.append(f"s_{j + 1} * s_inverse_{j + 1} != 1")
            img = pi(s.elem)
            if not img.is_one():
                ker.witnesses.append(f"pi(s_{j + 1}) = {img} != 1")
        _safe(check_s, ker, f"s_{j + 1}")
    _check_stage_slices(q, ker)

    idem = results["idempotence"]
    for k, (x, b) in enumerate(zip(spec.base_gens(), q.b_images)):
        def check_idem(x=x, b=b, k=k):
            nm = _name(spec, k)
            if pi(Localized(x)) != b:
                idem.witnesses.append(f"pi({nm}) differs from b_{nm}")
            if pi(b) != b:
                idem.witnesses.append(f"pi(b_{nm}) != b_{nm}")
        _safe(check_idem, idem, _name(spec, k))
    def check_b():
        if pi(c_loc) != q.b:
            idem.witnesses.append("pi(c) differs from b")
    _safe(check_b, idem, "b")

    rec = results["reconstruction"]
    for k, x in enumerate(spec.base_gens()):
        def check_rec(x=x):
            r = reconstruct(x, q)
            rec.witnesses.extend(r.failures)
        _safe(check_rec, rec, _name(spec, k))

    cnt = results["counting"]
    kr = q.k + q.r
    if kr > spec.n:
        cnt.witnesses.append(f"k + r = {kr} exceeds n = {spec.n}")
    if len(q.kernel()) != kr:
        cnt.witnesses.append(f"{len(q.kernel())} kernel generators, expected k + r = {kr}")
    stages = [st.kind for st in q.stages]
    if stages.count("additive") != q.k or stages.count("torus") != q.r:
        cnt.witnesses.append("slice counts differ from the stage records")
    return VerifyReport(results)


def _check_stage_slices(q: QuotientPresentation, res: PropertyResult):
    """The reported slices must be the stage slices over the final ``c``."""
    us = [st.slice for st in q.stages if st.kind == "additive"]
    ss = [st.slice for st in q.stages if st.kind == "torus"]
    if len(us) != len(q.u) or len(ss) != len(q.s):
        res.witnesses.append("slice lists do not match the stage records")
        return
    for k, (sl, u) in enumerate(zip(us, q.u)):
        def check(sl=sl, u=u, k=k):
            if rebase(sl.s, q.c) != u:
                res.witnesses.append(f"u_{k + 1} differs from its stage slice")
        _safe(check, res, f"u_{k + 1}")
    for j, (sl, s) in enumerate(zip(ss, q.s)):
        def check(sl=sl, s=s, j=j):
            if rebase(sl.s.elem, q.c) != s.elem:
                res.witnesses.append(f"s_{j + 1} differs from its stage slice")
        _safe(check, res, f"s_{j + 1}")


# -- numeric spot checks ---------------------------------------------------

@dataclass
class SpotReport:
    trials: int
    seed: int
    agree: int = 0
    disagree: int = 0
    skipped: int = 0
    witnesses: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disagree == 0

    def as_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "agree": self.agree,
                "disagree": self.disagree, "skipped": self.skipped}


def _value(a: Localized, point: dict):
    f = a.ring.field
    cv = a.c.evaluate(point)
    return f.norm(a.num.evaluate(point) * f.pow(f.inv(cv), a.exp))


def numeric_spotcheck(spec: ActionSpec, q: QuotientPresentation, trials: int = 20,
                      seed: int = 0, probes: Optional[Sequence[Localized]] = None,
                      max_retries: int = 50, bound: int = 50) -> SpotReport:
    """Compare each probe (default: ``b`` and the ``b_i``) at a random point
    and at its image under a random group element, exactly."""
    rng = random.Random(seed)
    f = spec.field
    ring = spec.ring
    probes = list(probes) if probes is not None else [q.b] + list(q.b_images)
    report = SpotReport(trials, seed)

    def draw(nonzero=False):
        while True:
            if f.char:
                v = rng.randrange(f.char)
            else:
                v = f(rng.randint(-bound, bound)) / rng.randint(1, bound)
            if v or not nonzero:
                return f(v) if f.char else v

    for _ in range(trials):
        for _attempt in range(max_retries):
            point = {x: draw() for x in spec.base}
            if all(p.c.evaluate(point) for p in probes):
                break
        else:
            report.skipped += 1
            continue
        group = {z: draw() for z in spec.additive}
        group.update({t: draw(nonzero=True) for t in spec.torus})
        full_point = dict(point)
        full_point.update(group)
        moved = {x: img.evaluate(full_point) for x, img in zip(spec.base, spec.images)}
        if not all(p.c.evaluate(moved) for p in probes):
            report.skipped += 1
            continue
        bad = [k for k, p in enumerate(probes) if _value(p, point) != _value(p, moved)]
        if bad:
            report.disagree += 1
            names = ring.names()
            pt = ", ".join(f"{names[i]}={v}" for i, v in sorted(full_point.items()))
            report.witnesses.append(f"probe {bad[0]} changes at {pt}")
        else:
            report.agree += 1
    return report
