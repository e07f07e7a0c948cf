"""Group actions in standard solvable form.

A group with additive coordinates ``z_1..z_l`` and torus coordinates
``t_1..t_m`` acts on ``R = K[x_1..x_n]`` through the images ``Phi(x_i)`` in
``R[z, t^{+-1}]``; the torus acts on the i-th additive factor through the
character ``chi_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ValidationError
from .localize import Localized
from .poly import Poly, PolyRing, Var, exact_divide, order_key


@dataclass(frozen=True)
class Character:
    """Laurent monomial ``t_1^e_1 ... t_m^e_m``, stored as its exponents."""

    exps: tuple[int, ...]

    @classmethod
    def trivial(cls, m: int) -> "Character":
        return cls((0,) * m)

    def __mul__(self, other: "Character") -> "Character":
        return Character(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> "Character":
        return Character(tuple(a * k for a in self.exps))

    def inverse(self) -> "Character":
        return self ** -1

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def monomial(self, ring: PolyRing, torus: Sequence[int]) -> Poly:
        e = [0] * ring.nvars
        for i, x in zip(torus, self.exps):
            e[i] = x
        return ring.monomial(e)

    def format(self, names: Sequence[str]) -> str:
        parts = []
        for n, x in zip(names, self.exps):
            if x == 1:
                parts.append(n)
            elif x:
                parts.append(f"{n}^{x}")
        return "*".join(parts) or "1"


class Coaction:
    """A ring homomorphism out of R given by images of the base variables,
    together with a specialization of the group coordinates (e.g. ``t -> 1``)
    used when the action is restricted to a subgroup."""

    def __init__(self, ring: PolyRing, base: Sequence[int], images: Sequence[Poly],
                 torus: Sequence[int], specialize: Optional[dict[int, Poly]] = None,
                 semi: Optional["SemiRegistry"] = None):
        self.ring = ring
        self.semi = semi
        self.base = tuple(base)
        self.torus = tuple(torus)
        self.specialize = dict(specialize or {})
        if self.specialize:
            images = [p.substitute(self.specialize) for p in images]
        self.images = tuple(images)
        self._sigma = dict(zip(self.base, self.images))
        self._cache: dict = {}

    def apply(self, p: Poly, plain: bool = False) -> Poly:
        """``Phi(p)``.  Known semi-invariant factors of ``p`` are split off
        first and mapped to ``chi * f``, which avoids expanding their powers
        through the substitution; ``plain`` disables this."""
        if plain or not self.semi or len(p.terms) < 2:
            return p.substitute(self._sigma, cache=self._cache)
        rest, pulled = self.semi.strip(p)
        out = rest.substitute(self._sigma, cache=self._cache)
        for f, w, k in pulled:
            out = out * (f * self.char_monomial(w)) ** k
        return out

    def char_monomial(self, w: Character) -> Poly:
        mono = w.monomial(self.ring, self.torus)
        return mono.substitute(self.specialize) if self.specialize else mono

    def apply_loc(self, a: Localized, c_weight: Optional[Character] = None) -> Localized:
        """Extended coaction on R_c: ``a/c^k -> chi^{-k} Phi(a) / c^k``."""
        num = self.apply(a.num)
        if a.exp and c_weight is not None and not c_weight.is_trivial():
            num = num * self.char_monomial(c_weight ** (-a.exp))
        return Localized(num, a.exp, a.c)

    def is_trivial_on(self, p: Poly) -> bool:
        return self.apply(p) == p

    def weight_of(self, a: Poly, plain: bool = False) -> Optional["Character"]:
        if a.is_zero():
            raise ValueError("zero has no weight")
        image = self.apply(a, plain)
        torus = self.torus
        rest = [i for i in range(self.ring.nvars) if i not in torus]
        # the leading monomial of a, times the weight, must occur in the image
        lm = a.leading_monomial()
        target = tuple(lm[i] for i in rest)
        candidates = [e for e in image.terms if tuple(e[i] for i in rest) == target]
        if len(candidates) != 1:
            return None
        w = Character(tuple(candidates[0][i] for i in torus))
        if image != a * w.monomial(self.ring, torus):
            return None
        return w


class SemiRegistry:
    """Monic semi-invariants with their weights, each confirmed by direct
    substitution before it is added."""

    def __init__(self):
        self._weights: dict[Poly, Character] = {}
        self._order: list[Poly] = []

    def __len__(self):
        return len(self._weights)

    def __contains__(self, f: Poly) -> bool:
        return f in self._weights

    def add(self, f: Poly, w: Character) -> None:
        if f.is_constant() or f in self._weights:
            return
        self._weights[f] = w
        self._order = sorted(self._weights, key=lambda g: (-len(g.terms), -g.total_degree()))

    def strip(self, p: Poly):
        """``(rest, [(f, weight, k)])`` with ``p = rest * prod f^k``."""
        pulled = []
        for f in self._order:
            k = 0
            while len(p.terms) >= len(f.terms):
                q = exact_divide(p, f)
                if q is None:
                    break
                p, k = q, k + 1
            if k:
                pulled.append((f, self._weights[f], k))
        return p, pulled


@dataclass
class ActionSpec:
    """Validated input: field, variables, characters and coaction images."""

    ring: PolyRing
    chars: tuple[Character, ...]
    images: tuple[Poly, ...]
    _coactions: dict = field(default_factory=dict, repr=False, compare=False)
    semi: SemiRegistry = field(default_factory=SemiRegistry, repr=False, compare=False)

    @classmethod
    def build(cls, fld, base: Sequence[str], additive: Sequence[str], torus: Sequence[str],
              chars: Sequence[Character] = (), images: Sequence[Poly] = (),
              ring: Optional[PolyRing] = None) -> "ActionSpec":
        if ring is None:
            ring = PolyRing(fld, [Var(n, "base") for n in base]
                            + [Var(n, "additive") for n in additive]
                            + [Var(n, "torus") for n in torus])
        if not chars:
            chars = [Character.trivial(len(torus))] * len(additive)
        return cls(ring, tuple(chars), tuple(images))

    @property
    def field(self):
        return self.ring.field

    @property
    def base(self) -> list[int]:
        return self.ring.indices("base")

    @property
    def additive(self) -> list[int]:
        return self.ring.indices("additive")

    @property
    def torus(self) -> list[int]:
        return self.ring.indices("torus")

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def l(self) -> int:
        return len(self.additive)

    @property
    def m(self) -> int:
        return len(self.torus)

    def __eq__(self, other):
        return (isinstance(other, ActionSpec) and self.ring == other.ring
                and self.chars == other.chars and self.images == other.images)

    def base_gens(self) -> list[Poly]:
        return [self.ring.gen(i) for i in self.base]

    # -- coactions -------------------------------------------------------
    def full(self) -> Coaction:
        return self._coaction(("full",), {})

    def restrict_phi(self, i: int) -> Coaction:
        """phi_i: keep z_i, send the other z_j to 0 and every t_j to 1."""
        spec = {k: self.ring.zero() for a, k in enumerate(self.additive) if a != i}
        spec.update({k: self.ring.one() for k in self.torus})
        return self._coaction(("phi", i), spec)

    def restrict_torus(self, j: int = 0, only: bool = False) -> Coaction:
        """Torus coaction: z's to 0, t_1..t_{j-1} to 1 (and t_{j+1}.. too if ``only``)."""
        spec = {k: self.ring.zero() for k in self.additive}
        for jj, k in enumerate(self.torus):
            if jj < j or (only and jj > j):
                spec[k] = self.ring.one()
        return self._coaction(("torus", j, only), spec)

    def _coaction(self, key, spec) -> Coaction:
        co = self._coactions.get(key)
        if co is None:
            co = Coaction(self.ring, self.base, self.images, self.torus, spec, self.semi)
            self._coactions[key] = co
        return co

    def apply(self, p: Poly) -> Poly:
        return self.full().apply(p)

    def apply_loc(self, a: Localized, c_weight: Optional[Character] = None) -> Localized:
        return self.full().apply_loc(a, c_weight)

    def weight_of(self, a: Poly, plain: bool = False) -> Optional[Character]:
        """The character ``chi`` with ``Phi(a) = chi * a``, if there is one."""
        return self.full().weight_of(a, plain)

    def register_semi(self, f: Poly) -> Optional[Character]:
        """Confirm that ``f`` is a semi-invariant by direct substitution and
        remember it (monic) for faster coaction images; returns its weight."""
        if f.is_constant():
            return Character.trivial(self.m)
        f = f.monic()
        w = self.full().weight_of(f, plain=True)
        if w is not None:
            self.semi.add(f, w)
        return w

    def weight_of_loc(self, a: Localized, c_weight: Character) -> Optional[Character]:
        w = self.weight_of(a.num)
        return None if w is None else w * c_weight ** (-a.exp)

    def involves_var(self, a: Localized, v: int, c_weight: Optional[Character] = None) -> bool:
        return self.apply_loc(a, c_weight).involves(v)


# -- validation and axiom checks ----------------------------------------

def validate(spec: ActionSpec) -> ActionSpec:
    ring = spec.ring
    if len(spec.images) != spec.n:
        raise ValidationError("need exactly one image per base variable")
    if len(spec.chars) != spec.l:
        raise ValidationError("need exactly one character per additive variable")
    for ch in spec.chars:
        if len(ch.exps) != spec.m:
            raise ValidationError("characters must be monomials in the torus variables")
    for p in spec.images:
        if p.ring != ring:
            raise ValidationError("image lives in a different ring")
        for e in p.terms:
            for i, v in enumerate(ring.vars):
                if e[i] < 0 and not v.laurent:
                    raise ValidationError(f"negative exponent on {v.name}")
                if e[i] and v.kind not in ("base", "additive", "torus"):
                    raise ValidationError(f"image involves auxiliary variable {v.name}")
    ident = {k: ring.zero() for k in spec.additive}
    ident.update({k: ring.one() for k in spec.torus})
    for x, p in zip(spec.base, spec.images):
        if p.substitute(ident) != ring.gen(x):
            raise ValidationError(
                f"identity axiom fails for {ring.vars[x].name}: "
                f"z=0, t=1 gives {p.substitute(ident)}")
    return spec


@dataclass
class CheckReport:
    name: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_ga_coaction(spec: ActionSpec, i: int) -> CheckReport:
    """Per-factor additive law: phi applied coefficient-wise to g(w) equals
    g(w + z), for g = phi_i(x_k) and a fresh variable w."""
    ring = spec.ring
    wname = ring.fresh_name("w_")
    big = ring.extend([Var(wname, "auxiliary")])
    z = spec.additive[i]
    w = big.gen(wname)
    zi = big.index[ring.vars[z].name]
    zb = big.gen(zi)
    phi = spec.restrict_phi(i)
    images = {big.index[ring.vars[k].name]: p.lift(big) for k, p in zip(spec.base, phi.images)}
    report = CheckReport(f"additive law z{i + 1}")
    for k, g in zip(spec.base, phi.images):
        gb = g.lift(big)
        lhs = gb.substitute({zi: w}).substitute(images)
        rhs = gb.substitute({zi: w + zb})
        if lhs != rhs:
            report.failures.append(f"{ring.vars[k].name}: {lhs} != {rhs}")
    return report


def check_torus_coaction(spec: ActionSpec, j: Optional[int] = None) -> CheckReport:
    """Coassociativity: Phi_T(a)[t -> s] with Phi_T applied to coefficients
    equals Phi_T(a)[t -> s t], with fresh torus variables s."""
    ring = spec.ring
    torus = spec.torus if j is None else [spec.torus[j]]
    report = CheckReport("torus law" if j is None else f"torus law t{j + 1}")
    if not spec.torus:
        return report
    fresh = [ring.fresh_name(f"s_{ring.vars[t].name}") for t in torus]
    big = ring.extend([Var(nm, "slice-laurent") for nm in fresh])
    co = spec.restrict_torus(j, only=True) if j is not None else spec.restrict_torus(0)
    images = {big.index[ring.vars[k].name]: p.lift(big) for k, p in zip(spec.base, co.images)}
    to_s = {big.index[ring.vars[t].name]: big.gen(s) for t, s in zip(torus, fresh)}
    to_st = {big.index[ring.vars[t].name]: big.gen(s) * big.gen(ring.vars[t].name)
             for t, s in zip(torus, fresh)}
    for k, p in zip(spec.base, co.images):
        pb = p.lift(big)
        lhs = pb.substitute(to_s).substitute(images)
        rhs = pb.substitute(to_st)
        if lhs != rhs:
            report.failures.append(f"{ring.vars[k].name}: {lhs} != {rhs}")
    return report


def check_compat(spec: ActionSpec, i: int = 0, elements: Optional[Sequence[Poly]] = None) -> CheckReport:
    """Compatibility of the i-th additive factor with the rest of the group:
    applying phi_i to the coefficients of psi(s) gives
    ``sum_k chi_i^k psi(c_k) z_i^k`` where ``phi_i(s) = sum_k c_k z_i^k`` and
    psi is Phi followed by ``z_i -> 0``.

    For ``i > 0`` this is only meaningful on elements invariant under the
    earlier additive factors; pass them as ``elements``.
    """
    ring = spec.ring
    z = spec.additive[i]
    phi = spec.restrict_phi(i)
    full = spec.full()
    chi = spec.chars[i].monomial(ring, spec.torus)
    zero_z = {z: ring.zero()}
    phi_sigma = dict(zip(spec.base, phi.images))
    report = CheckReport(f"compatibility z{i + 1}")
    elems = list(elements) if elements is not None else spec.base_gens()
    for s in elems:
        psi_s = full.apply(s).substitute(zero_z)
        lhs = psi_s.substitute(phi_sigma)
        g = phi.apply(s)
        d = g.deg_in(z)
        rhs = ring.zero()
        for k in range(int(d) + 1 if d >= 0 else 0):
            ck = g.coeff(z, k)
            rhs = rhs + (chi ** k) * full.apply(ck).substitute(zero_z) * ring.gen(z) ** k
        if lhs != rhs:
            report.failures.append(f"{s}: {lhs} != {rhs}")
    return report


def leading_torus_monomial(p: Poly, torus: Sequence[int]) -> tuple[int, ...]:
    """Largest torus exponent vector occurring in ``p`` (global order)."""
    exps = {tuple(e[i] for i in torus) for e in p.terms}
    return max(exps, key=order_key)


def check_axioms(spec: ActionSpec) -> list[CheckReport]:
    """Additive laws, the torus law and compatibility of the first additive
    factor; later factors are checked on invariants inside the pipeline."""
    reports = [check_ga_coaction(spec, i) for i in range(spec.l)]
    reports.append(check_torus_coaction(spec))
    if spec.l:
        reports.append(check_compat(spec, 0))
    return reports


def require_valid(spec: ActionSpec) -> ActionSpec:
    bad = [f"{r.name}: {w}" for r in check_axioms(spec) for w in r.failures]
    if bad:
        raise ValidationError("not a coaction in standard solvable form; " + "; ".join(bad[:3]))
    return spec
