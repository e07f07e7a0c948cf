"""Random valid actions in standard solvable form (over Q).

The unipotent part is ``exp(sum z_j D_j)`` for commuting triangular
derivations ``D_j`` with disjoint supports, and the torus acts diagonally
with weights chosen so that every ``D_j`` is homogeneous.  Conjugation then
scales ``z_j`` by the inverse of the weight of ``D_j``, which is the
character.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial
from typing import Optional

from .action import ActionSpec, Character, validate
from .poly import QQ, Poly


def random_action(n: int, l: int, m: int, seed: Optional[int] = None,
                  rng: Optional[random.Random] = None, density: float = 0.6,
                  max_exp: int = 2, weight_range: int = 2) -> ActionSpec:
    rng = rng or random.Random(seed)
    spec0 = ActionSpec.build(QQ, [f"x{k + 1}" for k in range(n)],
                             [f"z{j + 1}" for j in range(l)], [f"t{j + 1}" for j in range(m)])
    ring = spec0.ring
    xs = spec0.base_gens()
    zs = ring.gens("additive")

    # each x_k (k > 0) joins at most one block; x_1 stays free
    block = [None] * n
    for k in range(1, n):
        if l and rng.random() < density:
            block[k] = rng.randrange(l)
    w_d = [tuple(rng.randint(-weight_range, weight_range) for _ in range(m)) for _ in range(l)]
    weights: list[tuple[int, ...]] = []
    deriv: list[Poly] = []
    for k in range(n):
        j = block[k]
        if j is None:
            weights.append(tuple(rng.randint(-weight_range, weight_range) for _ in range(m)))
            deriv.append(ring.zero())
            continue
        # monomial in lower variables that are free or in the same block
        allowed = [i for i in range(k) if block[i] in (None, j)]
        exps = [0] * ring.nvars
        for i in rng.sample(allowed, min(len(allowed), rng.randint(0, 2))):
            exps[spec0.base[i]] = rng.randint(1, max_exp)
        mono = ring.monomial(exps, rng.choice([1, 2, -1, Fraction(1, 2), 3]))
        wm = [0] * m
        for i in range(k):
            e = exps[spec0.base[i]]
            for a in range(m):
                wm[a] += e * weights[i][a]
        weights.append(tuple(wm[a] - w_d[j][a] for a in range(m)))
        deriv.append(mono)

    sigma = dict(zip(spec0.base, deriv))

    def apply_d(p: Poly, j: int) -> Poly:
        out = ring.zero()
        for k in range(n):
            if block[k] == j and p.involves(spec0.base[k]):
                out = out + p.derivative(spec0.base[k]) * sigma[spec0.base[k]]
        return out

    torus = spec0.torus

    def tmono(w) -> Poly:
        e = [0] * ring.nvars
        for a, x in zip(torus, w):
            e[a] = x
        return ring.monomial(e)

    images = []
    for k in range(n):
        x = xs[k]
        j = block[k]
        unip = x
        if j is not None:
            p = x
            for deg in range(1, 200):
                p = apply_d(p, j)
                if p.is_zero():
                    break
                unip = unip + p.scale(Fraction(1, factorial(deg))) * zs[j] ** deg
        tsub = {spec0.base[i]: tmono(weights[i]) * xs[i] for i in range(n)}
        images.append(unip.substitute(tsub))
    chars = tuple(Character(tuple(-a for a in w)) for w in w_d)
    return validate(ActionSpec(ring, chars, tuple(images)))
