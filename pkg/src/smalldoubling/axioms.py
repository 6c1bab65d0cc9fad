"""Randomized property suites for the group law and the bi-order.

Each property draws its own instances from a seeded RNG.  Coordinates come
from a mix of tiny and moderate boxes so that coincidences (equal elements,
commuting pairs) actually occur.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .group import (
    GroupContext,
    MalcevElement,
    central_root_exponent,
    commutator,
    inverse,
    is_central,
    multiply,
    power,
)
from .order import Comparison, Order, compare, is_positive, standard_key


@dataclass
class AxiomResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checks > 0 and not self.failures


class _Sampler:
    BOUNDS = ((1, 1), (2, 3), (20, 400))

    def __init__(self, ctx: GroupContext, rng: random.Random):
        self.ctx = ctx
        self.rng = rng

    def element(self) -> MalcevElement:
        gb, cb = self.rng.choice(self.BOUNDS)
        r = self.rng.randint
        return MalcevElement(
            tuple(r(-gb, gb) for _ in range(self.ctx.n)),
            tuple(r(-cb, cb) for _ in range(self.ctx.comm_dim)),
        )

    def related(self, h: MalcevElement) -> MalcevElement:
        """Half the time an element commuting with h (a power of h times a central)."""
        if self.rng.random() < 0.5:
            return self.element()
        central = MalcevElement((0,) * self.ctx.n, self.element().comms)
        return multiply(power(h, self.rng.randint(-3, 3)), central)


def _expand_commutator(g, h):
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h))


def _iterated_power(g, m):
    acc = MalcevElement((0,) * len(g.gens), (0,) * len(g.comms))
    step = g if m >= 0 else inverse(g)
    for _ in range(abs(m)):
        acc = multiply(acc, step)
    return acc


def _associativity(s: _Sampler):
    g, h, l = s.element(), s.element(), s.element()
    return multiply(multiply(g, h), l) == multiply(g, multiply(h, l)), (g, h, l)


def _identity_inverse(s: _Sampler):
    g = s.element()
    e = s.ctx.identity()
    ok = multiply(g, inverse(g)) == e == multiply(inverse(g), g)
    ok = ok and multiply(e, g) == g == multiply(g, e)
    return ok, (g,)


def _power_iteration(s: _Sampler):
    g, m = s.element(), s.rng.randint(-8, 8)
    return power(g, m) == _iterated_power(g, m), (g, m)


def _commutator_central(s: _Sampler):
    g, h = s.element(), s.element()
    c = commutator(g, h)
    ok = is_central(c) and c == _expand_commutator(g, h)
    ok = ok and c == inverse(commutator(h, g))
    return ok, (g, h)


def _commutator_bilinear(s: _Sampler):
    g, h1, h2 = s.element(), s.element(), s.element()
    left = commutator(g, multiply(h1, h2)) == multiply(commutator(g, h1), commutator(g, h2))
    right = commutator(multiply(h1, h2), g) == multiply(commutator(h1, g), commutator(h2, g))
    return left and right, (g, h1, h2)


def _class2_square(s: _Sampler):
    h = s.element()
    g = s.related(h)
    e = s.ctx.identity()
    return (commutator(g, power(h, 2)) == e) == (commutator(g, h) == e), (g, h)


def _torsion_free_roots(s: _Sampler):
    g = s.element()
    h = g if s.rng.random() < 0.25 else s.element()
    m = s.rng.choice([-3, -2, -1, 1, 2, 3])
    ok = (power(g, m) == power(h, m)) == (g == h)
    if g != s.ctx.identity():
        ok = ok and central_root_exponent(power(g, m), g) == m
    return ok, (g, h, m)


def _order_totality(s: _Sampler):
    g = s.element()
    h = g if s.rng.random() < 0.1 else s.element()
    forward, backward = compare(g, h), compare(h, g)
    ok = forward == -backward and (forward is Comparison.EQ) == (g == h)
    key = (standard_key(g) > standard_key(h)) - (standard_key(g) < standard_key(h))
    ok = ok and int(forward) == key
    e = s.ctx.identity()
    trichotomy = [is_positive(g), is_positive(inverse(g)), g == e]
    return ok and trichotomy.count(True) == 1, (g, h)


def _order_transitivity(s: _Sampler):
    a, b, c = s.element(), s.element(), s.element()
    ok = True
    for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
        if compare(x, y) is Comparison.LT and compare(y, z) is Comparison.LT:
            ok = ok and compare(x, z) is Comparison.LT
    return ok, (a, b, c)


def _order_bi_invariance(s: _Sampler):
    g, h, w = s.element(), s.element(), s.element()
    rel = compare(g, h)
    ok = compare(multiply(w, g), multiply(w, h)) == rel == compare(multiply(g, w), multiply(h, w))
    return ok, (g, h, w)


def _positive_cone(s: _Sampler):
    g, h, w = s.element(), s.element(), s.element()
    ok = True
    if is_positive(g) and is_positive(h):
        ok = is_positive(multiply(g, h))
    if is_positive(g):
        ok = ok and is_positive(multiply(multiply(inverse(w), g), w))
    return ok, (g, h, w)


def _reversed_mirror(s: _Sampler):
    g, h = s.element(), s.element()
    return compare(g, h, Order.REVERSED) == compare(h, g, Order.STANDARD), (g, h)


PROPERTIES: dict[str, Callable] = {
    "associativity": _associativity,
    "identity_inverse": _identity_inverse,
    "power_vs_iteration": _power_iteration,
    "commutator_centrality": _commutator_central,
    "commutator_bilinearity": _commutator_bilinear,
    "class2_square_identity": _class2_square,
    "torsion_free_roots": _torsion_free_roots,
    "order_totality": _order_totality,
    "order_transitivity": _order_transitivity,
    "order_bi_invariance": _order_bi_invariance,
    "positive_cone_closure": _positive_cone,
    "order_reversed_mirror": _reversed_mirror,
}


def run_axioms(samples: int = 10**5, seed: int = 0, n: int = 2, names=None) -> list[AxiomResult]:
    ctx = GroupContext(n)
    results = []
    for offset, name in enumerate(names or PROPERTIES):
        prop = PROPERTIES[name]
        sampler = _Sampler(ctx, random.Random(seed * 1000 + offset))
        res = AxiomResult(name)
        for _ in range(samples):
            ok, witness = prop(sampler)
            res.checks += 1
            if not ok and len(res.failures) < 16:
                res.failures.append(witness)
        results.append(res)
    return results
