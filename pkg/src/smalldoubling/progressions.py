"""Extremal configurations: constructing them and recognizing them.

Two shapes are handled.  A *two-progression* set is

    {a, ac, ..., ac^i, b, bc, ..., bc^j}

with c central, c > 1 and [b, a] = c^{±1}; these are exactly the non-abelian
sets of size k >= 4 with |S^2| = 3k - 2.  A *progression-plus-point* set is
A ∪ {b} with A inside a single progression {a, ..., ac^m} (gaps allowed) and
[b, a] = c^{±v}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .group import (
    GroupContext,
    _checked,
    MalcevElement,
    central_root_exponent,
    commutator,
    element_to_json,
    format_element,
    inverse,
    is_central,
    multiply,
    power,
)
from .order import is_positive
from .sumset import Subset, center_members, is_pairwise_commuting

__all__ = [
    "ConstructionError",
    "Relation",
    "Shape",
    "StructureDescription",
    "Construction",
    "K3Case",
    "K3Classification",
    "relation_exponent",
    "construct_two_progressions",
    "construct_general",
    "recognize_structure",
    "recognize_progression_plus_point",
    "classify_k3",
]


class ConstructionError(ValueError):
    pass


class Relation(enum.Enum):
    AB_EQUALS_BA_C_V = "ab=ba*c^v"
    BA_EQUALS_AB_C_V = "ba=ab*c^v"


class Shape(enum.Enum):
    TWO_PROGRESSIONS = "TwoProgressions"
    PROGRESSION_PLUS_POINT = "ProgressionPlusPoint"


def relation_exponent(a: MalcevElement, b: MalcevElement, c: MalcevElement):
    """Return (relation, v) with ab = ba c^v or ba = ab c^v, v >= 1; else None."""
    m = central_root_exponent(commutator(b, a), c)
    if not m:
        return None
    # ba = ab [b, a]
    if m > 0:
        return Relation.BA_EQUALS_AB_C_V, m
    return Relation.AB_EQUALS_BA_C_V, -m


def _progression(base: MalcevElement, c: MalcevElement, exponents: Iterable[int]):
    """[base * c^e for e in exponents]; c must be central."""
    gens, comms, step = base.gens, base.comms, c.comms
    return [
        MalcevElement(gens, _checked(x + e * y for x, y in zip(comms, step)))
        for e in exponents
    ]


def _central_multiple(diff: tuple, step: tuple) -> Optional[int]:
    """m with diff == m * step, or None (step nonzero)."""
    idx = next(i for i, x in enumerate(step) if x)
    m, r = divmod(diff[idx], step[idx])
    if r or any(x != m * y for x, y in zip(diff, step)):
        return None
    return m


@dataclass(frozen=True)
class StructureDescription:
    a: MalcevElement
    b: MalcevElement
    c: MalcevElement
    i: int
    j: int
    v: int
    relation: Relation
    shape: Shape
    # c-exponents of the progression part that are present (plus-point shape)
    exponents: Optional[tuple[int, ...]] = None
    strict: bool = True

    @property
    def k(self) -> int:
        if self.shape is Shape.TWO_PROGRESSIONS:
            return self.i + self.j + 2
        return len(self.exponents) + 1

    @property
    def holes(self) -> bool:
        return self.shape is Shape.PROGRESSION_PLUS_POINT and len(self.exponents) != self.i + 1

    def relation_holds(self) -> bool:
        ab, ba = multiply(self.a, self.b), multiply(self.b, self.a)
        cv = power(self.c, self.v)
        if self.relation is Relation.AB_EQUALS_BA_C_V:
            return ab == multiply(ba, cv)
        return ba == multiply(ab, cv)

    def reconstruct(self) -> Subset:
        if self.shape is Shape.TWO_PROGRESSIONS:
            elems = _progression(self.a, self.c, range(self.i + 1))
            elems += _progression(self.b, self.c, range(self.j + 1))
        else:
            elems = _progression(self.a, self.c, self.exponents) + [self.b]
        return Subset.of(elems)

    def to_dict(self) -> dict:
        out = {
            "shape": self.shape.value,
            "a": element_to_json(self.a),
            "b": element_to_json(self.b),
            "c": element_to_json(self.c),
            "i": self.i,
            "j": self.j,
            "v": self.v,
            "relation": self.relation.value,
        }
        if self.shape is Shape.PROGRESSION_PLUS_POINT:
            out["exponents"] = list(self.exponents)
            out["holes"] = self.holes
            out["strict"] = self.strict
        return out

    def __str__(self) -> str:
        return (
            f"{self.shape.value}(a={format_element(self.a)}, b={format_element(self.b)}, "
            f"c={format_element(self.c)}, i={self.i}, j={self.j}, v={self.v}, {self.relation.value})"
        )


def _check_ratio(c: MalcevElement) -> None:
    if not is_central(c):
        raise ConstructionError(f"c = {format_element(c)} is not central")
    if not is_positive(c):
        raise ConstructionError(f"c = {format_element(c)} is not > 1")


def _check_cosets(a: MalcevElement, b: MalcevElement, c: MalcevElement) -> None:
    if central_root_exponent(multiply(inverse(a), b), c) is not None:
        raise ConstructionError("a and b lie in the same coset of <c>")


def _check_ij(i: int, j: int) -> None:
    if i < 0 or j < 0:
        raise ConstructionError(f"i and j must be non-negative, got i={i}, j={j}")


def construct_two_progressions(
    a: MalcevElement, b: MalcevElement, c: MalcevElement, i: int, j: int
) -> Subset:
    """{a, ..., ac^i, b, ..., bc^j} with [b, a] = c^{±1}; has |S^2| = 3k - 2."""
    ctx = GroupContext.of(a)
    for g in (b, c):
        ctx.check(g)
    _check_ij(i, j)
    if i + j + 2 < 3:
        raise ConstructionError(f"need 1 + i + 1 + j >= 3, got {i + j + 2}")
    _check_ratio(c)
    _check_cosets(a, b, c)
    rel = relation_exponent(a, b, c)
    if rel is None or rel[1] != 1:
        raise ConstructionError("[b, a] must be c or c^-1")
    elems = _progression(a, c, range(i + 1)) + _progression(b, c, range(j + 1))
    return Subset.of(elems, ctx)


class Construction(NamedTuple):
    subset: Subset
    v: int
    relation: Relation
    predicted_square: int


def construct_general(
    a: MalcevElement, b: MalcevElement, c: MalcevElement, i: int, j: int
) -> Construction:
    """Two progressions with [b, a] = c^{±v}, 1 <= v <= i + j.

    The predicted size of the square is 3k + v - 3 with k = i + j + 2.
    """
    ctx = GroupContext.of(a)
    for g in (b, c):
        ctx.check(g)
    _check_ij(i, j)
    if i + j < 1:
        raise ConstructionError("need i + j >= 1")
    _check_ratio(c)
    _check_cosets(a, b, c)
    rel = relation_exponent(a, b, c)
    if rel is None:
        raise ConstructionError("[b, a] is not a nontrivial power of c")
    relation, v = rel
    if v > i + j:
        raise ConstructionError(f"v = {v} exceeds i + j = {i + j}")
    elems = _progression(a, c, range(i + 1)) + _progression(b, c, range(j + 1))
    k = i + j + 2
    return Construction(Subset.of(elems, ctx), v, relation, 3 * k + v - 3)


def _elements(S) -> tuple:
    if isinstance(S, Subset):
        return S.elements
    return Subset.of(S).elements


def recognize_structure(S) -> Optional[StructureDescription]:
    """Recognize S as two full c-progressions with [b, a] = c^{±1}.

    Candidate ratios are the positive central quotients s^-1 t inside S.  For a
    candidate, S is split into classes of s ~ t iff s^-1 t in <c>; success
    needs two classes whose exponents are 0..i and 0..j, and base points with
    [b, a] = c^{±1}.  Only the smallest candidate is ever tried (see below).
    """
    elems = _elements(S)
    if len(elems) < 3:
        raise ValueError(f"recognition needs |S| >= 3, got {len(elems)}")
    # s^-1 t is central iff s and t share their abelianization, and then it is
    # the difference of commutator coordinates; the classes refine these groups.
    groups: dict = {}
    for g in elems:
        groups.setdefault(g.gens, []).append(g)
    if len(groups) != 2:
        # one group means <S> is abelian
        return None
    # Only the smallest candidate can succeed: an accepted c occurs itself as a
    # quotient of neighbours, and every other positive quotient is a larger
    # power of it.  Within a group (ascending) the smallest quotient is between
    # neighbours, and full progressions have every neighbour quotient equal to c.
    steps = [
        tuple(x - y for x, y in zip(t.comms, s.comms))
        for grp in groups.values()
        for s, t in zip(grp, grp[1:])
    ]
    step = min(steps)
    if any(d != step for d in steps):
        return None
    (a, *rest_a), (b, *rest_b) = groups.values()
    c = MalcevElement((0,) * len(a.gens), step)
    rel = relation_exponent(a, b, c)
    if rel is None or rel[1] != 1:
        return None
    return StructureDescription(
        a=a, b=b, c=c, i=len(rest_a), j=len(rest_b),
        v=1, relation=rel[0], shape=Shape.TWO_PROGRESSIONS,
    )


def recognize_progression_plus_point(S) -> Optional[StructureDescription]:
    """Recognize S = A ∪ {b}, A inside one c-progression, [b, a] = c^{±v}.

    The ratio c is taken as large as possible, which makes the spanning
    progression and v as small as possible.  ``strict`` marks the gap-free
    v = 1 form {a, ac, ..., ac^{k-2}, b}.
    """
    elems = _elements(S)
    if len(elems) < 4:
        raise ValueError(f"recognition needs |S| >= 4, got {len(elems)}")
    n = len(elems[0].gens)
    for b in elems:
        A = [g for g in elems if g != b]
        a = A[0]
        if any(g.gens != a.gens for g in A):
            continue
        w = commutator(b, a).comms
        gw = math.gcd(*w)
        if gw == 0:
            continue
        direction = tuple(x // gw for x in w)
        lams = []
        for g in A[1:]:
            lam = _central_multiple(tuple(x - y for x, y in zip(g.comms, a.comms)), direction)
            if lam is None:
                break
            lams.append(lam)
        else:
            step = math.gcd(gw, *lams)
            c = MalcevElement((0,) * n, tuple(x * step for x in direction))
            sign = 1
            if not is_positive(c):
                c, sign = inverse(c), -1
            exponents = (0,) + tuple(sign * lam // step for lam in lams)
            m = sign * gw // step
            relation = Relation.BA_EQUALS_AB_C_V if m > 0 else Relation.AB_EQUALS_BA_C_V
            v = abs(m)
            span = max(exponents)
            strict = v == 1 and exponents == tuple(range(len(A)))
            return StructureDescription(
                a=a, b=b, c=c, i=span, j=0, v=v, relation=relation,
                shape=Shape.PROGRESSION_PLUS_POINT, exponents=exponents, strict=strict,
            )
    return None


class K3Case(enum.Enum):
    CENTRAL = "CaseCentral"
    PROGRESSION = "CaseProgression"
    NOT_EXTREMAL = "NotExtremal"


class K3Classification(NamedTuple):
    case: K3Case
    structure: Optional[StructureDescription] = None
    central: tuple = ()


def classify_k3(S) -> K3Classification:
    """Sort a 3-element set with non-abelian <S> into the |S^2| = 7 cases."""
    elems = _elements(S)
    if len(elems) != 3:
        raise ValueError(f"classify_k3 needs |S| = 3, got {len(elems)}")
    if is_pairwise_commuting(elems):
        raise ValueError("classify_k3 needs <S> non-abelian")
    central = center_members(elems)
    if central:
        return K3Classification(K3Case.CENTRAL, None, central)
    d = recognize_structure(elems)
    if d is not None:
        return K3Classification(K3Case.PROGRESSION, d)
    return K3Classification(K3Case.NOT_EXTREMAL)
