"""Free nilpotent groups of class 2 in Mal'cev normal-form coordinates.

An element is written uniquely as

    x_1^{g_1} ... x_n^{g_n} * prod_{i<j} c_{ij}^{e_{ij}},   c_{ij} = [x_i, x_j],

with the commutator convention [g, h] = g^-1 h^-1 g h.  Commutators are
central, so the collection process reduces to a single correction term per
pair of generators.
"""

from __future__ import annotations

import functools
import json
import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

__all__ = [
    "DimensionMismatch",
    "GroupContext",
    "MalcevElement",
    "HEISENBERG",
    "multiply",
    "inverse",
    "power",
    "commutator",
    "is_central",
    "commutes",
    "central_root_exponent",
    "format_element",
    "parse_element",
    "element_to_json",
    "element_from_json",
]

WORD_MIN = -(2**63)
WORD_MAX = 2**63 - 1


class DimensionMismatch(ValueError):
    pass


@functools.lru_cache(maxsize=None)
def comm_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Index pairs (i, j), i < j, in the order used by the ``comms`` vector."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def _checked(values) -> tuple[int, ...]:
    out = tuple(values)
    for v in out:
        if not WORD_MIN <= v <= WORD_MAX:
            raise OverflowError(f"coordinate {v} exceeds the 64-bit word range")
    return out


class MalcevElement(NamedTuple):
    """Immutable element: generator exponents, then basic-commutator exponents.

    Tuple comparison on ``(gens, comms)`` coincides with the standard bi-order
    of :mod:`smalldoubling.order`; use that module for order questions.
    """

    gens: tuple[int, ...]
    comms: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.gens)

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, MalcevElement):
            return NotImplemented
        return multiply(self, other)

    def __pow__(self, m: int) -> "MalcevElement":
        return power(self, m)

    def __add__(self, other):  # type: ignore[override]
        # tuple concatenation would silently produce garbage
        raise TypeError("group elements are multiplicative; use * instead of +")

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class GroupContext:
    """Dimension data for the free class-2 nilpotent group on ``n`` generators."""

    n: int = 2

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"need at least one generator, got n={self.n!r}")

    @property
    def comm_dim(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return comm_pairs(self.n)

    def element(self, gens: Sequence[int], comms: Sequence[int] = ()) -> MalcevElement:
        gens = tuple(int(v) for v in gens)
        comms = tuple(int(v) for v in comms) if comms else (0,) * self.comm_dim
        if len(gens) != self.n or len(comms) != self.comm_dim:
            raise DimensionMismatch(
                f"expected {self.n} generator and {self.comm_dim} commutator "
                f"coordinates, got {len(gens)} and {len(comms)}"
            )
        return MalcevElement(_checked(gens), _checked(comms))

    def identity(self) -> MalcevElement:
        return MalcevElement((0,) * self.n, (0,) * self.comm_dim)

    def generator(self, i: int) -> MalcevElement:
        gens = [0] * self.n
        gens[i] = 1
        return self.element(gens)

    def basic_commutator(self, i: int, j: int) -> MalcevElement:
        """The central element c_ij = [x_i, x_j] for i < j."""
        comms = [0] * self.comm_dim
        comms[self.pairs.index((i, j))] = 1
        return MalcevElement((0,) * self.n, tuple(comms))

    def owns(self, g: MalcevElement) -> bool:
        return len(g.gens) == self.n and len(g.comms) == self.comm_dim

    def check(self, g: MalcevElement) -> MalcevElement:
        if not self.owns(g):
            raise DimensionMismatch(f"element {format_element(g)} does not belong to n={self.n}")
        return g

    @classmethod
    def of(cls, g: MalcevElement) -> "GroupContext":
        ctx = cls(len(g.gens))
        ctx.check(g)
        return ctx


HEISENBERG = GroupContext(2)


def _same_shape(g: MalcevElement, h: MalcevElement) -> None:
    if len(g.gens) != len(h.gens) or len(g.comms) != len(h.comms):
        raise DimensionMismatch(f"cannot combine {format_element(g)} and {format_element(h)}")


def multiply(g: MalcevElement, h: MalcevElement) -> MalcevElement:
    _same_shape(g, h)
    gg, hg = g.gens, h.gens
    gens = _checked(a + b for a, b in zip(gg, hg))
    comms = _checked(
        g.comms[p] + h.comms[p] - gg[j] * hg[i]
        for p, (i, j) in enumerate(comm_pairs(len(gg)))
    )
    return MalcevElement(gens, comms)


def inverse(g: MalcevElement) -> MalcevElement:
    gg = g.gens
    gens = _checked(-a for a in gg)
    comms = _checked(
        -g.comms[p] - gg[i] * gg[j] for p, (i, j) in enumerate(comm_pairs(len(gg)))
    )
    return MalcevElement(gens, comms)


def power(g: MalcevElement, m: int) -> MalcevElement:
    """g^m via the closed form; agrees with repeated multiplication for every m."""
    m = int(m)
    gg = g.gens
    binom = m * (m - 1) // 2
    gens = _checked(m * a for a in gg)
    comms = _checked(
        m * g.comms[p] - binom * gg[j] * gg[i]
        for p, (i, j) in enumerate(comm_pairs(len(gg)))
    )
    return MalcevElement(gens, comms)


def commutator(g: MalcevElement, h: MalcevElement) -> MalcevElement:
    """[g, h] = g^-1 h^-1 g h, computed in closed form (always central)."""
    _same_shape(g, h)
    gg, hg = g.gens, h.gens
    comms = _checked(gg[i] * hg[j] - gg[j] * hg[i] for i, j in comm_pairs(len(gg)))
    return MalcevElement((0,) * len(gg), comms)


def commutes(g: MalcevElement, h: MalcevElement) -> bool:
    _same_shape(g, h)
    gg, hg = g.gens, h.gens
    return all(gg[i] * hg[j] == gg[j] * hg[i] for i, j in comm_pairs(len(gg)))


def is_central(g: MalcevElement) -> bool:
    return not any(g.gens)


def central_root_exponent(g: MalcevElement, c: MalcevElement) -> Optional[int]:
    """Return m with g == c^m, or None.  The exponent is unique (torsion-free)."""
    _same_shape(g, c)
    if not any(c.gens) and not any(c.comms):
        raise ValueError("the base element must not be the identity")
    if any(c.gens):
        p = next(idx for idx, v in enumerate(c.gens) if v)
        m, r = divmod(g.gens[p], c.gens[p])
    else:
        if any(g.gens):
            return None
        p = next(idx for idx, v in enumerate(c.comms) if v)
        m, r = divmod(g.comms[p], c.comms[p])
    if r:
        return None
    return m if power(c, m) == g else None


# -- text and JSON forms ---------------------------------------------------

_TEXT_RE = re.compile(r"^\s*gens:\s*([-+0-9,\s]*?)\s*;\s*comms:\s*([-+0-9,\s]*?)\s*$")


def format_element(g: MalcevElement) -> str:
    return "gens:" + ",".join(map(str, g.gens)) + ";comms:" + ",".join(map(str, g.comms))


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def parse_element(text: str, context: Optional[GroupContext] = None) -> MalcevElement:
    """Parse ``gens:a1,...,an;comms:e12,...`` or a JSON object with the same arrays."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return element_from_json(json.loads(stripped), context)
    m = _TEXT_RE.match(stripped)
    if not m:
        raise ValueError(f"malformed element {text!r}")
    try:
        gens, comms = _int_list(m.group(1)), _int_list(m.group(2))
    except ValueError:
        raise ValueError(f"malformed element {text!r}") from None
    return _build(gens, comms, context)


def _build(gens, comms, context: Optional[GroupContext]) -> MalcevElement:
    ctx = context or GroupContext(len(gens))
    if len(gens) != ctx.n or len(comms) != ctx.comm_dim:
        raise DimensionMismatch(
            f"expected {ctx.n} generator and {ctx.comm_dim} commutator coordinates, "
            f"got {len(gens)} and {len(comms)}"
        )
    return MalcevElement(_checked(gens), _checked(comms))


def element_to_json(g: MalcevElement) -> dict:
    return {"gens": list(g.gens), "comms": list(g.comms)}


def element_from_json(obj: dict, context: Optional[GroupContext] = None) -> MalcevElement:
    try:
        gens, comms = obj["gens"], obj["comms"]
    except (KeyError, TypeError):
        raise ValueError(f"element JSON needs 'gens' and 'comms' arrays: {obj!r}") from None
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in [*gens, *comms]):
        raise ValueError(f"element coordinates must be integers: {obj!r}")
    return _build(tuple(gens), tuple(comms), context)


def gcd_vector(values: Sequence[int]) -> int:
    return math.gcd(*values) if values else 0
