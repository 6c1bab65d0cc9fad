"""A concrete bi-order on the free class-2 group.

An element is positive when its abelianization is lexicographically
positive, or it is central and its commutator coordinates are
lexicographically positive.  The positive cone is closed under products and
conjugation, so ``g < h iff g^-1 h > 1`` is invariant under translation on
both sides.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

from .group import MalcevElement, inverse, multiply


class Order(enum.Enum):
    STANDARD = "standard"
    REVERSED = "reversed"

    @property
    def opposite(self) -> "Order":
        return Order.REVERSED if self is Order.STANDARD else Order.STANDARD


class Comparison(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


BOTH_ORDERS = (Order.STANDARD, Order.REVERSED)


def _lex_sign(values: Sequence[int]) -> int:
    for v in values:
        if v:
            return 1 if v > 0 else -1
    return 0


def is_positive(g: MalcevElement) -> bool:
    sign = _lex_sign(g.gens)
    if sign:
        return sign > 0
    return _lex_sign(g.comms) > 0


def compare(g: MalcevElement, h: MalcevElement, order: Order = Order.STANDARD) -> Comparison:
    q = multiply(inverse(g), h)
    if is_positive(q):
        result = Comparison.LT
    elif is_positive(inverse(q)):
        result = Comparison.GT
    else:
        result = Comparison.EQ
    if order is Order.REVERSED:
        result = Comparison(-result)
    return result


def less(g: MalcevElement, h: MalcevElement, order: Order = Order.STANDARD) -> bool:
    return compare(g, h, order) is Comparison.LT


def standard_key(g: MalcevElement) -> tuple:
    # g^-1 h has gens h.gens - g.gens, and when those agree its comms are
    # h.comms - g.comms; so the order is plain lex on (gens, comms).
    return (g.gens, g.comms)


def sorted_under(elements: Iterable[MalcevElement], order: Order = Order.STANDARD) -> list:
    """Distinct elements, strictly ascending under ``order``."""
    return sorted(set(elements), key=standard_key, reverse=order is Order.REVERSED)


def sort_subset(elements: Iterable[MalcevElement]):
    """Deduplicate and sort into a :class:`~smalldoubling.sumset.Subset`."""
    from .sumset import Subset

    return Subset.of(elements)
