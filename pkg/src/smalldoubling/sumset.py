"""Product sets S^2 and doubling statistics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .group import GroupContext, MalcevElement, commutes, format_element, multiply

__all__ = [
    "Subset",
    "DoublingReport",
    "LANDMARKS",
    "product_set",
    "square_size",
    "doubling_report",
    "is_pairwise_commuting",
    "is_cna",
    "center_members",
]


@dataclass(frozen=True)
class Subset:
    """A nonempty finite set of distinct elements, ascending in the standard order."""

    context: GroupContext
    elements: tuple[MalcevElement, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a subset must be nonempty")
        n, m = self.context.n, self.context.comm_dim
        if any(len(g.gens) != n or len(g.comms) != m for g in self.elements):
            raise ValueError(f"subset elements must all belong to n={n}")
        # element tuples compare exactly like standard_key
        elems = self.elements
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise ValueError("subset elements must be distinct and strictly ascending")

    @classmethod
    def of(cls, elements: Iterable[MalcevElement], context: Optional[GroupContext] = None) -> "Subset":
        elems = sorted(set(elements))
        if not elems:
            raise ValueError("a subset must be nonempty")
        return cls(context or GroupContext(len(elems[0].gens)), tuple(elems))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    @property
    def k(self) -> int:
        return len(self.elements)

    def without(self, g: MalcevElement) -> "Subset":
        return Subset(self.context, tuple(x for x in self.elements if x != g))

    def __str__(self) -> str:
        return "{" + ", ".join(format_element(g) for g in self.elements) + "}"


def product_set(S) -> frozenset:
    elems = tuple(S)
    return frozenset(multiply(s, t) for s in elems for t in elems)


def square_size(S) -> int:
    return len(product_set(S))


def is_pairwise_commuting(S) -> bool:
    elems = tuple(S)
    return all(commutes(s, t) for i, s in enumerate(elems) for t in elems[i + 1:])


def is_cna(S) -> bool:
    elems = tuple(S)
    return not any(commutes(s, t) for i, s in enumerate(elems) for t in elems[i + 1:])


def center_members(S) -> tuple:
    """Elements of S commuting with all of S, i.e. S ∩ Z(<S>)."""
    elems = tuple(S)
    return tuple(s for s in elems if all(commutes(s, t) for t in elems))


def landmarks(k: int) -> dict[str, int]:
    return {
        "2k-1": 2 * k - 1,
        "3k-3": 3 * k - 3,
        "3k-2": 3 * k - 2,
        "3k-1": 3 * k - 1,
        "4k-4": 4 * k - 4,
    }


LANDMARKS = tuple(landmarks(1))


@dataclass(frozen=True)
class DoublingReport:
    k: int
    square_size: int
    # sign of (square_size - landmark) for every landmark
    alpha_beta_class: dict = field(default_factory=dict)
    is_generated_abelian: bool = False
    is_cna: bool = False

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "square_size": self.square_size,
            "alpha_beta_class": dict(self.alpha_beta_class),
            "is_generated_abelian": self.is_generated_abelian,
            "is_cna": self.is_cna,
        }


def doubling_report(S) -> DoublingReport:
    elems = tuple(S)
    k = len(elems)
    size = len(product_set(elems))
    signs = {name: (size > value) - (size < value) for name, value in landmarks(k).items()}
    return DoublingReport(
        k=k,
        square_size=size,
        alpha_beta_class=signs,
        is_generated_abelian=is_pairwise_commuting(elems),
        is_cna=is_cna(elems),
    )
