"""Small doubling in ordered free nilpotent groups of class 2."""

from .group import (
    HEISENBERG,
    DimensionMismatch,
    GroupContext,
    MalcevElement,
    central_root_exponent,
    commutator,
    format_element,
    inverse,
    is_central,
    multiply,
    parse_element,
    power,
)
from .order import Comparison, Order, compare, is_positive, sort_subset
from .progressions import (
    ConstructionError,
    StructureDescription,
    classify_k3,
    construct_general,
    construct_two_progressions,
    recognize_progression_plus_point,
    recognize_structure,
)
from .sumset import (
    DoublingReport,
    Subset,
    center_members,
    doubling_report,
    is_cna,
    is_pairwise_commuting,
    product_set,
)

__all__ = [
    "HEISENBERG",
    "DimensionMismatch",
    "GroupContext",
    "MalcevElement",
    "central_root_exponent",
    "commutator",
    "format_element",
    "inverse",
    "is_central",
    "multiply",
    "parse_element",
    "power",
    "Comparison",
    "Order",
    "compare",
    "is_positive",
    "sort_subset",
    "ConstructionError",
    "StructureDescription",
    "classify_k3",
    "construct_general",
    "construct_two_progressions",
    "recognize_progression_plus_point",
    "recognize_structure",
    "DoublingReport",
    "Subset",
    "center_members",
    "doubling_report",
    "is_cna",
    "is_pairwise_commuting",
    "product_set",
]

__version__ = "0.1.0"
