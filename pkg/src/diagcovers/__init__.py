"""Invariants of ramified covers of curves by finite diagonalizable group schemes."""

from .abelian import (
    FinAbGroup,
    GroupElement,
    QuotientNotCyclic,
    Subgroup,
    elem_order,
    group_make,
    m_of,
    quotient_cyclic_check,
    subgroup_generate,
)
from .charring import CharacterSum, ch_coset_algebra, ch_regular, gamma
from .coverinv import (
    BranchPoint,
    CoverData,
    FormalBranchClass,
    InadmissibleCover,
    ValidationReport,
    Violation,
    canonical_divisor,
    deg_eigensheaf,
    equivariant_genus,
    fixed_locus_degree,
    hurwitz_genus,
    rational_class,
    tangent_degree,
    uniform_cover_over_P1,
    validate,
)

__all__ = [
    "CharacterSum",
    "ch_coset_algebra",
    "ch_regular",
    "gamma",
    "FinAbGroup",
    "GroupElement",
    "QuotientNotCyclic",
    "Subgroup",
    "elem_order",
    "group_make",
    "m_of",
    "quotient_cyclic_check",
    "subgroup_generate",
    "BranchPoint",
    "CoverData",
    "FormalBranchClass",
    "InadmissibleCover",
    "ValidationReport",
    "Violation",
    "canonical_divisor",
    "deg_eigensheaf",
    "equivariant_genus",
    "fixed_locus_degree",
    "hurwitz_genus",
    "rational_class",
    "tangent_degree",
    "uniform_cover_over_P1",
    "validate",
]

__version__ = "0.1.0"
