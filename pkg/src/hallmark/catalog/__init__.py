"""Simple-group descriptors, finite fields, permutation constructions and
recorded Hall facts."""

from .constructions import (
    alternating_group,
    construct,
    projective_line_group,
    projective_plane_group,
    symplectic_group_4_3,
    unitary_group_3,
)
from .facts import HallFact, facts_for, hall_facts
from .fields import FiniteField, field_of_order, finite_field, least_irreducible
from .ids import (
    SimpleGroupId,
    identify_by_order,
    k3_groups,
    normalize,
    order_factors,
    order_of,
    parse_factors,
    parse_group,
    spectrum_of,
)

__all__ = [
    "FiniteField", "HallFact", "SimpleGroupId", "alternating_group", "construct", "facts_for",
    "field_of_order", "finite_field", "hall_facts", "identify_by_order", "k3_groups",
    "least_irreducible", "normalize", "order_factors", "order_of", "parse_factors", "parse_group",
    "projective_line_group", "projective_plane_group", "spectrum_of", "symplectic_group_4_3",
    "unitary_group_3",
]
