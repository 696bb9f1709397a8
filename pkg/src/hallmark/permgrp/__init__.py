"""Permutation groups: stabilizer chains, subgroup enumeration and Hall
subgroup search."""

from .group import PermGroup, StabChain, contains, enumerate_elements, group_from_generators, order
from .hall import (
    HallClasses,
    HallProperties,
    HallWitness,
    check_E_C_D,
    composition_factor_orders,
    find_hall_subgroup,
    hall_classes_by_extension,
    hall_conjugacy_classes,
    is_simple,
    normal_closure,
    normal_subgroups,
)
from .lattice import CyclicExtension, ElementTable, SubgroupHandle, enumerate_soluble_subgroups, naive_subgroups
from .perm import Permutation, format_cycles, parse_cycles

__all__ = [
    "CyclicExtension", "ElementTable", "HallClasses", "HallProperties", "HallWitness", "PermGroup",
    "Permutation", "StabChain", "SubgroupHandle", "check_E_C_D", "composition_factor_orders",
    "contains", "enumerate_elements", "enumerate_soluble_subgroups", "find_hall_subgroup",
    "format_cycles", "group_from_generators", "hall_classes_by_extension", "hall_conjugacy_classes",
    "is_simple", "naive_subgroups", "normal_closure", "normal_subgroups", "order", "parse_cycles",
]
