"""Finite fields: flat polynomial-basis fields and enumeration towers."""

from .field import (
    Embedding,
    FieldDescriptor,
    FieldElement,
    enumerate_partition,
    frobenius,
    get_field,
    is_rth_power,
    partition_range,
    relative_trace,
)
from .poly import find_irreducible
from .tower import TowerField, get_tower

__all__ = [
    "Embedding",
    "FieldDescriptor",
    "FieldElement",
    "TowerField",
    "enumerate_partition",
    "find_irreducible",
    "frobenius",
    "get_field",
    "get_tower",
    "is_rth_power",
    "partition_range",
    "relative_trace",
]
