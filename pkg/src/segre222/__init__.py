"""Orbits of the Segre variety stabiliser on the points of PG(7, q)."""

from .gf import FieldDesc, field_from_order, field_new, is_square
from .orbits import OrbitLabel, classify_point, orbit_partition, verify_theorems
from .rank import rank_oracle, tensor_rank

__version__ = "0.1.0"

__all__ = [
    "FieldDesc",
    "OrbitLabel",
    "classify_point",
    "field_from_order",
    "field_new",
    "is_square",
    "orbit_partition",
    "rank_oracle",
    "tensor_rank",
    "verify_theorems",
]
