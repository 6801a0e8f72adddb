"""Quadratic assignment local search with incrementally maintained swap deltas.

Two delta-table strategies are provided: ``classic`` recomputes every
delta sharing an index with the last swap in O(n), ``novel`` recomputes
half of them and derives the other half in O(1).
"""

from ._backend import compiled_available, get_backend
from .delta import (
    ADJUDICATED_R_VARIANT,
    DISJOINT_FLOWS,
    OVERLAP_FLOWS,
    R_VARIANTS,
    RTerms,
    cost,
    delta_disjoint_update,
    delta_full,
    delta_oracle,
    delta_overlap_update,
    delta_overlap_via_r,
    r_terms,
)
from .instance import (
    InstanceError,
    Permutation,
    QapInstance,
    QaplibFormatError,
    format_qaplib,
    load_qaplib,
    parse_qaplib,
    random_instance,
)
from .rng import RngState
from .table import DeltaTable, TableMismatchError, UpdateStats
from .tabu import SearchResult, solve

__version__ = "0.1.0"

__all__ = [
    "ADJUDICATED_R_VARIANT",
    "DISJOINT_FLOWS",
    "DeltaTable",
    "InstanceError",
    "OVERLAP_FLOWS",
    "Permutation",
    "QapInstance",
    "QaplibFormatError",
    "R_VARIANTS",
    "RTerms",
    "RngState",
    "SearchResult",
    "TableMismatchError",
    "UpdateStats",
    "compiled_available",
    "cost",
    "delta_disjoint_update",
    "delta_full",
    "delta_oracle",
    "delta_overlap_update",
    "delta_overlap_via_r",
    "format_qaplib",
    "get_backend",
    "load_qaplib",
    "parse_qaplib",
    "r_terms",
    "random_instance",
    "solve",
]
