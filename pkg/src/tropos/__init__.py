"""Tropical geometry of graduated orders over a discretely valued field."""
from .trop import (
    INF,
    MAX_PLUS,
    MIN_PLUS,
    NEG_INF,
    EmptyWitness,
    IndeterminateError,
    Semiring,
    TropMatrix,
    is_kleene_star,
    kleene_star,
    max_plus,
    min_plus,
    rank_one,
    trop_add,
    trop_mul,
)

__version__ = "0.1.0"
