"""Combinatorics of Ekedahl-Oort strata: Weyl group cosets, elementary
sequences, stratum dimensions, and classification of BT_1 Dieudonne modules
over finite fields."""

from .strata import ElementarySequence, StratumRecord, enumerate_elementary, stratum
from .weyl import length, min_coset_reps, min_rep

__all__ = [
    "ElementarySequence", "StratumRecord", "enumerate_elementary", "stratum",
    "length", "min_coset_reps", "min_rep",
]
__version__ = "0.1.0"
