"""Capacities, null sequences, Hardy weights, Harnack constants and comparison checks."""

from pgraph.criticality.capacity import capacity
from pgraph.criticality.comparison import gsr_criticality_transfer, liouville_check, proper_subset_check
from pgraph.criticality.hardy import hardy_witness
from pgraph.criticality.harnack import harnack_constant, harnack_verify, strict_positivity_check
from pgraph.criticality.null_sequence import (
    assess_criticality,
    criticality_verdict,
    ground_state_trend,
    null_sequence_search,
)

__all__ = [
    "assess_criticality",
    "capacity",
    "criticality_verdict",
    "ground_state_trend",
    "gsr_criticality_transfer",
    "hardy_witness",
    "harnack_constant",
    "harnack_verify",
    "liouville_check",
    "null_sequence_search",
    "proper_subset_check",
    "strict_positivity_check",
]
