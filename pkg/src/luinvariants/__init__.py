"""Local-unitary invariants of qubit state vectors and the circuits that measure them."""

__version__ = "0.1.0"

from .tensor import MultiQubitState, apply_local, apply_matrix, parse_cycles, permute_wires
from .invariants import (CanonicalParams, InvariantSet, TwoQubitInvariants, canonical_invariants,
                         gamma, hyperdet_q, t_tensor, three_qubit_invariants,
                         two_qubit_invariants)
from .states import (FamilyId, canonical_state, exact_family_invariants, family_circuit,
                     family_state, random_lu_orbit, representative_state)
from .circuit import Circuit, Gate, OracleBlock, OracleVariant, householder_prep
from .simulator import InvariantEstimate, ShotResult, estimate_invariant, run, sample
from .synthesis import (ALL_TARGETS, BellForm, InvariantTarget, MeasuredCircuit,
                        bell_scale_check, build, build_bell, build_small)
from .classify import Classification, SloccClass, classify
from .qasm import to_json, to_openqasm

__all__ = [
    "MultiQubitState", "apply_local", "apply_matrix", "parse_cycles", "permute_wires",
    "CanonicalParams", "InvariantSet", "TwoQubitInvariants", "canonical_invariants", "gamma",
    "hyperdet_q", "t_tensor", "three_qubit_invariants", "two_qubit_invariants",
    "FamilyId", "canonical_state", "exact_family_invariants", "family_circuit", "family_state",
    "random_lu_orbit", "representative_state",
    "Circuit", "Gate", "OracleBlock", "OracleVariant", "householder_prep",
    "InvariantEstimate", "ShotResult", "estimate_invariant", "run", "sample",
    "ALL_TARGETS", "BellForm", "InvariantTarget", "MeasuredCircuit", "bell_scale_check",
    "build", "build_bell", "build_small",
    "Classification", "SloccClass", "classify", "to_json", "to_openqasm",
]
