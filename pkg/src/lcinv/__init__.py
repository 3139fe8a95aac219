"""Polynomial invariants of qubit operators under local Clifford conjugation."""

from .clifford import LocalClifford, SingleClifford, enumerate_effective_C1, random_local_clifford
from .fingerprint import Fingerprint, StabilizerCode, Verdict, compare, fingerprint, projector
from .gf2 import PairTuple, PauliIndex
from .invariants import XTable, build_A_gamma, eval_gamma, eval_via_matrix, x_transform
from .limits import CapExceeded, Limits
from .normal_form import (
    NormalFormError,
    OrbitMatrix,
    bounds_dnr,
    canonicalize,
    count_dnr,
    enumerate_normal_forms,
    is_normal_form,
)
from .orbits import OrbitDescriptor, enumerate_Or, orbit_members
from .verify import verify_suite

__all__ = [
    "CapExceeded",
    "Fingerprint",
    "Limits",
    "LocalClifford",
    "NormalFormError",
    "OrbitDescriptor",
    "OrbitMatrix",
    "PairTuple",
    "PauliIndex",
    "SingleClifford",
    "StabilizerCode",
    "Verdict",
    "XTable",
    "bounds_dnr",
    "build_A_gamma",
    "canonicalize",
    "compare",
    "count_dnr",
    "enumerate_Or",
    "enumerate_effective_C1",
    "enumerate_normal_forms",
    "eval_gamma",
    "eval_via_matrix",
    "fingerprint",
    "is_normal_form",
    "orbit_members",
    "projector",
    "random_local_clifford",
    "verify_suite",
    "x_transform",
]
