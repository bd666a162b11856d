"""Finite-quotient equivalence and genus computations for finitely
generated torsion-free nilpotent groups of Hirsch length at most 5."""

from .arith import NilgenusError, p_valuation
from .params import (
    InvalidParameterError,
    ModulusProfile,
    ParamTuple,
    TypeDescriptor,
    UnsupportedTypeError,
    ValidationReport,
    from_json_dict,
    modulus_profile,
    param_tuple,
    type_descriptor,
    validate_membership,
)
from .collection import (
    CandidateMatrix,
    MapReport,
    PCPresentation,
    check_candidate_map,
)
from .deciders import (
    Decision,
    PrimeWitness,
    coupled_system_solvable_2111,
    decide_same_finite_quotients,
    unit_congruence_solvable,
    verify_prime_witness,
)
from .orbits import (
    GlobalOrbits,
    OrbitSpace,
    OrbitWitness,
    apply_dk_matrix,
    build_orbit_space,
    global_orbit_partition,
    local_orbit_equivalent,
)
from .genus import (
    GenusResult,
    ZEquivalence,
    canonicalize,
    enumerate_genus,
    genus_size_table,
    z_equivalent,
)
from .selfcheck import run_selfcheck

__version__ = "0.1.0"

__all__ = [
    "CandidateMatrix",
    "Decision",
    "GenusResult",
    "GlobalOrbits",
    "InvalidParameterError",
    "MapReport",
    "ModulusProfile",
    "NilgenusError",
    "OrbitSpace",
    "OrbitWitness",
    "ParamTuple",
    "PCPresentation",
    "PrimeWitness",
    "TypeDescriptor",
    "UnsupportedTypeError",
    "ValidationReport",
    "ZEquivalence",
    "apply_dk_matrix",
    "build_orbit_space",
    "canonicalize",
    "check_candidate_map",
    "coupled_system_solvable_2111",
    "decide_same_finite_quotients",
    "enumerate_genus",
    "from_json_dict",
    "genus_size_table",
    "global_orbit_partition",
    "local_orbit_equivalent",
    "modulus_profile",
    "p_valuation",
    "param_tuple",
    "run_selfcheck",
    "type_descriptor",
    "unit_congruence_solvable",
    "validate_membership",
    "verify_prime_witness",
    "z_equivalent",
]
