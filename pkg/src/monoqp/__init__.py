"""Quasi-projectivity of monounary algebras: a structural decider and brute-force oracles."""
from ._guard import GuardExceeded
from .algebra import (
    MapFormatError,
    MonounaryAlgebra,
    analyze,
    canonical_form,
    cycle,
    dumps_map,
    loads_map,
    parse_map,
    to_schema,
)
from .decider import QpVerdict, Violation, decide, decide_finite
from .enumeration import AlgebraCatalog, all_algebras, random_algebra
from .fixtures import Fixture, FixtureError, counterexample, lemma_fixture
from .hom import (
    Congruence,
    Homomorphism,
    congruences,
    enumerate_endos,
    enumerate_epis,
    enumerate_homs,
    is_homomorphism,
    kernel,
    quotient,
    subalgebras,
    theta_U,
)
from .oracle import OracleVerdict, lift_exists, oracle_all_targets, oracle_general, oracle_js
from .schema import BranchTree, CycleFree, Schema, SchemaError, WithCycle, canonicalize

__version__ = "0.1.0"

__all__ = [
    "GuardExceeded", "MapFormatError", "MonounaryAlgebra", "analyze", "canonical_form",
    "cycle", "dumps_map", "loads_map", "parse_map", "to_schema",
    "QpVerdict", "Violation", "decide", "decide_finite",
    "AlgebraCatalog", "all_algebras", "random_algebra",
    "Fixture", "FixtureError", "counterexample", "lemma_fixture",
    "Congruence", "Homomorphism", "congruences", "enumerate_endos", "enumerate_epis",
    "enumerate_homs", "is_homomorphism", "kernel", "quotient", "subalgebras", "theta_U",
    "OracleVerdict", "lift_exists", "oracle_all_targets", "oracle_general", "oracle_js",
    "BranchTree", "CycleFree", "Schema", "SchemaError", "WithCycle", "canonicalize",
]
