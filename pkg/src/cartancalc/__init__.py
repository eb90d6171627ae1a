"""Exact-arithmetic engine for Sullivan algebras over Q: cohomology,
derivation Lie algebras, free-loop-space models with their Cartan-calculus
operators, Hochschild and cyclic complexes, and machine verification of the
calculus identities on presented examples."""

from .gca import Algebra, Element, Generator
from .derivations import Derivation, der_homology, derivation, lambda_inv, lambda_iso
from .loop import (
    LoopModel,
    build_loop_model,
    bv_on_cohomology,
    formal_dimension,
    fundamental_class,
    hit_fundamental_class,
    hodge_cohomology,
    pairing_matrix,
)

__all__ = [
    "Algebra",
    "Element",
    "Generator",
    "Derivation",
    "derivation",
    "der_homology",
    "lambda_iso",
    "lambda_inv",
    "LoopModel",
    "build_loop_model",
    "bv_on_cohomology",
    "hodge_cohomology",
    "pairing_matrix",
    "formal_dimension",
    "fundamental_class",
    "hit_fundamental_class",
]

__version__ = "0.1.0"
