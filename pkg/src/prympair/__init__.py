"""Exact Prym lattices of pairs of covers of the projective line."""
from .classification import (
    FamilyDescriptor,
    HurwitzParams,
    classify_range,
    derive_params,
    family_a_test,
    family_b_test,
    family_moduli_dimension,
)
from .covers import (
    BranchedCover,
    CoverMorphism,
    MonodromyTuple,
    PairDiagram,
    Permutation,
    cycle_type,
    fiber_product,
    genus,
    is_etale,
    ramification_degree,
    relative_ramification,
)
from .groups import common_factorization_exists, cyclic_etale_factorization_exists, deck_group
from .homology import homology, pushforward, transfer
from .pryms import (
    KernelGroup,
    PolarizationType,
    PolarizedLattice,
    Sublattice,
    complement,
    exponent_endomorphism,
    kernel_group,
    prym_lattice,
    prym_pair_lattice,
    prym_tyurin_check,
    restricted_type,
    seshadri_upper_bound,
    skew_normal_form,
    verify_complement_orders,
    verify_kernel_sequence,
    verify_kernel_splitting,
)
from .witness import family_a_witness, family_b_witness, witness_search

__version__ = "0.1.0"

__all__ = [
    "BranchedCover",
    "CoverMorphism",
    "FamilyDescriptor",
    "HurwitzParams",
    "KernelGroup",
    "MonodromyTuple",
    "PairDiagram",
    "Permutation",
    "PolarizationType",
    "PolarizedLattice",
    "Sublattice",
    "classify_range",
    "common_factorization_exists",
    "complement",
    "cycle_type",
    "cyclic_etale_factorization_exists",
    "deck_group",
    "derive_params",
    "exponent_endomorphism",
    "family_a_test",
    "family_a_witness",
    "family_b_test",
    "family_b_witness",
    "family_moduli_dimension",
    "fiber_product",
    "genus",
    "homology",
    "is_etale",
    "kernel_group",
    "prym_lattice",
    "prym_pair_lattice",
    "prym_tyurin_check",
    "pushforward",
    "ramification_degree",
    "relative_ramification",
    "restricted_type",
    "seshadri_upper_bound",
    "skew_normal_form",
    "transfer",
    "verify_complement_orders",
    "verify_kernel_sequence",
    "verify_kernel_splitting",
    "witness_search",
]
