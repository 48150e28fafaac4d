"""Exact Lie-theoretic computations for parabolic geometries on Hopf manifolds."""

from .chevalley import (
    AlgebraElement,
    ChevalleyAlgebra,
    Coroot,
    RootVector,
    adjoint_matrix,
    bracket,
    build_chevalley_algebra,
    killing_form,
    verify_chevalley_axioms,
)
from .hopf import (
    ContractionSigma,
    LogEigenvalue,
    additive_relations,
    affine_moduli_dimension,
    canonical_contracting_sigma,
    contraction_spectrum,
    hopf_report,
    poincare_dulac_resonances,
)
from .parabolic import (
    build_parabolic,
    check_delta_compactness,
    effectivity_check,
    normalize_torsion,
    sharpe_mutation,
    torsion_action_fields,
    verify_consistency_identities,
)
from .rootsys import DynkinSpec, RootSystem, build_root_system, inner_product, root_string

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "ChevalleyAlgebra",
    "ContractionSigma",
    "Coroot",
    "DynkinSpec",
    "LogEigenvalue",
    "RootSystem",
    "RootVector",
    "additive_relations",
    "adjoint_matrix",
    "affine_moduli_dimension",
    "bracket",
    "build_chevalley_algebra",
    "build_parabolic",
    "build_root_system",
    "canonical_contracting_sigma",
    "check_delta_compactness",
    "contraction_spectrum",
    "effectivity_check",
    "hopf_report",
    "inner_product",
    "killing_form",
    "normalize_torsion",
    "poincare_dulac_resonances",
    "root_string",
    "sharpe_mutation",
    "torsion_action_fields",
    "verify_chevalley_axioms",
    "verify_consistency_identities",
]
