"""Symplectic spectra, Williamson normal forms, perturbation-bound checkers,
and Gaussian-state entropy utilities."""

from .densemat import (
    NormKind,
    Spectrum,
    condition_number,
    norm,
    psd_sqrt,
    singular_values,
    spd_inverse,
    sym_eig,
)
from .gaussian import (
    EntropyReport,
    GaussianState,
    entanglement_entropy,
    entropy_difference_bound,
    is_pure,
    reduced_state,
    validate_covariance,
)
from .perturb import (
    BoundReport,
    DegenerateDemoReport,
    PerturbationCase,
    SweepReport,
    bound_S,
    bound_bhatia_jain,
    bound_gram,
    bound_spectrum,
    check_eigvec_bound,
    check_inv_lemma,
    check_kappa_growth,
    check_projection_bound,
    check_sqrt_lemma,
    check_woodbury_norm,
    counterexample_scaling,
    degenerate_demo,
    sweep,
)
from .symplectic import (
    GaugeAlignment,
    WilliamsonFactorization,
    gauge_align,
    is_symplectic,
    standard_form,
    symplectic_inverse,
    symplectic_spectrum,
    williamson,
)

__all__ = [
    "NormKind",
    "Spectrum",
    "condition_number",
    "norm",
    "psd_sqrt",
    "singular_values",
    "spd_inverse",
    "sym_eig",
    "EntropyReport",
    "GaussianState",
    "entanglement_entropy",
    "entropy_difference_bound",
    "is_pure",
    "reduced_state",
    "validate_covariance",
    "BoundReport",
    "DegenerateDemoReport",
    "PerturbationCase",
    "SweepReport",
    "bound_S",
    "bound_bhatia_jain",
    "bound_gram",
    "bound_spectrum",
    "check_eigvec_bound",
    "check_inv_lemma",
    "check_kappa_growth",
    "check_projection_bound",
    "check_sqrt_lemma",
    "check_woodbury_norm",
    "counterexample_scaling",
    "degenerate_demo",
    "sweep",
    "GaugeAlignment",
    "WilliamsonFactorization",
    "gauge_align",
    "is_symplectic",
    "standard_form",
    "symplectic_inverse",
    "symplectic_spectrum",
    "williamson",
]

__version__ = "0.1.0"
