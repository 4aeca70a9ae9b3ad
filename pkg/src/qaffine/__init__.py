"""Exact stratified descriptions of prime and primitive spectra of quantum affine spaces."""

from .bicharacter import (
    AdaptedCocycle,
    Bicharacter,
    QMatrix,
    SqrtBicharacter,
    ValidationError,
    adapted_cocycle,
    hypothesis_report,
    radical,
    sigma_eval,
    sqrt_bicharacter,
    validate_q,
)
from .feasibility import bichar_feasibility
from .lattice import (
    Lattice,
    QuotientShape,
    hermite_basis,
    kernel_with_moduli,
    lattice_contains,
    quotient_shape,
    smith_normal_form,
)
from .quotient_map import closed_form_oracle, ordered_form, phi_relabel, psi_generators, twisted_mul
from .scalars import HypothesisError, ScalarGroup, minus_one_in_group, sqrt_element
from .strata import compatibility_check, fiber_equivalent, stratify, stratum_of_point

__version__ = "0.1.0"
