"""Spectral and bifurcation data of the homogeneous metrics on spheres.

The three one-parameter families of homogeneous (Berger) metrics on spheres
scale the round metric along Hopf fibers:

* ``u``     - S^(2n+1) with circle fibers over complex projective space,
* ``sp``    - S^(4n+3) with 3-sphere fibers over quaternionic projective space,
* ``spin9`` - S^15 with 7-sphere fibers over the round 8-sphere of radius 1/2.

This package computes, with verified exact arithmetic: Laplace spectrum slices
of the scaled metrics, scalar curvatures and the threshold scal/(m-1), first
positive eigenvalues with multiplicities, degeneracy values as exact quadratic
surds with certified enclosures, Morse-index profiles, and the locally-rigid /
bifurcation classification of every parameter value.
"""

from .errors import (
    AdmissibilityError,
    BergerError,
    BracketError,
    ConsistencyError,
    DomainError,
    NoDegeneracyError,
    ResourceLimitError,
    UnsupportedQueryError,
)
from .numerics import (
    DEFAULT_ENCLOSURE_WIDTH,
    Enclosure,
    Surd,
    as_fraction,
    bisect_root,
    harmonic_polynomial_dimension,
    invariant_harmonic_dimension,
    solve_quadratic_positive,
    sqrt_enclosure,
)
from .spectra import (
    Family,
    FamilyDescriptor,
    SpectralBranch,
    SpectrumSlice,
    Status,
    admissible_pairs,
    base_eigenvalue,
    base_multiplicity,
    branch_multiplicity,
    branch_value,
    descriptor,
    enumerate_spectrum_below,
    fiber_eigenvalue,
    is_admissible,
    sphere_eigenvalue,
    sphere_multiplicity,
    squared_parameter,
)
from .families import (
    ThresholdCoefficients,
    lambda1,
    lambda1_breakpoint_s,
    lambda1_multiplicity,
    scalar_curvature,
    second_variation_coefficient,
    threshold,
    threshold_coefficients,
)
from .bifurcation import (
    DEFAULT_CLASSIFY_PRECISION,
    DEFAULT_PRECISION,
    Classification,
    DegeneracyValue,
    GapFunction,
    Kind,
    MorsePiece,
    MorseProfile,
    classify,
    degeneracy_value,
    degeneracy_values,
    gap_critical_point,
    gap_function,
    morse_index,
    morse_index_by_enumeration,
    morse_profile,
    sp_closed_form_s,
    spin9_closed_form_s,
)

__version__ = "1.0.0"

__all__ = [
    "AdmissibilityError",
    "BergerError",
    "BracketError",
    "Classification",
    "ConsistencyError",
    "DEFAULT_CLASSIFY_PRECISION",
    "DEFAULT_ENCLOSURE_WIDTH",
    "DEFAULT_PRECISION",
    "DegeneracyValue",
    "DomainError",
    "Enclosure",
    "Family",
    "FamilyDescriptor",
    "GapFunction",
    "Kind",
    "MorsePiece",
    "MorseProfile",
    "NoDegeneracyError",
    "ResourceLimitError",
    "SpectralBranch",
    "SpectrumSlice",
    "Status",
    "Surd",
    "ThresholdCoefficients",
    "UnsupportedQueryError",
    "admissible_pairs",
    "as_fraction",
    "base_eigenvalue",
    "base_multiplicity",
    "bisect_root",
    "branch_multiplicity",
    "branch_value",
    "classify",
    "degeneracy_value",
    "degeneracy_values",
    "descriptor",
    "enumerate_spectrum_below",
    "fiber_eigenvalue",
    "gap_critical_point",
    "gap_function",
    "harmonic_polynomial_dimension",
    "invariant_harmonic_dimension",
    "is_admissible",
    "lambda1",
    "lambda1_breakpoint_s",
    "lambda1_multiplicity",
    "morse_index",
    "morse_index_by_enumeration",
    "morse_profile",
    "scalar_curvature",
    "second_variation_coefficient",
    "solve_quadratic_positive",
    "sp_closed_form_s",
    "sphere_eigenvalue",
    "sphere_multiplicity",
    "spin9_closed_form_s",
    "sqrt_enclosure",
    "squared_parameter",
    "threshold",
    "threshold_coefficients",
]
