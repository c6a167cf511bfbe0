"""Conic divisor classes, Segre depth and Hilbert-Kunz data of normal monoid algebras."""

from .cone import Cone, ceil_sigma, from_support_forms, hilbert_basis, is_positive, support_forms
from .conic import (
    conic_polytope,
    conic_witness,
    enumerate_conic_classes,
    is_conic,
)
from .divisors import ClassGroup, ClassLabel, canonical_class, class_group, class_of, is_torsion
from .estimators import DivisorClassAnalyzer, HilbertKunzEstimator, SegreCMClassifier
from .linalg import primitive_part, smith_normal_form
from .multiplicity import (
    fit_quasi_polynomial,
    frobenius_colength_oracle,
    hk_function,
    hk_multiplicity,
    is_totally_unimodular,
    min_generators,
    multiplicity_vector,
)
from .presets import preset
from .segre import GradedFactor, cm_permutation, cm_region, depth, is_cm, veronese_segre_cm_set

__version__ = "0.1.0"
