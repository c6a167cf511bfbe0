"""Estimator-style wrappers so the computations plug into sklearn tooling.

``fit`` takes the lattice generators (or support forms) of the monoid as an
integer matrix, one vector per row. Fitted attributes end in an underscore.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_integer_matrix, check_positive_integers
from .cone import from_support_forms, support_forms
from .conic import MAX_ENUMERATION_DIM, conic_witness, enumerate_conic_classes
from .divisors import canonical_class, class_group
from .multiplicity import class_mu, hk_function, hk_multiplicity, hk_quasi_polynomial
from .segre import class_factors, depth, is_cm


def _build_cone(X, input_type):
    rows = check_integer_matrix(X)
    d = len(rows[0])
    if input_type == "generators":
        return support_forms(rows, d)
    if input_type == "support_forms":
        return from_support_forms(rows, d)
    raise ValueError(f"input_type must be 'generators' or 'support_forms', got {input_type!r}")


class DivisorClassAnalyzer(TransformerMixin, BaseEstimator):
    """Class group of K[M]; ``transform`` maps class vectors u to class labels.

    Parameters
    ----------
    input_type : {"generators", "support_forms"}
        How to read the rows passed to ``fit``.
    enumerate_cells : bool
        Compute the conic table (full cell enumeration) during ``fit``.
    max_enumeration_dim : int
        Skip cell enumeration above this rank; ``predict`` still works.
    """

    def __init__(self, input_type="generators", enumerate_cells=True,
                 max_enumeration_dim=MAX_ENUMERATION_DIM):
        self.input_type = input_type
        self.enumerate_cells = enumerate_cells
        self.max_enumeration_dim = max_enumeration_dim

    def fit(self, X, y=None):
        self.cone_ = _build_cone(X, self.input_type)
        self.class_group_ = class_group(self.cone_)
        self.n_features_in_ = self.cone_.dim
        self.canonical_class_ = canonical_class(self.class_group_)
        if self.enumerate_cells and self.cone_.dim <= self.max_enumeration_dim:
            self.conic_table_ = enumerate_conic_classes(
                self.cone_, self.class_group_, self.max_enumeration_dim
            )
        else:
            self.conic_table_ = None
        return self

    def _check_u(self, U):
        check_is_fitted(self, "class_group_")
        return check_integer_matrix(U, n_columns=self.cone_.s, name="U")

    def transform(self, U):
        """Label coordinates (torsion residues, then free part) for each row of U."""
        rows = self._check_u(U)
        labels = [self.class_group_.class_of(u) for u in rows]
        return np.array([lab.torsion + lab.free for lab in labels], dtype=np.int64).reshape(
            len(rows), -1
        )

    def predict(self, U):
        """Whether D(u) is conic, per row."""
        rows = self._check_u(U)
        return np.array([conic_witness(self.cone_, u) is not None for u in rows], dtype=bool)


class HilbertKunzEstimator(BaseEstimator):
    """Hilbert-Kunz data of K[M]; ``predict(n)`` evaluates the Hilbert-Kunz function."""

    def __init__(self, input_type="generators", max_period=None):
        self.input_type = input_type
        self.max_period = max_period

    def fit(self, X, y=None):
        self.cone_ = _build_cone(X, self.input_type)
        self.class_group_ = class_group(self.cone_)
        self.n_features_in_ = self.cone_.dim
        self.conic_table_ = enumerate_conic_classes(self.cone_, self.class_group_)
        self.mu_ = class_mu(self.cone_, self.conic_table_)
        self.e_hk_ = hk_multiplicity(self.cone_, self.class_group_, self.conic_table_, self.mu_)
        return self

    def predict(self, ns):
        check_is_fitted(self, "e_hk_")
        return np.array(
            [hk_function(self.cone_, self.class_group_, self.conic_table_, n, self.mu_)
             for n in check_positive_integers(ns)],
            dtype=object,
        )

    def quasi_polynomial(self, nmax=30):
        check_is_fitted(self, "e_hk_")
        return hk_quasi_polynomial(
            self.cone_, self.class_group_, self.conic_table_, nmax, self.max_period
        )


class SegreCMClassifier(ClassifierMixin, BaseEstimator):
    """Cohen-Macaulayness of R_1(-s_1) # ... # R_n(-s_n) for polynomial rings R_i.

    Rows of the input are shift vectors (s_1, ..., s_n). ``predict`` returns the CM
    flag, ``depth`` the depth of each class.
    """

    def __init__(self, dims=(3, 3, 3)):
        self.dims = dims

    def fit(self, X=None, y=None):
        dims = [int(d) for d in self.dims]
        if len(dims) < 1 or any(d < 2 for d in dims):
            raise ValueError("every factor dimension must be at least 2")
        self.dims_ = tuple(dims)
        self.classes_ = np.array([False, True])
        self.n_features_in_ = len(dims)
        return self

    def predict(self, S):
        check_is_fitted(self, "dims_")
        rows = check_integer_matrix(S, n_columns=len(self.dims_), name="S")
        return np.array([is_cm(class_factors(self.dims_, s)) for s in rows], dtype=bool)

    def depth(self, S):
        check_is_fitted(self, "dims_")
        rows = check_integer_matrix(S, n_columns=len(self.dims_), name="S")
        return np.array([depth(class_factors(self.dims_, s)) for s in rows], dtype=np.int64)
