"""Input validation for the estimator interface.

sklearn's ``check_array`` converts to float64, which would silently lose exactness,
so integer matrices are validated here instead.
"""

from __future__ import annotations

from numbers import Integral

import numpy as np


def check_integer_matrix(X, *, n_columns=None, min_rows=1, name="X") -> tuple[tuple[int, ...], ...]:
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < min_rows:
        raise ValueError(f"{name} needs at least {min_rows} rows, got {arr.shape[0]}")
    if n_columns is not None and arr.shape[1] != n_columns:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n_columns}")
    out = []
    for row in arr:
        vals = []
        for x in row:
            if isinstance(x, (bool, np.bool_)):
                raise ValueError(f"{name} must hold integers, got a boolean")
            if isinstance(x, (Integral, np.integer)):
                vals.append(int(x))
            elif isinstance(x, (float, np.floating)) and float(x).is_integer():
                vals.append(int(x))
            else:
                raise ValueError(f"{name} must hold integers, got {x!r}")
        out.append(tuple(vals))
    return tuple(out)


def check_positive_integers(ns, name="n") -> list[int]:
    arr = np.atleast_1d(np.asarray(ns, dtype=object))
    out = []
    for x in arr.ravel():
        if not isinstance(x, (Integral, np.integer)) or int(x) < 1:
            raise ValueError(f"{name} must be positive integers, got {x!r}")
        out.append(int(x))
    return out
