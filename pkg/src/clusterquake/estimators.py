"""Batch-oriented wrapper with the fit/transform calling convention.

EarthquakeTransformer maps arrays of base-chart tropical coordinates
through the earthquake based at a fixed positive point.  It follows the
common estimator protocol (fit / transform / inverse_transform /
get_params / set_params) without depending on scikit-learn, so it can
be dropped into pipelines that only rely on duck typing.
"""

from __future__ import annotations

import math

import numpy as np

from .earthquake import inverse_quake, quake
from .patterns import enumerate_pattern, pattern_from_type
from .points import PositivePoint, TropicalPoint, locate_cone
from .seeds import ExchangeMatrix


class EarthquakeTransformer:
    """Earthquake map as a samples-by-coordinates transform.

    Parameters
    ----------
    type_or_matrix : str or ExchangeMatrix, default "A2"
        Cartan-type label or an explicit skew-symmetrizable seed.
    g0 : sequence of positive numbers, optional
        Base point in the initial chart; all ones when omitted.
    cap : int, optional
        Enumeration budget forwarded to the pattern builder.
    tol : float, default 1e-9
        Cone-membership tolerance.
    """

    def __init__(self, type_or_matrix="A2", g0=None, cap=None, tol=1e-9):
        self.type_or_matrix = type_or_matrix
        self.g0 = g0
        self.cap = cap
        self.tol = tol

    def get_params(self, deep=True):
        return {"type_or_matrix": self.type_or_matrix, "g0": self.g0,
                "cap": self.cap, "tol": self.tol}

    def set_params(self, **params):
        for key, value in params.items():
            if key not in self.get_params():
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    def fit(self, X=None, y=None):
        if isinstance(self.type_or_matrix, ExchangeMatrix):
            self.pattern_ = enumerate_pattern(self.type_or_matrix,
                                              cap=self.cap)
        else:
            self.pattern_ = pattern_from_type(str(self.type_or_matrix),
                                              cap=self.cap)
        self.n_features_ = self.pattern_.n
        coords = self.g0 if self.g0 is not None else (1,) * self.n_features_
        if len(coords) != self.n_features_:
            raise ValueError(
                f"g0 has {len(coords)} coordinates, seed has rank "
                f"{self.n_features_}")
        self.g0_ = PositivePoint(self.pattern_.base, tuple(coords))
        return self

    def _check_fitted(self):
        if not hasattr(self, "pattern_"):
            raise RuntimeError("this EarthquakeTransformer is not fitted yet;"
                               " call fit() first")

    def _rows(self, X):
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[1] != self.n_features_:
            raise ValueError(f"expected shape (*, {self.n_features_}), "
                             f"got {arr.shape}")
        return arr

    def transform(self, X):
        """Rows of log X(quake(g0, L)) for each tropical point row L."""
        self._check_fitted()
        arr = self._rows(X)
        out = np.empty_like(arr)
        for i, row in enumerate(arr):
            L = TropicalPoint(self.pattern_.base, tuple(row))
            g = quake(self.pattern_, self.g0_, L, self.tol).g
            out[i] = [math.log(float(x)) for x in g.X]
        return out

    def inverse_transform(self, X):
        """Tropical coordinates recovering each row of log-coordinates."""
        self._check_fitted()
        arr = self._rows(X)
        out = np.empty_like(arr)
        for i, row in enumerate(arr):
            g = PositivePoint(self.pattern_.base,
                              tuple(math.exp(c) for c in row))
            out[i] = inverse_quake(self.pattern_, self.g0_, g, self.tol).x
        return out

    def predict(self, X):
        """Id of the fan cone containing each tropical point row."""
        self._check_fitted()
        arr = self._rows(X)
        return np.array([locate_cone(TropicalPoint(self.pattern_.base,
                                                   tuple(row)),
                                     self.pattern_, self.tol).vertex
                         for row in arr], dtype=int)

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)
