"""scikit-learn style wrappers and input validation helpers.

Each estimator takes modules (or bifiltrations) as samples.  ``fit`` records
the domain and field of the first sample; ``transform`` maps every sample to a
feature vector, so batches of modules can feed ordinary pipelines.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decomp import DecompositionOutput, interval_decompose, is_interval_decomposable
from .exceptions import FieldMismatchError, ValidationError
from .filtration import Bifiltration
from .grank import RankFunction, dgm_all
from .grid import GridInterval, enumerate_intervals, parse_interval
from .module import ExplicitModule, from_bifiltration

__all__ = [
    "check_module",
    "check_interval",
    "check_modules",
    "GeneralizedRankTransformer",
    "GeneralizedPersistenceDiagram",
    "IntervalDecomposer",
]


def check_module(X, degree: int = 0, field: int | None = None) -> ExplicitModule:
    """Coerce a module or bifiltration to an ``ExplicitModule``."""
    if isinstance(X, Bifiltration):
        X = from_bifiltration(X, degree)
    if not isinstance(X, ExplicitModule):
        raise ValidationError(f"expected a module or bifiltration, got {type(X).__name__}")
    if field is not None and X.field != field:
        raise FieldMismatchError(f"module over F_{X.field}, expected F_{field}")
    return X


def check_interval(I, within: GridInterval | None = None) -> GridInterval:
    """Accept a ``GridInterval``, an interval spec string, or a point list."""
    if isinstance(I, str):
        I = parse_interval(I)
    elif not isinstance(I, GridInterval):
        I = GridInterval.from_points(I)
    if within is not None and not I.issubset(within):
        raise ValidationError(f"{I.to_spec()} is not inside {within.to_spec()}")
    return I


def check_modules(X, degree: int = 0) -> list[ExplicitModule]:
    if isinstance(X, (ExplicitModule, Bifiltration)):
        X = [X]
    mods = [check_module(x, degree) for x in X]
    if not mods:
        raise ValidationError("no samples given")
    return mods


class _ModuleEstimator(BaseEstimator):
    def _fit_domain(self, X):
        mods = check_modules(X, self.degree)
        self.domain_ = mods[0].domain
        self.field_ = mods[0].field
        for M in mods[1:]:
            if M.domain != self.domain_:
                raise ValidationError("all samples must share one grid")
            if M.field != self.field_:
                raise FieldMismatchError(f"samples mix F_{self.field_} and F_{M.field}")
        return mods

    def _check_samples(self, X) -> list[ExplicitModule]:
        check_is_fitted(self, "domain_")
        mods = check_modules(X, self.degree)
        for M in mods:
            if M.domain != self.domain_:
                raise ValidationError("sample grid differs from the fitted grid")
            if M.field != self.field_:
                raise FieldMismatchError(f"sample over F_{M.field}, fitted on F_{self.field_}")
        return mods


class GeneralizedRankTransformer(TransformerMixin, _ModuleEstimator):
    """Generalized rank over a fixed list of intervals.

    With ``intervals=None`` every interval of the fitted grid is used (subject
    to ``max_points``).
    """

    def __init__(
        self,
        intervals: Sequence | None = None,
        method: str = "zigzag",
        degree: int = 0,
        max_points: int = 25,
    ):
        self.intervals = intervals
        self.method = method
        self.degree = degree
        self.max_points = max_points

    def fit(self, X, y=None):
        self._fit_domain(X)
        if self.intervals is None:
            self.intervals_ = enumerate_intervals(self.domain_, self.max_points)
        else:
            self.intervals_ = [check_interval(I, self.domain_) for I in self.intervals]
        return self

    def transform(self, X) -> np.ndarray:
        mods = self._check_samples(X)
        out = np.zeros((len(mods), len(self.intervals_)), dtype=np.int64)
        for i, M in enumerate(mods):
            rk = RankFunction(M, self.method)
            out[i] = [rk(I) for I in self.intervals_]
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "intervals_")
        return np.array([I.to_spec() for I in self.intervals_], dtype=object)


class GeneralizedPersistenceDiagram(TransformerMixin, _ModuleEstimator):
    """Moebius inversion of the generalized rank over all intervals of the grid."""

    def __init__(self, degree: int = 0, max_points: int = 25):
        self.degree = degree
        self.max_points = max_points

    def fit(self, X, y=None):
        self._fit_domain(X)
        self.intervals_ = enumerate_intervals(self.domain_, self.max_points)
        return self

    def transform(self, X) -> np.ndarray:
        mods = self._check_samples(X)
        out = np.zeros((len(mods), len(self.intervals_)), dtype=np.int64)
        pos = {I: j for j, I in enumerate(self.intervals_)}
        for i, M in enumerate(mods):
            for e in dgm_all(M, self.domain_, self.max_points):
                out[i, pos[e.interval]] = e.value
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "intervals_")
        return np.array([I.to_spec() for I in self.intervals_], dtype=object)


class IntervalDecomposer(_ModuleEstimator):
    """Peeling decomposition; ``predict`` reports interval decomposability.

    ``decompose`` returns the full outputs, ``transform`` the per-interval
    multiplicities over every interval of the fitted grid.
    """

    def __init__(self, order: str = "lex", seed: int | None = None, degree: int = 0, max_points: int = 25):
        self.order = order
        self.seed = seed
        self.degree = degree
        self.max_points = max_points

    def fit(self, X, y=None):
        self._fit_domain(X)
        self.intervals_ = enumerate_intervals(self.domain_, self.max_points)
        return self

    def decompose(self, X) -> list[DecompositionOutput]:
        mods = self._check_samples(X)
        return [interval_decompose(M, order=self.order, seed=self.seed) for M in mods]

    def transform(self, X) -> np.ndarray:
        outs = self.decompose(X)
        pos = {I: j for j, I in enumerate(self.intervals_)}
        res = np.zeros((len(outs), len(self.intervals_)), dtype=np.int64)
        for i, out in enumerate(outs):
            for I, m in out.barcode().items():
                res[i, pos[I]] += m
        return res

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).transform(X)

    def predict(self, X) -> np.ndarray:
        mods = self._check_samples(X)
        return np.array(
            [bool(is_interval_decomposable(M, order=self.order, seed=self.seed).decomposable) for M in mods]
        )
