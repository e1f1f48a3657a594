import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from zigrank.estimators import (
    GeneralizedPersistenceDiagram,
    GeneralizedRankTransformer,
    IntervalDecomposer,
    check_interval,
    check_module,
)
from zigrank.exceptions import FieldMismatchError, ValidationError
from zigrank.generate import example_non_decomposable_module, random_bifiltration, random_interval_sum
from zigrank.grid import GridInterval


@pytest.fixture
def samples():
    return [random_interval_sum(s, (3, 2), 3)[0] for s in range(4)]


def test_rank_transformer(samples):
    t = GeneralizedRankTransformer(intervals=["rect: 0 0 0 0", "rect: 0 0 2 1"])
    X = t.fit_transform(samples)
    assert X.shape == (4, 2)
    assert list(t.get_feature_names_out()) == ["cols: 0:0-0", "cols: 0:0-1; 1:0-1; 2:0-1"]
    assert (X[:, 0] == [M.dims[(0, 0)] for M in samples]).all()


def test_params_and_clone():
    t = GeneralizedRankTransformer(method="direct")
    assert t.get_params()["method"] == "direct"
    assert clone(t).get_params() == t.get_params()


def test_not_fitted(samples):
    with pytest.raises(NotFittedError):
        GeneralizedRankTransformer().transform(samples)


def test_diagram_inverts_ranks(samples):
    d = GeneralizedPersistenceDiagram().fit(samples)
    r = GeneralizedRankTransformer().fit(samples)
    D, R = d.transform(samples), r.transform(samples)
    ivs = d.intervals_
    for j, I in enumerate(ivs):
        cover = [k for k, J in enumerate(ivs) if I.issubset(J)]
        assert (D[:, cover].sum(axis=1) == R[:, j]).all()


def test_decomposer(samples):
    dec = IntervalDecomposer().fit(samples)
    assert dec.predict(samples).all()
    out = dec.transform(samples)
    for row, M in zip(out, samples):
        assert row.sum() >= 1
    N = example_non_decomposable_module()
    assert not IntervalDecomposer().fit([N]).predict([N])[0]


def test_bifiltration_samples():
    F = random_bifiltration(0, (2, 2), 4)
    X = GeneralizedRankTransformer().fit_transform([F])
    assert X.shape == (1, 11)


def test_validation_helpers():
    with pytest.raises(ValidationError):
        check_module("nope")
    M = random_interval_sum(0, (2, 2), 2)[0]
    with pytest.raises(FieldMismatchError):
        check_module(M, field=3)
    assert check_interval([(0, 0), (1, 0)]) == GridInterval.rect(0, 0, 1, 0)
    with pytest.raises(ValidationError):
        check_interval("rect: 0 0 5 5", within=M.domain)


def test_mixed_grids_rejected():
    a = random_interval_sum(0, (2, 2), 2)[0]
    b = random_interval_sum(0, (3, 2), 2)[0]
    with pytest.raises(ValidationError):
        GeneralizedRankTransformer().fit([a, b])
    t = GeneralizedRankTransformer().fit([a])
    with pytest.raises(ValidationError):
        t.transform([b])
    assert np.asarray(t.transform(a)).shape == (1, 11)
