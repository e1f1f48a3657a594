import pytest
from hypothesis import given
from hypothesis import strategies as st

from zigrank.exceptions import GuardError, ValidationError
from zigrank.generate import random_interval_sum, random_presented_module
from zigrank.grank import (
    RankFunction,
    check_moebius,
    dgm_all,
    dgm_via_neighborhood,
    generalized_rank,
    generalized_rank_lower_variant,
)
from zigrank.grid import GridInterval, enumerate_intervals
from zigrank.module import interval_module

from .conftest import module_and_interval, small_modules


@given(module_and_interval(max_side=4))
def test_zigzag_equals_direct(MI):
    M, I = MI
    assert generalized_rank(M, I, "zigzag").rank == generalized_rank(M, I, "direct").rank


@given(module_and_interval(max_side=4))
def test_lower_cap_equals_upper_cap(MI):
    M, I = MI
    assert generalized_rank_lower_variant(M, I) == generalized_rank(M, I).rank


@given(module_and_interval(max_side=3))
def test_rank_is_monotone_under_inclusion(MI):
    M, I = MI
    rk = RankFunction(M)
    for J in enumerate_intervals(M.domain):
        if I.issubset(J):
            assert rk(J) <= rk(I)


@given(small_modules(max_side=3))
def test_moebius_identity_and_neighbourhood_formula(M):
    rk = RankFunction(M)
    entries = dgm_all(rk)
    assert check_moebius(entries, rk) == []
    for e in entries:
        assert dgm_via_neighborhood(rk, e.interval).value == e.value


@given(st.integers(0, 10**6))
def test_dgm_of_interval_sum_is_its_barcode(seed):
    M, bc = random_interval_sum(seed, (3, 2), 4)
    dgm = {e.interval: e.value for e in dgm_all(M) if e.value}
    assert dgm == dict(bc)


def test_interval_module_diagram():
    P = GridInterval.rect(0, 0, 1, 1)
    M = interval_module(P)
    nonzero = [e for e in dgm_all(M) if e.value]
    assert len(nonzero) == 1 and nonzero[0].interval == P and nonzero[0].value == 1
    assert dgm_via_neighborhood(M, P).value == 1


def test_classical_rank_on_rectangle():
    P = GridInterval.rect(0, 0, 1, 1)
    M = interval_module(GridInterval.rect(0, 0, 1, 0), P)
    assert generalized_rank(M, GridInterval.rect(0, 0, 1, 0)).rank == 1
    assert generalized_rank(M, P).rank == 0


def test_rank_function_caches():
    M = random_presented_module(0, (3, 3))
    rk = RankFunction(M)
    I = GridInterval.rect(0, 0, 1, 1)
    rk(I), rk(I)
    assert rk.calls == 1


def test_errors():
    M = random_presented_module(0, (2, 2))
    with pytest.raises(ValidationError):
        generalized_rank(M, GridInterval.rect(0, 0, 3, 3))
    with pytest.raises(ValueError):
        generalized_rank(M, GridInterval.rect(0, 0, 1, 1), method="magic")
    with pytest.raises(GuardError):
        dgm_via_neighborhood(M, GridInterval.singleton((0, 0)), guard=1)


def test_to_json_shapes():
    M = random_presented_module(0, (2, 2))
    r = generalized_rank(M, GridInterval.rect(0, 0, 1, 1))
    assert set(r.to_json()) == {"interval", "rank", "method"}
    e = dgm_via_neighborhood(M, GridInterval.rect(0, 0, 1, 1))
    assert set(e.to_json()) == {"interval", "value"}
