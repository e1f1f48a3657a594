import itertools
import math
import pickle

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zigrank import linalg as la
from zigrank.exceptions import FieldMismatchError, ValidationError
from zigrank.generate import (
    example_section_module,
    random_bifiltration,
    random_basis_change,
    random_interval,
    random_presented_module,
)
from zigrank.grid import GridInterval, leq, max_zz, min_zz
from zigrank.module import (
    ExplicitModule,
    PosetModule,
    direct_sum,
    from_bifiltration,
    interval_module,
    is_section,
    is_section_along_path,
    quotient_by_summand,
    section_extension,
)

from .conftest import module_and_interval, small_modules


def brute_limit_dim(M: PosetModule) -> int:
    """log_p of the number of sections, by enumerating every tuple."""
    fp = M.field
    nodes = list(M.nodes)
    spaces = [list(itertools.product(range(fp), repeat=M.dims[v])) for v in nodes]
    count = 0
    for choice in itertools.product(*spaces):
        v = {n: np.array(c, dtype=np.int64) for n, c in zip(nodes, choice)}
        ok = all(
            np.array_equal(la.matmul(m, v[a].reshape(-1, 1), fp)[:, 0], v[b]) for (a, b), m in M.arrows.items()
        )
        count += ok
    return round(math.log(count, fp))


def dual(M: PosetModule) -> PosetModule:
    arrows = {(b, a): m.T.copy() for (a, b), m in M.arrows.items()}
    return PosetModule(M.nodes, M.dims, arrows, M.field)


tiny_modules = small_modules(max_side=2, fields=(2, 3), max_dim=2)


def small_enough(M, cap=7):
    return sum(M.dims.values()) <= cap


@given(tiny_modules)
def test_limit_dim_matches_enumeration(M):
    if small_enough(M):
        assert M.limit().dim == brute_limit_dim(M)


@given(tiny_modules)
def test_colimit_dim_is_dual_limit_dim(M):
    if small_enough(M):
        assert M.colimit().dim == brute_limit_dim(dual(M))


@given(module_and_interval(max_side=3))
def test_fence_reduction(MI):
    M, I = MI
    R = M.restrict(I)
    assert R.limit().dim == M.restrict_to_points(min_zz(I).points).limit().dim
    assert R.colimit().dim == M.restrict_to_points(max_zz(I).points).colimit().dim


@given(module_and_interval(max_side=3))
def test_section_extension_inverts_restriction(MI):
    M, I = MI
    R = M.restrict(I)
    lim = R.limit()
    fence = min_zz(I).points
    for j in range(lim.dim):
        full = {p: lim.maps[p][:, j] for p in I}
        ext = section_extension(R, {p: full[p] for p in fence})
        assert all(np.array_equal(ext[p], full[p]) for p in I)


@given(module_and_interval(max_side=3))
def test_rank_bounded_by_dims(MI):
    M, I = MI
    r = M.restrict(I).lim_to_colim_rank(check_all=True)
    assert 0 <= r <= min(M.dims[p] for p in I)


@given(small_modules(max_side=3))
def test_structure_maps_are_path_independent(M):
    pts = M.domain.sorted_points()
    for p, q, r in itertools.combinations(pts, 3):
        if leq(p, q) and leq(q, r):
            assert la.equal(M.structure_map(p, r), la.matmul(M.structure_map(q, r), M.structure_map(p, q), M.field), M.field)


@given(small_modules(max_side=3), st.integers(0, 10**6))
def test_rank_invariant_under_basis_change(M, seed):
    N = random_basis_change(M, seed)
    I = random_interval(M.domain, seed)
    assert N.restrict(I).lim_to_colim_rank() == M.restrict(I).lim_to_colim_rank()


def test_section_example_limit_and_rank():
    M = example_section_module()
    lim = M.limit()
    assert lim.dim == 1
    assert M.colimit().dim == 1
    assert M.lim_to_colim_rank() == 1
    sec = {p: lim.maps[p][:, 0] for p in M.nodes}
    assert sec[(2, 1)].tolist() == [1, 0]


def test_section_example_along_path_vs_global():
    M = example_section_module()
    path = [(1, 1), (1, 2), (2, 2), (2, 1)]
    v = [[1], [1], [1], [0, 1]]
    assert is_section_along_path(M, path, v)
    assert not is_section(M, dict(zip(path, v)))
    assert is_section(M, {(1, 1): [1], (1, 2): [1], (2, 2): [1], (2, 1): [1, 0]})


def test_validation_errors():
    P = GridInterval.rect(0, 0, 1, 0)
    with pytest.raises(ValidationError, match="cover"):
        ExplicitModule(GridInterval.rect(0, 0, 1, 1), {(0, 0): 1, (1, 1): 1}, {((0, 0), (1, 1)): [[1]]})
    with pytest.raises(ValidationError, match="missing"):
        ExplicitModule(P, {(0, 0): 1, (1, 0): 1}, {})
    with pytest.raises(ValidationError, match="shape"):
        ExplicitModule(P, {(0, 0): 1, (1, 0): 2}, {((0, 0), (1, 0)): [[1, 1]]})
    with pytest.raises(ValidationError, match="outside"):
        ExplicitModule(P, {(5, 5): 1}, {})


def test_noncommuting_square_is_named():
    P = GridInterval.rect(0, 0, 1, 1)
    dims = {p: 1 for p in P}
    maps = {c: [[1]] for c in P.cover_relations()}
    maps[((0, 0), (1, 0))] = [[0]]
    with pytest.raises(ValidationError, match=r"\(0,0\)|x=0, y=0"):
        ExplicitModule(P, dims, maps)


def test_interval_module_rank_and_limits():
    P = GridInterval.rect(0, 0, 2, 2)
    I = GridInterval.from_points([(0, 1), (1, 1), (1, 0), (2, 0)])
    M = interval_module(I, P)
    assert M.restrict(I).lim_to_colim_rank() == 1
    assert M.restrict(P).lim_to_colim_rank() == 0
    Z = ExplicitModule(P, {}, {})
    assert Z.limit().dim == 0 and Z.colimit().dim == 0


def test_direct_sum_field_mismatch():
    P = GridInterval.singleton((0, 0))
    with pytest.raises(FieldMismatchError):
        direct_sum([interval_module(P, P, 2), interval_module(P, P, 3)])


def test_quotient_by_summand():
    P = GridInterval.rect(0, 0, 1, 0)
    M = direct_sum([interval_module(P), interval_module(GridInterval.singleton((0, 0)), P)])
    Q = quotient_by_summand(M, {(0, 0): [[1], [0]], (1, 0): [[1]]})
    assert Q.dims == {(0, 0): 1, (1, 0): 0}
    with pytest.raises(ValidationError, match="closed"):
        quotient_by_summand(M, {(0, 0): [[1], [0]]})


def test_section_extension_rejects_non_sections():
    M = example_section_module()
    with pytest.raises(ValidationError):
        section_extension(M, {(1, 1): [1], (1, 2): [0]})


@given(st.integers(0, 10**6))
def test_module_from_bifiltration(seed):
    F = random_bifiltration(seed, (3, 3), 5)
    for k in (0, 1):
        M = from_bifiltration(F, k)
        assert all(M.dims[p] == F.homology_basis(p, k).dim for p in F.domain)


def test_pickle_roundtrip():
    M = random_presented_module(3, (3, 3), 3)
    M.limit()
    N = pickle.loads(pickle.dumps(M))
    assert N.limit().dim == M.limit().dim
    assert N.lim_to_colim_rank() == M.lim_to_colim_rank()
