import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zigrank import linalg as la
from zigrank.exceptions import ParseError, ValidationError
from zigrank.filtration import format_bifiltration, parse_bifiltration
from zigrank.generate import random_bifiltration
from zigrank.grid import GridPoint, leq

HOLLOW = """
grid rect: 0 0 2 2
simplex 0 : 0 @ 1 1
simplex 1 : 1 @ 1 1
simplex 2 : 2 @ 1 1
simplex 3 : 0 1 @ 1 1
simplex 4 : 1 2 @ 1 1
simplex 5 : 0 2 @ 1 1
simplex 6 : 0 1 2 @ 2 2
"""


def betti_oracle(F, p, k):
    """dim H_k at p from ranks of freshly built boundary matrices."""
    present = [s for s in F.complex.simplices if leq(F.grades[s.id], p)]
    by_dim = {}
    for s in present:
        by_dim.setdefault(s.dim, []).append(s.vertices)

    def boundary(d):
        rows, cols = by_dim.get(d - 1, []), by_dim.get(d, [])
        pos = {v: i for i, v in enumerate(rows)}
        m = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for j, v in enumerate(cols):
            for i in range(len(v)):
                m[pos[v[:i] + v[i + 1 :]], j] = (-1) ** i
        return m % F.field

    n_k = len(by_dim.get(k, []))
    rk_k = la.rank(boundary(k), F.field) if k > 0 else 0
    rk_k1 = la.rank(boundary(k + 1), F.field)
    return n_k - rk_k - rk_k1


def test_parse_minimal_example():
    F = parse_bifiltration("grid rect: 0 0 1 1\nsimplex 0 : 0 @ 0 0\nsimplex 1 : 1 @ 0 0\nsimplex 2 : 0 1 @ 1 1\n")
    assert len(F.complex) == 3
    assert F.t == max(3, 4)
    assert F.grades[2] == GridPoint(1, 1)


def test_hollow_triangle_h1():
    F = parse_bifiltration(HOLLOW)
    for p in F.domain:
        expect = 1 if leq((1, 1), p) and not leq((2, 2), p) else 0
        assert F.homology_basis(p, 1).dim == expect


@pytest.mark.parametrize(
    "text,exc,needle",
    [
        ("", ParseError, "no grid"),
        ("grid rect: 0 0 1 1\n", ParseError, "no simplices"),
        ("grid rect: 0 0 1 1\nsimplex 0 : 0 @ 1 1\nsimplex 1 : 1 @ 1 1\nsimplex 2 : 0 1 @ 0 0\n", ValidationError, "monotonicity"),
        ("grid rect: 0 0 1 1\nsimplex 0 : 0 @ 5 5\n", ValidationError, "outside"),
        ("grid rect: 0 0 1 1\nsimplex 0 : 0 @ 0 0\nsimplex 0 : 1 @ 0 0\n", ValidationError, "duplicate"),
        ("grid rect: 0 0 1 1\nsimplex 0 : 0 1 @ 0 0\n", ValidationError, "not declared"),
        ("grid rect: 0 0 1 1\nsimplex 0 0 @ 0 0\n", ParseError, "line 2"),
        ("grid rect: 0 0 1 1\nbogus\n", ParseError, "unknown directive"),
        ("grid rect: 0 0 1 1\nfield 4\nsimplex 0 : 0 @ 0 0\n", ParseError, "line 2"),
    ],
)
def test_parse_errors(text, exc, needle):
    with pytest.raises(exc, match=needle):
        parse_bifiltration(text)


def test_comments_and_field_line():
    F = parse_bifiltration("# header\ngrid cols: 0:0-1; 1:0-0  # two columns\nfield 3\nsimplex 0 : 0 @ 0 0\n")
    assert F.field == 3
    assert len(F.domain) == 3


@given(st.integers(0, 10**6))
def test_format_roundtrip(seed):
    F = random_bifiltration(seed, (3, 3), 5)
    G = parse_bifiltration(format_bifiltration(F))
    assert format_bifiltration(G) == format_bifiltration(F)


@given(st.integers(0, 10**6), st.sampled_from([0, 1]), st.sampled_from([2, 3]))
def test_homology_dims_match_rank_formula(seed, k, field):
    F = random_bifiltration(seed, (3, 3), 5, field=field)
    for p in F.domain:
        assert F.homology_basis(p, k).dim == betti_oracle(F, p, k)


@given(st.integers(0, 10**6), st.sampled_from([0, 1]))
def test_induced_maps_compose(seed, k):
    F = random_bifiltration(seed, (3, 3), 5)
    pts = F.domain.sorted_points()
    for p, q, r in itertools.combinations(pts, 3):
        if leq(p, q) and leq(q, r):
            direct = F.induced_map(p, r, k)
            composed = la.matmul(F.induced_map(q, r, k), F.induced_map(p, q, k), F.field)
            assert la.equal(direct, composed, F.field)


def test_complex_at_is_monotone():
    F = parse_bifiltration(HOLLOW)
    assert len(F.complex_at((0, 0))) == 0
    assert len(F.complex_at((1, 2))) == 6
    assert len(F.complex_at((2, 2))) == 7
