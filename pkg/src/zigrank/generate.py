"""Random instances and hand-built example modules.

Everything is driven by a ``numpy.random.Generator`` so output is a pure
function of the seed.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from . import linalg as la
from .exceptions import ValidationError
from .filtration import Bifiltration, Simplex, SimplicialComplex
from .grid import GridInterval, GridPoint, join, leq, nbd
from .module import ExplicitModule, change_of_basis, direct_sum, interval_module

__all__ = [
    "as_rng",
    "random_interval",
    "random_invertible",
    "random_basis_change",
    "interval_sum",
    "random_interval_sum",
    "random_presented_module",
    "random_bifiltration",
    "indecomposable_candidate",
    "example_section_module",
    "example_nested_module",
    "example_nested_intervals",
    "example_indecomposable_part",
    "example_non_decomposable_module",
]


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _grid(grid) -> GridInterval:
    if isinstance(grid, GridInterval):
        return grid
    w, h = grid
    if w < 1 or h < 1:
        raise ValidationError(f"grid must be at least 1x1, got {w}x{h}")
    return GridInterval.rect(0, 0, w - 1, h - 1)


def random_interval(P: GridInterval, rng=None, max_size: int | None = None) -> GridInterval:
    """Grow a random interval of P from a uniformly chosen point."""
    rng = as_rng(rng)
    pts = P.sorted_points()
    start = pts[rng.integers(len(pts))]
    target = int(rng.integers(1, (max_size or len(P)) + 1))
    I = GridInterval.singleton(start)
    while len(I) < target:
        cands = nbd(I, P)
        if not cands:
            break
        q = cands[rng.integers(len(cands))]
        I = GridInterval.from_points(I.points | {q})
    return I


def random_invertible(n: int, field: int, rng=None) -> np.ndarray:
    rng = as_rng(rng)
    while True:
        m = rng.integers(0, field, size=(n, n), dtype=np.int64)
        if la.rank(m, field) == n:
            return m


def random_basis_change(M: ExplicitModule, rng=None) -> ExplicitModule:
    rng = as_rng(rng)
    bases = {p: random_invertible(M.dims[p], M.field, rng) for p in M.nodes if M.dims[p]}
    return change_of_basis(M, bases)


def interval_sum(barcode, P: GridInterval, field: int = 2) -> ExplicitModule:
    """``sum of I_J^m`` over ``(J, m)`` in a mapping or pair sequence."""
    items = barcode.items() if hasattr(barcode, "items") else barcode
    parts = []
    for J, m in items:
        parts.extend([interval_module(J, P, field)] * m)
    if not parts:
        return ExplicitModule(P, {}, {}, field)
    return direct_sum(parts)


def random_interval_sum(
    rng=None,
    grid=(4, 4),
    max_intervals: int = 6,
    field: int = 2,
    max_dim: int | None = None,
    scramble: bool = True,
) -> tuple[ExplicitModule, Counter]:
    """Random interval-decomposable module and its barcode.

    Between 1 and ``max_intervals`` summands; repeated intervals add up to a
    multiplicity.  With ``scramble`` each point gets a random change of basis.
    """
    rng = as_rng(rng)
    P = _grid(grid)
    while True:
        k = int(rng.integers(1, max_intervals + 1))
        bc: Counter = Counter(random_interval(P, rng) for _ in range(k))
        M = interval_sum(bc, P, field)
        if max_dim is None or max(M.dims.values()) <= max_dim:
            break
    if scramble:
        M = random_basis_change(M, rng)
    return M, bc


def random_presented_module(
    rng=None,
    grid=(3, 3),
    field: int = 2,
    max_dim: int = 4,
    max_generators: int = 5,
    max_relations: int = 4,
    max_tries: int = 1000,
) -> ExplicitModule:
    """Cokernel of a random graded presentation, resampled until dims fit.

    Generators sit at random grades; each relation is a random combination of
    the generators below its grade.  ``M_p`` is the span of generators below
    p modulo the relations below p.
    """
    rng = as_rng(rng)
    P = _grid(grid)
    pts = P.sorted_points()
    for _ in range(max_tries):
        ng = int(rng.integers(1, max_generators + 1))
        gens = [pts[rng.integers(len(pts))] for _ in range(ng)]
        rels = []
        for _ in range(int(rng.integers(0, max_relations + 1))):
            r = pts[rng.integers(len(pts))]
            below = [i for i, g in enumerate(gens) if leq(g, r)]
            if not below:
                continue
            v = np.zeros(ng, dtype=np.int64)
            v[below] = rng.integers(0, field, size=len(below))
            if v.any():
                rels.append((r, v))
        M = _cokernel(P, gens, rels, field)
        if max(M.dims.values()) <= max_dim and M.total_dim > 0:
            return M
    raise RuntimeError("could not sample a module within the dimension cap")


def _cokernel(P: GridInterval, gens, rels, field: int) -> ExplicitModule:
    idx = {}
    quo, lift = {}, {}
    for p in P:
        idx[p] = [i for i, g in enumerate(gens) if leq(g, p)]
        cols = [v[idx[p]] for r, v in rels if leq(r, p)]
        R = np.stack(cols, axis=1) if cols else la.zeros(len(idx[p]), 0)
        quo[p] = la.quotient_map(len(idx[p]), R, field)
        lift[p] = la.right_inverse(quo[p], field)
    dims = {p: quo[p].shape[0] for p in P}
    maps = {}
    for a, b in P.cover_relations():
        incl = la.zeros(len(idx[b]), len(idx[a]))
        pos = {g: i for i, g in enumerate(idx[b])}
        for j, g in enumerate(idx[a]):
            incl[pos[g], j] = 1
        maps[(a, b)] = la.matmul(la.matmul(quo[b], incl, field), lift[a], field)
    return ExplicitModule(P, dims, maps, field)


def random_bifiltration(
    rng=None,
    grid=(4, 4),
    n_vertices: int = 6,
    max_simplices: int = 40,
    field: int = 2,
    p_edge: float = 0.5,
    p_triangle: float = 0.5,
    p_delay: float = 0.4,
) -> Bifiltration:
    """Random clique-free 2-complex with monotone grades on a rectangle."""
    rng = as_rng(rng)
    P = _grid(grid)
    pts = P.sorted_points()
    simplices = [(v,) for v in range(n_vertices)]
    edges = [e for e in itertools.combinations(range(n_vertices), 2) if rng.random() < p_edge]
    simplices += edges
    eset = set(edges)
    for t in itertools.combinations(range(n_vertices), 3):
        if len(simplices) >= max_simplices:
            break
        if all(f in eset for f in itertools.combinations(t, 2)) and rng.random() < p_triangle:
            simplices.append(t)
    simplices = simplices[:max_simplices]
    grades: dict[tuple, GridPoint] = {}
    x_hi, y_hi = P.x_range[1], max(c[2] for c in P.columns)
    for s in simplices:
        if len(s) == 1:
            g = pts[rng.integers(len(pts))]
        else:
            g = grades[s[1:]]
            for i in range(len(s)):
                g = join(g, grades[s[:i] + s[i + 1 :]])
            if rng.random() < p_delay:
                g = GridPoint(min(x_hi, g.x + int(rng.integers(0, 2))), min(y_hi, g.y + int(rng.integers(0, 2))))
        grades[s] = g
    cx = SimplicialComplex(Simplex(i, s) for i, s in enumerate(simplices))
    return Bifiltration(cx, {i: grades[s] for i, s in enumerate(simplices)}, P, field)


def indecomposable_candidate(rng=None, grid=(2, 2), field: int = 2, max_dim: int = 2) -> ExplicitModule:
    """Small random module meant for the exhaustive idempotent oracle."""
    return random_presented_module(rng, grid, field, max_dim=max_dim, max_generators=3, max_relations=2)


# worked examples ------------------------------------------------------------


def example_section_module(field: int = 2) -> ExplicitModule:
    """Module on [1,2]^2 with a two-dimensional space at (2,1).

    The maps into (2,2) disagree on (0,1) in M_(2,1), so that vector extends
    to a section along the boundary path but not to a global section.
    """
    P = GridInterval.rect(1, 1, 2, 2)
    dims = {(1, 1): 1, (1, 2): 1, (2, 2): 1, (2, 1): 2}
    maps = {
        ((1, 1), (1, 2)): [[1]],
        ((1, 2), (2, 2)): [[1]],
        ((1, 1), (2, 1)): [[1], [0]],
        ((2, 1), (2, 2)): [[1, 1]],
    }
    return ExplicitModule(P, dims, maps, field)


def example_nested_intervals() -> tuple[GridInterval, GridInterval, GridInterval]:
    I1 = GridInterval.rect(1, 1, 3, 2)
    I2 = GridInterval.from_points([(2, 1), (3, 1), (2, 2)])
    I3 = GridInterval.singleton((2, 2))
    return I1, I2, I3


def example_nested_module(field: int = 2, scramble_seed: int | None = None) -> ExplicitModule:
    """``I_1 + I_2 + I_3`` for three nested intervals of {1,2,3} x {1,2}."""
    I1, I2, I3 = example_nested_intervals()
    M = interval_sum([(I1, 1), (I2, 1), (I3, 1)], I1, field)
    if scramble_seed is not None:
        M = random_basis_change(M, scramble_seed)
    return M


def example_indecomposable_part(field: int = 2) -> ExplicitModule:
    """Indecomposable thin-but-one module on {1,2,3} x {1,2} (not an interval module)."""
    P = GridInterval.rect(1, 1, 3, 2)
    dims = {(1, 2): 1, (2, 1): 1, (2, 2): 2, (3, 1): 1, (3, 2): 1}
    maps = {
        ((1, 2), (2, 2)): [[1], [0]],
        ((2, 1), (2, 2)): [[0], [1]],
        ((2, 2), (3, 2)): [[1, 1]],
        ((2, 1), (3, 1)): [[1]],
        ((3, 1), (3, 2)): [[1]],
    }
    return ExplicitModule(P, dims, maps, field)


def example_non_decomposable_module(field: int = 2) -> ExplicitModule:
    """The indecomposable part above plus the interval module on I_2."""
    _, I2, _ = example_nested_intervals()
    Np = example_indecomposable_part(field)
    return direct_sum([Np, interval_module(I2, Np.domain, field)])
