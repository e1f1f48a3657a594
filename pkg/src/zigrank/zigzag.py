"""Zigzag modules along boundary caps and their barcodes.

A zigzag module has nodes ``0..n-1`` and one arrow between consecutive nodes,
pointing forward (``i -> i+1``) or backward (``i+1 -> i``).  Its full-bar
multiplicity is the generalized rank over the zigzag poset.  The full barcode
comes from inclusion-exclusion over full-bar multiplicities of sub-zigzags:
``mult[i, j] = r(i, j) - r(i-1, j) - r(i, j+1) + r(i-1, j+1)``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .exceptions import ValidationError
from .grid import GridInterval, ZigzagPath, boundary_cap, faithful_completion, leq
from .module import ExplicitModule, PosetModule

__all__ = [
    "ZigzagModule",
    "Bar",
    "ZigzagBarcode",
    "restrict_to_path",
    "zigzag_along_cap",
    "zigzag_from_bifiltration",
    "full_bar_multiplicity",
    "barcode",
]

FORWARD = "forward"
BACKWARD = "backward"


@dataclass
class ZigzagModule:
    """Vector spaces on a line of nodes with alternating-direction maps.

    ``arrows[i]`` is ``(direction, matrix)`` for the edge between nodes ``i``
    and ``i+1``; a forward matrix has shape ``dims[i+1] x dims[i]``, a backward
    one ``dims[i] x dims[i+1]``.  ``labels`` optionally records the grid point
    behind each node.
    """

    dims: tuple[int, ...]
    arrows: tuple[tuple[str, np.ndarray], ...]
    field: int = 2
    labels: tuple | None = None

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if not self.dims:
            raise ValidationError("a zigzag module needs at least one node")
        if len(self.arrows) != len(self.dims) - 1:
            raise ValidationError(f"{len(self.dims)} nodes need {len(self.dims) - 1} arrows, got {len(self.arrows)}")
        arrows = []
        for i, (direction, m) in enumerate(self.arrows):
            if direction == FORWARD:
                shape = (self.dims[i + 1], self.dims[i])
            elif direction == BACKWARD:
                shape = (self.dims[i], self.dims[i + 1])
            else:
                raise ValidationError(f"arrow {i} has unknown direction {direction!r}")
            try:
                arrows.append((direction, la.as_matrix(m, self.field, shape)))
            except ValueError as exc:
                raise ValidationError(f"arrow {i}: {exc}") from exc
        self.arrows = tuple(arrows)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def directions(self) -> tuple[str, ...]:
        return tuple(d for d, _ in self.arrows)

    def pattern(self) -> str:
        """Direction pattern such as ``<><`` (``<`` forward, ``>`` backward)."""
        return "".join("<" if d == FORWARD else ">" for d in self.directions)

    def restrict(self, a: int, b: int) -> ZigzagModule:
        """Sub-zigzag on nodes ``a..b`` inclusive."""
        if not 0 <= a <= b < self.n:
            raise IndexError(f"bad node range {a}..{b} for {self.n} nodes")
        labels = self.labels[a : b + 1] if self.labels is not None else None
        return ZigzagModule(self.dims[a : b + 1], self.arrows[a:b], self.field, labels)

    def to_poset_module(self) -> PosetModule:
        arrows = {}
        for i, (d, m) in enumerate(self.arrows):
            arrows[(i, i + 1) if d == FORWARD else (i + 1, i)] = m
        return PosetModule(range(self.n), dict(enumerate(self.dims)), arrows, self.field)


@dataclass(frozen=True)
class Bar:
    lo: int
    hi: int
    mult: int


@dataclass
class ZigzagBarcode:
    nodes: int
    bars: list[Bar]

    def multiplicity(self, lo: int, hi: int) -> int:
        return sum(b.mult for b in self.bars if (b.lo, b.hi) == (lo, hi))

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "bars": [{"lo": b.lo, "hi": b.hi, "mult": b.mult} for b in self.bars]}


def restrict_to_path(M: ExplicitModule, path: ZigzagPath | Sequence) -> ZigzagModule:
    """Zigzag module of M along a path.

    Consecutive equal points are merged into one node; a point that recurs
    later in the path gets a separate node.
    """
    pts = list(path.points if isinstance(path, ZigzagPath) else ZigzagPath(tuple(path)).points)
    nodes = [pts[0]]
    for p in pts[1:]:
        if p != nodes[-1]:
            nodes.append(p)
    for p in nodes:
        if p not in M.domain:
            raise ValidationError(f"path point {p} outside the module domain")
    arrows = []
    for a, b in zip(nodes, nodes[1:]):
        if leq(a, b):
            arrows.append((FORWARD, M.structure_map(a, b)))
        else:
            arrows.append((BACKWARD, M.structure_map(b, a)))
    return ZigzagModule(tuple(M.dims[p] for p in nodes), tuple(arrows), M.field, tuple(nodes))


def zigzag_along_cap(M: ExplicitModule, I: GridInterval | None = None, variant: str = "upper") -> ZigzagModule:
    """Restriction of M to the boundary cap of I (default: M's domain)."""
    I = M.domain if I is None else I
    if not I.issubset(M.domain):
        raise ValidationError(f"{I.to_spec()} is not contained in the module domain")
    return restrict_to_path(M, boundary_cap(I, variant))


def zigzag_from_bifiltration(F, I: GridInterval | None = None, degree: int = 0, variant: str = "upper") -> ZigzagModule:
    """Homology zigzag of the bifiltration along the faithfully completed cap."""
    I = F.domain if I is None else I
    if not I.issubset(F.domain):
        raise ValidationError(f"{I.to_spec()} is not contained in the bifiltration grid")
    path = faithful_completion(boundary_cap(I, variant))
    pts = path.points
    dims = tuple(F.homology_basis(p, degree).dim for p in pts)
    arrows = []
    for a, b in zip(pts, pts[1:]):
        if leq(a, b):
            arrows.append((FORWARD, F.induced_map(a, b, degree)))
        else:
            arrows.append((BACKWARD, F.induced_map(b, a, degree)))
    return ZigzagModule(dims, tuple(arrows), F.field, tuple(pts))


def full_bar_multiplicity(Z: ZigzagModule) -> int:
    """Multiplicity of the bar spanning every node."""
    if any(d == 0 for d in Z.dims):
        return 0
    for d, m in Z.arrows:
        if not m.any():
            return 0
    if Z.n == 1:
        return Z.dims[0]
    return Z.to_poset_module().lim_to_colim_rank()


def barcode(Z: ZigzagModule) -> ZigzagBarcode:
    n = Z.n
    r: dict[tuple[int, int], int] = {}

    def rk(a: int, b: int) -> int:
        if a < 0 or b >= n:
            return 0
        if (a, b) not in r:
            r[(a, b)] = full_bar_multiplicity(Z.restrict(a, b))
        return r[(a, b)]

    bars = []
    for i in range(n):
        for j in range(i, n):
            m = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1)
            if m < 0:
                raise AssertionError(f"negative multiplicity {m} for bar [{i},{j}]")
            if m:
                bars.append(Bar(i, j, m))
    return ZigzagBarcode(n, bars)
