"""One-critical simplicial bifiltrations over a grid interval.

Text format (UTF-8, ``#`` starts a comment)::

    grid rect: 0 0 3 3        # or: grid cols: 0:0-3; 1:0-2
    field 2                   # optional, default 2
    simplex 0 : 0 @ 0 0       # id : vertex labels @ x y
    simplex 3 : 0 1 @ 1 2

Every proper face of a simplex must have been declared on an earlier line.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .exceptions import ParseError, ValidationError
from .grid import GridInterval, GridPoint, leq, parse_interval

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "Bifiltration",
    "HomologyBasis",
    "parse_bifiltration",
    "load_bifiltration",
    "complex_at",
    "homology_basis",
    "induced_map",
]


@dataclass(frozen=True)
class Simplex:
    id: int
    vertices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class SimplicialComplex:
    """A finite abstract simplicial complex closed under faces."""

    def __init__(self, simplices: Iterable[Simplex]):
        self.simplices: tuple[Simplex, ...] = tuple(simplices)
        self.by_id: dict[int, Simplex] = {}
        self.by_vertices: dict[tuple[int, ...], Simplex] = {}
        for s in self.simplices:
            if s.id in self.by_id:
                raise ValidationError(f"duplicate simplex id {s.id}")
            if s.vertices in self.by_vertices:
                raise ValidationError(f"simplex {s.id} repeats vertex set {list(s.vertices)}")
            self.by_id[s.id] = s
            self.by_vertices[s.vertices] = s
        for s in self.simplices:
            for f in self.facets(s):
                if f not in self.by_vertices:
                    raise ValidationError(f"simplex {s.id} has undeclared face {list(f)}")

    @staticmethod
    def facets(s: Simplex) -> list[tuple[int, ...]]:
        if s.dim == 0:
            return []
        return [s.vertices[:i] + s.vertices[i + 1 :] for i in range(len(s.vertices))]

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def dimension(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)


@dataclass
class HomologyBasis:
    """Cycle representatives of H_k at one grid point.

    Chains are vectors over *all* k-simplices of the complex (global order),
    so bases at different points live in the same coordinates.
    """

    degree: int
    cycles: np.ndarray  # n_k x dim, independent modulo boundaries
    boundaries: np.ndarray  # n_k x b, independent columns

    @property
    def dim(self) -> int:
        return self.cycles.shape[1]


@dataclass
class Bifiltration:
    """Simplicial complex with one entry grade per simplex over a grid interval."""

    complex: SimplicialComplex
    grades: Mapping[int, GridPoint]
    domain: GridInterval
    field: int = 2
    _order: list[Simplex] = dc_field(init=False, repr=False)
    _cache: dict = dc_field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.field = la.check_prime(self.field)
        self.grades = {k: GridPoint(*v) for k, v in self.grades.items()}
        for s in self.complex.simplices:
            if s.id not in self.grades:
                raise ValidationError(f"simplex {s.id} has no grade")
            g = self.grades[s.id]
            if g not in self.domain:
                raise ValidationError(f"simplex {s.id} graded at {g}, outside the grid")
        for s in self.complex.simplices:
            g = self.grades[s.id]
            for f in self.complex.facets(s):
                face = self.complex.by_vertices[f]
                if not leq(self.grades[face.id], g):
                    raise ValidationError(
                        f"monotonicity violated: face {face.id} at {self.grades[face.id]} "
                        f"is not below coface {s.id} at {g}"
                    )
        self._order = sorted(self.complex.simplices, key=lambda s: (self.grades[s.id], s.dim, s.id))
        self._by_dim: dict[int, list[Simplex]] = {}
        for s in self._order:
            self._by_dim.setdefault(s.dim, []).append(s)
        self._index = {s.id: i for d in self._by_dim.values() for i, s in enumerate(d)}

    @property
    def t(self) -> int:
        return max(len(self.complex), len(self.domain))

    @property
    def order(self) -> list[Simplex]:
        return list(self._order)

    def grade(self, sid: int) -> GridPoint:
        return self.grades[sid]

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        return self._by_dim.get(k, [])

    def index_in_dim(self, sid: int) -> int:
        return self._index[sid]

    def boundary_matrix(self, k: int) -> np.ndarray:
        """Signed boundary map from k-chains to (k-1)-chains in global order."""
        key = ("bd", k)
        if key not in self._cache:
            cols = self.simplices_of_dim(k)
            rows = self.simplices_of_dim(k - 1) if k > 0 else []
            m = la.zeros(len(rows), len(cols))
            if k > 0:
                for j, s in enumerate(cols):
                    for i, f in enumerate(self.complex.facets(s)):
                        r = self._index[self.complex.by_vertices[f].id]
                        m[r, j] = (-1) ** i % self.field
            self._cache[key] = m
        return self._cache[key]

    def present_mask(self, p, k: int) -> np.ndarray:
        return np.array([leq(self.grades[s.id], p) for s in self.simplices_of_dim(k)], dtype=bool)

    # convenience wrappers
    def complex_at(self, p) -> list[Simplex]:
        return complex_at(self, p)

    def homology_basis(self, p, degree: int) -> HomologyBasis:
        return homology_basis(self, p, degree)

    def induced_map(self, p, q, degree: int) -> np.ndarray:
        return induced_map(self, p, q, degree)


def _check_point(F: Bifiltration, p) -> GridPoint:
    p = GridPoint(*p)
    if p not in F.domain:
        raise ValidationError(f"point {p} is outside the bifiltration grid")
    return p


def complex_at(F: Bifiltration, p) -> list[Simplex]:
    """Simplices with grade <= p, in the global (grade, dim, id) order."""
    p = _check_point(F, p)
    return [s for s in F.order if leq(F.grades[s.id], p)]


def homology_basis(F: Bifiltration, p, degree: int) -> HomologyBasis:
    p = _check_point(F, p)
    if degree < 0:
        raise ValueError("homology degree must be nonnegative")
    key = ("hb", p, degree)
    if key in F._cache:
        return F._cache[key]
    k = degree
    fp = F.field
    n_k = len(F.simplices_of_dim(k))
    here_k = np.flatnonzero(F.present_mask(p, k))
    # cycles of the subcomplex, embedded in global k-chain coordinates
    d_k = F.boundary_matrix(k)[:, here_k]
    z_local = la.kernel_basis(d_k, fp) if here_k.size else la.zeros(0, 0)
    z = la.zeros(n_k, z_local.shape[1])
    z[here_k] = z_local
    here_k1 = np.flatnonzero(F.present_mask(p, k + 1))
    if here_k1.size:
        b = la.image_basis(F.boundary_matrix(k + 1)[:, here_k1], fp)
    else:
        b = la.zeros(n_k, 0)
    # extend a basis of B to one of Z; the new columns are the representatives
    stacked = np.hstack([b, z])
    _, piv = la.rref(stacked, fp) if stacked.shape[1] else (None, [])
    reps = [c - b.shape[1] for c in piv if c >= b.shape[1]]
    basis = HomologyBasis(degree, z[:, reps], b)
    F._cache[key] = basis
    return basis


def induced_map(F: Bifiltration, p, q, degree: int) -> np.ndarray:
    """Matrix of H_k(F(p)) -> H_k(F(q)) in the ``homology_basis`` bases."""
    p, q = _check_point(F, p), _check_point(F, q)
    if not leq(p, q):
        raise ValidationError(f"induced map needs p <= q, got {p} and {q}")
    key = ("im", p, q, degree)
    if key in F._cache:
        return F._cache[key]
    hp, hq = homology_basis(F, p, degree), homology_basis(F, q, degree)
    if hp.dim == 0 or hq.dim == 0:
        m = la.zeros(hq.dim, hp.dim)
    else:
        system = np.hstack([hq.boundaries, hq.cycles])
        x = la.solve(system, hp.cycles, F.field)
        if x is None:
            raise AssertionError("cycle at p is not a cycle at q; bifiltration not monotone")
        m = x[hq.boundaries.shape[1] :, :]
    F._cache[key] = m
    return m


# parsing --------------------------------------------------------------------


def parse_bifiltration(text: str, default_field: int = 2) -> Bifiltration:
    """Parse the line-oriented bifiltration format.

    Raises ``ParseError`` (with a line number) on syntax problems and
    ``ValidationError`` on the first violated rule.
    """
    domain: GridInterval | None = None
    fp = default_field
    simplices: list[Simplex] = []
    grades: dict[int, GridPoint] = {}
    seen_vertices: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        if word == "grid":
            if domain is not None:
                raise ParseError(f"line {lineno}: grid declared twice")
            try:
                domain = parse_interval(rest)
            except (ParseError, ValidationError) as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
        elif word == "field":
            try:
                fp = la.check_prime(int(rest))
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
        elif word == "simplex":
            if domain is None:
                raise ParseError(f"line {lineno}: simplex before grid declaration")
            sid, verts, g = _parse_simplex(rest, lineno)
            if sid in grades:
                raise ValidationError(f"line {lineno}: duplicate simplex id {sid}")
            if verts in seen_vertices:
                raise ValidationError(f"line {lineno}: vertex set {list(verts)} already declared as {seen_vertices[verts]}")
            s = Simplex(sid, verts)
            for f in SimplicialComplex.facets(s):
                if f not in seen_vertices:
                    raise ValidationError(f"line {lineno}: face {list(f)} of simplex {sid} not declared before use")
            if g not in domain:
                raise ValidationError(f"line {lineno}: simplex {sid} graded at {g}, outside the grid")
            for f in SimplicialComplex.facets(s):
                fid = seen_vertices[f]
                if not leq(grades[fid], g):
                    raise ValidationError(
                        f"line {lineno}: monotonicity violated: face {fid} at {grades[fid]} "
                        f"is not below coface {sid} at {g}"
                    )
            simplices.append(s)
            grades[sid] = g
            seen_vertices[verts] = sid
        else:
            raise ParseError(f"line {lineno}: unknown directive {word!r}")
    if domain is None:
        raise ParseError("no grid declaration")
    if not simplices:
        raise ParseError("no simplices")
    return Bifiltration(SimplicialComplex(simplices), grades, domain, fp)


def _parse_simplex(rest: str, lineno: int) -> tuple[int, tuple[int, ...], GridPoint]:
    head, colon, tail = rest.partition(":")
    verts_txt, at, grade_txt = tail.partition("@")
    if not colon or not at:
        raise ParseError(f"line {lineno}: expected 'simplex ID : V... @ X Y'")
    try:
        sid = int(head.strip())
        verts = [int(v) for v in verts_txt.split()]
        gx, gy = (int(v) for v in grade_txt.split())
    except ValueError as exc:
        raise ParseError(f"line {lineno}: expected 'simplex ID : V... @ X Y'") from exc
    if not verts:
        raise ParseError(f"line {lineno}: simplex {sid} has no vertices")
    if len(set(verts)) != len(verts):
        raise ParseError(f"line {lineno}: simplex {sid} repeats a vertex")
    return sid, tuple(sorted(verts)), GridPoint(gx, gy)


def load_bifiltration(path, default_field: int = 2) -> Bifiltration:
    with open(path, encoding="utf-8") as fh:
        return parse_bifiltration(fh.read(), default_field)


def format_bifiltration(F: Bifiltration) -> str:
    lines = [f"grid {F.domain.to_spec()}", f"field {F.field}"]
    for s in sorted(F.complex.simplices, key=lambda s: (s.dim, s.id)):
        g = F.grades[s.id]
        lines.append(f"simplex {s.id} : {' '.join(map(str, s.vertices))} @ {g.x} {g.y}")
    return "\n".join(lines) + "\n"


def full_complex(vertices: int, max_dim: int) -> list[tuple[int, ...]]:
    """Vertex tuples of all simplices of dimension <= max_dim on ``vertices`` points."""
    out = []
    for d in range(max_dim + 1):
        out.extend(itertools.combinations(range(vertices), d + 1))
    return out
