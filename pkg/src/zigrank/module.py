"""Explicit persistence modules over finite posets.

A :class:`PosetModule` is given by vector space dimensions at the nodes of a
finite poset and matrices on the cover relations (Hasse edges) of that poset.
:class:`ExplicitModule` specializes the poset to a grid interval, where covers
are unit steps right or up.  Limits are computed as spaces of sections, colimits
as quotients of the direct sum, and the generalized rank as the rank of the
canonical limit-to-colimit map.
"""

from __future__ import annotations

import threading
from collections import deque
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .exceptions import FieldMismatchError, ValidationError
from .grid import GridInterval, GridPoint, ZigzagPath, leq

__all__ = [
    "PosetModule",
    "ExplicitModule",
    "ConePresentation",
    "Section",
    "from_bifiltration",
    "interval_module",
    "direct_sum",
    "quotient_by_summand",
    "section_extension",
    "is_section_along_path",
    "limit",
    "colimit",
    "lim_to_colim_rank",
]


@dataclass
class ConePresentation:
    """A limit cone (``kind='limit'``) or colimit cocone (``kind='colimit'``).

    For a limit, ``maps[p]`` is the projection ``L -> M_p`` and ``basis`` the
    section basis inside the direct sum.  For a colimit, ``maps[p]`` is the
    injection ``M_p -> C`` and ``basis`` the quotient matrix on the direct sum.
    """

    kind: str
    dim: int
    maps: dict
    basis: np.ndarray


@dataclass
class Section:
    components: dict

    def __getitem__(self, p):
        return self.components[p]


class PosetModule:
    """A functor from a finite poset to finite-dimensional F_p vector spaces.

    Parameters
    ----------
    nodes : sequence of hashable
    dims : mapping node -> int
    arrows : mapping (a, b) -> matrix
        One matrix of shape ``dims[b] x dims[a]`` per cover relation ``a < b``.
        The poset is the transitive closure of these pairs.
    field : prime modulus
    """

    def __init__(
        self,
        nodes: Sequence[Hashable],
        dims: Mapping,
        arrows: Mapping,
        field: int = 2,
    ):
        self.field = la.check_prime(field)
        self.nodes = tuple(nodes)
        self._pos = {v: i for i, v in enumerate(self.nodes)}
        if len(self._pos) != len(self.nodes):
            raise ValidationError("duplicate poset nodes")
        self.dims = {v: int(dims.get(v, 0)) for v in self.nodes}
        if any(d < 0 for d in self.dims.values()):
            raise ValidationError("dimensions must be nonnegative")
        self.arrows: dict = {}
        for (a, b), m in arrows.items():
            if a not in self._pos or b not in self._pos:
                raise ValidationError(f"arrow {a}->{b} leaves the poset")
            shape = (self.dims[b], self.dims[a])
            try:
                self.arrows[(a, b)] = la.as_matrix(m, self.field, shape)
            except ValueError as exc:
                raise ValidationError(f"arrow {a}->{b}: {exc}") from exc
        self._offsets = {}
        off = 0
        for v in self.nodes:
            self._offsets[v] = off
            off += self.dims[v]
        self.total_dim = off
        self._lock = threading.Lock()
        self._lim: ConePresentation | None = None
        self._colim: ConePresentation | None = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(nodes={len(self.nodes)}, total_dim={self.total_dim}, field={self.field})"

    def dim(self, v) -> int:
        return self.dims.get(v, 0)

    def block(self, v) -> slice:
        o = self._offsets[v]
        return slice(o, o + self.dims[v])

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        adj: dict = {v: [] for v in self.nodes}
        for a, b in self.arrows:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.nodes[0]}
        todo = deque([self.nodes[0]])
        while todo:
            v = todo.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.nodes)

    def _require_connected(self):
        if not self.is_connected():
            raise ValidationError("limit-to-colimit map needs a connected, nonempty poset")

    # limits and colimits --------------------------------------------------

    def limit(self) -> ConePresentation:
        """Sections: kernel of ``v_b - phi(a,b) v_a = 0`` over all arrows."""
        with self._lock:
            if self._lim is None:
                self._lim = self._compute_limit()
            return self._lim

    def _compute_limit(self) -> ConePresentation:
        p = self.field
        n = self.total_dim
        rows = []
        for (a, b), m in self.arrows.items():
            if self.dims[b] == 0:
                continue
            c = la.zeros(self.dims[b], n)
            c[:, self.block(a)] = m
            c[:, self.block(b)] = (c[:, self.block(b)] - la.identity(self.dims[b])) % p
            rows.append(c)
        system = np.vstack(rows) if rows else la.zeros(0, n)
        w = la.kernel_basis(system, p)
        maps = {v: w[self.block(v), :] for v in self.nodes}
        return ConePresentation("limit", w.shape[1], maps, w)

    def colimit(self) -> ConePresentation:
        """Quotient of the direct sum by ``j_a(e) - j_b(phi e)`` over arrows."""
        with self._lock:
            if self._colim is None:
                self._colim = self._compute_colimit()
            return self._colim

    def _compute_colimit(self) -> ConePresentation:
        p = self.field
        n = self.total_dim
        gens = []
        for (a, b), m in self.arrows.items():
            da = self.dims[a]
            if da == 0:
                continue
            g = la.zeros(n, da)
            g[self.block(a), :] = la.identity(da)
            g[self.block(b), :] = (-m) % p
            gens.append(g)
        rel = np.hstack(gens) if gens else la.zeros(n, 0)
        q = la.quotient_map(n, rel, p)
        maps = {v: q[:, self.block(v)] for v in self.nodes}
        return ConePresentation("colimit", q.shape[0], maps, q)

    def lim_to_colim(self, node=None) -> np.ndarray:
        """Matrix of the canonical map ``i_p . pi_p`` at ``node``."""
        self._require_connected()
        v = self.nodes[0] if node is None else node
        lim, colim = self.limit(), self.colimit()
        return la.matmul(colim.maps[v], lim.maps[v], self.field)

    def lim_to_colim_rank(self, check_all: bool = False) -> int:
        self._require_connected()
        lim, colim = self.limit(), self.colimit()
        if lim.dim == 0 or colim.dim == 0:
            return 0
        r = la.rank(self.lim_to_colim(), self.field)
        if check_all:
            base = self.lim_to_colim()
            for v in self.nodes[1:]:
                if not la.equal(self.lim_to_colim(v), base, self.field):
                    raise AssertionError(f"limit-to-colimit map depends on the base point {v}")
        return r

    def __getstate__(self):
        st = self.__dict__.copy()
        del st["_lock"]
        return st

    def __setstate__(self, st):
        self.__dict__.update(st)
        self._lock = threading.Lock()


class ExplicitModule(PosetModule):
    """A persistence module over a finite interval of Z^2.

    ``maps`` holds one matrix per cover relation ``p -> p + (1,0)`` or
    ``p -> p + (0,1)`` inside ``domain``; missing covers between nonzero
    spaces are rejected.  Construction checks shapes and commutativity of
    every unit square.
    """

    def __init__(
        self,
        domain: GridInterval,
        dims: Mapping,
        maps: Mapping,
        field: int = 2,
        check: bool = True,
    ):
        self.domain = domain
        dims = {GridPoint(*p): d for p, d in dims.items()}
        for p, d in dims.items():
            if p not in domain and d:
                raise ValidationError(f"dimension given at {p}, outside the domain")
        norm = {}
        for (a, b), m in maps.items():
            a, b = GridPoint(*a), GridPoint(*b)
            if a not in domain or b not in domain or b not in domain.up_covers(a):
                raise ValidationError(f"map key {a}->{b} is not a cover relation of the domain")
            norm[(a, b)] = m
        arrows = {}
        for a, b in domain.cover_relations():
            if (a, b) in norm:
                arrows[(a, b)] = norm[(a, b)]
            elif dims.get(a, 0) and dims.get(b, 0):
                raise ValidationError(f"missing map for cover {a}->{b}")
            else:
                arrows[(a, b)] = la.zeros(dims.get(b, 0), dims.get(a, 0))
        super().__init__(domain.sorted_points(), dims, arrows, field)
        self._smap_cache: dict = {}
        if check:
            bad = self.first_noncommuting_square()
            if bad is not None:
                raise ValidationError(f"square at {bad} does not commute")

    def first_noncommuting_square(self) -> GridPoint | None:
        for p, r, u, ru in self.domain.unit_squares():
            a = la.matmul(self.arrows[(r, ru)], self.arrows[(p, r)], self.field)
            b = la.matmul(self.arrows[(u, ru)], self.arrows[(p, u)], self.field)
            if not la.equal(a, b, self.field):
                return p
        return None

    def structure_map(self, p, q) -> np.ndarray:
        """phi(p, q), composed along the x-then-y staircase from p to q."""
        p, q = GridPoint(*p), GridPoint(*q)
        if p not in self.domain or q not in self.domain:
            raise ValidationError(f"{p} or {q} outside the module domain")
        if not leq(p, q):
            raise ValidationError(f"structure map needs p <= q, got {p}, {q}")
        key = (p, q)
        m = self._smap_cache.get(key)
        if m is not None:
            return m
        if p == q:
            m = la.identity(self.dims[p])
        else:
            # points between p and q lie in the domain by convexity
            nxt = GridPoint(p.x + 1, p.y) if p.x < q.x else GridPoint(p.x, p.y + 1)
            m = la.matmul(self.structure_map(nxt, q), self.arrows[(p, nxt)], self.field)
        self._smap_cache[key] = m
        return m

    @property
    def support(self) -> list[GridPoint]:
        return [p for p in self.nodes if self.dims[p]]

    def restrict(self, I: GridInterval) -> ExplicitModule:
        if not I.issubset(self.domain):
            raise ValidationError(f"{I.to_spec()} is not contained in the module domain")
        dims = {p: self.dims[p] for p in I}
        maps = {(a, b): self.arrows[(a, b)] for a, b in I.cover_relations()}
        out = ExplicitModule(I, dims, maps, self.field, check=False)
        return out

    def restrict_to_points(self, points: Iterable) -> PosetModule:
        """Restriction to a subset with the induced order (Hasse edges only)."""
        pts = sorted({GridPoint(*p) for p in points})
        for p in pts:
            if p not in self.domain:
                raise ValidationError(f"{p} outside the module domain")
        arrows = {}
        for a in pts:
            for b in pts:
                if a != b and leq(a, b):
                    if any(c != a and c != b and leq(a, c) and leq(c, b) for c in pts):
                        continue
                    arrows[(a, b)] = self.structure_map(a, b)
        return PosetModule(pts, {p: self.dims[p] for p in pts}, arrows, self.field)

    def dims_array(self) -> dict[GridPoint, int]:
        return dict(self.dims)


# constructors -------------------------------------------------------------


def from_bifiltration(F, degree: int = 0, P: GridInterval | None = None) -> ExplicitModule:
    """Homology module of a bifiltration restricted to ``P`` (default: its grid)."""
    P = F.domain if P is None else P
    if not P.issubset(F.domain):
        raise ValidationError("requested domain is not inside the bifiltration grid")
    dims = {p: F.homology_basis(p, degree).dim for p in P}
    maps = {(a, b): F.induced_map(a, b, degree) for a, b in P.cover_relations()}
    return ExplicitModule(P, dims, maps, F.field)


def interval_module(I: GridInterval, P: GridInterval | None = None, field: int = 2) -> ExplicitModule:
    P = I if P is None else P
    if not I.issubset(P):
        raise ValidationError(f"{I.to_spec()} is not inside {P.to_spec()}")
    dims = {p: 1 for p in I}
    maps = {(a, b): [[1]] for a, b in I.cover_relations()}
    return ExplicitModule(P, dims, maps, field, check=False)


def direct_sum(modules: Sequence[ExplicitModule]) -> ExplicitModule:
    if not modules:
        raise ValueError("direct sum of an empty list")
    P = modules[0].domain
    fp = modules[0].field
    for m in modules[1:]:
        if m.domain != P:
            raise ValidationError("direct summands must share the domain")
        if m.field != fp:
            raise FieldMismatchError("direct summands over different fields")
    dims = {p: sum(m.dims[p] for m in modules) for p in P}
    maps = {c: la.block_diag([m.arrows[c] for m in modules]) for c in P.cover_relations()}
    return ExplicitModule(P, dims, maps, fp, check=False)


def change_of_basis(M: ExplicitModule, bases: Mapping) -> ExplicitModule:
    """Isomorphic module with ``M'_p = g_p M_p`` for invertible ``g_p``."""
    fp = M.field
    inv = {p: la.inverse(bases[p], fp) if M.dims[p] else la.zeros(0, 0) for p in M.nodes}
    maps = {}
    for (a, b), m in M.arrows.items():
        gb = bases[b] if M.dims[b] else la.zeros(0, 0)
        maps[(a, b)] = la.matmul(la.matmul(gb, m, fp), inv[a], fp)
    return ExplicitModule(M.domain, M.dims, maps, fp, check=False)


def quotient_by_summand(M: ExplicitModule, generators: Mapping) -> ExplicitModule:
    """Pointwise quotient ``M / N`` where ``N_p`` is spanned by ``generators[p]``.

    The generators must span a submodule; this is checked on every cover.
    """
    fp = M.field
    gens = {}
    for p in M.nodes:
        g = generators.get(p)
        if g is None:
            gens[p] = la.zeros(M.dims[p], 0)
        else:
            g = la.as_matrix(g, fp)
            if g.shape[0] != M.dims[p]:
                raise ValidationError(f"generators at {p} have length {g.shape[0]}, expected {M.dims[p]}")
            gens[p] = g
    for (a, b), m in M.arrows.items():
        img = la.matmul(m, gens[a], fp)
        if img.shape[1] and la.rank(np.hstack([gens[b], img]), fp) != la.rank(gens[b], fp):
            raise ValidationError(f"generators are not closed under the map {a}->{b}")
    quo = {p: la.quotient_map(M.dims[p], gens[p], fp) for p in M.nodes}
    lift = {p: la.right_inverse(quo[p], fp) for p in M.nodes}
    dims = {p: quo[p].shape[0] for p in M.nodes}
    maps = {(a, b): la.matmul(la.matmul(quo[b], m, fp), lift[a], fp) for (a, b), m in M.arrows.items()}
    return ExplicitModule(M.domain, dims, maps, fp, check=True)


# functional API -----------------------------------------------------------


def limit(M: PosetModule) -> ConePresentation:
    return M.limit()


def colimit(M: PosetModule) -> ConePresentation:
    return M.colimit()


def lim_to_colim_rank(M: PosetModule, check_all: bool = False) -> int:
    return M.lim_to_colim_rank(check_all=check_all)


def _vec(v, n: int, fp: int) -> np.ndarray:
    a = np.mod(np.asarray(v, dtype=np.int64).reshape(-1), fp)
    if a.size != n:
        raise ValidationError(f"vector of length {a.size}, expected {n}")
    return a


def section_extension(M: ExplicitModule, section: Mapping) -> Section:
    """Extend a section on a lower fence L to a global section.

    ``w_q = phi(p, q) v_p`` for any ``p`` in L below ``q``; every choice of
    ``p`` is checked to agree.  Raises ``ValidationError`` when the input is
    not a section of the restriction to L or when some ``q`` has no point of L
    below it.
    """
    fp = M.field
    L = {GridPoint(*p): _vec(v, M.dims[GridPoint(*p)], fp) for p, v in section.items()}
    for a in L:
        for b in L:
            if a != b and leq(a, b):
                if not np.array_equal(la.matmul(M.structure_map(a, b), L[a].reshape(-1, 1), fp)[:, 0], L[b]):
                    raise ValidationError(f"input is not a section: {a} -> {b} disagrees")
    out = {}
    for q in M.nodes:
        below = [p for p in L if leq(p, q)]
        if not below:
            raise ValidationError(f"no fence point below {q}; not a lower fence")
        vals = [la.matmul(M.structure_map(p, q), L[p].reshape(-1, 1), fp)[:, 0] for p in below]
        for v in vals[1:]:
            if not np.array_equal(v, vals[0]):
                raise ValidationError(f"extension to {q} is not well defined")
        out[q] = vals[0]
    return Section(out)


def is_section(M: ExplicitModule, components: Mapping) -> bool:
    fp = M.field
    v = {GridPoint(*p): _vec(c, M.dims[GridPoint(*p)], fp) for p, c in components.items()}
    for (a, b), m in M.arrows.items():
        if not np.array_equal(la.matmul(m, v[a].reshape(-1, 1), fp)[:, 0], v[b]):
            return False
    return True


def is_section_along_path(M: ExplicitModule, path: ZigzagPath | Sequence, vectors: Sequence) -> bool:
    """True iff consecutive path components are related by structure maps."""
    pts = path.points if isinstance(path, ZigzagPath) else ZigzagPath(tuple(path)).points
    if len(vectors) != len(pts):
        raise ValidationError(f"{len(vectors)} components for a path with {len(pts)} nodes")
    fp = M.field
    vs = [_vec(v, M.dims[p], fp) for p, v in zip(pts, vectors)]
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if leq(a, b):
            lhs, rhs = la.matmul(M.structure_map(a, b), vs[i].reshape(-1, 1), fp)[:, 0], vs[i + 1]
        else:
            lhs, rhs = la.matmul(M.structure_map(b, a), vs[i + 1].reshape(-1, 1), fp)[:, 0], vs[i]
        if not np.array_equal(lhs, rhs):
            return False
    return True
