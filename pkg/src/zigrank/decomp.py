"""Interval summands: detection, peeling, decomposability and barcode ensembles.

The main entry points are

* :func:`dim_all` -- pointwise homology dimensions by a tree traversal with
  persistence-style column reduction and snapshot/restore at branch nodes;
* :func:`is_interval_module` -- the multiplicity ``m`` if ``M = I_P^m``;
* :func:`interval_decompose` -- grow maximal intervals from points with
  positive remaining dimension, comparing generalized ranks with the number of
  already emitted intervals containing the candidate (never quotienting);
* :func:`true_interval` -- the literal version that quotients each detected
  summand away;
* :func:`test_interval` -- multiplicity of ``I_I`` as a direct summand, via the
  rank of the composition pairing ``Hom(M, I_I) x Hom(I_I, M) -> F``;
* :func:`is_interval_decomposable`, :func:`barcode_ensemble`.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections import Counter
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .exceptions import GuardError, ValidationError
from .filtration import Bifiltration
from .grank import RankFunction
from .grid import GridInterval, GridPoint, leq, nbd
from .module import ExplicitModule, Section, from_bifiltration, quotient_by_summand
from .zigzag import full_bar_multiplicity, zigzag_along_cap, zigzag_from_bifiltration

__all__ = [
    "DecompEntry",
    "DecompositionOutput",
    "dim_all",
    "is_interval_module",
    "interval_decompose",
    "true_interval",
    "test_interval",
    "hom_from_interval",
    "hom_to_interval",
    "is_interval_decomposable",
    "barcode_ensemble",
    "ensemble_rank",
    "full_support_sections",
    "endomorphism_basis",
    "idempotents",
    "is_indecomposable",
    "krull_schmidt",
    "summand_multiplicity_bruteforce",
]

log = logging.getLogger(__name__)

ENSEMBLE_MAX_POINTS = 9
ENSEMBLE_MAX_TOTAL_DIM = 12


# output types ---------------------------------------------------------------


@dataclass(frozen=True)
class DecompEntry:
    interval: GridInterval
    mult: int
    id: int

    def to_json(self) -> dict:
        return {"interval": self.interval.to_json(), "mult": self.mult, "id": self.id}


@dataclass
class DecompositionOutput:
    """Emitted ``(interval, multiplicity, id)`` triples plus bookkeeping.

    ``decomposable`` is ``None`` when decomposability was not tested.
    """

    entries: list[DecompEntry]
    decomposable: bool | None = None
    failing_interval: GridInterval | None = None
    trace: list[str] = field(default_factory=list)

    def barcode(self) -> Counter:
        """Total multiplicity per interval."""
        c: Counter = Counter()
        for e in self.entries:
            c[e.interval] += e.mult
        return c

    def key(self) -> tuple:
        return tuple(sorted((I.columns, m) for I, m in self.barcode().items()))

    def point_totals(self) -> Counter:
        c: Counter = Counter()
        for e in self.entries:
            for p in e.interval:
                c[p] += e.mult
        return c

    def rank(self, J: GridInterval) -> int:
        """Generalized rank of the interval-decomposable module built from the entries."""
        return sum(e.mult for e in self.entries if J.issubset(e.interval))

    def to_json(self) -> dict:
        out = {
            "entries": [e.to_json() for e in self.entries],
            "decomposable": "unknown" if self.decomposable is None else self.decomposable,
        }
        if self.failing_interval is not None:
            out["failing_interval"] = self.failing_interval.to_json()
        return out


# input normalization --------------------------------------------------------


def _module_and_dims(X, P: GridInterval | None, degree: int) -> tuple[ExplicitModule, dict]:
    if isinstance(X, Bifiltration):
        P = X.domain if P is None else P
        M = from_bifiltration(X, degree, P)
        return M, dim_all(X, P, degree)
    if not isinstance(X, ExplicitModule):
        raise TypeError(f"expected ExplicitModule or Bifiltration, got {type(X).__name__}")
    if P is not None and P != X.domain:
        X = X.restrict(P)
    return X, dict(X.dims)


# Dim: tree traversal with snapshots -----------------------------------------


class _Reduction:
    """Column reduction of a growing filtration; columns are never mutated
    after insertion, so a snapshot only copies the index structures."""

    __slots__ = ("fp", "cols", "sdim", "pos_of", "pivot_of", "free")

    def __init__(self, fp: int):
        self.fp = fp
        self.cols: list[dict[int, int]] = []
        self.sdim: list[int] = []
        self.pos_of: dict[int, int] = {}
        self.pivot_of: dict[int, int] = {}
        self.free: Counter = Counter()  # unpaired cycles per degree

    def snapshot(self) -> _Reduction:
        other = _Reduction(self.fp)
        other.cols = list(self.cols)
        other.sdim = list(self.sdim)
        other.pos_of = dict(self.pos_of)
        other.pivot_of = dict(self.pivot_of)
        other.free = Counter(self.free)
        return other

    def add(self, sid: int, dim: int, facets: list[int]):
        fp = self.fp
        col: dict[int, int] = {}
        for i, f in enumerate(facets):
            col[self.pos_of[f]] = (-1) ** i % fp
        while col:
            low = max(col)
            j = self.pivot_of.get(low)
            if j is None:
                break
            other = self.cols[j]
            factor = col[low] * pow(other[low], -1, fp) % fp
            for r, v in other.items():
                nv = (col.get(r, 0) - factor * v) % fp
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        pos = len(self.cols)
        self.cols.append(col)
        self.sdim.append(dim)
        self.pos_of[sid] = pos
        if col:
            self.pivot_of[max(col)] = pos
            self.free[dim - 1] -= 1
        else:
            self.free[dim] += 1

    def betti(self, k: int) -> int:
        return self.free[k]


def dim_all(F: Bifiltration, P: GridInterval | None = None, degree: int = 0) -> dict[GridPoint, int]:
    """``dim H_degree(F(p))`` for every ``p`` in P.

    Minimal points are processed in ascending x.  From each minimal point a
    BFS tree of unit up-steps covers the not-yet-visited part of its up-set;
    the tree is walked depth first, extending one reduced boundary matrix and
    handing a snapshot of it to every child but the last.
    """
    P = F.domain if P is None else P
    if not P.issubset(F.domain):
        raise ValidationError("requested domain is not inside the bifiltration grid")
    cx = F.complex
    facet_ids = {s.id: [cx.by_vertices[f].id for f in cx.facets(s)] for s in cx.simplices}
    order = F.order
    done: set[GridPoint] = set()
    dims: dict[GridPoint, int] = {}
    for root in P.min_elements():
        region = {q for q in P if leq(root, q) and q not in done}
        children: dict[GridPoint, list[GridPoint]] = {q: [] for q in region}
        seen = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for q in frontier:
                for r in P.up_covers(q):
                    if r in region and r not in seen:
                        seen.add(r)
                        children[q].append(r)
                        nxt.append(r)
            frontier = nxt
        stack: list[tuple[GridPoint, GridPoint | None, _Reduction]] = [(root, None, _Reduction(F.field))]
        while stack:
            q, parent, red = stack.pop()
            for s in order:
                g = F.grades[s.id]
                if leq(g, q) and (parent is None or not leq(g, parent)):
                    red.add(s.id, s.dim, facet_ids[s.id])
            dims[q] = red.betti(degree)
            kids = children[q]
            for i, c in enumerate(kids):
                stack.append((c, q, red if i == len(kids) - 1 else red.snapshot()))
        done |= region
    return dims


# IsInterval -----------------------------------------------------------------


def is_interval_module(X, P: GridInterval | None = None, degree: int = 0) -> int:
    """``m`` if the module is ``I_P^m`` (``m`` may be 0), otherwise 0."""
    if isinstance(X, Bifiltration):
        P = X.domain if P is None else P
        m = full_bar_multiplicity(zigzag_from_bifiltration(X, P, degree))
        dims = dim_all(X, P, degree)
    else:
        M, dims = _module_and_dims(X, P, degree)
        m = full_bar_multiplicity(zigzag_along_cap(M))
    if all(d == m for d in dims.values()):
        return m
    return 0


# Interval -------------------------------------------------------------------


class _Explorer:
    """Choice policy for start points and neighbour candidates."""

    def __init__(self, order: str = "lex", seed: int | None = None):
        if order not in ("lex", "random"):
            raise ValueError(f"order must be 'lex' or 'random', got {order!r}")
        self.rng = random.Random(seed) if order == "random" else None

    def start(self, candidates: list[GridPoint]) -> GridPoint:
        if self.rng is None:
            return min(candidates)
        return self.rng.choice(sorted(candidates))

    def neighbours(self, candidates: list[GridPoint]) -> list[GridPoint]:
        cands = sorted(candidates)
        if self.rng is not None:
            self.rng.shuffle(cands)
        return cands


def interval_decompose(
    X,
    P: GridInterval | None = None,
    order: str = "lex",
    seed: int | None = None,
    degree: int = 0,
    rank: Callable[[GridInterval], int] | None = None,
) -> DecompositionOutput:
    """Peeling simulation without quotients.

    A candidate ``q`` next to the current interval ``I`` is accepted when
    ``rk(I + q)`` exceeds the total multiplicity of emitted intervals that
    contain ``I + q``.  The emitted multiplicity is ``rk(I)`` minus the total
    multiplicity of emitted intervals containing ``I``.  Rejected candidates
    are retried after ``I`` grows.
    """
    M, dims = _module_and_dims(X, P, degree)
    P = M.domain
    rk = rank or RankFunction(M, "zigzag")
    explore = _Explorer(order, seed)
    d = dict(dims)
    lists: dict[GridPoint, set[int]] = {p: set() for p in P}
    mult: dict[int, int] = {}
    entries: list[DecompEntry] = []
    trace: list[str] = []

    def count(ids: Iterable[int]) -> int:
        return sum(mult[i] for i in ids)

    while True:
        live = [p for p in P if d[p] > 0]
        if not live:
            break
        p = explore.start(live)
        cur = {p}
        lst = set(lists[p])
        I = GridInterval.singleton(p)
        tried: set[GridPoint] = set()
        while True:
            cands = [q for q in nbd(I, P) if q not in tried]
            if not cands:
                break
            grown = False
            for q in explore.neighbours(cands):
                tried.add(q)
                templist = lst & lists[q]
                c = count(templist)
                J = GridInterval.from_points(cur | {q})
                r = rk(J)
                ok = r > c
                trace.append(f"try q=({q.x},{q.y}) rk={r} c={c} -> {'accept' if ok else 'reject'}")
                if ok:
                    cur.add(q)
                    I = J
                    lst = templist
                    tried = set()
                    grown = True
                    break
            if not grown:
                break
        mu = rk(I) - count(lst)
        if mu < 1:
            raise AssertionError(f"nonpositive multiplicity {mu} for {I.to_spec()}")
        ident = len(entries)
        mult[ident] = mu
        entries.append(DecompEntry(I, mu, ident))
        for q in I:
            d[q] -= mu
            lists[q].add(ident)
        if any(v < 0 for v in d.values()):
            log.warning("remaining dimension went negative after %s", I.to_spec())
    return DecompositionOutput(entries, None, None, trace)


# TestInterval ---------------------------------------------------------------


def hom_from_interval(M: ExplicitModule, I: GridInterval) -> np.ndarray:
    """Basis of ``Hom(I_I, M)``: sections of ``M|_I`` killed on leaving I upward.

    Rows are indexed by the concatenated ``M_p`` for ``p`` in ``sorted(I)``.
    """
    fp = M.field
    pts = I.sorted_points()
    off, n = {}, 0
    for p in pts:
        off[p] = n
        n += M.dims[p]
    rows = []
    for (a, b), m in M.arrows.items():
        if a not in I or M.dims[b] == 0 or M.dims[a] == 0 and b not in I:
            continue
        c = la.zeros(M.dims[b], n)
        c[:, off[a] : off[a] + M.dims[a]] = m
        if b in I:
            c[:, off[b] : off[b] + M.dims[b]] = (c[:, off[b] : off[b] + M.dims[b]] - la.identity(M.dims[b])) % fp
        rows.append(c)
    system = np.vstack(rows) if rows else la.zeros(0, n)
    return la.kernel_basis(system, fp)


def hom_to_interval(M: ExplicitModule, I: GridInterval) -> np.ndarray:
    """Basis of ``Hom(M, I_I)`` as columns of stacked transposed row vectors."""
    fp = M.field
    pts = I.sorted_points()
    off, n = {}, 0
    for p in pts:
        off[p] = n
        n += M.dims[p]
    rows = []
    for (a, b), m in M.arrows.items():
        if b not in I or M.dims[a] == 0 or M.dims[b] == 0 and a not in I:
            continue
        # g_b . phi = g_a (a in I) or 0 (a outside I)
        c = la.zeros(M.dims[a], n)
        c[:, off[b] : off[b] + M.dims[b]] = m.T
        if a in I:
            c[:, off[a] : off[a] + M.dims[a]] = (c[:, off[a] : off[a] + M.dims[a]] - la.identity(M.dims[a])) % fp
        rows.append(c)
    system = np.vstack(rows) if rows else la.zeros(0, n)
    return la.kernel_basis(system, fp)


def _pairing(M: ExplicitModule, I: GridInterval) -> tuple[np.ndarray, np.ndarray, np.ndarray, dict]:
    fp = M.field
    f = hom_from_interval(M, I)
    g = hom_to_interval(M, I)
    pts = I.sorted_points()
    off, n = {}, 0
    for p in pts:
        off[p] = n
        n += M.dims[p]
    pair = None
    for p in pts:
        sl = slice(off[p], off[p] + M.dims[p])
        b = la.matmul(g[sl].T, f[sl], fp)
        if pair is None:
            pair = b
        elif not la.equal(pair, b, fp):
            raise AssertionError(f"composition pairing differs at {p}")
    return pair, f, g, off


def test_interval(M: ExplicitModule, I: GridInterval) -> int:
    """Multiplicity of ``I_I`` as a direct summand of M."""
    if not I.issubset(M.domain):
        raise ValidationError(f"{I.to_spec()} is not contained in the module domain")
    if any(M.dims[p] == 0 for p in I):
        return 0
    pair, _, _, _ = _pairing(M, I)
    return la.rank(pair, M.field)


test_interval.__test__ = False  # not a pytest test


def _split_off(M: ExplicitModule, I: GridInterval, mu: int) -> ExplicitModule:
    """Quotient of M by a summand isomorphic to ``I_I^mu``."""
    pair, f, _, off = _pairing(M, I)
    _, piv = la.rref(pair, M.field)
    if len(piv) != mu:
        raise ValidationError(f"cannot identify a summand I_I^{mu} on {I.to_spec()}; pairing rank is {len(piv)}")
    chosen = f[:, piv]
    gens = {p: chosen[off[p] : off[p] + M.dims[p]] for p in I}
    return quotient_by_summand(M, gens)


def true_interval(
    X,
    P: GridInterval | None = None,
    order: str = "lex",
    seed: int | None = None,
    degree: int = 0,
) -> DecompositionOutput:
    """Literal peeling for interval-decomposable input.

    Repeatedly grow a maximal interval with positive generalized rank on the
    current module, split off ``I_I^mu`` and quotient it away.
    """
    M, _ = _module_and_dims(X, P, degree)
    P = M.domain
    explore = _Explorer(order, seed)
    entries: list[DecompEntry] = []
    while True:
        live = [p for p in P if M.dims[p] > 0]
        if not live:
            break
        rk = RankFunction(M, "zigzag")
        p = explore.start(live)
        I = GridInterval.singleton(p)
        while True:
            for q in explore.neighbours(nbd(I, P)):
                J = GridInterval.from_points(I.points | {q})
                if rk(J) > 0:
                    I = J
                    break
            else:
                break
        mu = rk(I)
        entries.append(DecompEntry(I, mu, len(entries)))
        M = _split_off(M, I, mu)
    return DecompositionOutput(entries)


# IsIntervalDecomp -----------------------------------------------------------


def is_interval_decomposable(
    X,
    P: GridInterval | None = None,
    order: str = "lex",
    seed: int | None = None,
    degree: int = 0,
) -> DecompositionOutput:
    """Run the peeling simulation and confirm each emitted summand.

    The result's ``decomposable`` flag is False at the first interval whose
    summand multiplicity differs from the emitted one; that interval is
    recorded in ``failing_interval``.
    """
    M, _ = _module_and_dims(X, P, degree)
    out = interval_decompose(M, order=order, seed=seed)
    for e in out.entries:
        mu = test_interval(M, e.interval)
        if mu != e.mult:
            out.decomposable = False
            out.failing_interval = e.interval
            return out
    out.decomposable = True
    return out


# barcode ensemble -----------------------------------------------------------


def barcode_ensemble(
    X,
    P: GridInterval | None = None,
    degree: int = 0,
    max_points: int = ENSEMBLE_MAX_POINTS,
    max_total_dim: int = ENSEMBLE_MAX_TOTAL_DIM,
) -> list[DecompositionOutput]:
    """Every distinct output of the peeling simulation over all exploration orders.

    The state after each emitted interval is the multiset of emitted
    ``(interval, multiplicity)`` pairs; from a start point every maximal
    growth sequence is followed.  Members are deduplicated by multiset.
    """
    M, dims = _module_and_dims(X, P, degree)
    P = M.domain
    if len(P) > max_points:
        raise GuardError(f"|P| = {len(P)} exceeds the ensemble guard {max_points}")
    total = sum(dims.values())
    if total > max_total_dim:
        raise GuardError(f"total dimension {total} exceeds the ensemble guard {max_total_dim}")
    rk = RankFunction(M, "zigzag")

    def covered(outputs, S) -> int:
        return sum(mu for J, mu in outputs if S.issubset(J))

    def terminals(outputs, p) -> set[GridInterval]:
        start = GridInterval.singleton(p)
        seen = {start}
        todo = [start]
        ends = set()
        while todo:
            I = todo.pop()
            grown = False
            for q in nbd(I, P):
                J = GridInterval.from_points(I.points | {q})
                if rk(J) > covered(outputs, J):
                    grown = True
                    if J not in seen:
                        seen.add(J)
                        todo.append(J)
            if not grown:
                ends.add(I)
        return ends

    results: dict[tuple, DecompositionOutput] = {}
    visited: set[tuple] = set()

    def canon(outputs) -> tuple:
        return tuple(sorted((J.columns, mu) for J, mu in outputs))

    def recurse(outputs: tuple):
        key = canon(outputs)
        if key in visited:
            return
        visited.add(key)
        left = {p: dims[p] - sum(mu for J, mu in outputs if p in J) for p in P}
        live = sorted(p for p in P if left[p] > 0)
        if not live:
            entries = [DecompEntry(J, mu, i) for i, (J, mu) in enumerate(outputs)]
            member = DecompositionOutput(entries)
            results.setdefault(member.key(), member)
            return
        for p in live:
            for I in sorted(terminals(outputs, p)):
                mu = rk(I) - covered(outputs, I)
                recurse(outputs + ((I, mu),))

    recurse(())
    return [results[k] for k in sorted(results)]


def ensemble_rank(members: list[DecompositionOutput], J: GridInterval) -> int:
    return max((m.rank(J) for m in members), default=0)


# sections -------------------------------------------------------------------


def full_support_sections(M: ExplicitModule, I: GridInterval) -> list[Section]:
    """``rk(M)(I)`` sections of ``M|_I`` that are nonzero at every point of I.

    Limit vectors with independent images under the limit-to-colimit map are
    chosen; a section vanishing anywhere maps to zero, so each is nowhere zero.
    """
    R = M.restrict(I)
    lim = R.limit()
    psi = R.lim_to_colim()
    if lim.dim == 0 or psi.size == 0:
        return []
    _, piv = la.rref(psi, M.field)
    out = []
    for j in piv:
        out.append(Section({p: lim.maps[p][:, j].copy() for p in I}))
    return out


# brute-force endomorphism oracle -------------------------------------------


def endomorphism_basis(M: ExplicitModule) -> list[dict[GridPoint, np.ndarray]]:
    """Basis of ``End(M)``: families ``f_p`` commuting with every cover map."""
    fp = M.field
    pts = [p for p in M.nodes if M.dims[p]]
    off, n = {}, 0
    for p in pts:
        off[p] = n
        n += M.dims[p] ** 2
    rows = []
    for (a, b), m in M.arrows.items():
        da, db = M.dims[a], M.dims[b]
        if da == 0 or db == 0:
            continue
        # phi f_a - f_b phi = 0, row-major vec: (phi kron I) vec f_a - (I kron phi^T) vec f_b
        c = la.zeros(db * da, n)
        c[:, off[a] : off[a] + da * da] = np.kron(m, la.identity(da))
        c[:, off[b] : off[b] + db * db] = (c[:, off[b] : off[b] + db * db] - np.kron(la.identity(db), m.T)) % fp
        rows.append(c)
    system = np.vstack(rows) if rows else la.zeros(0, n)
    ker = la.kernel_basis(system, fp)
    basis = []
    for j in range(ker.shape[1]):
        basis.append({p: ker[off[p] : off[p] + M.dims[p] ** 2, j].reshape(M.dims[p], M.dims[p]) for p in pts})
    return basis


def idempotents(M: ExplicitModule, max_end_dim: int = 16, stop_after_nontrivial: bool = False) -> list[dict]:
    """All idempotents of ``End(M)`` by exhaustive enumeration."""
    fp = M.field
    basis = endomorphism_basis(M)
    if len(basis) > max_end_dim:
        raise GuardError(f"dim End(M) = {len(basis)} exceeds the exhaustive guard {max_end_dim}")
    pts = list(basis[0]) if basis else []
    stacked = {p: np.stack([b[p] for b in basis]) for p in pts}
    out = []
    for coeffs in itertools.product(range(fp), repeat=len(basis)):
        c = np.array(coeffs, dtype=np.int64)
        e = {p: np.tensordot(c, stacked[p], axes=1) % fp for p in pts}
        if all(la.equal(la.matmul(e[p], e[p], fp), e[p], fp) for p in pts):
            out.append(e)
            if stop_after_nontrivial and _nontrivial(e, M):
                return out
    return out


def _nontrivial(e: Mapping, M: ExplicitModule) -> bool:
    zero = all(not e[p].any() for p in e)
    ident = all(la.equal(e[p], la.identity(M.dims[p]), M.field) for p in e)
    return not zero and not ident


def is_indecomposable(M: ExplicitModule, max_end_dim: int = 16) -> bool:
    """Nonzero and only the trivial idempotents 0 and 1 in ``End(M)``."""
    if M.total_dim == 0:
        return False
    return not any(_nontrivial(e, M) for e in idempotents(M, max_end_dim))


def _image_module(M: ExplicitModule, e: Mapping) -> ExplicitModule:
    fp = M.field
    bases = {p: la.image_basis(e[p], fp) if M.dims[p] else la.zeros(0, 0) for p in M.nodes}
    dims = {p: bases[p].shape[1] for p in M.nodes}
    maps = {}
    for (a, b), m in M.arrows.items():
        if dims[a] == 0 or dims[b] == 0:
            maps[(a, b)] = la.zeros(dims[b], dims[a])
            continue
        x = la.solve(bases[b], la.matmul(m, bases[a], fp), fp)
        if x is None:
            raise AssertionError("image of an idempotent is not a submodule")
        maps[(a, b)] = x
    return ExplicitModule(M.domain, dims, maps, fp, check=False)


def krull_schmidt(M: ExplicitModule, max_end_dim: int = 16) -> list[ExplicitModule]:
    """Indecomposable summands by recursive idempotent splitting (tiny inputs)."""
    if M.total_dim == 0:
        return []
    found = [e for e in idempotents(M, max_end_dim, stop_after_nontrivial=True) if _nontrivial(e, M)]
    if not found:
        return [M]
    e = found[0]
    comp = {p: (la.identity(M.dims[p]) - e[p]) % M.field for p in e}
    full_e = {p: e.get(p, la.zeros(0, 0)) for p in M.nodes}
    full_c = {p: comp.get(p, la.zeros(0, 0)) for p in M.nodes}
    return krull_schmidt(_image_module(M, full_e), max_end_dim) + krull_schmidt(_image_module(M, full_c), max_end_dim)


def _is_interval_module_on(N: ExplicitModule, I: GridInterval) -> bool:
    if any(N.dims[p] != (1 if p in I else 0) for p in N.nodes):
        return False
    return all(N.arrows[(a, b)].any() for a, b in I.cover_relations())


def summand_multiplicity_bruteforce(M: ExplicitModule, I: GridInterval, max_end_dim: int = 16) -> int:
    """Number of indecomposable summands isomorphic to ``I_I`` (oracle)."""
    return sum(1 for N in krull_schmidt(M, max_end_dim) if _is_interval_module_on(N, I))
