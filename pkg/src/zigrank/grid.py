"""Combinatorics of finite intervals in the integer grid Z^2.

Intervals are stored column by column as ``(x, y_low, y_high)`` triples.  A
finite subset of Z^2 is an interval (nonempty, convex, connected) exactly when

* its x values are consecutive and every column is a contiguous y range,
* the lower and the upper y bounds are both nonincreasing in x, and
* ``low[x] <= high[x + 1]`` for consecutive columns (connectivity).

This is the staircase description used throughout the package; ``is_interval``
implements the defining conditions directly and serves as an independent check.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from .exceptions import GuardError, ParseError, ValidationError

__all__ = [
    "GridPoint",
    "GridInterval",
    "ZigzagPath",
    "is_interval",
    "leq",
    "join",
    "meet",
    "min_elements",
    "max_elements",
    "min_zz",
    "max_zz",
    "boundary_cap",
    "faithful_completion",
    "nbd",
    "interval_closure",
    "enumerate_intervals",
    "parse_interval",
]

DEFAULT_ENUMERATION_GUARD = 25


class GridPoint(NamedTuple):
    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def _pt(p) -> GridPoint:
    if isinstance(p, GridPoint):
        return p
    x, y = p
    return GridPoint(int(x), int(y))


def leq(p, q) -> bool:
    """Componentwise order on Z^2."""
    return p[0] <= q[0] and p[1] <= q[1]


def comparable(p, q) -> bool:
    return leq(p, q) or leq(q, p)


def join(p, q) -> GridPoint:
    return GridPoint(max(p[0], q[0]), max(p[1], q[1]))


def meet(p, q) -> GridPoint:
    return GridPoint(min(p[0], q[0]), min(p[1], q[1]))


def is_interval(points: Iterable) -> bool:
    """Check nonemptiness, convexity and connectivity of a finite point set.

    Brute force over pairs; intended for small sets and as an oracle for the
    column representation.
    """
    pts = {_pt(p) for p in points}
    if not pts:
        return False
    for p in pts:
        for q in pts:
            if p != q and leq(p, q):
                for x in range(p.x, q.x + 1):
                    for y in range(p.y, q.y + 1):
                        if (x, y) not in pts:
                            return False
    start = next(iter(pts))
    seen = {start}
    todo = deque([start])
    while todo:
        p = todo.popleft()
        for q in pts:
            if q not in seen and comparable(p, q):
                seen.add(q)
                todo.append(q)
    return len(seen) == len(pts)


class GridInterval:
    """A finite interval of Z^2 in staircase column form.

    Parameters
    ----------
    columns : sequence of (x, y_low, y_high)
        One triple per consecutive x value, in ascending x.

    Instances are immutable; equality and hashing use the column sequence.
    """

    __slots__ = ("_x0", "_lows", "_highs", "_points", "_hash")

    def __init__(self, columns: Iterable[Sequence[int]]):
        cols = [tuple(int(v) for v in c) for c in columns]
        if not cols:
            raise ValidationError("an interval must be nonempty")
        x0 = cols[0][0]
        lows, highs = [], []
        for i, c in enumerate(cols):
            if len(c) != 3:
                raise ValidationError(f"column {c!r} is not an (x, y_low, y_high) triple")
            x, lo, hi = c
            if x != x0 + i:
                raise ValidationError(f"column x values must be consecutive, got {x} after {x0 + i - 1}")
            if lo > hi:
                raise ValidationError(f"column x={x} has y_low {lo} > y_high {hi}")
            if i:
                if lo > lows[-1]:
                    raise ValidationError(f"not convex: lower bound rises at x={x}")
                if hi > highs[-1]:
                    raise ValidationError(f"not convex: upper bound rises at x={x}")
                if lows[-1] > hi:
                    raise ValidationError(f"not connected between x={x - 1} and x={x}")
            lows.append(lo)
            highs.append(hi)
        self._x0 = x0
        self._lows = tuple(lows)
        self._highs = tuple(highs)
        self._points = None
        self._hash = hash((x0, self._lows, self._highs))

    # constructors ---------------------------------------------------------

    @classmethod
    def rect(cls, x0: int, y0: int, x1: int, y1: int) -> GridInterval:
        if x1 < x0 or y1 < y0:
            raise ValidationError(f"empty rectangle ({x0},{y0})..({x1},{y1})")
        return cls((x, y0, y1) for x in range(x0, x1 + 1))

    @classmethod
    def from_points(cls, points: Iterable) -> GridInterval:
        pts = sorted({_pt(p) for p in points})
        if not pts:
            raise ValidationError("an interval must be nonempty")
        by_x: dict[int, list[int]] = {}
        for p in pts:
            by_x.setdefault(p.x, []).append(p.y)
        xs = sorted(by_x)
        if xs != list(range(xs[0], xs[-1] + 1)):
            raise ValidationError("point set is not connected (missing column)")
        cols = []
        for x in xs:
            ys = by_x[x]
            if ys != list(range(ys[0], ys[-1] + 1)):
                raise ValidationError(f"point set is not convex in column x={x}")
            cols.append((x, ys[0], ys[-1]))
        return cls(cols)

    @classmethod
    def singleton(cls, p) -> GridInterval:
        p = _pt(p)
        return cls([(p.x, p.y, p.y)])

    # basic protocol -------------------------------------------------------

    @property
    def columns(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((self._x0 + i, lo, hi) for i, (lo, hi) in enumerate(zip(self._lows, self._highs)))

    @property
    def x_range(self) -> tuple[int, int]:
        return self._x0, self._x0 + len(self._lows) - 1

    def column(self, x: int) -> tuple[int, int] | None:
        i = x - self._x0
        if 0 <= i < len(self._lows):
            return self._lows[i], self._highs[i]
        return None

    @property
    def points(self) -> frozenset[GridPoint]:
        if self._points is None:
            self._points = frozenset(iter(self))
        return self._points

    def __iter__(self) -> Iterator[GridPoint]:
        for x, lo, hi in self.columns:
            for y in range(lo, hi + 1):
                yield GridPoint(x, y)

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in zip(self._lows, self._highs))

    def __contains__(self, p) -> bool:
        col = self.column(p[0])
        return col is not None and col[0] <= p[1] <= col[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridInterval):
            return NotImplemented
        return (self._x0, self._lows, self._highs) == (other._x0, other._lows, other._highs)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: GridInterval) -> bool:
        return self.columns < other.columns

    def __repr__(self) -> str:
        return f"GridInterval({self.to_spec()!r})"

    def issubset(self, other: GridInterval) -> bool:
        for x, lo, hi in self.columns:
            col = other.column(x)
            if col is None or lo < col[0] or hi > col[1]:
                return False
        return True

    def __le__(self, other: GridInterval) -> bool:
        return self.issubset(other)

    def sorted_points(self) -> list[GridPoint]:
        return sorted(self)

    # order structure ------------------------------------------------------

    def min_elements(self) -> list[GridPoint]:
        out = []
        for i, lo in enumerate(self._lows):
            if i == 0 or self._lows[i - 1] > lo:
                out.append(GridPoint(self._x0 + i, lo))
        return out

    def max_elements(self) -> list[GridPoint]:
        out = []
        n = len(self._highs)
        for i, hi in enumerate(self._highs):
            if i == n - 1 or self._highs[i + 1] < hi:
                out.append(GridPoint(self._x0 + i, hi))
        return out

    def up_covers(self, p) -> list[GridPoint]:
        """Points of the interval covering ``p`` (one step right or up)."""
        out = []
        for q in (GridPoint(p[0] + 1, p[1]), GridPoint(p[0], p[1] + 1)):
            if q in self:
                out.append(q)
        return out

    def cover_relations(self) -> list[tuple[GridPoint, GridPoint]]:
        return [(p, q) for p in self for q in self.up_covers(p)]

    def unit_squares(self) -> list[tuple[GridPoint, GridPoint, GridPoint, GridPoint]]:
        """Squares ``(p, p+e_x, p+e_y, p+e_x+e_y)`` fully inside the interval."""
        out = []
        for p in self:
            r, u, ru = GridPoint(p.x + 1, p.y), GridPoint(p.x, p.y + 1), GridPoint(p.x + 1, p.y + 1)
            if r in self and u in self and ru in self:
                out.append((p, r, u, ru))
        return out

    # serialization --------------------------------------------------------

    def to_spec(self) -> str:
        return "cols: " + "; ".join(f"{x}:{lo}-{hi}" for x, lo, hi in self.columns)

    def to_json(self) -> dict:
        return {"cols": [list(c) for c in self.columns]}

    @classmethod
    def from_json(cls, obj) -> GridInterval:
        try:
            if "cols" in obj:
                return cls(obj["cols"])
            if "rect" in obj:
                return cls.rect(*obj["rect"])
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ParseError(f"bad interval object {obj!r}") from exc
        raise ParseError(f"interval object needs 'cols' or 'rect': {obj!r}")

    def render(self, within: GridInterval | None = None) -> str:
        """ASCII picture, top row first; ``#`` marks member points."""
        frame = within or self
        x_lo, x_hi = frame.x_range
        ys = [c[1] for c in frame.columns] + [c[2] for c in frame.columns]
        rows = []
        for y in range(max(ys), min(ys) - 1, -1):
            row = []
            for x in range(x_lo, x_hi + 1):
                if (x, y) in self:
                    row.append("#")
                elif (x, y) in frame:
                    row.append(".")
                else:
                    row.append(" ")
            rows.append(f"{y:>3} " + " ".join(row))
        rows.append("    " + " ".join(str(x % 10) for x in range(x_lo, x_hi + 1)))
        return "\n".join(rows)


_COL_RE = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*-\s*(-?\d+)\s*$")


def parse_interval(text: str) -> GridInterval:
    """Parse ``cols: x0:lo-hi; x1:lo-hi; ...`` or ``rect: x0 y0 x1 y1``."""
    head, sep, body = text.strip().partition(":")
    kind = head.strip().lower()
    if not sep:
        raise ParseError(f"interval spec needs 'cols:' or 'rect:' prefix: {text!r}")
    if kind == "rect":
        parts = body.split()
        try:
            nums = [int(v) for v in parts]
        except ValueError as exc:
            raise ParseError(f"rect spec must have 4 integers: {text!r}") from exc
        if len(nums) != 4:
            raise ParseError(f"rect spec must have 4 integers: {text!r}")
        return GridInterval.rect(*nums)
    if kind == "cols":
        cols = []
        for chunk in body.split(";"):
            if not chunk.strip():
                continue
            m = _COL_RE.match(chunk)
            if m is None:
                raise ParseError(f"bad column {chunk.strip()!r} in {text!r}")
            cols.append(tuple(int(g) for g in m.groups()))
        if not cols:
            raise ParseError(f"no columns in {text!r}")
        return GridInterval(cols)
    raise ParseError(f"unknown interval kind {kind!r}")


# zigzag paths ---------------------------------------------------------------


@dataclass(frozen=True)
class ZigzagPath:
    """A sequence of grid points with consecutive points comparable.

    Repeated points are allowed; each occurrence is a separate node.
    """

    points: tuple[GridPoint, ...]

    def __post_init__(self):
        pts = tuple(_pt(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValidationError("a path needs at least one point")
        for a, b in zip(pts, pts[1:]):
            if not comparable(a, b):
                raise ValidationError(f"consecutive path points {a} and {b} are incomparable")

    @property
    def directions(self) -> tuple[str, ...]:
        out = []
        for a, b in zip(self.points, self.points[1:]):
            out.append("flat" if a == b else "up" if leq(a, b) else "down")
        return tuple(out)

    @property
    def is_faithful(self) -> bool:
        return all(abs(a.x - b.x) + abs(a.y - b.y) == 1 for a, b in zip(self.points, self.points[1:]))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[GridPoint]:
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


def min_elements(I: GridInterval) -> list[GridPoint]:
    return I.min_elements()


def max_elements(I: GridInterval) -> list[GridPoint]:
    return I.max_elements()


def min_zz(I: GridInterval) -> ZigzagPath:
    """Lower fence p0 < p0 v p1 > p1 < ... > pk."""
    mins = I.min_elements()
    pts = [mins[0]]
    for a, b in zip(mins, mins[1:]):
        pts += [join(a, b), b]
    return ZigzagPath(tuple(pts))


def max_zz(I: GridInterval) -> ZigzagPath:
    """Upper fence q0 > q0 ^ q1 < q1 > ... < ql."""
    maxs = I.max_elements()
    pts = [maxs[0]]
    for a, b in zip(maxs, maxs[1:]):
        pts += [meet(a, b), b]
    return ZigzagPath(tuple(pts))


def boundary_cap(I: GridInterval, variant: str = "upper") -> ZigzagPath:
    """Boundary cap through the lower and upper fences.

    ``upper``: pk ... p0 <= q0 ... ql.  ``lower``: p0 ... pk <= ql ... q0.
    The raw sequence is returned, so a singleton gives ``[p, p]``.
    """
    lo = list(min_zz(I).points)
    hi = list(max_zz(I).points)
    if variant == "upper":
        return ZigzagPath(tuple(lo[::-1] + hi))
    if variant == "lower":
        return ZigzagPath(tuple(lo + hi[::-1]))
    raise ValueError(f"variant must be 'upper' or 'lower', got {variant!r}")


def _monotone_steps(a: GridPoint, b: GridPoint) -> list[GridPoint]:
    # a <= b; x moves first, endpoints included
    out = [a]
    x, y = a
    while x < b.x:
        x += 1
        out.append(GridPoint(x, y))
    while y < b.y:
        y += 1
        out.append(GridPoint(x, y))
    return out


def faithful_completion(path: ZigzagPath | Sequence) -> ZigzagPath:
    """Insert unit steps between consecutive points.

    Ascending legs move in x first, descending legs are the reverse of the
    ascending completion (y first).  Repeated consecutive points collapse.
    """
    pts = list(path.points if isinstance(path, ZigzagPath) else ZigzagPath(tuple(path)).points)
    out = [pts[0]]
    for a, b in zip(pts, pts[1:]):
        if a == b:
            continue
        if leq(a, b):
            leg = _monotone_steps(a, b)
        else:
            leg = _monotone_steps(b, a)[::-1]
        out.extend(leg[1:])
    return ZigzagPath(tuple(out))


def _try_interval(points) -> GridInterval | None:
    try:
        return GridInterval.from_points(points)
    except ValidationError:
        return None


def nbd(I: GridInterval, P: GridInterval | None = None) -> list[GridPoint]:
    """Points p outside I (inside P if given) such that I + {p} is an interval.

    Every such point is a 4-neighbour of I, so only those are tested.
    Returned sorted lexicographically.
    """
    base = I.points
    cands = set()
    for p in base:
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            q = GridPoint(p.x + d[0], p.y + d[1])
            if q not in base and (P is None or q in P):
                cands.add(q)
    return sorted(q for q in cands if _try_interval(base | {q}) is not None)


def interval_closure(points: Iterable) -> GridInterval:
    """Smallest interval containing a connected point set."""
    cur = {_pt(p) for p in points}
    if not cur:
        raise ValidationError("cannot close an empty set")
    while True:
        grown = set(cur)
        for p in cur:
            for q in cur:
                if p != q and leq(p, q):
                    grown.update(GridPoint(x, y) for x in range(p.x, q.x + 1) for y in range(p.y, q.y + 1))
        if grown == cur:
            break
        cur = grown
    res = _try_interval(cur)
    if res is None:
        raise ValidationError("point set is not connected; its convex closure is not an interval")
    return res


def enumerate_intervals(P: GridInterval, max_points: int = DEFAULT_ENUMERATION_GUARD) -> list[GridInterval]:
    """All subintervals of P, larger ones first (refines reverse inclusion)."""
    if len(P) > max_points:
        raise GuardError(f"|P| = {len(P)} exceeds the enumeration guard {max_points}")
    x_lo, x_hi = P.x_range
    found: list[GridInterval] = []

    def extend(cols, x, end):
        if x > end:
            found.append(GridInterval(cols))
            return
        plo, phi = P.column(x)
        for lo in range(plo, phi + 1):
            for hi in range(lo, phi + 1):
                if cols:
                    _, plow, phigh = cols[-1]
                    if lo > plow or hi > phigh or plow > hi:
                        continue
                extend(cols + [(x, lo, hi)], x + 1, end)

    for a, b in itertools.combinations_with_replacement(range(x_lo, x_hi + 1), 2):
        extend([], a, b)
    found.sort(key=lambda J: (-len(J), J.columns))
    return found
