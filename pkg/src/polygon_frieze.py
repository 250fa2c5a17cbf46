"""Triangulated polygons and their Conway-Coxeter friezes.

Vertices of an (n+1)-gon are labelled 0..n cyclically. Frieze values are
computed two independent ways: as continuants of the quiddity sequence
(`frieze_value`, `frieze_column`) and by unimodular propagation from one
edge-to-edge column (`frieze_from_boundary_column`).
"""

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.errors import (
    ContinuantError,
    InvalidArcError,
    InvalidTriangulationError,
    NotAFriezeError,
)
from src.logging_service import get_logging_service
from src.reports import Report

Diagonal = Tuple[int, int]
Triangle = Tuple[int, int, int]


def _normalize(pair: Iterable[int]) -> Diagonal:
    a, b = pair
    return (a, b) if a < b else (b, a)


def _interleave(d: Diagonal, e: Diagonal) -> bool:
    (a, b), (c, f) = d, e
    return a < c < b < f or c < a < f < b


@dataclass(frozen=True)
class PolygonTriangulation:
    """A triangulation of the (n+1)-gon with vertices 0..n.

    Attributes:
        n_plus_1: Number of polygon vertices, at least 3
        diagonals: Frozen set of (a, b) with a + 2 <= b and (a, b) != (0, n)
    """

    n_plus_1: int
    diagonals: FrozenSet[Diagonal] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(
            self, "diagonals", frozenset(_normalize(d) for d in self.diagonals)
        )
        if self.n_plus_1 < 3:
            raise InvalidTriangulationError(
                f"a polygon needs at least 3 vertices, got {self.n_plus_1}"
            )
        n = self.n
        for a, b in self.diagonals:
            if a < 0 or b > n or b - a < 2 or (a, b) == (0, n):
                raise InvalidTriangulationError(
                    f"({a}, {b}) is not a diagonal of the {self.n_plus_1}-gon"
                )
        if len(self.diagonals) != n - 2:
            raise InvalidTriangulationError(
                f"the {self.n_plus_1}-gon needs {n - 2} diagonals, got {len(self.diagonals)}"
            )
        ordered = sorted(self.diagonals)
        for k, d in enumerate(ordered):
            for e in ordered[k + 1 :]:
                if _interleave(d, e):
                    raise InvalidTriangulationError(f"diagonals {d} and {e} cross")

    @property
    def n(self) -> int:
        return self.n_plus_1 - 1

    def is_edge_or_diagonal(self, a: int, b: int) -> bool:
        d = _normalize((a % self.n_plus_1, b % self.n_plus_1))
        return d[1] - d[0] == 1 or d == (0, self.n) or d in self.diagonals


@dataclass(frozen=True)
class Quiddity:
    """Triangle-incidence counts a_0..a_n of a triangulated polygon."""

    counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        n = len(self.counts) - 1
        if n < 2:
            raise InvalidTriangulationError("a quiddity sequence has at least 3 entries")
        if any(c < 1 for c in self.counts):
            raise InvalidTriangulationError(f"quiddity entries must be positive: {self.counts}")
        if sum(self.counts) != 3 * (n - 1):
            raise InvalidTriangulationError(
                f"quiddity {self.counts} sums to {sum(self.counts)}, expected {3 * (n - 1)}"
            )
        if self.counts.count(1) < 2:
            raise InvalidTriangulationError(f"quiddity {self.counts} has fewer than two ears")

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k % len(self.counts)]


def triangles(pt: PolygonTriangulation) -> List[Triangle]:
    """
    Enumerate the triangles of a triangulation by clipping ears.

    A vertex with no remaining diagonal is an ear tip: its two neighbours
    are joined by an edge or diagonal, which closes the triangle.

    Args:
        pt: Polygon triangulation

    Returns:
        Triangles as sorted vertex triples, in clipping order

    Raises:
        InvalidTriangulationError: If the diagonal set is not a triangulation
    """
    m = pt.n_plus_1
    nxt = [(v + 1) % m for v in range(m)]
    prv = [(v - 1) % m for v in range(m)]
    remaining = set(pt.diagonals)
    degree: Counter = Counter()
    for a, b in remaining:
        degree[a] += 1
        degree[b] += 1

    ears = [v for v in range(m) if degree[v] == 0]
    alive = [True] * m
    left = m
    result: List[Triangle] = []
    while left > 3:
        if not ears:
            raise InvalidTriangulationError("no ear left to clip")
        v = ears.pop()
        if not alive[v]:
            continue
        p, q = prv[v], nxt[v]
        chord = _normalize((p, q))
        if chord not in remaining:
            raise InvalidTriangulationError(f"ear at {v} is not closed by a diagonal")
        remaining.discard(chord)
        result.append(tuple(sorted((p, v, q))))
        alive[v] = False
        nxt[p], prv[q] = q, p
        left -= 1
        for u in (p, q):
            degree[u] -= 1
            if degree[u] == 0:
                ears.append(u)

    result.append(tuple(v for v in range(m) if alive[v]))
    return result


@lru_cache(maxsize=1024)
def quiddity_of(pt: PolygonTriangulation) -> Quiddity:
    """Count the triangles incident with each vertex of pt."""
    counts = [0] * pt.n_plus_1
    for tri in triangles(pt):
        for v in tri:
            counts[v] += 1
    return Quiddity(tuple(counts))


def continuant(values: Sequence[int]) -> int:
    """
    Evaluate K(x_1..x_m) with K() = 1, K(x) = x and
    K(x_1..x_m) = x_m K(x_1..x_{m-1}) - K(x_1..x_{m-2}).

    Args:
        values: Positive integers

    Returns:
        The continuant, a positive integer

    Raises:
        ContinuantError: If any prefix continuant is not positive
    """
    prev, cur = 0, 1
    for k, x in enumerate(values):
        prev, cur = cur, x * cur - prev
        if cur <= 0:
            raise ContinuantError(
                f"continuant of the first {k + 1} values is {cur}; not a quiddity segment"
            )
    return cur


def frieze_value(pt: PolygonTriangulation, a: int, b: int) -> int:
    """
    Frieze entry of the pair of polygon vertices (a, b).

    Args:
        pt: Polygon triangulation
        a: Vertex label
        b: Vertex label, distinct from a

    Returns:
        The continuant of the quiddity entries cyclically strictly between a and b

    Raises:
        InvalidArcError: If a == b or either label is outside 0..n
    """
    m = pt.n_plus_1
    if not (0 <= a < m and 0 <= b < m):
        raise InvalidArcError(f"({a}, {b}) are not vertices of the {m}-gon")
    if a == b:
        raise InvalidArcError(f"frieze value needs two distinct vertices, got {a} twice")
    q = quiddity_of(pt)
    return continuant([q[a + k] for k in range(1, (b - a) % m)])


def frieze_column(pt: PolygonTriangulation, a: int) -> List[int]:
    """Values frieze_value(a, a+1), ..., frieze_value(a, a+n), in one pass."""
    q = quiddity_of(pt)
    prev, cur = 0, 1
    column = [cur]
    for k in range(1, pt.n):
        prev, cur = cur, q[a + k] * cur - prev
        if cur <= 0:
            raise ContinuantError(f"non-positive frieze value at ({a}, {a + k + 1})")
        column.append(cur)
    return column


@dataclass(frozen=True)
class FriezeGrid:
    """Frieze of an (n+1)-gon stored over rows a = 0..n+1.

    Entries are keyed by polygon-diagonal coordinates (a, b), a < b, and hold
    the frieze value of the vertex pair (a mod (n+1), b mod (n+1)).
    Row a is stored for b in a+1..a+n; both band edges carry ones.
    """

    n_plus_1: int
    entries: Dict[Tuple[int, int], int]

    @property
    def width(self) -> int:
        return self.n_plus_1 - 2

    @property
    def seed_column(self) -> List[int]:
        return [self.entries[(0, b)] for b in range(1, self.n_plus_1)]

    def value(self, a: int, b: int) -> int:
        """
        Look up F(a, b) for any a < b within one period of the band.

        Raises:
            KeyError: If b - a is outside 1..n
        """
        N = self.n_plus_1
        if not 1 <= b - a <= N - 1:
            raise KeyError((a, b))
        shift = a - a % N
        return self.entries[(a - shift, b - shift)]

    def check_glide(self) -> Report:
        """Compare F(i, j) with F(j, i + n + 1) wherever both are stored."""
        report = Report("frieze glide")
        N = self.n_plus_1
        for (i, j), v in sorted(self.entries.items()):
            mirror = self.entries.get((j, i + N))
            if mirror is None:
                continue
            report.checked += 1
            if mirror != v:
                report.add("glide", (i, j), f"F({i},{j}) = {v} but F({j},{i + N}) = {mirror}")
        return report


def frieze_from_boundary_column(values: Sequence[int]) -> FriezeGrid:
    """
    Grow a frieze from one edge-to-edge column.

    The seed is row 0, m(0, k) = values[k-1] for k = 1..n. Each later row is
    propagated with m(a, b+1) = (m(a-1, b+1) m(a, b) + 1) / m(a-1, b), where
    m(a-1, a-1+n+1) = 0 closes the band.

    Args:
        values: v_1..v_n with v_1 = v_n = 1

    Returns:
        FriezeGrid over rows 0..n+1

    Raises:
        NotAFriezeError: On an inexact division, a non-positive entry, a row
            that does not end on the band edge, or a broken glide symmetry
    """
    logger = get_logging_service()
    column = list(values)
    n = len(column)
    if n < 2:
        raise NotAFriezeError(f"an edge-to-edge column has at least two entries, got {n}")
    for k, v in enumerate(column, start=1):
        if not isinstance(v, int) or v < 1:
            raise NotAFriezeError(f"seed entry {v!r} is not a positive integer", (0, k))
    if column[0] != 1 or column[-1] != 1:
        raise NotAFriezeError("an edge-to-edge column starts and ends with 1")

    N = n + 1
    entries: Dict[Tuple[int, int], int] = {(0, k): v for k, v in enumerate(column, start=1)}

    def above(a: int, b: int) -> int:
        return 0 if b - a == N else entries[(a, b)]

    for a in range(1, N + 1):
        entries[(a, a + 1)] = 1
        for b in range(a + 1, a + n):
            numerator = above(a - 1, b + 1) * entries[(a, b)] + 1
            quotient, rest = divmod(numerator, entries[(a - 1, b)])
            if rest:
                raise NotAFriezeError(
                    f"inexact division {numerator}/{entries[(a - 1, b)]}", (a, b + 1)
                )
            if quotient < 1:
                raise NotAFriezeError(f"non-positive entry {quotient}", (a, b + 1))
            entries[(a, b + 1)] = quotient
        if entries[(a, a + n)] != 1:
            raise NotAFriezeError(
                f"row {a} ends on {entries[(a, a + n)]} instead of the band edge 1", (a, a + n)
            )

    grid = FriezeGrid(N, entries)
    glide = grid.check_glide()
    if not glide.ok:
        first = glide.violations[0]
        raise NotAFriezeError(first.message, first.location)
    logger.debug(f"Propagated frieze of a {N}-gon from column {column}")
    return grid


def triangulation_from_ones(fg: FriezeGrid) -> PolygonTriangulation:
    """
    Read the triangulation off the interior ones of a frieze.

    Args:
        fg: Frieze grid covering a full period

    Returns:
        The polygon triangulation whose diagonals sit at the interior ones

    Raises:
        InvalidTriangulationError: If the ones do not form n - 2 non-crossing diagonals
    """
    N = fg.n_plus_1
    found = {
        _normalize((a % N, b % N))
        for (a, b), v in fg.entries.items()
        if v == 1 and 2 <= b - a <= N - 2
    }
    try:
        return PolygonTriangulation(N, frozenset(found))
    except InvalidTriangulationError as e:
        raise InvalidTriangulationError(
            f"ones of the frieze do not triangulate the {N}-gon: {e}"
        ) from e


def _triangulations_between(lo: int, hi: int) -> Iterator[FrozenSet[Diagonal]]:
    """All diagonal sets of the sub-polygon lo..hi closed by the chord (lo, hi)."""
    if hi - lo < 2:
        yield frozenset()
        return
    for apex in range(lo + 1, hi):
        closing = frozenset(d for d in ((lo, apex), (apex, hi)) if d[1] - d[0] >= 2)
        for left in _triangulations_between(lo, apex):
            for right in _triangulations_between(apex, hi):
                yield left | right | closing


def all_triangulations(n_plus_1: int) -> List[PolygonTriangulation]:
    """Every triangulation of the (n+1)-gon (Catalan-many)."""
    return [
        PolygonTriangulation(n_plus_1, diagonals)
        for diagonals in _triangulations_between(0, n_plus_1 - 1)
    ]


def random_triangulation(
    n_plus_1: int, rng: Optional[random.Random] = None
) -> PolygonTriangulation:
    """
    Triangulate the (n+1)-gon by choosing apexes at random.

    Args:
        n_plus_1: Number of vertices, at least 3
        rng: Random source; a fresh unseeded one when omitted

    Returns:
        A random PolygonTriangulation (not uniform over all triangulations)
    """
    rng = rng or random.Random()
    diagonals = set()
    pending = [(0, n_plus_1 - 1)]
    while pending:
        lo, hi = pending.pop()
        if hi - lo < 2:
            continue
        apex = rng.randrange(lo + 1, hi)
        for d in ((lo, apex), (apex, hi)):
            if d[1] - d[0] >= 2:
                diagonals.add(d)
        pending.extend([(lo, apex), (apex, hi)])
    return PolygonTriangulation(n_plus_1, frozenset(diagonals))
