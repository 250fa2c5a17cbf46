"""Vertices, arcs and periodically presented triangulations of the strip.

Upper vertex p sits at horizontal coordinate -p and lower vertex q at +q, so
the two edges are numbered in opposite directions. A connecting arc (i, j)
joins upper vertex i to lower vertex j; internal arcs join two vertices of
the same edge that are at least two apart.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from config import STAIRCASE_SEARCH_LIMIT
from src.errors import InvalidArcError, InvalidTriangulationError, SpecValidationError
from src.polygon_frieze import PolygonTriangulation, quiddity_of
from src.reports import Report


def closed_range(lo: int, hi: int) -> range:
    """Integers lo..hi inclusive."""
    return range(lo, hi + 1)


class Edge(Enum):
    """Boundary edge of the strip."""

    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class Vertex:
    edge: Edge
    index: int

    @property
    def position(self) -> int:
        return -self.index if self.edge is Edge.UPPER else self.index

    def __str__(self) -> str:
        return f"{self.index}{'°' if self.edge is Edge.UPPER else '∘'}"


@dataclass(frozen=True)
class Connecting:
    """Arc from upper vertex i to lower vertex j."""

    i: int
    j: int

    def shifted(self, dx: int, dy: int) -> "Connecting":
        return Connecting(self.i + dx, self.j + dy)

    @property
    def endpoints(self) -> Tuple[Vertex, Vertex]:
        return Vertex(Edge.UPPER, self.i), Vertex(Edge.LOWER, self.j)

    def sort_key(self) -> Tuple[int, int, int]:
        return (0, self.i, self.j)

    def __str__(self) -> str:
        return f"({self.i}°,{self.j}∘)"


@dataclass(frozen=True)
class _InternalArc:
    p: int
    q: int

    edge = Edge.UPPER

    def __post_init__(self):
        if self.p > self.q - 2:
            raise InvalidArcError(
                f"internal arc ({self.p}, {self.q}) needs p <= q - 2"
            )

    @property
    def endpoints(self) -> Tuple[Vertex, Vertex]:
        return Vertex(self.edge, self.p), Vertex(self.edge, self.q)


@dataclass(frozen=True)
class UpperInternal(_InternalArc):
    """Arc between upper vertices p and q."""

    edge = Edge.UPPER

    def shifted(self, dx: int, dy: int) -> "UpperInternal":
        return UpperInternal(self.p + dx, self.q + dx)

    def sort_key(self) -> Tuple[int, int, int]:
        return (1, self.p, self.q)

    def __str__(self) -> str:
        return f"({self.p}°,{self.q}°)"


@dataclass(frozen=True)
class LowerInternal(_InternalArc):
    """Arc between lower vertices p and q."""

    edge = Edge.LOWER

    def shifted(self, dx: int, dy: int) -> "LowerInternal":
        return LowerInternal(self.p + dy, self.q + dy)

    def sort_key(self) -> Tuple[int, int, int]:
        return (2, self.p, self.q)

    def __str__(self) -> str:
        return f"({self.p}∘,{self.q}∘)"


InternalArc = Union[UpperInternal, LowerInternal]
Arc = Union[Connecting, UpperInternal, LowerInternal]


def internal_arc(edge: Edge, p: int, q: int) -> InternalArc:
    """Build the internal arc on the given edge, endpoints in either order."""
    lo, hi = min(p, q), max(p, q)
    return UpperInternal(lo, hi) if edge is Edge.UPPER else LowerInternal(lo, hi)


def arc_key(arc: Arc) -> Tuple[int, int, int]:
    return arc.sort_key()


def arcs_cross(a: Arc, b: Arc) -> bool:
    """
    Decide whether two arcs cross in the open strip.

    Arcs sharing an endpoint never cross; the relation is symmetric.
    """
    if isinstance(a, Connecting) and isinstance(b, Connecting):
        return (a.i < b.i and a.j < b.j) or (a.i > b.i and a.j > b.j)
    if isinstance(a, Connecting):
        a, b = b, a
    if isinstance(b, Connecting):
        inner = b.i if isinstance(a, UpperInternal) else b.j
        return a.p < inner < a.q
    if type(a) is not type(b):
        return False
    return a.p < b.p < a.q < b.q or b.p < a.p < b.q < a.q


def step_kind(a: Connecting, b: Connecting) -> Optional[Edge]:
    """
    Classify the step between consecutive connecting arcs.

    Returns:
        Edge.UPPER when they share the lower endpoint and the upper index
        drops, Edge.LOWER when they share the upper endpoint and the lower
        index grows, None otherwise
    """
    if b.j == a.j and b.i < a.i:
        return Edge.UPPER
    if b.i == a.i and b.j > a.j:
        return Edge.LOWER
    return None


@dataclass(frozen=True)
class StripPolygon:
    """The polygon between two consecutive connecting arcs.

    Label 0 is the shared vertex on the opposite edge; labels 1..m-1 run
    along the other edge from the endpoint of the first arc to the endpoint
    of the second.
    """

    alpha: int
    triangulation: PolygonTriangulation
    vertices: Tuple[Vertex, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def run_edge(self) -> Edge:
        return self.vertices[1].edge

    def label_of(self, vertex: Vertex) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise KeyError(f"{vertex} is not a vertex of polygon {self.alpha}") from None

    def arc_for(self, diagonal: Tuple[int, int]) -> InternalArc:
        """Translate a polygon diagonal back to a strip arc."""
        a, b = diagonal
        if 0 in (a, b):
            raise InvalidArcError(
                f"diagonal {diagonal} of polygon {self.alpha} leaves its run"
            )
        u, v = self.vertices[a], self.vertices[b]
        return internal_arc(u.edge, u.index, v.index)

    def arcs(self) -> List[InternalArc]:
        return sorted((self.arc_for(d) for d in self.triangulation.diagonals), key=arc_key)


def polygon_vertices(alpha: int, first: Connecting, second: Connecting) -> Tuple[Vertex, ...]:
    """
    Vertices of the polygon between two consecutive connecting arcs, in label order.

    Raises:
        InvalidTriangulationError: If the arcs do not form a staircase step
    """
    kind = step_kind(first, second)
    if kind is Edge.UPPER:
        run = [Vertex(Edge.UPPER, u) for u in range(first.i, second.i - 1, -1)]
        return (Vertex(Edge.LOWER, first.j), *run)
    if kind is Edge.LOWER:
        run = [Vertex(Edge.LOWER, v) for v in range(first.j, second.j + 1)]
        return (Vertex(Edge.UPPER, first.i), *run)
    raise InvalidTriangulationError(
        f"arcs {first} and {second} at step {alpha} do not share an endpoint"
    )


def build_polygon(
    alpha: int, first: Connecting, second: Connecting, internal: Iterable[InternalArc]
) -> StripPolygon:
    """
    Assemble the polygon between two consecutive connecting arcs.

    Raises:
        InvalidTriangulationError: If the arcs do not form a staircase step or
            the internal arcs are not a triangulation of the polygon
    """
    vertices = polygon_vertices(alpha, first, second)
    labels: Dict[Vertex, int] = {v: k for k, v in enumerate(vertices)}
    diagonals = set()
    for arc in internal:
        try:
            diagonals.add(tuple(sorted((labels[arc.endpoints[0]], labels[arc.endpoints[1]]))))
        except KeyError:
            raise InvalidTriangulationError(
                f"internal arc {arc} is not a diagonal of polygon {alpha}"
            ) from None
    return StripPolygon(alpha, PolygonTriangulation(len(vertices), frozenset(diagonals)), tuple(vertices))


@dataclass(frozen=True)
class PeriodicTriangulationSpec:
    """Finite presentation of a strip triangulation.

    Attributes:
        connecting: A_0..A_{P-1}, the fundamental staircase segment
        shift: (dx, dy); A_{alpha+P} is A_alpha shifted by it
        internal: For each alpha in 0..P-1, the internal arcs of polygon alpha
    """

    connecting: Tuple[Connecting, ...]
    shift: Tuple[int, int]
    internal: Tuple[FrozenSet[InternalArc], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "connecting", tuple(self.connecting))
        internal = tuple(frozenset(arcs) for arcs in self.internal)
        if not internal:
            internal = tuple(frozenset() for _ in self.connecting)
        object.__setattr__(self, "internal", internal)
        object.__setattr__(self, "shift", tuple(self.shift))

        report = Report("spec structure")
        if not self.connecting:
            report.add("structure", (), "at least one connecting arc is required")
        if len(self.internal) != len(self.connecting):
            report.add(
                "structure",
                (),
                f"{len(self.connecting)} connecting arcs but {len(self.internal)} internal groups",
            )
        for alpha, arc in enumerate(self.connecting):
            if not isinstance(arc, Connecting):
                report.add("structure", (alpha,), f"{arc!r} is not a connecting arc")
        for alpha, arcs in enumerate(self.internal):
            for arc in arcs:
                if not isinstance(arc, (UpperInternal, LowerInternal)):
                    report.add("structure", (alpha,), f"{arc!r} is not an internal arc")
        if not report.ok:
            raise SpecValidationError(report)

    @property
    def period(self) -> int:
        return len(self.connecting)

    @property
    def dx(self) -> int:
        return self.shift[0]

    @property
    def dy(self) -> int:
        return self.shift[1]

    def connecting_at(self, alpha: int) -> Connecting:
        q, r = divmod(alpha, self.period)
        return self.connecting[r].shifted(q * self.dx, q * self.dy)

    def internal_at(self, alpha: int) -> FrozenSet[InternalArc]:
        q, r = divmod(alpha, self.period)
        return frozenset(arc.shifted(q * self.dx, q * self.dy) for arc in self.internal[r])

    def polygon_at(self, alpha: int) -> "StripPolygon":
        return polygon_at(self, alpha)

    def translated(self, times: int = 1) -> "PeriodicTriangulationSpec":
        """The same triangulation moved by `times` shifts."""
        dx, dy = times * self.dx, times * self.dy
        return PeriodicTriangulationSpec(
            tuple(a.shifted(dx, dy) for a in self.connecting),
            self.shift,
            tuple(frozenset(arc.shifted(dx, dy) for arc in arcs) for arcs in self.internal),
        )


@dataclass(frozen=True)
class FinitePatch:
    """A finite stretch of a strip triangulation recovered from a window.

    Attributes:
        first_alpha: Step index of connecting[0]
        connecting: Consecutive connecting arcs of the stretch
        internal: Certified internal arcs
        complete: One flag per step between consecutive connecting arcs;
            False where the polygon could not be recovered
    """

    first_alpha: int
    connecting: Tuple[Connecting, ...]
    internal: FrozenSet[InternalArc] = field(default_factory=frozenset)
    complete: Tuple[bool, ...] = ()

    @property
    def boundary_complete(self) -> Tuple[bool, bool]:
        """Whether the first and last polygon were fully recovered."""
        if not self.complete:
            return (False, False)
        return (self.complete[0], self.complete[-1])

    @property
    def incomplete_steps(self) -> List[int]:
        return [self.first_alpha + k for k, done in enumerate(self.complete) if not done]

    def connecting_at(self, alpha: int) -> Connecting:
        return self.connecting[alpha - self.first_alpha]

    def polygon_at(self, alpha: int) -> StripPolygon:
        """Polygon of a complete step of the patch."""
        first, second = self.connecting_at(alpha), self.connecting_at(alpha + 1)
        kind = step_kind(first, second)
        inside = [
            arc
            for arc in self.internal
            if arc.edge is kind and all(v in _run(first, second) for v in arc.endpoints)
        ]
        return build_polygon(alpha, first, second, inside)


def _run(first: Connecting, second: Connecting) -> List[Vertex]:
    return list(polygon_vertices(0, first, second)[1:])


def validate_spec(spec: PeriodicTriangulationSpec) -> Report:
    """
    Report every way in which a spec fails to present a strip triangulation.

    Checks the shift signs, the staircase shape of consecutive connecting
    arcs, the placement and number of internal arcs per polygon, and
    crossings among all arcs of three consecutive periods.

    Args:
        spec: Presentation to validate

    Returns:
        Report; empty iff the spec is a genuine triangulation
    """
    report = Report("spec validation")
    P = spec.period

    report.checked += 1
    if not (spec.dx < 0 < spec.dy):
        report.add("shift", spec.shift, f"shift ({spec.dx}, {spec.dy}) needs dx < 0 < dy")

    for alpha in range(P):
        first, second = spec.connecting_at(alpha), spec.connecting_at(alpha + 1)
        report.checked += 1
        kind = step_kind(first, second)
        if kind is None:
            report.add(
                "staircase",
                (alpha,),
                f"{first} -> {second} neither drops the upper index nor raises the lower one "
                "with the other endpoint shared",
            )
            continue

        run = _run(first, second)
        expected = len(run) + 1 - 3
        arcs = spec.internal[alpha]
        for arc in sorted(arcs, key=arc_key):
            report.checked += 1
            if arc.edge is not kind or not all(v in run for v in arc.endpoints):
                report.add(
                    "internal-placement",
                    (alpha,),
                    f"{arc} is not a diagonal of the polygon between {first} and {second}",
                )
        report.checked += 1
        if len(arcs) != expected:
            report.add(
                "internal-count",
                (alpha,),
                f"polygon with {len(run) + 1} vertices needs {expected} internal arcs, has {len(arcs)}",
            )

    pool: List[Tuple[int, Arc]] = []
    for alpha in range(-P, 2 * P):
        pool.append((alpha, spec.connecting_at(alpha)))
        pool.extend((alpha, arc) for arc in sorted(spec.internal_at(alpha), key=arc_key))
    for k, (alpha, a) in enumerate(pool):
        for beta, b in pool[k + 1 :]:
            # at least one arc from the fundamental segment
            if not (0 <= alpha < P or 0 <= beta < P):
                continue
            report.checked += 1
            if arcs_cross(a, b):
                report.add("crossing", (alpha, beta), f"{a} crosses {b}")
    return report


def require_valid(spec: PeriodicTriangulationSpec) -> PeriodicTriangulationSpec:
    """Return spec unchanged, or raise SpecValidationError with the report."""
    report = validate_spec(spec)
    if not report.ok:
        raise SpecValidationError(report)
    return spec


def connecting_arcs_in(spec: PeriodicTriangulationSpec, alphas: range) -> List[Connecting]:
    """Connecting arcs A_alpha for alpha in the range, ordered by alpha."""
    return [spec.connecting_at(alpha) for alpha in alphas]


def arcs_in(spec: PeriodicTriangulationSpec, alphas: range) -> List[Arc]:
    """Connecting arcs A_alpha and the internal arcs of polygon alpha, for alpha in the range."""
    arcs: List[Arc] = []
    for alpha in alphas:
        arcs.append(spec.connecting_at(alpha))
        arcs.extend(sorted(spec.internal_at(alpha), key=arc_key))
    return arcs


def polygon_at(spec: PeriodicTriangulationSpec, alpha: int) -> StripPolygon:
    """Polygon between A_alpha and A_{alpha+1} with its internal arcs as diagonals."""
    return build_polygon(
        alpha, spec.connecting_at(alpha), spec.connecting_at(alpha + 1), spec.internal_at(alpha)
    )


def first_alpha_where(
    connecting_at: Callable[[int], Connecting], holds: Callable[[Connecting], bool]
) -> int:
    """
    Smallest alpha whose connecting arc satisfies a monotone predicate.

    The predicate must be false for all small alpha and true for all large
    alpha; along a staircase with dx < 0 < dy, tests such as ``x < i`` or
    ``y >= j`` are.

    Raises:
        SpecValidationError: If no bracketing step turns up within
            STAIRCASE_SEARCH_LIMIT steps, which only happens off a genuine staircase
    """

    def widened(step: int) -> int:
        if step > STAIRCASE_SEARCH_LIMIT:
            report = Report("staircase search")
            report.add("shift", (), f"no bracketing arc within {STAIRCASE_SEARCH_LIMIT} steps of A_0")
            raise SpecValidationError(report)
        return step * 2

    if holds(connecting_at(0)):
        hi, step = 0, 1
        while holds(connecting_at(-step)):
            hi, step = -step, widened(step)
        lo = -step
    else:
        lo, step = 0, 1
        while not holds(connecting_at(step)):
            lo, step = step, widened(step)
        hi = step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(connecting_at(mid)):
            hi = mid
        else:
            lo = mid
    return hi


def polygons_at_vertex(spec: PeriodicTriangulationSpec, vertex: Vertex) -> List[StripPolygon]:
    """All polygons of the unrolled triangulation that contain the vertex."""
    k = vertex.index
    if vertex.edge is Edge.UPPER:
        start = first_alpha_where(spec.connecting_at, lambda a: a.i <= k) - 1
        stop = first_alpha_where(spec.connecting_at, lambda a: a.i < k) - 1
    else:
        start = first_alpha_where(spec.connecting_at, lambda a: a.j >= k) - 1
        stop = first_alpha_where(spec.connecting_at, lambda a: a.j > k) - 1
    return [polygon_at(spec, alpha) for alpha in closed_range(start, stop)]


def triangle_count(spec: PeriodicTriangulationSpec, vertex: Vertex) -> int:
    """Number of triangles of the strip triangulation incident with the vertex."""
    total = 0
    for polygon in polygons_at_vertex(spec, vertex):
        total += quiddity_of(polygon.triangulation)[polygon.label_of(vertex)]
    return total


def alpha_of(spec: PeriodicTriangulationSpec, arc: Connecting) -> Optional[int]:
    """Step index of a connecting arc of the triangulation, or None if it is not one."""
    alpha = first_alpha_where(spec.connecting_at, lambda a: a.i < arc.i or a.j > arc.j) - 1
    return alpha if spec.connecting_at(alpha) == arc else None
