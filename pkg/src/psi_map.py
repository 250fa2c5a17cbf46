"""Recovering a strip triangulation from a tiling window.

The ones of a window lie on a zig-zag path. Between two consecutive ones in
the same column (or row) the entries form an edge-to-edge frieze column,
whose frieze recovers the triangulation of the polygon between the two
matching connecting arcs.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Set, Tuple

from src.errors import NotEnoughOnesError, TilingError, ZigZagError
from src.logging_service import get_logging_service
from src.phi_map import path_cells, phi_window, seed_steps
from src.polygon_frieze import frieze_from_boundary_column, triangulation_from_ones
from src.reports import Report
from src.strip_model import (
    Connecting,
    FinitePatch,
    PeriodicTriangulationSpec,
    StripPolygon,
    alpha_of,
    arc_key,
    polygon_vertices,
    require_valid,
)
from src.tiling_core import Position, TilingWindow, ones_quadrant_check, propagate_determinants


class StepKind(Enum):
    """How the zig-zag moves between consecutive ones."""

    COLUMN = "column"
    ROW = "row"


@dataclass(frozen=True)
class ZigZag:
    """Ordered positions (x_alpha, y_alpha) of the ones of a window, alpha from 0."""

    points: Tuple[Position, ...]

    def __len__(self) -> int:
        return len(self.points)

    def steps(self) -> Iterator[Tuple[int, Position, Position, StepKind]]:
        for alpha, ((x, y), (x2, y2)) in enumerate(zip(self.points, self.points[1:])):
            kind = StepKind.COLUMN if y2 == y else StepKind.ROW
            yield alpha, (x, y), (x2, y2), kind


def extract_zigzag(w: TilingWindow) -> ZigZag:
    """
    Order the ones of a window along the zig-zag path.

    Points are sorted by (y, -x); consecutive points must share a column
    with x dropping or share a row with y growing.

    Raises:
        ZigZagError: If the window has no ones or two ones sit in the
            north-west/south-east relation
        NotEnoughOnesError: If the window holds a single one, or if two
            consecutive ones share neither a row nor a column, so that no
            continuation of the path lies in the window
    """
    ones = w.ones()
    if not ones:
        raise ZigZagError("the window contains no entry equal to 1")
    quadrant = ones_quadrant_check(w)
    if not quadrant.ok:
        raise ZigZagError(f"ones do not lie on a zig-zag path:\n{quadrant.format()}")

    points = tuple(sorted(ones, key=lambda p: (p[1], -p[0])))
    for (x, y), (x2, y2) in zip(points, points[1:]):
        if (x2 < x and y2 == y) or (x2 == x and y2 > y):
            continue
        if x2 < x and y2 > y:
            raise NotEnoughOnesError(
                f"no 1 continues the zig-zag from ({x}, {y}) in its row or column; "
                f"the next 1 is at ({x2}, {y2})"
            )
        raise ZigZagError(f"ones at ({x}, {y}) and ({x2}, {y2}) break the zig-zag order")
    if len(points) == 1:
        x, y = points[0]
        raise NotEnoughOnesError(
            f"the only 1 is at ({x}, {y}); the window shows no continuation of a zig-zag path, "
            "so the tiling need not have enough ones"
        )
    return ZigZag(points)


def _segment(w: TilingWindow, first: Position, second: Position, kind: StepKind) -> List[int]:
    (x, y), (x2, y2) = first, second
    if kind is StepKind.COLUMN:
        return [w[u, y] for u in range(x, x2 - 1, -1)]
    return [w[x, v] for v in range(y, y2 + 1)]


def psi_window(w: TilingWindow) -> FinitePatch:
    """
    Recover the triangulation patch certified by a window.

    Every one becomes a connecting arc, and each step between consecutive
    ones yields the internal arcs of its polygon.

    Args:
        w: Tiling window with at least two ones

    Returns:
        FinitePatch with alpha = 0 at the first one in zig-zag order

    Raises:
        ZigZagError: If the ones do not form a zig-zag path
        NotEnoughOnesError: If the window shows no continuation of the path
        NotAFriezeError: If a segment does not propagate to a frieze
        InvalidTriangulationError: If a frieze's ones do not triangulate its polygon
    """
    zigzag = extract_zigzag(w)
    connecting = tuple(Connecting(x, y) for x, y in zigzag.points)
    internal = set()

    for alpha, first, second, kind in zigzag.steps():
        segment = _segment(w, first, second, kind)
        grid = frieze_from_boundary_column(segment)
        triangulation = triangulation_from_ones(grid)
        vertices = polygon_vertices(alpha, connecting[alpha], connecting[alpha + 1])
        polygon = StripPolygon(alpha, triangulation, vertices)
        internal.update(polygon.arcs())

    patch = FinitePatch(0, connecting, frozenset(internal), (True,) * (len(connecting) - 1))
    get_logging_service().debug(
        f"Recovered {len(connecting)} connecting and {len(internal)} internal arcs"
    )
    return patch


def regenerate_window(patch: FinitePatch, w: TilingWindow) -> Dict[Position, int]:
    """
    Entries of the window implied by a recovered patch.

    The staircase entries of every complete step are reseeded and closed by
    determinant propagation inside the window.

    Returns:
        Entries by position for every cell the propagation reaches
    """
    seeds: Dict[Position, int] = {(arc.i, arc.j): 1 for arc in patch.connecting}
    complete = [patch.first_alpha + k for k, done in enumerate(patch.complete) if done]
    for alpha in complete:
        seeds.update(path_cells(patch, range(alpha, alpha + 1)))
    seeds = {p: v for p, v in seeds.items() if p in w}
    return propagate_determinants(seeds, w.rows, w.cols)


def _ones_of_triangulation(spec: PeriodicTriangulationSpec, w: TilingWindow) -> Set[Position]:
    cells = (spec.connecting_at(alpha) for alpha in seed_steps(spec, w.rows, w.cols))
    return {(arc.i, arc.j) for arc in cells if (arc.i, arc.j) in w}


def roundtrip_window_report(spec: PeriodicTriangulationSpec, w: TilingWindow) -> Report:
    """
    Compare a window with a triangulation in both directions.

    The patch recovered from the window must list exactly the connecting
    arcs of the triangulation that fall in the window and, for every
    complete step, the internal arcs of the matching polygon. The window
    regenerated from the patch must agree with the given one wherever it
    reaches.

    A window holding fewer than two ones certifies no patch; when its ones
    are exactly the triangulation's, its entries are compared with the
    tiling directly.

    Args:
        spec: Triangulation the window is supposed to come from
        w: Window, possibly corrupted

    Returns:
        Report of every mismatch

    Raises:
        SpecValidationError: If spec does not present a triangulation
    """
    require_valid(spec)
    report = Report("roundtrip")
    ones = w.ones()
    if len(ones) < 2 and set(ones) == _ones_of_triangulation(spec, w):
        tiling = phi_window(spec, w.rows, w.cols)
        for i, j in w.positions():
            report.checked += 1
            if tiling[i, j] != w[i, j]:
                report.add(
                    "entry", (i, j), f"window has {w[i, j]}, triangulation gives {tiling[i, j]}"
                )
        return report

    try:
        patch = psi_window(w)
    except TilingError as e:
        report.checked += 1
        report.add("recovery", (), f"{type(e).__name__}: {e}")
        return report

    expected = set()
    start = alpha_of(spec, patch.connecting[0])
    if start is not None:
        alpha = start
        while True:
            arc = spec.connecting_at(alpha - 1)
            if (arc.i, arc.j) not in w:
                break
            alpha -= 1
        while (spec.connecting_at(alpha).i, spec.connecting_at(alpha).j) in w:
            expected.add(spec.connecting_at(alpha))
            alpha += 1

    report.checked += 1
    found = set(patch.connecting)
    for arc in sorted(found - expected, key=arc_key):
        report.add("connecting", (arc.i, arc.j), f"{arc} is not an arc of the triangulation")
    for arc in sorted(expected - found, key=arc_key):
        report.add("connecting", (arc.i, arc.j), f"{arc} of the triangulation was not recovered")

    if start is not None and found == expected:
        for k, done in enumerate(patch.complete):
            if not done:
                continue
            report.checked += 1
            recovered = set(patch.polygon_at(patch.first_alpha + k).arcs())
            actual = set(spec.internal_at(start + k))
            if recovered != actual:
                report.add(
                    "internal",
                    (start + k,),
                    f"recovered {sorted(map(str, recovered))}, triangulation has {sorted(map(str, actual))}",
                )

    try:
        regenerated = regenerate_window(patch, w)
    except TilingError as e:
        report.checked += 1
        report.add("regeneration", (), f"{type(e).__name__}: {e}")
        return report
    for (i, j), value in sorted(regenerated.items()):
        report.checked += 1
        if value != w[i, j]:
            report.add("regenerated", (i, j), f"window has {w[i, j]}, patch implies {value}")
    return report


def roundtrip_check(spec: PeriodicTriangulationSpec, rows: range, cols: range) -> Report:
    """Generate a window from the triangulation and run the round trip on it."""
    return roundtrip_window_report(spec, phi_window(spec, rows, cols))
