"""Tiling entries from a strip triangulation.

The entry t(i, j) is the frieze value of the vertex pair (i upper, j lower)
in any finite polygon cut out of the triangulation by two connecting arcs
that bracket the pair. Windows are seeded along the staircase of connecting
arcs, where every entry is a frieze column of one polygon, and then closed
by determinant propagation.
"""

from typing import Dict, List, Tuple

from src.errors import WellDefinednessError
from src.logging_service import get_logging_service
from src.polygon_frieze import PolygonTriangulation, frieze_column, frieze_value
from src.strip_model import (
    Edge,
    PeriodicTriangulationSpec,
    StripPolygon,
    Vertex,
    first_alpha_where,
    require_valid,
)
from src.tiling_core import Position, TilingWindow, propagate_determinants


def bracketing(spec: PeriodicTriangulationSpec, i: int, j: int, widen: int = 0) -> Tuple[int, int]:
    """
    Steps of the nearest connecting arcs on either side of (i, j).

    Returns:
        (alpha0, alpha1) with A_alpha0 = (r, s), r > i, s < j and
        A_alpha1 = (p, q), p < i, q > j, each moved `widen` steps further out
    """
    at = spec.connecting_at
    alpha1 = max(
        first_alpha_where(at, lambda a: a.i < i),
        first_alpha_where(at, lambda a: a.j > j),
    )
    alpha0 = min(
        first_alpha_where(at, lambda a: a.i <= i),
        first_alpha_where(at, lambda a: a.j >= j),
    ) - 1
    return alpha0 - widen, alpha1 + widen


def bracket_polygon(spec: PeriodicTriangulationSpec, alpha0: int, alpha1: int) -> StripPolygon:
    """
    The polygon bounded by A_alpha0 = (r, s) and A_alpha1 = (p, q).

    Labels run over the upper vertices p..r, then the lower vertices s..q;
    the connecting arcs strictly between the two and the internal arcs of
    every enclosed step become its diagonals.
    """
    r, s = spec.connecting_at(alpha0).i, spec.connecting_at(alpha0).j
    p, q = spec.connecting_at(alpha1).i, spec.connecting_at(alpha1).j
    vertices = [Vertex(Edge.UPPER, u) for u in range(p, r + 1)]
    vertices += [Vertex(Edge.LOWER, l) for l in range(s, q + 1)]
    labels = {v: k for k, v in enumerate(vertices)}

    diagonals = set()
    for alpha in range(alpha0 + 1, alpha1):
        arc = spec.connecting_at(alpha)
        diagonals.add((labels[Vertex(Edge.UPPER, arc.i)], labels[Vertex(Edge.LOWER, arc.j)]))
    for alpha in range(alpha0, alpha1):
        for arc in spec.internal_at(alpha):
            u, v = arc.endpoints
            diagonals.add(tuple(sorted((labels[u], labels[v]))))
    triangulation = PolygonTriangulation(len(vertices), frozenset(diagonals))
    return StripPolygon(alpha0, triangulation, tuple(vertices))


def phi_cell(
    spec: PeriodicTriangulationSpec, i: int, j: int, widen: int = 0, verify: bool = False
) -> int:
    """
    Entry t(i, j) of the tiling of a triangulation.

    Args:
        spec: Validated triangulation
        i: Row, an upper vertex
        j: Column, a lower vertex
        widen: Extra steps added to the bracketing on each side
        verify: Also evaluate with the next wider bracketing and compare

    Returns:
        The frieze value of (i upper, j lower) in the bracketing polygon

    Raises:
        WellDefinednessError: In verify mode, if the two evaluations differ
    """
    alpha0, alpha1 = bracketing(spec, i, j, widen)
    polygon = bracket_polygon(spec, alpha0, alpha1)
    value = frieze_value(
        polygon.triangulation,
        polygon.label_of(Vertex(Edge.UPPER, i)),
        polygon.label_of(Vertex(Edge.LOWER, j)),
    )
    if verify:
        wider = phi_cell(spec, i, j, widen + 1)
        if wider != value:
            raise WellDefinednessError(
                f"t({i},{j}) is {value} in a {polygon.size}-gon but {wider} in a wider polygon"
            )
    return value


def path_cells(source, alphas: range) -> Dict[Position, int]:
    """
    Entries along the staircase of connecting arcs for the given steps.

    For a step that drops the upper index the entries t(x, y) fill the
    column of the shared lower vertex y between the two arcs; for a step
    that raises the lower index they fill the row of the shared upper
    vertex. Both are the frieze column of the step's polygon at label 0.

    Args:
        source: A spec or a finite patch exposing connecting_at and polygon_at
        alphas: Steps to seed

    Returns:
        Entries by position, including the ones on the connecting arcs
    """
    cells: Dict[Position, int] = {}
    for alpha in alphas:
        polygon = source.polygon_at(alpha)
        column = frieze_column(polygon.triangulation, 0)
        apex = polygon.vertices[0].index
        for vertex, value in zip(polygon.vertices[1:], column):
            position = (vertex.index, apex) if vertex.edge is Edge.UPPER else (apex, vertex.index)
            cells[position] = value
    return cells


def seed_steps(source, rows: range, cols: range) -> range:
    """Steps whose staircase entries cover the rows and columns of a window, plus one on each side."""
    at = source.connecting_at
    i0, i1, j0, j1 = rows.start, rows.stop - 1, cols.start, cols.stop - 1
    start = min(
        first_alpha_where(at, lambda a: a.i <= i1),
        first_alpha_where(at, lambda a: a.j >= j0),
    ) - 1
    stop = max(
        first_alpha_where(at, lambda a: a.i < i0),
        first_alpha_where(at, lambda a: a.j > j1),
    )
    return range(start, stop + 1)


def fill_box(cells: Dict[Position, int], rows: range, cols: range) -> Tuple[range, range]:
    """Bounding box of the window and the seeds sharing a row or column with it."""
    near = [(i, j) for i, j in cells if i in rows or j in cols]
    top = min([rows.start] + [i for i, _ in near])
    bottom = max([rows.stop - 1] + [i for i, _ in near])
    left = min([cols.start] + [j for _, j in near])
    right = max([cols.stop - 1] + [j for _, j in near])
    return range(top, bottom + 1), range(left, right + 1)


def phi_window(
    spec: PeriodicTriangulationSpec, rows: range, cols: range, verify: bool = False
) -> TilingWindow:
    """
    Window of the tiling of a triangulation.

    Entries are seeded along the staircase and propagated by the
    determinant rule; any entry the propagation misses is evaluated by
    phi_cell.

    Args:
        spec: Validated triangulation
        rows: Rows of the window
        cols: Columns of the window
        verify: Re-evaluate every entry with phi_cell and compare

    Returns:
        The window

    Raises:
        SpecValidationError: If spec does not present a triangulation
        WellDefinednessError: In verify mode, on any disagreement
    """
    require_valid(spec)
    logger = get_logging_service()
    steps = seed_steps(spec, rows, cols)
    seeds = path_cells(spec, steps)
    box_rows, box_cols = fill_box(seeds, rows, cols)
    in_box = {p: v for p, v in seeds.items() if p[0] in box_rows and p[1] in box_cols}
    known = propagate_determinants(in_box, box_rows, box_cols)
    logger.debug(
        f"Window {len(rows)}x{len(cols)}: {len(steps)} staircase steps, "
        f"{len(in_box)} seeds, fill box {len(box_rows)}x{len(box_cols)}"
    )

    missing: List[Position] = [(i, j) for i in rows for j in cols if (i, j) not in known]
    if missing:
        logger.warning(f"Determinant fill missed {len(missing)} entries; evaluating them directly")
        for i, j in missing:
            known[(i, j)] = phi_cell(spec, i, j)

    window = TilingWindow.from_mapping(known, rows, cols)
    if verify:
        for i, j in window.positions():
            expected = phi_cell(spec, i, j, verify=True)
            if window[i, j] != expected:
                raise WellDefinednessError(
                    f"propagated t({i},{j}) = {window[i, j]} but the frieze value is {expected}"
                )
        logger.info(f"Verified {len(rows) * len(cols)} entries against frieze values")
    return window

