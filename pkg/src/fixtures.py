"""Bundled example data.

- ``sample_window``: an 11x11 block of a tiling with enough ones, transcribed
  entry by entry, top-left entry at ``SAMPLE_WINDOW_ANCHOR``
- ``cross_window``: a tiling with a single 1, filled from the cross of
  entries |k| + 1 through it
- ``staircase_spec``: the zig-zag of alternating unit steps, all polygons triangles
- ``square_spec``: a period with one quadrilateral and one triangle
- ``derived_patch``: the patch recovered from ``sample_window``; it is derived
  data, not a transcription
"""

from typing import Callable, Dict, Tuple

from config import CROSS_WINDOW_CENTER, CROSS_WINDOW_RADIUS, SAMPLE_WINDOW_ANCHOR
from src.psi_map import psi_window
from src.strip_model import Connecting, FinitePatch, PeriodicTriangulationSpec, UpperInternal
from src.tiling_core import Position, TilingWindow, determinant_fill

SAMPLE_ROWS: Tuple[Tuple[int, ...], ...] = (
    (10, 23, 13, 3, 5, 2, 3, 7, 11, 4, 1),
    (23, 53, 30, 7, 12, 5, 8, 19, 30, 11, 3),
    (13, 30, 17, 4, 7, 3, 5, 12, 19, 7, 2),
    (16, 37, 21, 5, 9, 4, 7, 17, 27, 10, 3),
    (3, 7, 4, 1, 2, 1, 2, 5, 8, 3, 1),
    (5, 12, 7, 2, 5, 3, 7, 18, 29, 11, 4),
    (2, 5, 3, 1, 3, 2, 5, 13, 21, 8, 3),
    (5, 13, 8, 3, 10, 7, 18, 47, 76, 29, 11),
    (3, 8, 5, 2, 7, 5, 13, 34, 55, 21, 8),
    (4, 11, 7, 3, 11, 8, 21, 55, 89, 34, 13),
    (1, 3, 2, 1, 4, 3, 8, 21, 34, 13, 5),
)


def sample_window() -> TilingWindow:
    top, left = SAMPLE_WINDOW_ANCHOR
    return TilingWindow.from_rows(top, left, SAMPLE_ROWS)


def cross_seed(
    center: Position = CROSS_WINDOW_CENTER, radius: int = CROSS_WINDOW_RADIUS
) -> Dict[Position, int]:
    """Entries |k| + 1 along the row and column through the central 1."""
    ci, cj = center
    seed = {(ci, cj + k): abs(k) + 1 for k in range(-radius, radius + 1)}
    seed.update({(ci + k, cj): abs(k) + 1 for k in range(-radius, radius + 1)})
    return seed


def cross_window(
    center: Position = CROSS_WINDOW_CENTER, radius: int = CROSS_WINDOW_RADIUS
) -> TilingWindow:
    return determinant_fill(cross_seed(center, radius))


def staircase_spec() -> PeriodicTriangulationSpec:
    return PeriodicTriangulationSpec((Connecting(0, 0), Connecting(0, 1)), (-1, 1))


def square_spec() -> PeriodicTriangulationSpec:
    """A quadrilateral on the upper vertices 0, -1, -2 with the diagonal (-2, 0), then a triangle."""
    return PeriodicTriangulationSpec(
        (Connecting(0, 0), Connecting(-2, 0)),
        (-2, 1),
        (frozenset({UpperInternal(-2, 0)}), frozenset()),
    )


def derived_patch() -> FinitePatch:
    return psi_window(sample_window())


DEMOS: Dict[str, Callable[[], object]] = {
    "figure2": sample_window,
    "figure4": cross_window,
    "staircase": staircase_spec,
    "square": square_spec,
    "figure1": derived_patch,
}
