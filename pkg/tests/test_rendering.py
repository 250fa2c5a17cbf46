import pytest
from PIL import Image

from config import PNG_BACKGROUND_COLOR, PNG_HIGHLIGHT_COLOR
from src.logging_service import LogLevel, get_logging_service
from src.rendering import WindowRenderer, render_window_png
from src.tiling_core import TilingWindow

CELL = 40


@pytest.fixture
def small_window():
    return TilingWindow.from_rows(0, 0, ((1, 2), (1, 3)))


def test_render_shades_ones(small_window):
    image = WindowRenderer(cell_size=CELL).render(small_window)
    assert image.size == (3 * CELL, 3 * CELL)
    assert image.getpixel((CELL + 2, CELL + 2)) == PNG_HIGHLIGHT_COLOR
    assert image.getpixel((CELL + 2, 2 * CELL + 2)) == PNG_HIGHLIGHT_COLOR
    assert image.getpixel((2 * CELL + 2, CELL + 2)) == PNG_BACKGROUND_COLOR


def test_wide_entries_widen_their_column():
    w = TilingWindow.from_rows(0, 0, ((1, 10**30),))
    image = WindowRenderer(cell_size=CELL).render(w)
    assert image.size[0] > 3 * CELL
    assert image.size[1] == 2 * CELL


def test_save_png(small_window, tmp_path):
    path = render_window_png(small_window, tmp_path / "window.png", cell_size=CELL)
    with Image.open(path) as image:
        assert image.format == "PNG"
        assert image.size == (3 * CELL, 3 * CELL)
    assert any("window image" in e.message for e in get_logging_service().get_entries(LogLevel.INFO))


def test_save_failure_is_a_runtime_error(small_window, tmp_path):
    with pytest.raises(RuntimeError, match="Failed to write"):
        WindowRenderer().save(small_window, tmp_path / "missing" / "window.png")
