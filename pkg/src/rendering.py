"""PNG rendering of tiling windows."""

from pathlib import Path
from typing import List, Optional, Union

from PIL import Image, ImageDraw, ImageFont

from config import (
    PNG_BACKGROUND_COLOR,
    PNG_CELL_SIZE,
    PNG_GRID_COLOR,
    PNG_HIGHLIGHT_COLOR,
    PNG_TEXT_COLOR,
)
from src.logging_service import get_logging_service
from src.tiling_core import TilingWindow


class WindowRenderer:
    """Draws a window as a grid of numbered cells, entries equal to 1 shaded."""

    def __init__(self, cell_size: int = PNG_CELL_SIZE, font: Optional[ImageFont.ImageFont] = None):
        """
        Initialize renderer.

        Args:
            cell_size: Minimum cell edge in pixels
            font: Font for entries and rulers; Pillow's default bitmap font if omitted
        """
        self.cell_size = cell_size
        self.font = font or ImageFont.load_default()
        self.logger = get_logging_service()

    def _text_size(self, text: str):
        left, top, right, bottom = self.font.getbbox(text)
        return right - left, bottom - top

    def render(self, w: TilingWindow) -> Image.Image:
        """
        Render a window with row and column rulers.

        Args:
            w: Window to draw

        Returns:
            RGB image
        """
        labels = [str(j) for j in w.cols]
        widths: List[int] = []
        for k, j in enumerate(w.cols):
            texts = [labels[k]] + [str(row[k]) for row in w.values]
            widest = max(self._text_size(t)[0] for t in texts)
            widths.append(max(self.cell_size, widest + 8))
        ruler = max(self._text_size(str(i))[0] for i in w.rows) + 8
        ruler = max(ruler, self.cell_size)
        height = self.cell_size

        image = Image.new(
            "RGB",
            (ruler + sum(widths), height * (len(w.rows) + 1)),
            PNG_BACKGROUND_COLOR,
        )
        draw = ImageDraw.Draw(image)

        def centered(x0: int, y0: int, width: int, text: str) -> None:
            tw, th = self._text_size(text)
            draw.text((x0 + (width - tw) / 2, y0 + (height - th) / 2), text, fill=PNG_TEXT_COLOR, font=self.font)

        x = ruler
        for width, label in zip(widths, labels):
            centered(x, 0, width, label)
            x += width
        for r, (i, row) in enumerate(zip(w.rows, w.values), start=1):
            y = r * height
            centered(0, y, ruler, str(i))
            x = ruler
            for width, value in zip(widths, row):
                fill = PNG_HIGHLIGHT_COLOR if value == 1 else PNG_BACKGROUND_COLOR
                draw.rectangle([x, y, x + width - 1, y + height - 1], fill=fill, outline=PNG_GRID_COLOR)
                centered(x, y, width, str(value))
                x += width
        return image

    def save(self, w: TilingWindow, path: Union[str, Path]) -> Path:
        """
        Render a window and write it as PNG.

        Raises:
            RuntimeError: If the image cannot be written
        """
        path = Path(path)
        try:
            self.render(w).save(path, format="PNG")
        except OSError as e:
            raise RuntimeError(f"Failed to write {path}: {e}") from e
        self.logger.info(f"Wrote {w.shape[0]}x{w.shape[1]} window image to {path}")
        return path


def render_window_png(w: TilingWindow, path: Union[str, Path], cell_size: int = PNG_CELL_SIZE) -> Path:
    """Write a PNG of the window to path."""
    return WindowRenderer(cell_size).save(w, path)
