"""Plain-text documents for specs, windows, seeds and recovered patches.

Spec document::

    # comment
    period P dx dy
    conn x y                      (P lines, A_0..A_{P-1})
    internal alpha upper|lower p q

Window document::

    rows i0 i1
    cols j0 j1
    <one tab-separated line of decimal integers per row>

A seed document is a window document in which ``.`` marks unknown entries.
"""

import re
from typing import Dict, List, Tuple

from config import DEFAULT_WINDOW_STYLE, WINDOW_STYLES
from src.errors import DocumentSyntaxError, InvalidArcError, SpecValidationError
from src.strip_model import (
    Connecting,
    Edge,
    FinitePatch,
    PeriodicTriangulationSpec,
    arc_key,
    internal_arc,
    validate_spec,
)
from src.tiling_core import Position, TilingWindow

_TOKEN = re.compile(r"\S+")
_INTEGER = re.compile(r"[+-]?\d+")
_ENTRY = re.compile(r"\d+")

Token = Tuple[str, int]


def _lines(text: str) -> List[Tuple[int, List[Token]]]:
    """Non-empty lines with comments stripped, as (line number, [(token, column)])."""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(content)]
        if tokens:
            result.append((number, tokens))
    return result


def _int(token: Token, line: int, what: str) -> int:
    text, column = token
    if not _INTEGER.fullmatch(text):
        raise DocumentSyntaxError(f"{what} must be an integer, got {text!r}", line, column)
    return int(text)


def _expect(tokens: List[Token], count: int, line: int, usage: str) -> None:
    if len(tokens) != count:
        column = tokens[min(len(tokens), count) - 1][1] if tokens else 1
        raise DocumentSyntaxError(f"expected '{usage}'", line, column)


def parse_spec(text: str) -> PeriodicTriangulationSpec:
    """
    Parse and validate a spec document.

    Raises:
        DocumentSyntaxError: On malformed lines, with line and column
        SpecValidationError: If the spec does not present a triangulation
    """
    lines = _lines(text)
    if not lines or lines[0][1][0][0] != "period":
        where = lines[0][0] if lines else 1
        raise DocumentSyntaxError("a spec starts with 'period P dx dy'", where)

    header_line, header = lines[0]
    _expect(header, 4, header_line, "period P dx dy")
    period = _int(header[1], header_line, "period")
    if period < 1:
        raise DocumentSyntaxError("period must be at least 1", header_line, header[1][1])
    shift = (_int(header[2], header_line, "dx"), _int(header[3], header_line, "dy"))

    connecting: List[Connecting] = []
    internal: List[set] = [set() for _ in range(period)]
    for number, tokens in lines[1:]:
        keyword, column = tokens[0]
        if keyword == "conn":
            _expect(tokens, 3, number, "conn x y")
            if len(connecting) == period:
                raise DocumentSyntaxError(f"more than {period} conn lines", number, column)
            connecting.append(Connecting(_int(tokens[1], number, "x"), _int(tokens[2], number, "y")))
        elif keyword == "internal":
            _expect(tokens, 5, number, "internal alpha upper|lower p q")
            alpha = _int(tokens[1], number, "alpha")
            if not 0 <= alpha < period:
                raise DocumentSyntaxError(f"alpha must lie in 0..{period - 1}", number, tokens[1][1])
            kind, kind_column = tokens[2]
            if kind not in ("upper", "lower"):
                raise DocumentSyntaxError(f"arc kind must be upper or lower, got {kind!r}", number, kind_column)
            p, q = _int(tokens[3], number, "p"), _int(tokens[4], number, "q")
            try:
                internal[alpha].add(internal_arc(Edge(kind), p, q))
            except InvalidArcError as e:
                raise DocumentSyntaxError(str(e), number, tokens[3][1]) from e
        else:
            raise DocumentSyntaxError(f"unknown keyword {keyword!r}", number, column)

    if len(connecting) != period:
        raise DocumentSyntaxError(
            f"period {period} needs {period} conn lines, found {len(connecting)}", header_line
        )
    spec = PeriodicTriangulationSpec(tuple(connecting), shift, tuple(map(frozenset, internal)))
    report = validate_spec(spec)
    if not report.ok:
        raise SpecValidationError(report)
    return spec


def emit_spec(spec: PeriodicTriangulationSpec) -> str:
    """Canonical spec document; parse_spec reads it back unchanged."""
    lines = [f"period {spec.period} {spec.dx} {spec.dy}"]
    lines += [f"conn {arc.i} {arc.j}" for arc in spec.connecting]
    for alpha, arcs in enumerate(spec.internal):
        for arc in sorted(arcs, key=arc_key):
            lines.append(f"internal {alpha} {arc.edge.value} {arc.p} {arc.q}")
    return "\n".join(lines) + "\n"


def emit_patch(patch: FinitePatch) -> str:
    """List a recovered patch in spec-document style, plus its incomplete steps."""
    last = patch.first_alpha + len(patch.connecting) - 1
    lines = [f"# recovered patch, alpha {patch.first_alpha}..{last}"]
    lines += [f"conn {arc.i} {arc.j}" for arc in patch.connecting]
    for k, done in enumerate(patch.complete):
        alpha = patch.first_alpha + k
        if not done:
            continue
        for arc in patch.polygon_at(alpha).arcs():
            lines.append(f"internal {alpha} {arc.edge.value} {arc.p} {arc.q}")
    lines += [f"incomplete {alpha}" for alpha in patch.incomplete_steps]
    return "\n".join(lines) + "\n"


def _window_header(lines: List[Tuple[int, List[Token]]]) -> Tuple[range, range]:
    if len(lines) < 2:
        raise DocumentSyntaxError("a window starts with 'rows i0 i1' and 'cols j0 j1'", 1)
    bounds = []
    for (number, tokens), keyword in zip(lines[:2], ("rows", "cols")):
        if tokens[0][0] != keyword:
            raise DocumentSyntaxError(f"expected '{keyword}'", number, tokens[0][1])
        _expect(tokens, 3, number, f"{keyword} first last")
        lo, hi = _int(tokens[1], number, "first"), _int(tokens[2], number, "last")
        if hi < lo:
            raise DocumentSyntaxError(f"empty {keyword} interval {lo}..{hi}", number, tokens[2][1])
        bounds.append(range(lo, hi + 1))
    return bounds[0], bounds[1]


def _window_cells(text: str, allow_unknown: bool) -> Tuple[range, range, Dict[Position, int]]:
    lines = _lines(text)
    rows, cols = _window_header(lines)
    body = lines[2:]
    if len(body) != len(rows):
        where = body[-1][0] + 1 if body else lines[1][0] + 1
        raise DocumentSyntaxError(f"expected {len(rows)} rows of entries, found {len(body)}", where)
    cells: Dict[Position, int] = {}
    for i, (number, tokens) in zip(rows, body):
        if len(tokens) != len(cols):
            raise DocumentSyntaxError(
                f"row {i} has {len(tokens)} entries, expected {len(cols)}", number, tokens[-1][1]
            )
        for j, (text_value, column) in zip(cols, tokens):
            if allow_unknown and text_value == ".":
                continue
            if not _ENTRY.fullmatch(text_value) or int(text_value) < 1:
                raise DocumentSyntaxError(
                    f"entry {text_value!r} is not a positive decimal integer", number, column
                )
            cells[(i, j)] = int(text_value)
    return rows, cols, cells


def parse_window(text: str) -> TilingWindow:
    """
    Parse a window document.

    Raises:
        DocumentSyntaxError: On a malformed header, wrong shape or bad entry
    """
    rows, cols, cells = _window_cells(text, allow_unknown=False)
    return TilingWindow.from_mapping(cells, rows, cols)


def parse_seed(text: str) -> Tuple[range, range, Dict[Position, int]]:
    """Parse a seed document: the window's rows and columns and its known entries."""
    return _window_cells(text, allow_unknown=True)


def emit_window(w: TilingWindow, style: str = DEFAULT_WINDOW_STYLE) -> str:
    """
    Render a window.

    Args:
        w: Window
        style: "tsv" for a window document, "ascii" for aligned columns with
            row and column rulers

    Returns:
        Text ending in a newline
    """
    if style not in WINDOW_STYLES:
        raise ValueError(f"unknown window style {style!r}; choose from {WINDOW_STYLES}")
    if style == "tsv":
        lines = [f"rows {w.rows.start} {w.rows.stop - 1}", f"cols {w.cols.start} {w.cols.stop - 1}"]
        lines += ["\t".join(str(v) for v in row) for row in w.values]
        return "\n".join(lines) + "\n"

    width = max(len(str(x)) for x in [*w.cols, *(v for row in w.values for v in row)])
    label = max(len(str(i)) for i in w.rows)
    ruler = " " * label + " | " + " ".join(str(j).rjust(width) for j in w.cols)
    lines = [ruler, "-" * len(ruler)]
    for i, row in zip(w.rows, w.values):
        lines.append(str(i).rjust(label) + " | " + " ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def format_seed(rows: range, cols: range, cells: Dict[Position, int]) -> str:
    """Seed document with '.' at unknown entries."""
    lines = [f"rows {rows.start} {rows.stop - 1}", f"cols {cols.start} {cols.stop - 1}"]
    for i in rows:
        lines.append("\t".join(str(cells[(i, j)]) if (i, j) in cells else "." for j in cols))
    return "\n".join(lines) + "\n"


def parse_column(text: str) -> List[int]:
    """Whitespace-separated positive integers, as given to the frieze command."""
    values: List[int] = []
    for match in _TOKEN.finditer(text):
        if not _ENTRY.fullmatch(match.group()):
            raise DocumentSyntaxError(f"{match.group()!r} is not a positive integer", 1, match.start() + 1)
        values.append(int(match.group()))
    return values


def parse_polygon(text: str) -> Tuple[int, List[Tuple[int, int]]]:
    """
    Parse a polygon document: ``vertices N`` followed by ``diagonal a b`` lines.

    Returns:
        (vertex count, diagonals)
    """
    lines = _lines(text)
    if not lines or lines[0][1][0][0] != "vertices":
        raise DocumentSyntaxError("a polygon starts with 'vertices N'", lines[0][0] if lines else 1)
    number, tokens = lines[0]
    _expect(tokens, 2, number, "vertices N")
    count = _int(tokens[1], number, "vertex count")
    diagonals: List[Tuple[int, int]] = []
    for number, tokens in lines[1:]:
        if tokens[0][0] != "diagonal":
            raise DocumentSyntaxError(f"unknown keyword {tokens[0][0]!r}", number, tokens[0][1])
        _expect(tokens, 3, number, "diagonal a b")
        diagonals.append((_int(tokens[1], number, "a"), _int(tokens[2], number, "b")))
    return count, diagonals
