#!/usr/bin/env python3
"""Main entry point for strip-tilings.

Usage:
    Recommended: Use uv package manager to run the script:
        uv run main.py <command> [arguments]

    Examples:
        uv run main.py demo staircase > staircase.spec
        uv run main.py tile --spec staircase.spec --rows -3 3 --cols -3 3
        uv run main.py demo figure2 | uv run main.py extract --window -
        uv run main.py demo figure4 | uv run main.py check --window -
        uv run main.py frieze --column "1 3 2 1"
        uv run main.py roundtrip --spec staircase.spec --rows 0 19 --cols 0 19

    Files may be given as "-" to read standard input.

Exit codes: 0 clean, 1 a check or round trip found violations, 2 bad input.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from config import DEFAULT_WINDOW_STYLE, WINDOW_STYLES
from src.cli_io import (
    emit_patch,
    emit_spec,
    emit_window,
    parse_column,
    parse_polygon,
    parse_seed,
    parse_spec,
    parse_window,
)
from src.errors import TilingError, WindowTooSmallError
from src.fixtures import DEMOS
from src.logging_service import get_logging_service
from src.phi_map import phi_window
from src.polygon_frieze import (
    PolygonTriangulation,
    frieze_column,
    frieze_from_boundary_column,
    quiddity_of,
    triangulation_from_ones,
)
from src.psi_map import psi_window, roundtrip_check
from src.reports import Report
from src.rendering import render_window_png
from src.strip_model import FinitePatch, PeriodicTriangulationSpec, closed_range
from src.tiling_core import (
    TilingWindow,
    check_determinants,
    determinant_fill,
    linearization_report,
    ones_quadrant_check,
    ptolemy_report,
    repeated_value_check,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT_ERROR = 2

# Violations printed per report unless --all is given
SHOWN_VIOLATIONS = 10


class TilingApp:
    """Command dispatcher; every command returns an exit code."""

    def __init__(self):
        """Initialize the application."""
        self.logger = get_logging_service()

    def _read(self, name: str) -> str:
        if name == "-":
            return sys.stdin.read()
        return Path(name).read_text(encoding="utf-8")

    def _write_window(self, w: TilingWindow, style: str, png: Optional[str]) -> None:
        sys.stdout.write(emit_window(w, style))
        if png:
            render_window_png(w, png)

    def _print_report(self, report: Report, show_all: bool) -> None:
        status = "ok" if report.ok else f"{len(report.violations)} violation(s)"
        print(f"{report.name}: {status} ({report.checked} checked)")
        shown = report.violations if show_all else report.violations[:SHOWN_VIOLATIONS]
        for violation in shown:
            print(f"  {violation}")
        if len(shown) < len(report.violations):
            print(f"  ... {len(report.violations) - len(shown)} more (use --all)")

    def tile(self, args: argparse.Namespace) -> int:
        spec = parse_spec(self._read(args.spec))
        rows, cols = closed_range(*args.rows), closed_range(*args.cols)
        self.logger.info(f"Generating rows {args.rows} x cols {args.cols}")
        window = phi_window(spec, rows, cols, verify=args.verify)
        self._write_window(window, args.style, args.png)
        return EXIT_OK

    def extract(self, args: argparse.Namespace) -> int:
        patch = psi_window(parse_window(self._read(args.window)))
        sys.stdout.write(emit_patch(patch))
        return EXIT_OK

    def check(self, args: argparse.Namespace) -> int:
        window = parse_window(self._read(args.window))
        checks = [check_determinants, ones_quadrant_check, repeated_value_check, ptolemy_report, linearization_report]
        clean = True
        for check in checks:
            try:
                report = check(window)
            except WindowTooSmallError as e:
                self.logger.warning(f"Skipping {check.__name__}: {e}")
                continue
            self._print_report(report, args.all)
            if not report.ok:
                self.logger.info(f"{report.name} failed")
                clean = False
        return EXIT_OK if clean else EXIT_VIOLATIONS

    def fill(self, args: argparse.Namespace) -> int:
        seed_rows, seed_cols, cells = parse_seed(self._read(args.seed))
        rows = closed_range(*args.rows) if args.rows else seed_rows
        cols = closed_range(*args.cols) if args.cols else seed_cols
        window = determinant_fill(cells, rows, cols)
        self._write_window(window, args.style, args.png)
        return EXIT_OK

    def frieze(self, args: argparse.Namespace) -> int:
        if args.column is not None:
            grid = frieze_from_boundary_column(parse_column(args.column))
            triangulation = triangulation_from_ones(grid)
            print(f"# frieze of a {grid.n_plus_1}-gon, width {grid.width}")
            for a in range(grid.n_plus_1 + 1):
                print(f"{a}:\t" + "\t".join(str(grid.entries[(a, b)]) for b in range(a + 1, a + grid.n_plus_1)))
        else:
            count, diagonals = parse_polygon(self._read(args.polygon))
            triangulation = PolygonTriangulation(count, frozenset(diagonals))
            print(f"# frieze of a {count}-gon")
            for a in range(count):
                print(f"{a}:\t" + "\t".join(str(v) for v in frieze_column(triangulation, a)))
        print("quiddity " + " ".join(str(c) for c in quiddity_of(triangulation).counts))
        for a, b in sorted(triangulation.diagonals):
            print(f"diagonal {a} {b}")
        return EXIT_OK

    def roundtrip(self, args: argparse.Namespace) -> int:
        spec = parse_spec(self._read(args.spec))
        report = roundtrip_check(spec, closed_range(*args.rows), closed_range(*args.cols))
        self._print_report(report, show_all=True)
        return EXIT_OK if report.ok else EXIT_VIOLATIONS

    def demo(self, args: argparse.Namespace) -> int:
        fixture = DEMOS[args.name]()
        if isinstance(fixture, TilingWindow):
            self._write_window(fixture, args.style, args.png)
        elif isinstance(fixture, PeriodicTriangulationSpec):
            sys.stdout.write(emit_spec(fixture))
        elif isinstance(fixture, FinitePatch):
            sys.stdout.write("# derived from the figure2 window, not transcribed\n")
            sys.stdout.write(emit_patch(fixture))
        return EXIT_OK

    def run(self, args: argparse.Namespace) -> int:
        """Run one command, mapping library errors to exit code 2."""
        try:
            return getattr(self, args.command)(args)
        except (TilingError, OSError, RuntimeError) as e:
            self.logger.error(f"{args.command}: {e}")
            return EXIT_INPUT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="strip-tilings - SL2-tilings and triangulations of the strip"
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Show debug messages on stderr",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def interval(sub: argparse.ArgumentParser, name: str, required: bool) -> None:
        sub.add_argument(
            f"--{name}",
            type=int,
            nargs=2,
            metavar=("FIRST", "LAST"),
            required=required,
            help=f"Inclusive {name} interval",
        )

    def output(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--style", choices=WINDOW_STYLES, default=DEFAULT_WINDOW_STYLE, help="Window text style")
        sub.add_argument("--png", metavar="FILE", help="Also draw the window to a PNG file")

    tile = commands.add_parser("tile", help="Window of the tiling of a spec")
    tile.add_argument("--spec", required=True, help="Spec document")
    interval(tile, "rows", True)
    interval(tile, "cols", True)
    tile.add_argument("--verify", action="store_true", help="Re-check every entry by its frieze value")
    output(tile)

    extract = commands.add_parser("extract", help="Triangulation patch certified by a window")
    extract.add_argument("--window", required=True, help="Window document")

    check = commands.add_parser("check", help="Run every tiling check on a window")
    check.add_argument("--window", required=True, help="Window document")
    check.add_argument("--all", action="store_true", help="Print every violation")

    fill = commands.add_parser("fill", help="Fill a window from seed entries")
    fill.add_argument("--seed", required=True, help="Seed document ('.' marks unknown entries)")
    interval(fill, "rows", False)
    interval(fill, "cols", False)
    output(fill)

    frieze = commands.add_parser("frieze", help="Frieze from a column or a triangulated polygon")
    source = frieze.add_mutually_exclusive_group(required=True)
    source.add_argument("--column", help='Edge-to-edge column, e.g. "1 3 2 1"')
    source.add_argument("--polygon", help="Polygon document")

    roundtrip = commands.add_parser("roundtrip", help="Compare a spec with its window both ways")
    roundtrip.add_argument("--spec", required=True, help="Spec document")
    interval(roundtrip, "rows", True)
    interval(roundtrip, "cols", True)

    demo = commands.add_parser("demo", help="Print a bundled example")
    demo.add_argument("name", choices=sorted(DEMOS))
    output(demo)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        get_logging_service().set_console_level("DEBUG")
    return TilingApp().run(args)


if __name__ == "__main__":
    sys.exit(main())
