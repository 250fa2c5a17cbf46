"""Tiling windows, determinant checks, c/d quantities and determinant filling.

Windows use absolute coordinates (i, j): i is the row and grows downward,
j is the column and grows to the right.
"""

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from config import PTOLEMY_SAMPLE_SEED, PTOLEMY_TUPLE_CAP
from src.errors import (
    InconsistentWindowError,
    InexactDivisionError,
    InvalidWindowError,
    LinearizationError,
    NonPositiveEntryError,
    UnsolvableFillError,
    WindowTooSmallError,
)
from src.logging_service import get_logging_service
from src.reports import Report

Position = Tuple[int, int]


@dataclass(frozen=True)
class TilingWindow:
    """Rectangular block of an SL2-tiling.

    Attributes:
        rows: Absolute row indices covered, top to bottom
        cols: Absolute column indices covered, left to right
        values: One tuple per row
    """

    rows: range
    cols: range
    values: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        values = tuple(tuple(row) for row in self.values)
        object.__setattr__(self, "values", values)
        if len(self.rows) < 1 or len(self.cols) < 1 or self.rows.step != 1 or self.cols.step != 1:
            raise InvalidWindowError("a window covers a non-empty block of consecutive rows and columns")
        if len(values) != len(self.rows):
            raise InvalidWindowError(f"expected {len(self.rows)} rows, got {len(values)}")
        for i, row in zip(self.rows, values):
            if len(row) != len(self.cols):
                raise InvalidWindowError(f"row {i} has {len(row)} entries, expected {len(self.cols)}")
            for j, v in zip(self.cols, row):
                if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                    raise InvalidWindowError(f"entry at ({i}, {j}) is {v!r}, not a positive integer")

    @classmethod
    def from_rows(cls, top: int, left: int, rows: Sequence[Sequence[int]]) -> "TilingWindow":
        """Build a window whose top-left entry sits at (top, left)."""
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        return cls(range(top, top + len(rows)), range(left, left + width), tuple(map(tuple, rows)))

    @classmethod
    def from_mapping(cls, cells: Mapping[Position, int], rows: range, cols: range) -> "TilingWindow":
        return cls(rows, cols, tuple(tuple(cells[(i, j)] for j in cols) for i in rows))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __contains__(self, position: Position) -> bool:
        i, j = position
        return i in self.rows and j in self.cols

    def __getitem__(self, position: Position) -> int:
        i, j = position
        if (i, j) not in self:
            raise KeyError(position)
        return self.values[i - self.rows.start][j - self.cols.start]

    def positions(self) -> Iterator[Position]:
        for i in self.rows:
            for j in self.cols:
                yield (i, j)

    def as_mapping(self) -> Dict[Position, int]:
        return {p: self[p] for p in self.positions()}

    def ones(self) -> List[Position]:
        return [p for p in self.positions() if self[p] == 1]

    def sub(self, rows: range, cols: range) -> "TilingWindow":
        """Restrict to a sub-block."""
        for i in (rows.start, rows.stop - 1):
            for j in (cols.start, cols.stop - 1):
                if (i, j) not in self:
                    raise InvalidWindowError(f"({i}, {j}) lies outside the window")
        return TilingWindow.from_mapping(self.as_mapping(), rows, cols)

    def with_value(self, position: Position, value: int) -> "TilingWindow":
        cells = self.as_mapping()
        cells[position] = value
        return TilingWindow.from_mapping(cells, self.rows, self.cols)


class DerivedKind(Enum):
    C = "c"
    D = "d"


@dataclass(frozen=True)
class DerivedValue:
    """c_ij (two rows) or d_ij (two columns) of a window."""

    kind: DerivedKind
    indices: Tuple[int, int]
    value: int

    def __int__(self) -> int:
        return self.value


def _det(a: int, b: int, c: int, d: int) -> int:
    return a * d - b * c


def check_determinants(w: TilingWindow) -> Report:
    """List every adjacent 2x2 block whose determinant is not 1."""
    report = Report("determinants")
    for i in w.rows[:-1]:
        for j in w.cols[:-1]:
            report.checked += 1
            det = _det(w[i, j], w[i, j + 1], w[i + 1, j], w[i + 1, j + 1])
            if det != 1:
                report.add("determinant", (i, j), f"block at ({i}, {j}) has determinant {det}")
    return report


def _c_candidates(w: TilingWindow, i: int, j: int) -> List[int]:
    return [_det(w[i, a], w[i, a + 1], w[j, a], w[j, a + 1]) for a in w.cols[:-1]]


def _d_candidates(w: TilingWindow, i: int, j: int) -> List[int]:
    return [_det(w[a, i], w[a, j], w[a + 1, i], w[a + 1, j]) for a in w.rows[:-1]]


def _derived(w: TilingWindow, kind: DerivedKind, i: int, j: int) -> DerivedValue:
    if i >= j:
        raise InvalidWindowError(f"{kind.value}_{{{i},{j}}} needs i < j")
    inside, across = (w.rows, w.cols) if kind is DerivedKind.C else (w.cols, w.rows)
    line = "rows" if kind is DerivedKind.C else "columns"
    if i not in inside or j not in inside:
        raise WindowTooSmallError(f"{line} {i} and {j} are not both inside the window")
    if len(across) < 2:
        raise WindowTooSmallError(f"{kind.value}_{{{i},{j}}} needs two adjacent {'columns' if kind is DerivedKind.C else 'rows'}")
    candidates = _c_candidates(w, i, j) if kind is DerivedKind.C else _d_candidates(w, i, j)
    if len(set(candidates)) != 1:
        raise InconsistentWindowError(
            f"{kind.value}_{{{i},{j}}} depends on the auxiliary index: {candidates}; the window is not an SL2-tiling"
        )
    return DerivedValue(kind, (i, j), candidates[0])


def c_value(w: TilingWindow, i: int, j: int) -> DerivedValue:
    """
    c_ij = det [[t_ia, t_i,a+1], [t_ja, t_j,a+1]], the same for every column pair a, a+1.

    Raises:
        WindowTooSmallError: If rows i, j or two adjacent columns are missing
        InconsistentWindowError: If the determinant changes with a
    """
    return _derived(w, DerivedKind.C, i, j)


def d_value(w: TilingWindow, i: int, j: int) -> DerivedValue:
    """d_ij = det [[t_ai, t_aj], [t_a+1,i, t_a+1,j]], the same for every row pair a, a+1."""
    return _derived(w, DerivedKind.D, i, j)


def _index_tuples(pool: range, k: int, cap: int, rng: random.Random) -> Iterator[Tuple[int, ...]]:
    if comb(len(pool), k) <= cap:
        yield from combinations(pool, k)
        return
    for _ in range(cap):
        yield tuple(sorted(rng.sample(pool, k)))


def _derived_table(w: TilingWindow, kind: DerivedKind, report: Report) -> Dict[Tuple[int, int], int]:
    lines, across = (w.rows, w.cols) if kind is DerivedKind.C else (w.cols, w.rows)
    table: Dict[Tuple[int, int], int] = {}
    if len(across) < 2:
        return table
    for i, j in combinations(lines, 2):
        candidates = _c_candidates(w, i, j) if kind is DerivedKind.C else _d_candidates(w, i, j)
        report.checked += 1
        if len(set(candidates)) != 1:
            report.add(f"{kind.value}-independence", (i, j), f"values {candidates} differ")
        value = candidates[0]
        if value < 1:
            report.add(f"{kind.value}-positivity", (i, j), f"{kind.value}_{{{i},{j}}} = {value}")
        table[(i, j)] = value
    return table


def ptolemy_report(
    w: TilingWindow, cap: int = PTOLEMY_TUPLE_CAP, seed: int = PTOLEMY_SAMPLE_SEED
) -> Report:
    """
    Verify the Ptolemy-type identities among c, d and the entries of a window.

    Families checked, each over every fitting index tuple (or `cap` tuples
    drawn with a seeded generator when there are more):

    - c_ik c_jl = c_ij c_kl + c_il c_jk for rows i<j<k<l, and the d analogue
    - t_ja c_ik = t_ia c_jk + t_ka c_ij for rows i<j<k and any column a,
      and t_aj d_ik = t_ai d_jk + t_ak d_ij for columns i<j<k and any row a
    - det [[t_ip, t_iq], [t_jp, t_jq]] = c_ij d_pq for rows i<j, columns p<q
    - every c and d is positive

    Args:
        w: Window to check
        cap: Tuple count above which a family is sampled
        seed: Seed of the sampling generator

    Returns:
        Report of all violations

    Raises:
        WindowTooSmallError: If the window is not at least 2x2
    """
    if len(w.rows) < 2 or len(w.cols) < 2:
        raise WindowTooSmallError(f"Ptolemy identities need at least a 2x2 window, got {w.shape}")
    rng = random.Random(seed)
    report = Report("ptolemy")
    c = _derived_table(w, DerivedKind.C, report)
    d = _derived_table(w, DerivedKind.D, report)

    for name, table, lines in (("c-quadrilateral", c, w.rows), ("d-quadrilateral", d, w.cols)):
        for i, j, k, l in _index_tuples(lines, 4, cap, rng):
            report.checked += 1
            left = table[i, k] * table[j, l]
            right = table[i, j] * table[k, l] + table[i, l] * table[j, k]
            if left != right:
                report.add(name, (i, j, k, l), f"{left} != {right}")

    for i, j, k in _index_tuples(w.rows, 3, cap, rng):
        for a in w.cols:
            report.checked += 1
            left = w[j, a] * c[i, k]
            right = w[i, a] * c[j, k] + w[k, a] * c[i, j]
            if left != right:
                report.add("c-entry", (i, j, k, a), f"{left} != {right}")
    for i, j, k in _index_tuples(w.cols, 3, cap, rng):
        for a in w.rows:
            report.checked += 1
            left = w[a, j] * d[i, k]
            right = w[a, i] * d[j, k] + w[a, k] * d[i, j]
            if left != right:
                report.add("d-entry", (i, j, k, a), f"{left} != {right}")

    pairs = comb(len(w.rows), 2) * comb(len(w.cols), 2)
    if pairs <= cap:
        minors = (
            (i, j, p, q)
            for i, j in combinations(w.rows, 2)
            for p, q in combinations(w.cols, 2)
        )
    else:
        minors = (
            tuple(sorted(rng.sample(w.rows, 2))) + tuple(sorted(rng.sample(w.cols, 2)))
            for _ in range(cap)
        )
    for i, j, p, q in minors:
        report.checked += 1
        left = _det(w[i, p], w[i, q], w[j, p], w[j, q])
        right = c[i, j] * d[p, q]
        if left != right:
            report.add("factorization", (i, j, p, q), f"{left} != {c[i, j]} * {d[p, q]}")

    get_logging_service().debug(
        f"Ptolemy check on {w.shape[0]}x{w.shape[1]} window: {report.checked} instances"
    )
    return report


def ones_quadrant_check(w: TilingWindow) -> Report:
    """No two ones may sit strictly north-west/south-east of each other."""
    report = Report("ones quadrant")
    for (i, j), (k, l) in combinations(w.ones(), 2):
        report.checked += 1
        if (i < k and j < l) or (i > k and j > l):
            report.add("quadrant", (i, j, k, l), f"ones at ({i}, {j}) and ({k}, {l})")
    return report


def repeated_value_check(w: TilingWindow) -> Report:
    """
    Equal entries in a row force a strict decrease in the row above.

    For t_ij = t_ik with j < k and row i-1 in the window, requires
    t_i-1,j > t_i-1,k; symmetrically t_ij = t_kj with i < k requires
    t_i,j-1 > t_k,j-1.
    """
    report = Report("repeated values")
    for i in w.rows[1:]:
        for j, k in combinations(w.cols, 2):
            if w[i, j] != w[i, k]:
                continue
            report.checked += 1
            if not w[i - 1, j] > w[i - 1, k]:
                report.add(
                    "row-repeat",
                    (i, j, k),
                    f"t({i},{j}) = t({i},{k}) = {w[i, j]} but row above has {w[i - 1, j]}, {w[i - 1, k]}",
                )
    for j in w.cols[1:]:
        for i, k in combinations(w.rows, 2):
            if w[i, j] != w[k, j]:
                continue
            report.checked += 1
            if not w[i, j - 1] > w[k, j - 1]:
                report.add(
                    "column-repeat",
                    (i, k, j),
                    f"t({i},{j}) = t({k},{j}) = {w[i, j]} but column left has {w[i, j - 1]}, {w[k, j - 1]}",
                )
    return report


@dataclass(frozen=True)
class Linearization:
    """Coefficients gamma with line_{k-1} + line_{k+1} = gamma_k line_k.

    Row coefficients equal c_{k-1,k+1}; column coefficients equal d_{k-1,k+1}.
    """

    rows: Dict[int, int] = field(default_factory=dict)
    cols: Dict[int, int] = field(default_factory=dict)


def _line_coefficient(
    w: TilingWindow, kind: DerivedKind, k: int
) -> int:
    if kind is DerivedKind.C:
        triples = [(w[k - 1, a], w[k, a], w[k + 1, a]) for a in w.cols]
        what = f"row {k}"
    else:
        triples = [(w[a, k - 1], w[a, k], w[a, k + 1]) for a in w.rows]
        what = f"column {k}"
    ratios = {Fraction(before + after, middle) for before, middle, after in triples}
    if len(ratios) != 1:
        raise LinearizationError(f"{what}: neighbours are not a constant multiple ({sorted(ratios)})")
    gamma = ratios.pop()
    if gamma.denominator != 1:
        raise LinearizationError(f"{what}: ratio {gamma} is not an integer")
    across = w.cols if kind is DerivedKind.C else w.rows
    if len(across) >= 2:
        expected = _derived(w, kind, k - 1, k + 1).value
        if expected != gamma:
            raise LinearizationError(
                f"{what}: ratio {gamma} differs from {kind.value}_{{{k - 1},{k + 1}}} = {expected}"
            )
    return int(gamma)


def linearization_coefficients(w: TilingWindow) -> Linearization:
    """
    Three-term coefficients of every interior row and column.

    Raises:
        WindowTooSmallError: If the window has fewer than 3 rows and 3 columns
        LinearizationError: If a ratio is not constant, not integral, or not
            equal to the matching c or d value
    """
    if len(w.rows) < 3 and len(w.cols) < 3:
        raise WindowTooSmallError(f"linearization needs 3 rows or 3 columns, got {w.shape}")
    rows = {k: _line_coefficient(w, DerivedKind.C, k) for k in w.rows[1:-1]}
    cols = {k: _line_coefficient(w, DerivedKind.D, k) for k in w.cols[1:-1]}
    return Linearization(rows, cols)


def linearization_report(w: TilingWindow) -> Report:
    """Non-raising form of linearization_coefficients, one entry per bad line."""
    report = Report("linearization")
    for kind, lines in ((DerivedKind.C, w.rows), (DerivedKind.D, w.cols)):
        for k in lines[1:-1]:
            report.checked += 1
            try:
                _line_coefficient(w, kind, k)
            except (LinearizationError, InconsistentWindowError) as e:
                report.add("row" if kind is DerivedKind.C else "column", (k,), str(e))
    return report


def _solve_block(
    known: Mapping[Position, int], i: int, j: int
) -> Optional[Tuple[Position, int]]:
    """Value of the single unknown cell of the block at (i, j), if there is one."""
    cells = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]
    missing = [p for p in cells if p not in known]
    if len(missing) != 1:
        return None
    target = missing[0]
    a, b, c, d = (known.get(p) for p in cells)
    # ad - bc = 1
    if target == cells[3]:
        numerator, divisor = 1 + b * c, a
    elif target == cells[0]:
        numerator, divisor = 1 + b * c, d
    elif target == cells[1]:
        numerator, divisor = a * d - 1, c
    else:
        numerator, divisor = a * d - 1, b
    value, rest = divmod(numerator, divisor)
    if rest:
        raise InexactDivisionError(
            f"{numerator}/{divisor} is not an integer at {target}", target
        )
    if value < 1:
        raise NonPositiveEntryError(f"computed entry {value} at {target}", target)
    return target, value


def propagate_determinants(
    seeds: Mapping[Position, int], rows: range, cols: range
) -> Dict[Position, int]:
    """
    Close adjacent 2x2 blocks with one unknown until nothing changes.

    Only cells inside rows x cols are computed; cells never closed are
    simply absent from the result.

    Raises:
        NonPositiveEntryError: If a seed is not a positive integer
        InexactDivisionError: If a block needs a non-integral value
    """
    known: Dict[Position, int] = {}
    for position, value in seeds.items():
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise NonPositiveEntryError(f"seed {value!r} at {position} is not positive", position)
        known[position] = value

    def blocks_around(i: int, j: int) -> List[Position]:
        return [
            (a, b)
            for a in (i - 1, i)
            for b in (j - 1, j)
            if a in rows and a + 1 in rows and b in cols and b + 1 in cols
        ]

    queue = deque(sorted({blk for p in known for blk in blocks_around(*p)}))
    while queue:
        i, j = queue.popleft()
        solved = _solve_block(known, i, j)
        if solved is None:
            continue
        target, value = solved
        known[target] = value
        queue.extend(blocks_around(*target))
    return known


def determinant_fill(
    partial: Mapping[Position, int],
    rows: Optional[range] = None,
    cols: Optional[range] = None,
) -> TilingWindow:
    """
    Fill a window from seed entries using the determinant rule.

    Each unknown cell is computed as the single unknown of an adjacent 2x2
    block via d = (1 + bc)/a and its three rotations. Seeds are kept as given.

    Args:
        partial: Seed entries by absolute position
        rows: Rows of the requested window; the seeds' rows by default
        cols: Columns of the requested window; the seeds' columns by default

    Returns:
        The filled window

    Raises:
        UnsolvableFillError: If some cell of the window is never reached
        InexactDivisionError: If a division is not exact
        NonPositiveEntryError: If a seed or computed entry is not positive
    """
    if not partial:
        raise UnsolvableFillError("no seed entries given")
    seed_rows = [i for i, _ in partial]
    seed_cols = [j for _, j in partial]
    rows = rows if rows is not None else range(min(seed_rows), max(seed_rows) + 1)
    cols = cols if cols is not None else range(min(seed_cols), max(seed_cols) + 1)
    box_rows = range(min(rows.start, min(seed_rows)), max(rows.stop, max(seed_rows) + 1))
    box_cols = range(min(cols.start, min(seed_cols)), max(cols.stop, max(seed_cols) + 1))

    known = propagate_determinants(partial, box_rows, box_cols)
    for i in rows:
        for j in cols:
            if (i, j) not in known:
                raise UnsolvableFillError(f"no block with a single unknown reaches ({i}, {j})", (i, j))
    get_logging_service().debug(
        f"Filled {len(rows)}x{len(cols)} window from {len(partial)} seeds"
    )
    return TilingWindow.from_mapping(known, rows, cols)
