import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ContinuantError, InvalidArcError, InvalidTriangulationError, NotAFriezeError
from src.polygon_frieze import (
    PolygonTriangulation,
    Quiddity,
    all_triangulations,
    continuant,
    frieze_column,
    frieze_from_boundary_column,
    frieze_value,
    quiddity_of,
    random_triangulation,
    triangles,
    triangulation_from_ones,
)

FAN_HEXAGON = PolygonTriangulation(6, frozenset({(0, 2), (0, 3), (0, 4)}))
PENTAGON = PolygonTriangulation(5, frozenset({(1, 3), (1, 4)}))

polygons = st.builds(
    lambda size, seed: random_triangulation(size, random.Random(seed)),
    st.integers(3, 12),
    st.integers(0, 2**32 - 1),
)


@pytest.mark.parametrize(
    "pt, expected",
    (
        (PolygonTriangulation(3), (1, 1, 1)),
        (PENTAGON, (1, 3, 1, 2, 2)),
        (FAN_HEXAGON, (4, 1, 2, 2, 2, 1)),
        (PolygonTriangulation(4, frozenset({(1, 3)})), (1, 2, 1, 2)),
        (PolygonTriangulation(4, frozenset({(0, 2)})), (2, 1, 2, 1)),
        (PolygonTriangulation(5, frozenset({(0, 2), (0, 3)})), (3, 1, 2, 2, 1)),
    ),
)
def test_quiddity_examples(pt, expected):
    assert quiddity_of(pt).counts == expected


@given(polygons)
def test_quiddity_sums_and_ears(pt):
    q = quiddity_of(pt)
    assert sum(q.counts) == 3 * (pt.n - 1)
    assert q.counts.count(1) >= 2
    assert len(triangles(pt)) == pt.n - 1


@pytest.mark.parametrize(
    "counts",
    ((1, 1, 2), (1, 3, 1, 2, 1), (0, 3, 1, 2, 3), (2, 2, 2, 2, 1)),
)
def test_invalid_quiddity_sequences(counts):
    with pytest.raises(InvalidTriangulationError):
        Quiddity(counts)


@pytest.mark.parametrize(
    "values, expected",
    (
        ((), 1),
        ((3,), 3),
        ((3, 1), 2),
        ((2, 2, 2), 4),
        ((3, 3, 3), 21),
    ),
)
def test_continuant_examples(values, expected):
    assert continuant(values) == expected


def test_continuant_rejects_non_quiddity_segment():
    with pytest.raises(ContinuantError):
        continuant((1, 1, 1))


@pytest.mark.parametrize(
    "a, b, expected",
    (
        (0, 1, 1),
        (0, 2, 3),
        (0, 3, 2),
        (0, 4, 1),
        (2, 4, 2),
        (1, 3, 1),
        (3, 1, 1),
    ),
)
def test_frieze_value_examples(a, b, expected):
    assert frieze_value(PENTAGON, a, b) == expected


@pytest.mark.parametrize("a, b", ((2, 2), (0, 5), (-1, 2)))
def test_frieze_value_rejects_bad_pairs(a, b):
    with pytest.raises(InvalidArcError):
        frieze_value(PENTAGON, a, b)


def test_frieze_value_is_one_exactly_on_edges_and_diagonals():
    for size in range(3, 9):
        for pt in all_triangulations(size):
            for a, b in combinations(range(size), 2):
                assert (frieze_value(pt, a, b) == 1) == pt.is_edge_or_diagonal(a, b)


def test_all_triangulations_counts_catalan_numbers():
    assert [len(all_triangulations(size)) for size in range(3, 9)] == [1, 2, 5, 14, 42, 132]


def test_column_matches_pointwise_values():
    for size in range(3, 9):
        for pt in all_triangulations(size):
            for a in range(size):
                column = frieze_column(pt, a)
                assert column == [frieze_value(pt, a, (a + k) % size) for k in range(1, size)]


@given(polygons)
def test_propagation_agrees_with_continuants(pt):
    grid = frieze_from_boundary_column(frieze_column(pt, 0))
    for a in range(pt.n_plus_1):
        for b in range(a + 1, a + pt.n_plus_1):
            assert grid.value(a, b) == frieze_value(pt, a, b % pt.n_plus_1)


@given(polygons)
def test_triangulation_is_read_back_from_ones(pt):
    grid = frieze_from_boundary_column(frieze_column(pt, 0))
    assert triangulation_from_ones(grid) == pt


@given(polygons)
def test_grid_glide_symmetry(pt):
    grid = frieze_from_boundary_column(frieze_column(pt, 0))
    assert grid.check_glide().ok
    assert grid.width == pt.n_plus_1 - 2


@settings(max_examples=50)
@given(polygons)
def test_polygon_ptolemy(pt):
    m = pt.n_plus_1
    if m < 4:
        return
    for a, b, c, d in combinations(range(m), 4):
        left = frieze_value(pt, a, c) * frieze_value(pt, b, d)
        right = frieze_value(pt, a, b) * frieze_value(pt, c, d) + frieze_value(pt, a, d) * frieze_value(pt, b, c)
        assert left == right


def test_seed_column_of_grid():
    grid = frieze_from_boundary_column([1, 3, 2, 1])
    assert grid.n_plus_1 == 5
    assert grid.seed_column == [1, 3, 2, 1]
    assert grid.entries[(5, 7)] == grid.entries[(0, 2)]


@pytest.mark.parametrize(
    "column, width, diagonals",
    (
        ([1, 1], 1, frozenset()),
        ([1, 2, 1], 2, frozenset({(1, 3)})),
    ),
)
def test_smallest_boundary_columns(column, width, diagonals):
    grid = frieze_from_boundary_column(column)
    assert grid.width == width
    assert triangulation_from_ones(grid).diagonals == diagonals


@pytest.mark.parametrize(
    "column",
    (
        [1],
        [2, 3, 1],
        [1, 4, 1],
        [1, 2, 2, 1],
        [1, 0, 1],
    ),
)
def test_bad_columns_are_not_friezes(column):
    with pytest.raises(NotAFriezeError):
        frieze_from_boundary_column(column)


@pytest.mark.parametrize(
    "diagonals",
    (
        {(0, 2)},
        {(0, 2), (1, 3)},
        {(0, 4), (1, 3)},
        {(0, 1), (1, 3)},
    ),
)
def test_invalid_diagonal_sets(diagonals):
    with pytest.raises(InvalidTriangulationError):
        PolygonTriangulation(5, frozenset(diagonals))


def test_diagonals_are_normalized():
    assert PolygonTriangulation(5, frozenset({(3, 1), (4, 1)})) == PENTAGON
