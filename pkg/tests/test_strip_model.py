from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from src.errors import InvalidArcError, SpecValidationError
from src.strip_model import (
    Connecting,
    Edge,
    LowerInternal,
    PeriodicTriangulationSpec,
    UpperInternal,
    Vertex,
    alpha_of,
    arcs_cross,
    arcs_in,
    connecting_arcs_in,
    first_alpha_where,
    polygon_at,
    polygons_at_vertex,
    require_valid,
    triangle_count,
    validate_spec,
)
from strategies import strip_triangulations

BOX = range(-6, 7)


def box_arcs():
    arcs = [Connecting(i, j) for i, j in product(BOX, BOX)]
    for p, q in combinations(BOX, 2):
        if q - p >= 2:
            arcs += [UpperInternal(p, q), LowerInternal(p, q)]
    return arcs


def _point(vertex: Vertex):
    # boundary order of the strip laid out on a parabola: lower vertices, then upper
    x = vertex.index if vertex.edge is Edge.LOWER else 100 + vertex.index
    return x, x * x


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def chords_intersect(a, b) -> bool:
    p, q = map(_point, a.endpoints)
    r, s = map(_point, b.endpoints)
    return _orient(p, q, r) * _orient(p, q, s) < 0 and _orient(r, s, p) * _orient(r, s, q) < 0


@pytest.mark.parametrize(
    "a, b, expected",
    (
        (Connecting(2, 3), UpperInternal(1, 4), True),
        (Connecting(2, 3), LowerInternal(0, 2), False),
        (Connecting(0, 0), Connecting(1, 1), True),
        (Connecting(0, 1), Connecting(1, 0), False),
        (Connecting(0, 0), Connecting(0, 5), False),
        (UpperInternal(0, 3), UpperInternal(1, 5), True),
        (UpperInternal(0, 5), UpperInternal(1, 3), False),
        (UpperInternal(0, 3), LowerInternal(1, 5), False),
        (LowerInternal(-2, 2), Connecting(7, 0), True),
    ),
)
def test_arcs_cross_examples(a, b, expected):
    assert arcs_cross(a, b) is expected
    assert arcs_cross(b, a) is expected


def test_arcs_cross_matches_chord_geometry_on_box():
    arcs = box_arcs()
    for a in arcs:
        assert not arcs_cross(a, a)
    for a, b in combinations(arcs, 2):
        assert arcs_cross(a, b) == chords_intersect(a, b), (a, b)


@pytest.mark.parametrize("p, q", ((0, 1), (3, 3), (2, 0)))
def test_internal_arcs_need_a_gap(p, q):
    with pytest.raises(InvalidArcError):
        UpperInternal(p, q)
    with pytest.raises(InvalidArcError):
        LowerInternal(p, q)


def test_vertex_positions_run_in_opposite_directions():
    assert Vertex(Edge.UPPER, 3).position == -3
    assert Vertex(Edge.LOWER, 3).position == 3


def test_staircase_and_square_are_valid(staircase, square):
    assert validate_spec(staircase).ok
    assert validate_spec(square).ok
    assert require_valid(square) is square


def test_shift_sign_is_reported():
    spec = PeriodicTriangulationSpec((Connecting(0, 0), Connecting(0, 1)), (0, 1))
    report = validate_spec(spec)
    assert report.of_kind("shift")


def test_crossing_segment_is_reported():
    spec = PeriodicTriangulationSpec((Connecting(0, 0), Connecting(1, 1)), (-1, 2))
    report = validate_spec(spec)
    assert report.of_kind("staircase")
    witnesses = [v.message for v in report.of_kind("crossing")]
    assert any("(0°,0∘)" in m and "(1°,1∘)" in m for m in witnesses)


def test_under_triangulated_polygon_is_reported():
    spec = PeriodicTriangulationSpec((Connecting(0, 0), Connecting(-2, 0)), (-2, 1))
    report = validate_spec(spec)
    [violation] = report.of_kind("internal-count")
    assert violation.location == (0,)
    assert "needs 1" in violation.message


def test_misplaced_and_crossing_internal_arcs_are_reported():
    misplaced = PeriodicTriangulationSpec(
        (Connecting(0, 0), Connecting(-2, 0)),
        (-2, 1),
        (frozenset({LowerInternal(0, 2)}), frozenset()),
    )
    assert validate_spec(misplaced).of_kind("internal-placement")

    crossing = PeriodicTriangulationSpec(
        (Connecting(0, 0), Connecting(-3, 0)),
        (-3, 1),
        (frozenset({UpperInternal(-2, 0), UpperInternal(-3, -1)}), frozenset()),
    )
    report = validate_spec(crossing)
    assert not report.of_kind("internal-count")
    assert report.of_kind("crossing")


def test_malformed_specs_raise():
    with pytest.raises(SpecValidationError):
        PeriodicTriangulationSpec((), (-1, 1))
    with pytest.raises(SpecValidationError):
        PeriodicTriangulationSpec((Connecting(0, 0),), (-1, 1), (frozenset(), frozenset()))
    with pytest.raises(SpecValidationError) as info:
        require_valid(PeriodicTriangulationSpec((Connecting(0, 0), Connecting(0, 1)), (0, 1)))
    assert info.value.report.of_kind("shift")


@pytest.mark.parametrize(
    "alphas, expected",
    (
        (range(0, 4), [Connecting(0, 0), Connecting(0, 1), Connecting(-1, 1), Connecting(-1, 2)]),
        (range(0, 1), [Connecting(0, 0)]),
        (range(-2, 0), [Connecting(1, -1), Connecting(1, 0)]),
        (range(3, 3), []),
    ),
)
def test_connecting_arcs_in_staircase(staircase, alphas, expected):
    assert connecting_arcs_in(staircase, alphas) == expected


def test_staircase_polygons_are_triangles(staircase):
    for alpha in range(-5, 6):
        polygon = polygon_at(staircase, alpha)
        assert polygon.size == 3
        assert polygon.triangulation.diagonals == frozenset()


def test_square_polygon(square):
    polygon = polygon_at(square, 0)
    assert polygon.vertices == (
        Vertex(Edge.LOWER, 0),
        Vertex(Edge.UPPER, 0),
        Vertex(Edge.UPPER, -1),
        Vertex(Edge.UPPER, -2),
    )
    assert polygon.run_edge is Edge.UPPER
    assert polygon.triangulation.diagonals == frozenset({(1, 3)})
    assert polygon.arcs() == [UpperInternal(-2, 0)]
    assert polygon_at(square, 2).arcs() == [UpperInternal(-4, -2)]
    assert polygon_at(square, -2).arcs() == [UpperInternal(0, 2)]


@settings(max_examples=40, deadline=None)
@given(strip_triangulations(), st.integers(-6, 6))
def test_polygon_vertex_count_follows_the_run(spec, alpha):
    first, second = spec.connecting_at(alpha), spec.connecting_at(alpha + 1)
    polygon = polygon_at(spec, alpha)
    assert polygon.size == (first.i - second.i) + (second.j - first.j) + 2
    assert polygon.size - 3 == len(polygon.triangulation.diagonals)


@settings(max_examples=40, deadline=None)
@given(strip_triangulations())
def test_generated_specs_validate(spec):
    assert validate_spec(spec).ok


@settings(max_examples=25, deadline=None)
@given(strip_triangulations(max_period=3), st.integers(-5, 5), st.integers(-5, 5))
def test_connecting_arcs_bracket_every_cell(spec, i, j):
    arcs = connecting_arcs_in(spec, range(-60, 60))
    assert any(a.i < i and a.j > j for a in arcs)
    assert any(a.i > i and a.j < j for a in arcs)


@pytest.mark.parametrize("name", ("staircase", "square"))
def test_maximality_on_box(name, request):
    spec = request.getfixturevalue(name)
    present = set(arcs_in(spec, range(-24, 24)))
    for arc in box_arcs():
        if arc in present:
            continue
        assert any(arcs_cross(arc, other) for other in present), arc


def test_first_alpha_where_finds_the_boundary(staircase):
    assert first_alpha_where(staircase.connecting_at, lambda a: a.j >= 3) == 5
    assert first_alpha_where(staircase.connecting_at, lambda a: a.i < -10) == 22
    assert first_alpha_where(staircase.connecting_at, lambda a: a.i <= 7) == -14


def test_first_alpha_where_gives_up_off_a_staircase():
    flat = PeriodicTriangulationSpec((Connecting(0, 0),), (0, 1))
    with pytest.raises(SpecValidationError, match="staircase search"):
        first_alpha_where(flat.connecting_at, lambda a: a.i < 0)


@pytest.mark.parametrize(
    "vertex, expected",
    (
        (Vertex(Edge.UPPER, 0), 5),
        (Vertex(Edge.UPPER, -1), 1),
        (Vertex(Edge.UPPER, 4), 5),
        (Vertex(Edge.UPPER, 3), 1),
        (Vertex(Edge.LOWER, 0), 3),
        (Vertex(Edge.LOWER, -7), 3),
    ),
)
def test_square_triangle_counts(square, vertex, expected):
    assert triangle_count(square, vertex) == expected


def test_staircase_triangle_counts(staircase):
    for k in range(-4, 5):
        assert triangle_count(staircase, Vertex(Edge.UPPER, k)) == 3
        assert triangle_count(staircase, Vertex(Edge.LOWER, k)) == 3


def test_polygons_at_vertex(square):
    alphas = [polygon.alpha for polygon in polygons_at_vertex(square, Vertex(Edge.UPPER, 0))]
    assert alphas == [-2, -1, 0]


def test_alpha_of(square):
    assert alpha_of(square, Connecting(0, 0)) == 0
    assert alpha_of(square, Connecting(-2, 1)) == 2
    assert alpha_of(square, Connecting(0, -1)) == -1
    assert alpha_of(square, Connecting(-1, 0)) is None


def test_translated_spec_moves_every_arc(square):
    moved = square.translated(2)
    assert moved.connecting_at(0) == square.connecting_at(4)
    assert moved.internal_at(1) == square.internal_at(5)
