import io

import pytest
from PIL import Image

from main import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VIOLATIONS, main
from src.cli_io import emit_window, format_seed, parse_window
from src.fixtures import cross_seed
from src.logging_service import LogLevel, get_logging_service

STAIRCASE_DOC = "period 2 -1 1\nconn 0 0\nconn 0 1\n"


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "staircase.spec"
    path.write_text(STAIRCASE_DOC)
    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_demo_staircase(capsys):
    assert run(capsys, "demo", "staircase") == (EXIT_OK, STAIRCASE_DOC, "")


def test_demo_patch_is_labelled_derived(capsys):
    code, out, _ = run(capsys, "demo", "figure1")
    assert code == EXIT_OK
    assert out.startswith("# derived")
    assert "conn 11 1" in out


def test_demo_sample_ascii(capsys):
    code, out, _ = run(capsys, "demo", "figure2", "--style", "ascii")
    assert code == EXIT_OK
    assert out.splitlines()[2].split("|")[0].strip() == "1"


def test_tile_then_extract(capsys, spec_file, tmp_path):
    code, out, _ = run(capsys, "tile", "--spec", str(spec_file), "--rows", "-3", "3", "--cols", "-3", "3")
    assert code == EXIT_OK
    w = parse_window(out)
    assert (w.rows, w.cols) == (range(-3, 4), range(-3, 4))
    assert w[0, 0] == w[0, 1] == w[-1, 1] == 1

    window_file = tmp_path / "staircase.tsv"
    window_file.write_text(out)
    code, out, _ = run(capsys, "extract", "--window", str(window_file))
    assert code == EXIT_OK
    conns = [line for line in out.splitlines() if line.startswith("conn")]
    assert "conn 0 0" in conns and "conn 0 1" in conns and "conn -1 1" in conns
    assert not any(line.startswith("internal") for line in out.splitlines())


def test_tile_verify_and_png(capsys, spec_file, tmp_path):
    png = tmp_path / "tile.png"
    code, _, _ = run(
        capsys, "tile", "--spec", str(spec_file), "--rows", "0", "2", "--cols", "0", "3", "--verify", "--png", str(png)
    )
    assert code == EXIT_OK
    with Image.open(png) as image:
        assert image.format == "PNG"


def test_cross_checks_clean(capsys, monkeypatch):
    _, window_text, _ = run(capsys, "demo", "figure4")
    monkeypatch.setattr("sys.stdin", io.StringIO(window_text))
    code, out, _ = run(capsys, "check", "--window", "-")
    assert code == EXIT_OK
    assert "determinants: ok (100 checked)" in out.splitlines()


def test_corrupted_sample_fails_checks(capsys, sample, tmp_path):
    path = tmp_path / "corrupt.tsv"
    path.write_text(emit_window(sample.with_value((6, 6), 4)))
    code, out, _ = run(capsys, "check", "--window", str(path))
    assert code == EXIT_VIOLATIONS
    assert "determinants: 4 violation(s) (100 checked)" in out


def test_small_window_skips_checks(capsys, tmp_path):
    path = tmp_path / "one.tsv"
    path.write_text("rows 0 0\ncols 0 0\n1\n")
    code, _, err = run(capsys, "check", "--window", str(path))
    assert code == EXIT_OK
    assert "Skipping ptolemy_report" in err


def test_fill(capsys, tmp_path):
    path = tmp_path / "cross.seed"
    path.write_text(format_seed(range(-2, 3), range(-2, 3), cross_seed(radius=2)))
    code, out, _ = run(capsys, "fill", "--seed", str(path))
    assert code == EXIT_OK
    w = parse_window(out)
    assert w[2, 2] == w[-2, -2] == 13
    assert w[2, -2] == 5

    code, out, _ = run(capsys, "fill", "--seed", str(path), "--rows", "0", "1", "--cols", "0", "1")
    assert code == EXIT_OK
    assert parse_window(out).values == ((1, 2), (2, 5))


def test_fill_reports_bad_seed(capsys, tmp_path):
    path = tmp_path / "bad.seed"
    path.write_text("rows 0 1\ncols 0 1\n2\t1\n2\t.\n")
    code, out, err = run(capsys, "fill", "--seed", str(path))
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert "fill:" in err and "(1, 1)" in err


def test_frieze_from_column(capsys):
    code, out, _ = run(capsys, "frieze", "--column", "1 3 2 1")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[1] == "0:\t1\t3\t2\t1"
    assert "quiddity 1 3 1 2 2" in lines
    assert lines[-2:] == ["diagonal 1 3", "diagonal 1 4"]


def test_frieze_from_polygon(capsys, tmp_path):
    path = tmp_path / "hexagon.poly"
    path.write_text("vertices 6\ndiagonal 0 2\ndiagonal 0 3\ndiagonal 0 4\n")
    code, out, _ = run(capsys, "frieze", "--polygon", str(path))
    assert code == EXIT_OK
    assert "quiddity 4 1 2 2 2 1" in out.splitlines()


def test_frieze_rejects_bad_column(capsys):
    code, _, err = run(capsys, "frieze", "--column", "1 2 2 1")
    assert code == EXIT_INPUT_ERROR
    assert "inexact division" in err


def test_roundtrip(capsys, spec_file):
    code, out, _ = run(capsys, "roundtrip", "--spec", str(spec_file), "--rows", "-10", "9", "--cols", "-10", "9")
    assert code == EXIT_OK
    assert out.startswith("roundtrip: ok")


def test_roundtrip_on_a_single_arc_cell(capsys, spec_file):
    code, out, _ = run(capsys, "roundtrip", "--spec", str(spec_file), "--rows", "0", "0", "--cols", "0", "0")
    assert code == EXIT_OK
    assert out.startswith("roundtrip: ok (1 checked)")


def test_extract_rejects_ones_off_each_others_row_and_column(capsys, tmp_path):
    path = tmp_path / "diagonal.tsv"
    path.write_text("rows 0 1\ncols 0 1\n3\t1\n1\t5\n")
    code, out, err = run(capsys, "extract", "--window", str(path))
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert "extract:" in err and "no 1 continues the zig-zag" in err


@pytest.mark.parametrize(
    "text, fragment",
    (
        ("period 1 0 1\nconn 0 0\n", "[shift]"),
        ("period 2 -1 1\nconn 0 zero\n", "line 2, column 8"),
    ),
)
def test_bad_spec_exits_with_input_error(capsys, tmp_path, text, fragment):
    path = tmp_path / "bad.spec"
    path.write_text(text)
    code, out, err = run(capsys, "tile", "--spec", str(path), "--rows", "0", "1", "--cols", "0", "1")
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert fragment in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "extract", "--window", str(tmp_path / "missing.tsv"))
    assert code == EXIT_INPUT_ERROR
    assert "[ERROR] extract:" in err


def test_verbose_logs_debug_messages(capsys, spec_file):
    code, _, err = run(capsys, "--verbose", "tile", "--spec", str(spec_file), "--rows", "0", "1", "--cols", "0", "1")
    assert code == EXIT_OK
    assert "[DEBUG]" in err
    assert get_logging_service().get_entries(LogLevel.INFO)


def test_unknown_command_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["paint"])
    assert info.value.code == 2
