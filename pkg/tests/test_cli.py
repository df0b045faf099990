"""Command-line surface: exit codes, output formats, and the run cache."""

import json

import numpy as np
import pytest

from progmeter import behavior, cli, eca, lattice


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_simulate_ascii_stdout(capsys, cache_dir):
    code, out, _ = run(capsys, "simulate", "--rule", "30", "--width", "7", "--t", "2")
    assert code == 0
    assert out == "0001000\n0011100\n0110010\n"


def test_simulate_packed_file(tmp_path, capsys, cache_dir):
    out_path = tmp_path / "d.bin"
    code, _, _ = run(capsys, "simulate", "--rule", "90", "--width", "11",
                     "--t", "9", "--format", "packed", "--out", str(out_path))
    assert code == 0
    cells = eca.bytes_to_cells(out_path.read_bytes())
    ref = eca.evolve(90, eca.single_cell_config(11), 9)
    assert np.array_equal(cells, ref.cells)


def test_simulate_random_init_seeded(tmp_path, capsys, cache_dir):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = run(capsys, "simulate", "--rule", "110", "--width", "31",
                         "--t", "8", "--init", "random", "--seed", "5",
                         "--out", str(path))
        assert code == 0
    assert a.read_text() == b.read_text()


def test_simulate_svg_structure(capsys, cache_dir):
    code, out, _ = run(capsys, "simulate", "--rule", "30", "--width", "7",
                       "--t", "1", "--format", "svg")
    assert code == 0
    assert out.startswith("<svg ")
    assert out.rstrip().endswith("</svg>")
    black = [ln for ln in out.split("\n") if 'fill="#000000"' in ln]
    assert len(black) == 4  # 1 cell in row 0, 3 cells in row 1
    assert sum('y="4"' in ln for ln in black) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("simulate", "--rule", "256"),
        ("simulate", "--rule", "30", "--width", "2"),
        ("simulate", "--rule", "30", "--t", "-1"),
        ("curve", "--rule", "-3"),
        ("agent", "--kind", "quantum"),
        ("nonsense",),
    ],
)
def test_usage_errors_exit_2(capsys, cache_dir, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    assert exc.value.code == 2


def test_runtime_errors_exit_1(capsys, cache_dir, tmp_path):
    # grid violation surfaces as a runtime error, not a crash
    code, _, err = run(capsys, "programmability", "--rule", "30",
                       "--t-max", "10", "--t-step", "20")
    assert code == 1
    assert "error:" in err

    bad = tmp_path / "bad.tbl"
    bad.write_bytes(b"garbage")
    diagram = tmp_path / "d.txt"
    diagram.write_text("000\n000\n000\n")
    code, _, err = run(capsys, "lattice", "--input", str(diagram),
                       "--table", str(bad))
    assert code == 1


def test_curve_matches_library(capsys, cache_dir):
    code, out, _ = run(capsys, "curve", "--rule", "30", "--width", "20",
                       "--t-max", "20", "--t-step", "5", "--init", "random",
                       "--seed", "3")
    assert code == 0
    init = eca.random_config(20, seed=3)
    curve = behavior.compression_curve(30, init, 20, 5)
    assert out == behavior.curve_to_csv(curve, 3)


def test_programmability_cache_round_trip(capsys, cache_dir):
    args = ("programmability", "--rule", "4", "--width", "8", "--n", "4",
            "--t-max", "40", "--t-step", "20")
    code, first, _ = run(capsys, *args)
    assert code == 0
    doc1 = json.loads(first)
    assert doc1["cached"] is False
    assert doc1["report"]["rule"] == 4
    assert (cache_dir / "runs.jsonl").exists()

    code, second, _ = run(capsys, *args)
    assert code == 0
    doc2 = json.loads(second)
    assert doc2["cached"] is True
    assert doc2["report"] == doc1["report"]


def test_cache_purge_does_not_change_payload(capsys, tmp_path, monkeypatch):
    args = ("programmability", "--rule", "7", "--width", "8", "--n", "4",
            "--t-max", "40", "--t-step", "20")
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "one"))
    _, first, _ = run(capsys, *args)
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "two"))
    _, second, _ = run(capsys, *args)
    assert first == second  # both cold runs, independent caches


def test_scan_csv_and_cache(capsys, cache_dir):
    args = ("scan", "--width", "10", "--t", "10", "--n-inputs", "2", "--seed", "1")
    code, first, err1 = run(capsys, *args)
    assert code == 0
    lines = first.strip().split("\n")
    assert lines[0] == "rule,label,terminal_ratio,slope,input_variability"
    assert len(lines) == 257
    assert [int(ln.split(",")[0]) for ln in lines[1:]] == list(range(256))
    assert "cache hit" not in err1

    code, second, err2 = run(capsys, *args)
    assert code == 0
    assert second == first
    assert "cache hit" in err2


def test_lattice_command(capsys, cache_dir, tmp_path, toy_table):
    table_path = tmp_path / "toy.tbl"
    lattice.save_table(toy_table, table_path)

    zero = tmp_path / "zero.txt"
    zero.write_text(("0" * 12 + "\n") * 12)
    code, out, _ = run(capsys, "lattice", "--input", str(zero),
                       "--table", str(table_path))
    assert code == 0
    doc = json.loads(out)
    assert (doc["height"], doc["width"], doc["b"]) == (12, 12, 3)
    assert doc["bdm"] == pytest.approx(1.0 + np.log2(16))
    assert doc["padded"] is False

    busy = tmp_path / "busy.txt"
    busy.write_text(eca.diagram_to_text(eca.evolve(30, eca.single_cell_config(12), 11)))
    code, out, _ = run(capsys, "lattice", "--input", str(busy),
                       "--table", str(table_path))
    assert code == 0
    assert json.loads(out)["bdm"] > doc["bdm"]

    with pytest.raises(SystemExit) as exc:
        cli.main(["lattice", "--input", str(zero), "--table", str(tmp_path / "no.tbl")])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["lattice", "--input", str(tmp_path / "no.txt"),
                  "--table", str(table_path)])
    assert exc.value.code == 2


def test_agent_command(capsys, cache_dir, tmp_path, toy_table):
    code, out, _ = run(capsys, "agent", "--kind", "reactive", "--steps", "600")
    assert code == 0
    doc = json.loads(out)
    assert doc["label"] == "programmable"
    assert set(doc["per_stream_c_bits"]) == {"constant", "periodic", "random"}

    table_path = tmp_path / "toy.tbl"
    lattice.save_table(toy_table, table_path)
    code, out, _ = run(capsys, "agent", "--kind", "periodic", "--steps", "300",
                       "--table", str(table_path))
    assert code == 0
    doc = json.loads(out)
    assert set(doc["per_stream_bdm3"]) == {"constant", "periodic", "random"}
    assert all(v > 0 for v in doc["per_stream_bdm3"].values())


def test_table_command(capsys, cache_dir, tmp_path):
    out_path = tmp_path / "small.tbl"
    code, out, _ = run(capsys, "table", "--b", "3", "--samples", "1000",
                       "--seed", "5", "--out", str(out_path))
    assert code == 0
    summary = json.loads(out)
    table = lattice.load_table(out_path)
    assert summary["total"] == table.total == 1000 * 110
    assert summary["distinct"] == len(table.counts)
