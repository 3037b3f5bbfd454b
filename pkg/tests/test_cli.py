import json
from pathlib import Path

import pytest

from hexalab.cli import REPRO_TARGETS, fixture_path, main, repro
from hexalab.core import FiniteMetricMeasureSpace
from hexalab.symbolic import IntervalTable

GOLDEN = Path(__file__).parent / "golden"
Z3Z4_A = "1,0;1,2;2,0;2,1;2,2;2,3"


def run(capsys, *argv):
    code = main(["--threads", "1", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("target", REPRO_TARGETS)
def test_repro_matches_golden_bytes(capsys, target):
    code, out, err = run(capsys, "repro", target)
    assert code == 0
    assert out.encode("utf-8") == (GOLDEN / f"{target}.csv").read_bytes()
    assert err.startswith("# hexalab repro")


@pytest.mark.parametrize("which", ["left", "middle", "right"])
def test_table_reproduction_equals_fixture(which):
    assert repro(f"table43-{which}").encode() == fixture_path(f"table43_{which}.csv").read_bytes()
    assert repro("table44").encode() == fixture_path("table44.csv").read_bytes()


def test_run_header_records_seed_and_threads(capsys):
    code, _, err = run(capsys, "--seed", "9", "tiling", "zeros", "--n", "12", "--a", "0,6")
    assert code == 0 and "seed=9" in err and "threads=1" in err
    code, _, err = run(capsys, "tiling", "zeros", "--n", "12", "--a", "0,6", "--seed", "3")
    assert "seed=3" in err


def test_space_hex_prints_the_distance_table(capsys):
    code, out, _ = run(capsys, "space", "hex", "--recipe", "fixtures/z3z4.json", "--subset", Z3Z4_A, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["hex"] is True
    assert [(row["A"], row["Ac"]) for row in data["table"]] == [("1/6", "1/6"), ("1/3", "1/3"), ("7/18", "7/18"), ("1/9", "1/9")]
    assert data["config"]["seed"] == 0


def test_space_cvc(capsys):
    code, out, _ = run(capsys, "space", "cvc", "--recipe", '{"kind":"named","name":"path","n":3}', "--format", "json")
    assert code == 1 and json.loads(out)["witness"] is not None
    code, out, _ = run(capsys, "space", "cvc", "--recipe", "fixtures/z7_13.json", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["rho"] == {"0": "1/7", "1": "5/7", "2": "1"}


def test_space_export_round_trips(capsys):
    code, out, _ = run(capsys, "space", "export", "--recipe", "fixtures/z7_13.json", "--format", "json")
    assert code == 0
    back = FiniteMetricMeasureSpace.from_json(out)
    assert back.n == 7 and back.values == (0, 1, 2)
    code, _, _ = run(capsys, "space", "cvc", "--recipe", out.strip())
    assert code == 0


def test_hamming_fixture_and_run_subset(capsys):
    code, _, _ = run(capsys, "space", "hex", "--recipe", "fixtures/hamming5.json", "--subset", "run:3")
    assert code == 0


def test_symbolic_verdicts(capsys):
    assert run(capsys, "symbolic", "hexdd", "fixtures/table43_right.csv")[0] == 1
    assert run(capsys, "symbolic", "hexprime", "fixtures/table43_right.csv")[0] == 0
    code, out, _ = run(capsys, "symbolic", "latin", "fixtures/table44.csv", "--group-check", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["latin"] is True and data["group"] is False


def test_symbolic_export_round_trips(capsys):
    code, out, _ = run(capsys, "symbolic", "export", "fixtures/table43_right.csv", "--format", "json")
    assert code == 0
    back = IntervalTable.from_json_obj(json.loads(out))
    assert back.values == IntervalTable.load(fixture_path("table43_right.csv")).values


def test_tiling_commands(capsys):
    code, out, _ = run(capsys, "tiling", "check", "--n", "6", "--a", "0,1,2", "--b", "0,3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["tiling"] == {"zero_sets": True, "sumset": True}
    code, out, _ = run(capsys, "tiling", "zeros", "--n", "12", "--a", "0,6", "--format", "json")
    assert json.loads(out)["zeros"] == [1, 3, 5, 7, 9, 11]
    code, out, _ = run(capsys, "tiling", "spectrum", "--n", "8", "--a", "0,1,2,3", "--format", "json")
    assert json.loads(out)["spectrum"] == [0, 2, 4, 6]


def test_zrel_commands(capsys):
    code, out, _ = run(capsys, "zrel", "ivec", "--n", "12", "--a", "0,1,4,6")
    assert code == 0 and "1,1,1,1,1,1" in out
    code, out, _ = run(capsys, "zrel", "babbitt", "--n", "12", "--format", "json")
    assert code == 0 and json.loads(out)["subsets"] == 924
    code, out, _ = run(capsys, "zrel", "classes", "--n", "24", "--k", "12", "--min-size", "12", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, _, _ = run(capsys, "zrel", "classes", "--n", "24", "--k", "12", "--budget", "10")
    assert code == 2


def test_mc_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "mc", "ks", "--same", "fixtures/sample.csv", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["statistic"] == 0
    code, out, _ = run(capsys, "mc", "volume", "--spec", "sphere:2", "--grid", "0:2:0.2", "--seed", "7", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 12 and lines[0].startswith("r,estimate,stderr")
    dest = tmp_path / "band.json"
    code, _, _ = run(capsys, "mc", "sphere-band", "--n", "20000", "--seed", "42", "--format", "json", "--out", str(dest))
    assert code == 0 and json.loads(dest.read_text())["ks"]["pass"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["space", "cvc", "--recipe", "{not json"],
        ["space", "cvc", "--recipe", '{"kind":"moebius"}'],
        ["space", "hex", "--recipe", "fixtures/z3z4.json", "--subset", "9,9"],
        ["symbolic", "ind", "missing.csv"],
        ["tiling", "zeros", "--n", "6", "--a", "0,x"],
        ["tiling", "check", "--n", "6", "--a", "0,1,2"],
        ["mc", "volume", "--spec", "cone:1"],
        ["mc", "volume", "--grid", "2:0:1"],
        ["frobnicate"],
        ["--threads", "0", "repro", "table44"],
    ],
)
def test_input_errors_exit_two(capsys, argv):
    assert main(argv) == 2
