import json

import pytest

from carddiv.cli import main

GOLDEN = "golden/section1.trace"
INSTANCE = "golden/section1_instance.json"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_golden_command_passes_on_pristine_checkout(capsys):
    code, out, _err = run(["golden", "--golden", GOLDEN], capsys)
    assert code == 0
    assert "matches" in out


def test_golden_command_detects_mismatch(tmp_path, capsys):
    bad = tmp_path / "wrong.trace"
    bad.write_text("Start:\nnothing\n")
    code, _out, err = run(["golden", "--golden", str(bad)], capsys)
    assert code == 1
    assert "mismatch" in err


def test_divide_long_on_bundled_instance(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _out, _err = run(
        ["divide", "--input", INSTANCE, "--schedule", "naive", "--output", str(out_path)], capsys
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["passes"] == 3
    assert len(doc["result"]) == 10


def test_divide_trivial_single_suit_instance(tmp_path, capsys):
    instance = {
        "n": 1,
        "A": ["a"],
        "B": ["b"],
        "mode": "long",
        "map": [[[0, "a"], [0, "b"]]],
    }
    path = tmp_path / "one.json"
    path.write_text(json.dumps(instance))
    code, out, _err = run(["divide", "--input", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["passes"] == 0


def test_divide_short_mode_and_trace(tmp_path, capsys):
    instance = {
        "n": 2,
        "A": ["1", "2"],
        "B": ["x", "y", "z"],
        "mode": "short",
        "map": [
            [[0, "1"], [1, "x"]],
            [[1, "1"], [0, "y"]],
            [[0, "2"], [1, "y"]],
            [[1, "2"], [0, "x"]],
        ],
    }
    path = tmp_path / "short.json"
    path.write_text(json.dumps(instance))
    out_path = tmp_path / "report.json"
    trace_path = tmp_path / "trace.txt"
    code, _out, _err = run(
        ["divide", "--input", str(path), "--output", str(out_path), "--trace", str(trace_path)],
        capsys,
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["passes"] == 1
    assert dict(map(tuple, doc["result"])) == {"1": "x", "2": "y"}
    assert trace_path.read_text().startswith("Start:\n")


def test_divide_short_mode_on_bundled_instance(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _out, _err = run(
        ["divide", "--input", INSTANCE, "--mode", "short", "--output", str(out_path)], capsys
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["passes"] == 1
    assert len(doc["result"]) == 10


def test_solitaire_deterministic_reports(tmp_path, capsys):
    args = ["solitaire", "--strategy", "random", "--trials", "1000", "--seed", "7"]
    code1, out1, _ = run(args, capsys)
    code2, out2, _ = run(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["trials"] == 1000 and doc["strategy"] == "random"


def test_laws_cb_from_file(tmp_path, capsys):
    doc = {"f": [["a0", "b0"], ["a1", "b1"]], "g": [["b0", "a1"], ["b1", "a0"]]}
    path = tmp_path / "cb.json"
    path.write_text(json.dumps(doc))
    code, out, _err = run(["laws", "cb", "--input", str(path)], capsys)
    assert code == 0
    result = dict(map(tuple, json.loads(out)["result"]))
    assert sorted(result) == ["a0", "a1"]
    assert sorted(result.values()) == ["b0", "b1"]


def test_laws_euclid_from_file(tmp_path, capsys):
    a_elems = [f"a{i}" for i in range(3)]
    b_elems = [f"b{i}" for i in range(2)]
    domain = [[i, a] for i in range(2) for a in a_elems]
    codomain = [[j, b] for j in range(3) for b in b_elems]
    doc = {"m": 2, "n": 3, "A": a_elems, "B": b_elems, "F": list(map(list, zip(domain, codomain)))}
    path = tmp_path / "euclid.json"
    path.write_text(json.dumps(doc))
    code, out, _err = run(["laws", "euclid", "--input", str(path), "--step", "multi"], capsys)
    assert code == 0
    assert len(json.loads(out)["R"]) == 1


def test_chains_queries(tmp_path, capsys):
    doc = {"n": 2, "chains": {"a": {"prefix": [], "tail": [1, 0, 2]}}}
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(doc))
    code, out, _err = run(["chains", "--input", str(path), "a:a", "4", "3"], capsys)
    assert code == 0
    values = [r["value"] for r in json.loads(out)["results"]]
    assert values == [0, 6, 3]


def test_missing_file_is_usage_error(capsys):
    code, _out, err = run(["divide", "--input", "no/such/file.json"], capsys)
    assert code == 2
    assert "error:" in err


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
