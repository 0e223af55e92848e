import json
from pathlib import Path

import pytest

from ordlab.cli import main

TOUR = Path(__file__).resolve().parent.parent / "demos" / "problems" / "square_cone_tour.json"


def _write(tmp_path, data, name="p.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


def _leq(expected, y=(1, 1)):
    return {"version": 1, "queries": [{"op": "leq", "args": {"space": "ORTH2", "x": [0, 0], "y": list(y)},
                                       "expected": expected}]}


def test_tour_runs_clean(capsys):
    assert main(["run", str(TOUR)]) == 0
    assert "0 mismatched" in capsys.readouterr().out


def test_json_output_is_deterministic_apart_from_timing(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["run", str(TOUR), "--format", "json", "--out", str(out)]) == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert "timing" in da
    da.pop("timing"), db.pop("timing")
    assert da == db


def test_mismatch_exits_one(tmp_path, capsys):
    assert main(["run", _write(tmp_path, _leq(False))]) == 1
    assert "MISMATCH" in capsys.readouterr().out


@pytest.mark.parametrize("data,fragment", [
    ("{\"version\": 1,\n \"queries\": [", "line"),
    ({"version": 1, "queries": [], "extra": 1}, "extra"),
    ({"version": 1, "queries": [{"op": "no_such_op", "args": {}}]}, "no_such_op"),
    ({"version": 1, "queries": [{"op": "leq", "args": {"space": "ORTH2", "x": ["1/0", 0], "y": [0, 0]}}]},
     "queries[0].args.x"),
    ({"version": 1, "queries": [{"op": "leq", "args": {"space": "ORTH2", "x": [0, 0]}}]}, "args.y"),
])
def test_malformed_input_exits_two(tmp_path, capsys, data, fragment):
    assert main(["run", _write(tmp_path, data)]) == 2
    assert fragment in capsys.readouterr().err


def test_unknown_suite_and_bad_budget(capsys):
    assert main(["suite", "nope"]) == 2
    assert main(["suite", "jhg", "--budget", "0"]) == 2


def test_suite_json(tmp_path):
    out = tmp_path / "s.json"
    assert main(["suite", "jhg", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["suite"] == "jhg" and data["summary"]["failed"] == 0
