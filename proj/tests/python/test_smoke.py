import json
import os
import subprocess
from pathlib import Path

import pytest

import popsort

SCHEMAS = Path(os.environ.get("POPSORT_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))
CLI = os.environ.get("POPSORT_CLI")


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_permutations():
    assert popsort.parse("24513") == [2, 4, 5, 1, 3]
    assert popsort.contains("231", [2, 4, 5, 1, 3])
    assert not popsort.contains("321", "24513")
    assert popsort.count_occurrences("12", "123") == 3
    assert popsort.inverse("2,3,1") == [3, 1, 2]
    assert popsort.is_simple("2413")
    assert popsort.delete_entry("24513", 4) == [1, 3, 4, 2]
    with pytest.raises(ValueError):
        popsort.parse("1123")


def test_machines():
    assert set(popsort.machine_kinds()) == {"s", "ps", "pqs", "sp", "sqp", "di"}
    assert popsort.is_sortable("ps", "24513")
    assert not popsort.is_sortable("di", "3142")
    w = popsort.sorting_witness("ps", "356124")
    assert popsort.replay("ps", "356124", w) == [1, 2, 3, 4, 5, 6]
    assert popsort.sorting_witness("s", "231") is None
    with pytest.raises(popsort.IllegalMoveError):
        popsort.replay("ps", "21", "O")


def test_classes_and_series():
    assert popsort.count_members(6, machine="pqs") == 685
    assert popsort.count_members(5, basis=["231"], jobs=2) == 42
    assert popsort.compute_basis(6, machine="ps") == [[2, 4, 3, 1], [3, 1, 4, 2], [3, 2, 4, 1]]
    with pytest.raises(ValueError):
        popsort.count_members(4)
    assert popsort.ps_closed_form(6) == [1, 2, 6, 21, 79, 311]
    big = popsort.ps_closed_form(60)
    assert big == popsort.ps_fixed_point(60)
    assert big[-1] > 2**64


def test_antichain():
    r = popsort.verify_basis_element(2)
    assert r["passed"] and not r["member"]
    assert len(r["deletions"]) == 9
    assert all(d["member"] and d["witness_division"] for d in r["deletions"])
    assert popsort.verify_antichain(3)["passed"]
    with pytest.raises(popsort.BoundError):
        popsort.verify_basis_element(5)


def test_run_cli_in_process():
    code, out, _ = popsort.run_cli(["enumerate", "--machine", "ps", "--max-len", "5"])
    assert code == 0
    assert json.loads(out)["counts"] == [1, 2, 6, 21, 79]
    code, _, err = popsort.run_cli(["enumerate", "--max-len", "5"])
    assert code == 2 and err


COMMANDS = [
    ("sortable", ["sortable", "--machine", "ps", "24513"]),
    ("sortable", ["sortable", "--machine", "di", "3142"]),
    ("enumerate", ["enumerate", "--machine", "pqs", "--max-len", "6"]),
    ("enumerate", ["enumerate", "--basis", "2431,3142,3241", "--max-len", "7"]),
    ("basis", ["basis", "--machine", "ps", "--max-len", "6"]),
    ("series", ["series", "--terms", "30", "--method", "both"]),
    ("series", ["series", "--terms", "10"]),
    ("antichain", ["antichain", "--max-k", "2", "--pairs-max-k", "3"]),
    ("verify", ["verify", "--suite", "fast", "--format", "json"]),
]


@pytest.mark.parametrize("name,args", COMMANDS)
def test_json_matches_schema(name, args):
    jsonschema = pytest.importorskip("jsonschema")
    code, out, err = popsort.run_cli(args)
    assert code == 0, err
    jsonschema.validate(json.loads(out), schema(name))


def test_cache_file_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    cache = tmp_path / "counts.json"
    for max_len in (5, 6):
        code, _, err = popsort.run_cli(["enumerate", "--machine", "sp", "--max-len", str(max_len), "--cache", str(cache)])
        assert code == 0, err
    assert "5 of 6" in err
    jsonschema.validate(json.loads(cache.read_text()), schema("cache"))


@pytest.mark.skipif(not CLI, reason="POPSORT_CLI not set")
def test_binary_exit_codes():
    def run(*args):
        return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=300)

    ok = run("series", "--terms", "12", "--method", "both")
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["agreement"] is True
    assert run("sortable", "--machine", "nope", "12").returncode == 2
    assert run("series", "--terms", "0").returncode == 2
    assert run().returncode == 2
    assert run("--help").returncode == 0
