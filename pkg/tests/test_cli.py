import json

import pytest

from twistk.cli import cache_path, load_or_build, main
from twistk.fusion import build_fusion_ring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_twistform(capsys):
    code, data = run_json(capsys, "twistform", "2", "1")
    assert code == 0
    assert data["r_coeffs"] == ["r1^2 - 1"]
    code, data = run_json(capsys, "twistform", "2", "2")
    assert data["r_coeffs"] == ["r1^3 - 2*r1"]
    code, text = run(capsys, "twistform", "2", "2")
    assert code == 0 and "r1^3 - 2*r1" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["twistform", "1", "1"],
        ["twistform", "2", "-1"],
        ["exactness", "2", "1", "--max-degree", "-1"],
        ["exactness", "2", "0"],
        ["fusion", "2", "1", "--basis", "dynkin"],
        ["check", "2", "1", "--tolerance", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0


def test_exactness(capsys):
    code, data = run_json(capsys, "exactness", "2", "1", "--max-degree", "8")
    assert code == 0 and data["pass"]
    code, data = run_json(capsys, "exactness", "2", "3", "--max-degree", "10")
    assert code == 0
    assert data["top_ranks"] == [1, 2, 3, 2, 1, 0, 0, 0, 0, 0, 0]


def test_fusion(capsys):
    code, data = run_json(capsys, "fusion", "2", "1")
    assert code == 0 and data["rank"] == 2
    assert data["table"][-1] == {"lhs": [1], "rhs": [1], "result": [{"weight": [], "coeff": 1}]}
    code, data = run_json(capsys, "fusion", "3", "1")
    assert data["rank"] == 3
    entry = next(e for e in data["table"] if e["lhs"] == [1] and e["rhs"] == [1])
    assert entry["result"] == [{"weight": [1, 1], "coeff": 1}]
    code, data = run_json(capsys, "fusion", "2", "0")
    assert data["rank"] == 1
    assert data["table"] == [{"lhs": [], "rhs": [], "result": [{"weight": [], "coeff": 1}]}]


def test_fusion_monomial_basis(capsys):
    code, data = run_json(capsys, "fusion", "2", "2", "--basis", "monomial")
    assert code == 0 and data["basis"] == "monomial"


def test_verlinde(capsys):
    code, data = run_json(capsys, "verlinde", "2", "3")
    assert code == 0 and data["rank"] == 4
    assert data["max_residual"] < 1e-6


@pytest.mark.parametrize("N,k", [(2, 4), (3, 2)])
def test_check_passes(capsys, N, k):
    code, data = run_json(capsys, "check", str(N), str(k))
    assert code == 0
    assert data["tables_identical"] and data["pass"]


def test_check_failure_path(capsys):
    code, data = run_json(capsys, "check", "2", "1", "--tolerance", "1e-20")
    assert code == 1
    assert not data["pass"] and data["tables_identical"]


def test_json_is_deterministic(capsys):
    _, first = run(capsys, "fusion", "3", "2", "--format", "json")
    _, second = run(capsys, "fusion", "3", "2", "--format", "json")
    assert first == second


def test_cache_round_trip(tmp_path, capsys):
    fresh = build_fusion_ring(3, 2)
    built = load_or_build(3, 2, str(tmp_path))
    path = cache_path(tmp_path, 3, 2)
    assert path.exists() and path.name == "fusion_N3_k2_grevlex.json"
    loaded = load_or_build(3, 2, str(tmp_path))
    assert built == fresh == loaded
    _, cold = run(capsys, "fusion", "3", "2", "--format", "json")
    _, warm = run(capsys, "fusion", "3", "2", "--format", "json", "--cache-dir", str(tmp_path))
    assert cold == warm


def test_corrupt_cache_is_failure_not_crash(tmp_path, capsys):
    cache_path(tmp_path, 2, 1).write_text("{not json")
    code, _ = run(capsys, "fusion", "2", "1", "--cache-dir", str(tmp_path))
    assert code == 1
