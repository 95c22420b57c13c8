"""CLI surface: output shapes, determinism, exit codes."""

import json

import pytest

from gwp1.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_wave_g_order_zero(capsys):
    code, doc = run_json(capsys, "wave", "--which", "g", "--order", "0")
    assert code == 0
    assert doc == {"0": "1"}


def test_wave_f_order_three(capsys):
    code, doc = run_json(capsys, "wave", "--which", "f", "--order", "3")
    assert code == 0
    assert doc["-1"] == {"-2": "1", "0": "-1/24"}
    assert doc["-3"]["0"] == "1003/414720"


def test_wave_matches_oracle(capsys):
    _, doc_g = run_json(capsys, "wave", "--which", "g", "--order", "6")
    _, doc_o = run_json(capsys, "wave-oracle", "--order", "6")
    assert doc_g == doc_o


def test_invariant_examples(capsys):
    code, doc = run_json(capsys, "invariant", "--ks", "0")
    assert code == 0 and doc == {"-2": "1", "0": "-1/24"}
    _, doc = run_json(capsys, "invariant", "--ks", "0,0")
    assert doc == {"-2": "1"}
    _, doc = run_json(capsys, "invariant", "--ks", "1")
    assert doc == {}


def test_invariant_by_genus(capsys):
    code, doc = run_json(capsys, "invariant", "--ks", "2", "--by-genus")
    assert code == 0
    assert doc == {"0,2": "1/4", "1,1": "1/24", "2,0": "7/5760"}


def test_invariant_usage_error(capsys):
    code = main(["invariant", "--ks", "x,y"])
    assert code == 2


def test_missing_command_is_usage_error():
    assert main([]) == 2


def test_free_energy(capsys):
    code, doc = run_json(capsys, "free-energy", "--max-weight", "2")
    assert code == 0
    assert doc == {"0": {"-2": "1", "0": "-1/24"}, "0,0": {"-2": "1/2"}}


def test_zmodel_miwa_and_stabilization(capsys):
    code, doc = run_json(capsys, "zmodel", "--n", "3", "--degree", "2", "--miwa")
    assert code == 0
    assert doc == {"0": {"-2": "1", "0": "-1/24"}, "0,0": "1/2*eps^-2"} or doc == {
        "0": {"-2": "1", "0": "-1/24"},
        "0,0": {"-2": "1/2"},
    }
    code, doc = run_json(
        capsys, "zmodel", "--n", "2", "--degree", "1", "--check-stabilization"
    )
    assert code == 0 and doc["stable"] is True


def test_deterministic_output(capsys):
    _, out1 = run(capsys, "free-energy", "--max-weight", "2")
    _, out2 = run(capsys, "free-energy", "--max-weight", "2")
    assert out1 == out2


def test_global_flags_after_subcommand(capsys):
    code, out = run(capsys, "wave", "--which", "g", "--order", "1", "--format", "text")
    assert code == 0
    assert "json" not in out and ":" in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code = main(["invariant", "--ks", "0", "--output", str(path)])
    assert code == 0
    assert json.loads(path.read_text()) == {"-2": "1", "0": "-1/24"}


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "csv"}))
    code, out = run(capsys, "--config", str(cfg), "invariant", "--ks", "0")
    assert code == 0
    assert out.splitlines()[0] == "key,value"


def test_charlier_limit_rows(capsys):
    code, doc = run_json(
        capsys, "charlier", "--check", "limit", "--L", "10", "20", "--prec", "96"
    )
    assert code == 0
    assert [r["input"]["L"] for r in doc["rows"]] == [10, 20]
    assert doc["monotone_decreasing"] is True
    for row in doc["rows"]:
        assert set(row) == {"input", "value", "target", "abs_error"}


def test_selftest_single_check(capsys):
    code, doc = run_json(capsys, "selftest", "--only", "wave-coefficients", "--json")
    assert code == 0
    assert doc["passed"] is True
    assert doc["rows"][0]["name"] == "wave-coefficients"


def test_selftest_unknown_check_fails(capsys):
    assert main(["selftest", "--only", "nonexistent"]) == 1
