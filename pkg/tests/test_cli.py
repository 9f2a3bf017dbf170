import json

import pytest

from specrad.chains import CHAIN, ChainInputs, ChainSpec, Part
from specrad.cli import main
from specrad.spectral import Bracket


GOLDEN_PAIR = [
    {"rows": 2, "cols": 2, "entries": [1, 1, 0, 1]},
    {"rows": 2, "cols": 2, "entries": [1, 0, 1, 1]},
]


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def test_estimate_rho_permutation(tmp_path, capsys):
    path = _write(tmp_path, "perm2.json",
                  {"rows": 2, "cols": 2, "entries": [0, 1, 1, 0]})
    assert main(["estimate", "rho", "--input", path]) == 0
    out = capsys.readouterr().out
    assert "rho in [1, 1]" in out and "converged=True" in out


def test_estimate_gamma_identity(tmp_path, capsys):
    path = _write(tmp_path, "identity_family.json",
                  {"diagonal": {"kind": "constant", "c": 1.0}})
    assert main(["estimate", "gamma", "--input", path]) == 0
    out = capsys.readouterr().out
    assert "gamma in [1, 1]" in out


def test_estimate_jsr_golden(tmp_path, capsys):
    path = _write(tmp_path, "golden_pair.json", GOLDEN_PAIR)
    assert main(["estimate", "jsr", "--input", path, "--delta", "1e-6"]) == 0
    out = capsys.readouterr().out
    assert "jsr in [1.618033" in out


def test_estimate_ess_warns_without_oracle(tmp_path, capsys):
    fam = {"diagonal": {"kind": "constant", "c": 1.0},
           "bands": [{"offset": 1, "weights": {"kind": "constant", "c": 1.0}}]}
    path = _write(tmp_path, "multiband.json", fam)
    assert main(["estimate", "ess", "--input", path]) == 0
    err = capsys.readouterr().err
    assert "no analytic oracle" in err


def test_check_explicit_pass(tmp_path, capsys):
    path = _write(tmp_path, "pair.json",
                  {"matrices": [{"rows": 2, "cols": 2, "entries": [1, 1, 1, 1]}] * 2})
    assert main(["check", "--id", "F1", "--input", path]) == 0
    assert "verdict=pass" in capsys.readouterr().out


def test_check_hypothesis_rejection_exit_2(tmp_path, capsys):
    path = _write(tmp_path, "badt.json",
                  {"matrices": [{"rows": 1, "cols": 1, "entries": [1.0]}],
                   "params": {"t": 0.5}})
    assert main(["check", "--id", "F10", "--input", path]) == 2
    assert "t >= 1" in capsys.readouterr().err


def test_check_malformed_input_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["check", "--id", "F1", "--input", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line" in err
    missing = _write(tmp_path, "short.json",
                     {"matrices": [{"rows": 2, "cols": 2, "entries": [1, 2, 3]}]})
    assert main(["check", "--id", "F1", "--input", missing]) == 2


def test_check_random_deterministic(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    args = ["check", "--id", "F2", "--random", "--seed", "1", "--trials", "3",
            "--quiet"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_exit_codes_with_broken_chain(monkeypatch, tmp_path):
    """A deliberately broken chain (test-only) must drive exit code 1."""

    def build_fail(inputs, ctx):
        return [Part("broken", CHAIN, [("hi", Bracket(2.0, 2.0, "fixed")),
                                       ("lo", Bracket(1.0, 1.0, "fixed"))])]

    def build_wide(inputs, ctx):
        return [Part("wide", CHAIN, [("wide", Bracket(0.0, 10.0, "wide")),
                                     ("tight", Bracket(0.0, 5.0, "fixed"))])]

    def fake_spec(cid, build):
        return ChainSpec(cid, cid, "finite", "test-only", {}, "none",
                         lambda rng, ens: ChainInputs(),
                         lambda inputs: None, build)

    import importlib

    registry_module = importlib.import_module("specrad.registry")
    specs = [fake_spec("X1", build_fail), fake_spec("X2", build_wide)]
    monkeypatch.setattr(registry_module, "_REGISTRY", tuple(specs))
    assert main(["check", "--id", "X1", "--quiet"]) == 1
    assert main(["check", "--id", "X2", "--quiet"]) == 3
    assert main(["sweep", "--registry", "all", "--trials", "2"]) == 1


def test_sweep_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    assert main(["sweep", "--ids", "F1", "--trials", "2", "--seed", "3",
                 "--out", str(out), "--format", "csv"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "chain_id,trial,term_index,term_label,lo,hi,slack,verdict"
    assert len(lines) == 1 + 2 * 2  # two terms per trial
    assert lines[1].startswith("F1,0,0,chain/rho(A o B),")


def test_sweep_json_report_embeds_config(tmp_path):
    out = tmp_path / "report.json"
    assert main(["sweep", "--ids", "E2", "--ensemble", "shift_family",
                 "--trials", "2", "--seed", "4", "--out", str(out),
                 "--dump-inputs"]) == 0
    doc = json.loads(out.read_text())
    assert doc["tool"] == "specrad" and doc["version"]
    assert doc["config"]["ensemble"]["seed"] == 4
    assert doc["config"]["set_m_max"] >= 1
    assert doc["runs"][0]["inputs"]
    assert doc["totals"]["fail"] == 0


def test_env_budget_override(monkeypatch, tmp_path):
    out = tmp_path / "r.json"
    monkeypatch.setenv("SPECRAD_J_MAX", "4")
    assert main(["sweep", "--ids", "F1", "--trials", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["j_max"] == 4


def test_catalog_command(tmp_path):
    out = tmp_path / "catalog.json"
    assert main(["catalog", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["chains"]) >= 37
    assert doc["chains"][0]["id"] == "F1"


def test_unknown_id_exit_2(capsys):
    assert main(["check", "--id", "F99"]) == 2
