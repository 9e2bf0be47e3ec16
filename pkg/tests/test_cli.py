import json
import os

import numpy as np
import pytest

from twistharm.cli import main
from twistharm.config import Tolerances, load_config, parse_toml_min


def run(args):
    return main(args)


def test_parse_toml_min():
    text = """
    # comment
    seed = 7
    [tolerances]
    orthogonality = 2e-5
    flag = true
    name = "abc"
    arr = [1, 2.5, "x"]
    [a.b]
    k = 3
    """
    data = parse_toml_min(text)
    assert data["seed"] == 7
    assert data["tolerances"]["orthogonality"] == 2e-5
    assert data["tolerances"]["flag"] is True
    assert data["tolerances"]["arr"] == [1, 2.5, "x"]
    assert data["a"]["b"]["k"] == 3
    with pytest.raises(ValueError):
        parse_toml_min("not a kv line")


def test_load_config_overrides(tmp_path):
    p = tmp_path / "cfg.toml"
    p.write_text("[tolerances]\northogonality = 3e-6\n[guardrails]\nsymbolic_k_max = 7\nseed = 1\n")
    cfg = load_config(str(p))
    assert cfg.tolerances.orthogonality == 3e-6
    assert cfg.guardrails.symbolic_k_max == 7
    cfg2 = load_config(str(p), tol_override=1e-3)
    assert cfg2.tolerances.orthogonality == 1e-3
    assert cfg2.tolerances.parseval == 1e-3


def test_verify_laguerre_and_fault(tmp_path):
    out = str(tmp_path / "o1")
    assert run(["verify", "laguerre", "--out", out]) == 0
    rep = json.load(open(os.path.join(out, "verify_report.json")))
    assert rep["payload"]["n_failed"] == 0
    out2 = str(tmp_path / "o2")
    assert run(["verify", "laguerre", "--out", out2,
                "--inject-fault", "laguerre-table"]) == 1
    rep2 = json.load(open(os.path.join(out2, "verify_report.json")))
    assert "laguerre-recursions" in rep2["payload"]["failed_ids"]


def test_verify_symbolic_small_and_guardrail(tmp_path):
    out = str(tmp_path / "s")
    assert run(["verify", "symbolic", "--pq-max", "2", "--k-max", "3",
                "--n-max", "2", "--out", out]) == 0
    assert run(["verify", "symbolic", "--pq-max", "9", "--out", out]) == 2


def test_verify_report_determinism(tmp_path):
    out = str(tmp_path / "det")
    blobs = []
    for _ in range(2):
        assert run(["verify", "symbolic", "--pq-max", "1", "--k-max", "2",
                    "--n-max", "1", "--out", out,
                    "--timestamp", "2026-01-01T00:00:00Z"]) == 0
        blobs.append(open(os.path.join(out, "verify_report.json"), "rb").read())
    assert blobs[0] == blobs[1]


def test_expand_roundtrip(tmp_path):
    spec = tmp_path / "f.toml"
    spec.write_text("n = 1\n[component.1]\ncoeff_re = 1.0\np = 1\nq = 0\n"
                    "profile = \"phi\"\nprofile_args = [0, 3]\n")
    out = str(tmp_path / "e")
    assert run(["expand", "--f-spec", str(spec), "--k", "1", "--out", out]) == 0
    rep = json.load(open(os.path.join(out, "expansion.json")))
    assert rep["payload"]["k"] == 1
    assert os.path.exists(os.path.join(out, "expansion_comparison.csv"))
    assert run(["expand", "--k", "1", "--out", out]) == 2   # missing f-spec


def test_zeros_cli(tmp_path):
    out = str(tmp_path / "z")
    assert run(["zeros", "--k1", "3", "--k2", "4", "--order", "1",
                "--xmax", "30", "--resolution", "1e-12", "--out", out]) == 0
    rep = json.load(open(os.path.join(out, "zeros_scan.json")))
    assert rep["payload"]["certified_disjoint"] is True


def test_tsm_cli(tmp_path):
    out = str(tmp_path / "t")
    assert run(["tsm", "--fixture", "phi", "--fixture-args", "1", "--n", "1",
                "--radius", "1.0", "--weight", "0,1", "--out", out]) == 0
    assert os.path.exists(os.path.join(out, "tsm_values.csv"))


def test_experiment_sphere_zero_fixture(tmp_path):
    cfgp = tmp_path / "exp.toml"
    cfgp.write_text("[sphere]\nn = 1\nk_max = 2\nweight_p = 1\nweight_q = 0\n"
                    "R = [1.3]\nf = \"zero\"\n")
    out = str(tmp_path / "xs")
    assert run(["experiment", "sphere", "--config", str(cfgp), "--out", out]) == 0
    rep = json.load(open(os.path.join(out, "sphere_experiment.json")))
    assert rep["payload"]["max_recovered_abs"] <= 1e-8


def test_experiment_cone_fixture(tmp_path):
    cfgp = tmp_path / "cone.toml"
    cfgp.write_text(
        "[cone]\nn = 2\nK = 2\nt_max = 1\n"
        "directions = [0.0, 0.0, 1.0, 0.0]\n"
        "expect_verdict = \"non-injective configuration detected\"\n"
        "[cone.component.1]\ncoeff_re = 0.9\np = 1\nq = 0\n"
        "profile = \"phi\"\nprofile_args = [1, 3]\n")
    out = str(tmp_path / "xc")
    assert run(["experiment", "cone", "--config", str(cfgp), "--out", out]) == 0
    assert run(["experiment", "cone", "--out", out]) == 2   # missing config


def test_demo_heisenberg_cli(tmp_path):
    out = str(tmp_path / "d")
    assert run(["demo-heisenberg", "--out", out]) == 0
    rep = json.load(open(os.path.join(out, "heisenberg_demo.json")))
    assert rep["payload"]["demo"] <= 2e-2
