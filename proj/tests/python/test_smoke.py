import json

import pytest

import hfb

SL2 = {"group": "sl2", "points": [2, -1, "1/3"], "residues": "random", "seed": 7}


def test_dimension_formulas():
    assert hfb.dim_moduli_higgs("sl2", 2, 1) == 9
    assert hfb.hitchin_base_dim("sl2", 2, 1) == 5
    assert hfb.fiber_dim("sl2", 2, 1) == 4
    assert hfb.spectral_genus(3, 2, 1) == 13


def test_genus_zero_rejected():
    with pytest.raises(ValueError):
        hfb.fiber_dim("sl2", 0, 1)


def test_run_dims_report():
    code, report, csv = hfb.run({"group": "sl2", "genus": 2, "n": 1}, subcommand="dims")
    assert code == 0
    assert report["result"]["N"] == 5
    assert csv == ""


def test_run_invalid_input():
    bad = {"group": "sl2", "points": [2, -1], "residues": [[[1, 0], [0, -1]], [[0, 1], [0, 0]]]}
    code, report, _ = hfb.run(bad, subcommand="defo")
    assert code == 2
    assert "holomorphic" in report["error"]


def test_hitchin_map_and_commutativity():
    q = hfb.model_call(hfb.hitchin_map, SL2)
    assert len(q) == 1 and len(q[0]) == 3
    commute, max_abs, control = hfb.model_call(hfb.commute, SL2, 2, 5)
    assert commute and max_abs == "0" and control != "0"


def test_poisson_identity():
    r = hfb.model_call(hfb.verify_poisson_identity, SL2)
    assert r["holds"] and r["phi_skew"] and r["residual_zero"]


def test_config_error_is_value_error():
    with pytest.raises(hfb.ConfigError):
        hfb.model_call(hfb.hitchin_map, json.dumps({"group": "sl2"}))


def test_reports_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[2]
    schema = json.loads((root / "docs" / "report_schema.json").read_text())
    for name, sub in [("dims_sl2", "dims"), ("defo_sl2", "defo"), ("gaudin_flow", "gaudin"),
                      ("spectral_sl2", "spectral"), ("defo_bad_sum", "defo")]:
        cfg = json.loads((root / "tests" / "configs" / f"{name}.json").read_text())
        _, report, _ = hfb.run(cfg, subcommand=sub)
        jsonschema.validate(report, schema)
