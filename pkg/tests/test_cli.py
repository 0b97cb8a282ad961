import json

import numpy as np
import pytest

from gammapick.cli import run
from gammapick.domains import E311, mu, pi_coordinates
from gammapick.nevanlinna import gamma_curve_from_entries
from gammapick.realization import random_schur, realization_to_rational
from gammapick.serialize import (
    cmatrix_to_json,
    complex_to_json,
    curve_to_json,
    gamma_nodes_to_json,
)
from gammapick.nevanlinna import GammaNodes
from gammapick.domains import GammaPoint


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _run(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def _function_payload(seed=0, m=4, k=3, max_sigma=0.999999):
    return {"function": random_schur(k, m, seed=seed, max_sigma=max_sigma).to_json()}


def _nodes_payload(scale=1.0, variant="gamma7"):
    rng = np.random.default_rng(0)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a *= 0.8 / mu(a, E311)
    nodes = (0.2, -0.35 + 0.1j, 0.45j)
    points = tuple(
        GammaPoint(variant, tuple(scale * np.asarray(pi_coordinates(l * a, variant).entries)))
        for l in nodes
    )
    return gamma_nodes_to_json(GammaNodes(variant, nodes, points))


def test_mu_diagonal(tmp_path, capsys):
    path = _write(
        tmp_path,
        "mu.json",
        {"matrix": cmatrix_to_json(np.diag([0.5, 0.25, 0.2])), "structure": "E(3;3;1,1,1)"},
    )
    code, report = _run(capsys, ["mu", "--in", path])
    assert code == 0
    assert report["command"] == "mu"
    assert report["mu"] == pytest.approx(0.5, abs=1e-9)


def test_mu_unknown_structure_is_input_error(tmp_path, capsys):
    path = _write(
        tmp_path, "mu.json", {"matrix": cmatrix_to_json(np.eye(3)), "structure": "E(9)"}
    )
    code = run(["mu", "--in", path])
    captured = capsys.readouterr()
    assert code == 1
    assert "structure" in captured.err


def test_mu_shape_structure_mismatch_is_input_error(tmp_path, capsys):
    path = _write(
        tmp_path,
        "mu.json",
        {"matrix": cmatrix_to_json(np.eye(3)), "structure": "E(2;2;1,1)"},
    )
    code = run(["mu", "--in", path])
    captured = capsys.readouterr()
    assert code == 1
    assert "does not fit" in captured.err


def test_gamma_check_member_and_nonmember(tmp_path, capsys):
    rng = np.random.default_rng(1)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a *= 0.9 / mu(a, E311)
    member = _write(
        tmp_path, "m.json", {"matrix": cmatrix_to_json(a), "structure": "E(3;3;1,1,1)"}
    )
    code, report = _run(capsys, ["gamma-check", "--in", member])
    assert code == 0 and report["member"] is True
    non = _write(
        tmp_path, "n.json", {"matrix": cmatrix_to_json(3 * a), "structure": "E(3;3;1,1,1)"}
    )
    code, report = _run(capsys, ["gamma-check", "--in", non])
    assert code == 2 and report["member"] is False


def test_gamma_check_tetrablock_point(tmp_path, capsys):
    path = _write(tmp_path, "t.json", {"point": [[0.3, 0.0], [0.2, 0.0], [0.05, 0.0]]})
    code, report = _run(capsys, ["gamma-check", "--in", path])
    assert code == 0 and report["member"] is True


def test_se_command(tmp_path, capsys):
    payload = _function_payload(seed=2)
    payload["points"] = [
        [complex_to_json(0.3), complex_to_json(0.2), complex_to_json(-0.4)],
        [complex_to_json(-0.1j), complex_to_json(0.5j), complex_to_json(0.0)],
    ]
    path = _write(tmp_path, "se.json", payload)
    code, report = _run(capsys, ["se", "--in", path])
    assert code == 0
    assert report["sup_modulus"] <= 1.0 + 1e-9
    assert len(report["values"]) == 2


def test_upper_e_membership(tmp_path, capsys):
    path = _write(tmp_path, "ue.json", _function_payload(seed=3, m=2))
    code, report = _run(capsys, ["upper-e", "--in", path])
    assert code == 0
    assert report["member"] is True
    assert report["ranks"]["k"] == 1
    assert all(report["psd"].values())


def test_uw_roundtrip_command(tmp_path, capsys):
    path = _write(tmp_path, "uw.json", _function_payload(seed=4, m=2, max_sigma=0.9))
    code, report = _run(capsys, ["uw", "--in", path])
    assert code == 0
    assert report["passed"] is True
    assert report["verify_residual"] <= 1e-8
    assert report["torus_fit_residual"] <= 1e-7


def test_right_s_command(tmp_path, capsys):
    path = _write(tmp_path, "rs.json", _function_payload(seed=5, m=2))
    code, report = _run(capsys, ["right-s", "--in", path])
    assert code == 0
    assert report["modulus_match"] <= 1e-9


def test_np_solvable_and_schwarz_violation(tmp_path, capsys):
    good = _write(
        tmp_path,
        "np0.json",
        {
            "nodes": [complex_to_json(0.0), complex_to_json(0.5)],
            "targets": [cmatrix_to_json(np.zeros((1, 1))), cmatrix_to_json(0.3 * np.eye(1))],
        },
    )
    code, report = _run(capsys, ["np", "--in", good])
    assert code == 0
    assert report["solvable"] is True
    assert report["target_residual"] <= 1e-9
    bad = _write(
        tmp_path,
        "np1.json",
        {
            "nodes": [complex_to_json(0.0), complex_to_json(0.5)],
            "targets": [cmatrix_to_json(np.zeros((1, 1))), cmatrix_to_json(0.6 * np.eye(1))],
        },
    )
    code, report = _run(capsys, ["np", "--in", bad])
    assert code == 2
    assert report["solvable"] is False
    assert report["min_eig"] < 0


def test_reduce_node_instance(tmp_path, capsys):
    path = _write(tmp_path, "red.json", _nodes_payload())
    code, report = _run(capsys, ["reduce", "--in", path, "--z2-grid", "0.3,-0.2j"])
    assert code == 0
    assert report["variant"] == "gamma7"
    assert len(report["problems"]) == 2
    assert all("pick" in p for p in report["problems"])


def test_certify_gamma7_nodes_solvable_and_scaled(tmp_path, capsys):
    path = _write(tmp_path, "c0.json", _nodes_payload())
    code, report = _run(capsys, ["certify", "--in", path])
    assert code == 0
    assert report["certified"] is True
    scaled = _write(tmp_path, "c1.json", _nodes_payload(scale=3.0))
    code, report = _run(capsys, ["certify", "--in", scaled])
    assert code == 2
    assert report["certified"] is False


def test_certify_gamma5_reports_both_denominators(tmp_path, capsys):
    path = _write(tmp_path, "c5.json", _nodes_payload(variant="gamma5"))
    code, report = _run(capsys, ["certify", "--in", path])
    assert code == 0
    assert set(report["by_denominator"]) == {"corrected", "printed"}
    assert report["options"]["det_denominator"] == "corrected"


def test_certify_curve_instance_runs_slice_checks(tmp_path, capsys):
    f = random_schur(3, 1, seed=6, max_sigma=0.9)
    curve = gamma_curve_from_entries(realization_to_rational(f), "gamma7")
    payload = {
        "curve": curve_to_json(curve),
        "nodes": [complex_to_json(v) for v in (0.2, -0.3j, 0.4)],
    }
    path = _write(tmp_path, "curve.json", payload)
    code, report = _run(capsys, ["certify", "--in", path, "--z2-grid", "0.3,0.5j"])
    assert code == 0
    assert all(row["ok"] for row in report["slice_checks"])


def test_verify_identities_passes_and_is_deterministic(tmp_path, capsys):
    code = run(["verify-identities", "--seed", "7", "--grid", "16"])
    first = capsys.readouterr().out
    assert code == 0
    assert run(["verify-identities", "--seed", "7", "--grid", "16"]) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report["passed"] is True
    assert all(row["residual"] <= row["threshold"] for row in report["rows"])


def test_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code = run(["mu", "--in", str(path)])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == ""
    assert "malformed JSON" in captured.err


def test_missing_field_is_input_error(tmp_path, capsys):
    path = _write(tmp_path, "empty.json", {})
    code = run(["se", "--in", path])
    captured = capsys.readouterr()
    assert code == 1
    assert "error" in captured.err


def test_out_file_and_text_mode(tmp_path, capsys):
    path = _write(
        tmp_path,
        "mu.json",
        {"matrix": cmatrix_to_json(np.diag([0.5, 0.25, 0.2])), "structure": "E(3;3;1,1,1)"},
    )
    out = tmp_path / "report.json"
    code = run(["mu", "--in", path, "--out", str(out)])
    stdout = capsys.readouterr().out
    assert code == 0
    assert json.loads(out.read_text()) == json.loads(stdout)
    code = run(["mu", "--in", path, "--text"])
    text = capsys.readouterr().out
    assert code == 0
    assert "mu" in text
    with pytest.raises(json.JSONDecodeError):
        json.loads(text)
