import json

import pytest

from intlegendre.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_csv(capsys):
    code, out, _ = run_cli(capsys, "table", "--family", "Q", "--degrees", "2..4", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "family,n,coeffs"
    assert lines[1] == "Q,2,-1/2 0 1/2"
    assert lines[3] == "Q,4,1/8 0 -3/4 0 5/8"


def test_table_json_with_points(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--family", "L", "--degrees", "0..1", "--points", "0.5"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == "L"
    assert payload["entries"][0]["coeffs"] == ["1"]
    assert payload["entries"][1]["coeffs"] == ["0", "1"]
    assert payload["entries"][1]["values"]["0.5"] == 0.5


def test_table_r_family(capsys):
    code, out, _ = run_cli(capsys, "table", "--family", "r", "--degrees", "0..2")
    assert code == 0
    payload = json.loads(out)
    assert payload["entries"][2]["coeffs"] == ["-1/5", "0", "1"]


def test_table_float_backend(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--family", "Q", "--degrees", "2..2", "--backend", "float"
    )
    assert code == 0
    assert json.loads(out)["entries"][0]["coeffs"] == [-0.5, 0.0, 0.5]


def test_table_invalid_range(capsys):
    code, _, err = run_cli(capsys, "table", "--family", "Q", "--degrees", "5..2")
    assert code == 2
    assert "error" in err
    code, _, _ = run_cli(capsys, "table", "--family", "Q", "--degrees", "0..4")
    assert code == 2
    code, _, _ = run_cli(capsys, "table", "--family", "Q", "--degrees", "nope")
    assert code == 2


def test_minimize(capsys):
    code, out, _ = run_cli(capsys, "minimize", "--n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["M"] == "32/45"
    assert payload["minimizer_monomial"] == ["1", "0", "-10/3", "0", "7/3"]
    assert payload["oracle_agrees"] is True


def test_minimize_n2(capsys):
    code, out, _ = run_cli(capsys, "minimize", "--n", "2")
    payload = json.loads(out)
    assert payload["M"] == "4/3"
    assert payload["minimizer_pretty"] == "1 - x^2"


def test_minimize_odd_matches_even(capsys):
    _, out4, _ = run_cli(capsys, "minimize", "--n", "4")
    _, out5, _ = run_cli(capsys, "minimize", "--n", "5")
    a, b = json.loads(out4), json.loads(out5)
    assert a["M"] == b["M"]
    assert a["minimizer_monomial"] == b["minimizer_monomial"]


def test_minimize_rejects_small_n(capsys):
    code, _, err = run_cli(capsys, "minimize", "--n", "1")
    assert code == 2


def test_expand_poly(capsys):
    code, out, _ = run_cli(capsys, "expand", "--poly", "0,0,1,0,-1", "--N", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["coefficients"] == {"2": "-2/5", "4": "-8/5"}
    assert payload["residual_sup"] == 0.0


def test_expand_member_shorthand(capsys):
    code, out, _ = run_cli(capsys, "expand", "--poly", "Q3", "--N", "3")
    assert code == 0
    assert json.loads(out)["coefficients"] == {"3": "1"}


def test_expand_named(capsys):
    code, out, _ = run_cli(capsys, "expand", "--fn", "one-minus-x2-exp", "--N", "12")
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "quadrature_float"
    assert payload["residual_sup"] < 1e-8


def test_expand_csv(capsys):
    code, out, _ = run_cli(
        capsys, "expand", "--poly", "0,0,1,0,-1", "--N", "4", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,coefficient"
    assert lines[1] == "2,-2/5"
    assert lines[-2].startswith("residual_sup,")


def test_expand_usage_errors(capsys):
    assert run_cli(capsys, "expand", "--fn", "nope", "--N", "4")[0] == 2
    assert run_cli(capsys, "expand", "--N", "4")[0] == 2
    assert run_cli(capsys, "expand", "--poly", "1,2", "--fn", "sin-pi", "--N", "4")[0] == 2
    assert run_cli(capsys, "expand", "--poly", "1,2", "--N", "1")[0] == 2


def test_transform(capsys):
    code, out, _ = run_cli(capsys, "transform", "--map", "1,1,0,1", "--N", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["interval"] == ["-2", "0"]
    assert payload["stated_interval"] == ["0", "0"]
    assert payload["weight_pretty"].startswith("(-2*x - x^2)")
    assert payload["max_offdiag_relative"] < 1e-11


def test_transform_scale_map(capsys):
    code, out, _ = run_cli(capsys, "transform", "--map", "2,0,0,1/2", "--N", "4")
    payload = json.loads(out)
    assert payload["interval"] == ["-1/4", "1/4"]


def test_transform_identity_map(capsys):
    code, out, _ = run_cli(capsys, "transform", "--map", "1,0,0,1", "--N", "4")
    payload = json.loads(out)
    assert payload["interval"] == ["-1", "1"]
    assert payload["weight_pretty"].startswith("(1 - x^2)")
    assert payload["max_offdiag_relative"] < 1e-13


def test_transform_rejects_bad_maps(capsys):
    assert run_cli(capsys, "transform", "--map", "1,1,1,1", "--N", "4")[0] == 2
    assert run_cli(capsys, "transform", "--map", "1,1,0", "--N", "4")[0] == 2
    assert run_cli(capsys, "transform", "--map", "0,-1,1,0", "--N", "4")[0] == 2


def test_quad_csv(capsys):
    code, out, _ = run_cli(capsys, "quad", "--m", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "node,weight"
    assert len(lines) == 4
    assert lines[2].startswith("0.0,")


def test_quad_json(capsys):
    code, out, _ = run_cli(capsys, "quad", "--m", "2", "--format", "json")
    payload = json.loads(out)
    assert payload["exact_degree"] == 3
    assert payload["weights"] == [pytest.approx(1.0), pytest.approx(1.0)]


def test_quad_bounds(capsys):
    assert run_cli(capsys, "quad", "--m", "0")[0] == 2
    assert run_cli(capsys, "quad", "--m", "513")[0] == 2


def test_verify_small(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "verify", "--max-degree", "6", "--out", str(out_path))
    assert code == 0
    assert "NormQn: CONFIRMED" in out
    assert "Qnatzero: CONFIRMED_UP_TO_SIGN" in out
    payload = json.loads(out_path.read_text())
    assert payload["schema"] == 1
    verdicts = {e["identity_id"]: e["verdict"] for e in payload["entries"]}
    assert "FAILED" not in verdicts.values()
    # re-serializing the parsed report is byte-identical
    assert json.dumps(payload, indent=2, sort_keys=True) + "\n" == out_path.read_text()


def test_verify_bad_degree(capsys):
    assert run_cli(capsys, "verify", "--max-degree", "3")[0] == 2
    assert run_cli(capsys, "verify", "--max-degree", "65")[0] == 2


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_out_files_written(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run_cli(
        capsys, "table", "--family", "Q", "--degrees", "2..3",
        "--format", "csv", "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("family,n,coeffs")
