"""Command-line interface: outputs, determinism, exit codes."""

import json

import pytest

from forestmaps.cli import main


def run_cli(capsys, *argv):
    main(list(argv))
    out = capsys.readouterr().out
    return out


def test_coeffs_json(capsys):
    out = run_cli(capsys, "coeffs", "--p", "3", "--order", "4", "--u", "symbolic")
    doc = json.loads(out)
    f = doc["result"]["series"]["F"]
    assert f["coeffs"][3] == ["6", "4"]
    assert f["coeffs"][4] == ["140", "234", "144", "32"]


def test_coeffs_specialized(capsys):
    out = run_cli(capsys, "coeffs", "--p", "4", "--order", "5", "--u", "1/2",
                  "--series", "F,R")
    doc = json.loads(out)
    assert doc["result"]["series"]["R"]["coeffs"][2] == "3/2"


def test_byte_determinism(capsys):
    a = run_cli(capsys, "coeffs", "--p", "3", "--order", "4", "--u", "symbolic")
    b = run_cli(capsys, "coeffs", "--p", "3", "--order", "4", "--u", "symbolic")
    assert a == b


def test_oracle_compare(capsys):
    out = run_cli(capsys, "oracle", "--p", "4", "--faces", "3", "--compare",
                  "--dump-maps")
    doc = json.loads(out)["result"]
    assert doc["matches_solver"] is True
    assert doc["polynomial_in_u"] == ["2"]
    assert len(doc["maps"]) == 2


def test_verify_subset(capsys):
    out = run_cli(capsys, "verify", "--order", "10", "--de-order", "8",
                  "--only", "phi_second_order_ode,quartic_h")
    doc = json.loads(out)["result"]
    assert doc["all_zero"] is True
    assert {c["name"] for c in doc["checks"]} == {
        "phi_second_order_ode", "quartic_h"}


def test_radius_csv(capsys):
    out = run_cli(capsys, "--format", "csv", "radius", "--p", "4", "--u=-1,0")
    lines = out.strip().splitlines()
    assert lines[0] == "u,rho,tau,sigma,c_u"
    assert len(lines) == 3
    assert float(lines[1].split(",")[1]) == pytest.approx(0.0459440746, abs=1e-9)


def test_random_json(capsys):
    out = run_cli(capsys, "random", "--u", "1", "--k-max", "3", "--n-list", "50")
    doc = json.loads(out)["result"]
    assert doc["kappa"] == pytest.approx(0.564, abs=0.01)
    assert len(doc["size_law_limit"]) == 3


def test_mu_expand(capsys):
    out = run_cli(capsys, "mu-expand", "--p", "3", "--order", "6",
                  "--series", "R-z")
    doc = json.loads(out)["result"]
    assert doc["all_nonnegative"] is True
    assert doc["rows"][2]["mu_coeffs"] == ["2", "4"]


def test_exit_code_scale_guard(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oracle", "--p", "3", "--faces", "6"])
    assert exc.value.code == 3


def test_exit_code_bad_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["coeffs", "--p", "3", "--order", "70", "--u", "symbolic"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["coeffs", "--p", "3", "--order", "4", "--u", "zzz"])
    assert exc.value.code == 2


def test_exit_code_numeric(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["asymptotics", "--mode", "log-probe", "--u=-1/2",
              "--fracs", "0.999", "--order", "400", "--tol", "1e-30"])
    assert exc.value.code == 4


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    main(["--output", str(path), "coeffs", "--p", "4", "--order", "3",
          "--u", "symbolic"])
    doc = json.loads(path.read_text())
    assert doc["result"]["series"]["F"]["coeffs"][3] == ["2"]
