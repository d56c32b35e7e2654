import csv
import io
import json
import math

import pytest

from cuspelastic.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, main, parse_a_seq, read_config

CHECK_KEYS = {"name", "paper_ref", "status", "measured", "expected", "tolerance"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sample_displacement_csv(capsys):
    code, out, _ = run(capsys, "sample", "--field", "displacement", "--R", "2", "--grid", "64", "--format", "csv")
    assert code == EXIT_OK
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0].keys()) == ["x1", "x2", "c", "theta", "u1", "u2", "flag"]
    cusp = [r for r in rows if r["flag"] == "singular"]
    assert cusp and cusp[0]["x1"] == "0"
    assert cusp[0]["u1"] == "singular"
    assert all(r["u1"] not in ("nan", "") for r in rows)


def test_sample_is_deterministic(capsys):
    _, a, _ = run(capsys, "sample", "--field", "strain", "--grid", "16")
    _, b, _ = run(capsys, "sample", "--field", "strain", "--grid", "16")
    assert a == b


def test_sample_lame_has_nonelliptic_rows(capsys):
    _, out, _ = run(capsys, "sample", "--field", "lame", "--k", "0")
    rows = [r for r in csv.DictReader(io.StringIO(out)) if r["flag"] != "singular"]
    assert any(float(r["lambda_plus_2mu"]) <= 0 for r in rows)


def test_sample_stress_at_1_1(capsys):
    _, out, _ = run(capsys, "sample", "--field", "stress", "--k", "1")
    row = next(r for r in csv.DictReader(io.StringIO(out)) if r["x1"] == "1" and r["x2"] == "1")
    assert abs(float(row["sigma12"])) <= 1e-12


def test_sample_full_precision(capsys):
    _, out, _ = run(capsys, "sample", "--field", "displacement", "--grid", "8")
    row = next(r for r in csv.DictReader(io.StringIO(out)) if r["flag"] == "ok" and r["theta"] != "0")
    assert len(row["theta"].replace("-", "").replace(".", "").lstrip("0")) >= 15


def test_sample_circle_space_json(capsys):
    code, out, _ = run(capsys, "sample", "--field", "energy-density", "--param-space", "circle",
                       "--grid", "5", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert set(doc) == {"config", "results", "checks", "warnings"}
    assert any(r["sigma_e"] == "singular" for r in doc["results"])


def test_sample_bad_field(capsys):
    code, _, _ = run(capsys, "sample", "--field", "pressure")
    assert code == EXIT_USAGE


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--R", "2", "--k", "1", "--points", "50")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert all(set(c) == CHECK_KEYS for c in doc["checks"])
    assert all(c["status"] in ("pass", "info") for c in doc["checks"])


def test_verify_ellipticity_is_informational(capsys):
    code, out, _ = run(capsys, "verify", "--R", "2", "--k", "0", "--points", "50")
    doc = json.loads(out)
    ell = next(c for c in doc["checks"] if c["name"] == "ellipticity_margin")
    assert code == EXIT_OK
    assert ell["status"] == "info" and ell["measured"] < 0


def test_verify_rejects_R1(capsys):
    code, _, err = run(capsys, "verify", "--R", "1.0")
    assert code == EXIT_USAGE
    assert "R must exceed 1" in err


def test_integrals_sequence(capsys):
    code, out, _ = run(capsys, "integrals", "--R", "2", "--k", "1", "--a-seq", "0.4:7")
    doc = json.loads(out)
    lim = doc["results"]["limits"]
    assert code == EXIT_OK
    assert lim["energy_singular_coeff"] == pytest.approx(2.0, abs=1e-3)
    assert abs(lim["T2_limit"]) <= 1e-6
    gam = doc["results"]["gamma"]
    assert gam["claimed_limit"] == pytest.approx(12 * math.pi)
    assert gam["difference"] == pytest.approx(gam["quadrature_limit"] - gam["claimed_limit"])
    assert gam["disclosure"] in doc["warnings"]
    assert next(c for c in doc["checks"] if c["name"] == "gamma_limit")["status"] == "info"
    assert len(doc["results"]["per_a"]) == 7


def test_integrals_single_a_csv(capsys):
    code, out, _ = run(capsys, "integrals", "--a", "0.3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK
    assert {"T1a", "T2a", "Gamma_a", "V1", "V2"} <= {r["name"] for r in rows}


def test_integrals_bad_sequence(capsys):
    assert run(capsys, "integrals", "--a-seq", "0.4")[0] == EXIT_USAGE
    assert run(capsys, "integrals", "--a", "3")[0] == EXIT_USAGE


def test_ellipticity_k0(capsys):
    code, out, _ = run(capsys, "ellipticity", "--R", "2", "--k", "0")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["results"]["table"][0]["min_margin"] < 0
    assert 0 < doc["results"]["k_threshold"] < math.inf


def test_ellipticity_large_k(capsys):
    _, out, _ = run(capsys, "ellipticity", "--R", "1.5", "--k", "100")
    row = next(r for r in json.loads(out)["results"]["table"] if r["k"] == 100)
    assert row["min_margin"] > 0


def test_ellipticity_grid_guard(capsys):
    assert run(capsys, "ellipticity", "--grid", "16")[0] == EXIT_USAGE


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nR = 1.5\nk = 2\ngrid = 8\n", encoding="utf-8")
    _, out, _ = run(capsys, "sample", "--config", str(cfg), "--k", "3", "--format", "json")
    conf = json.loads(out)["config"]
    assert (conf["R"], conf["k"], conf["grid"]) == (1.5, 3.0, 8)


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n", encoding="utf-8")
    assert run(capsys, "verify", "--config", str(bad))[0] == EXIT_USAGE
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.cfg"))[0] == EXIT_IO
    with pytest.raises(Exception):
        read_config(str(bad))


def test_out_file_and_io_error(tmp_path, capsys):
    target = tmp_path / "d.csv"
    assert run(capsys, "sample", "--grid", "4", "--out", str(target))[0] == EXIT_OK
    assert target.read_text(encoding="utf-8").startswith("x1,x2,c,theta")
    assert run(capsys, "sample", "--out", str(tmp_path / "no" / "x.csv"))[0] == EXIT_IO


def test_parse_a_seq():
    assert parse_a_seq("0.4:3") == [0.4, 0.2, 0.1]


def test_failing_check_exit_code(monkeypatch, capsys):
    from cuspelastic import cli
    from cuspelastic.verification import Check

    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [Check("x", "y", "fail", 1.0, 0.0, 0.1)])
    assert run(capsys, "verify")[0] == EXIT_FAIL
