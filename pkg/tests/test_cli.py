import json

import pytest

from cubewaring.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def test_table1_csv(capsys):
    rc, out = run_cli(capsys, "table1")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,r,h,xi0,p,q,t,s"
    rows = [l.split(",") for l in lines[1:]]
    assert [int(r[-1]) for r in rows] == [24, 63, 134, 216, 316, 435]
    ts = [float(r[-2]) for r in rows]
    for t, expect in zip(ts, (23.4331, 62.9722, 133.4783, 215.3978, 315.9897, 434.9924)):
        assert abs(t - expect) <= 1e-3


def test_table1_json(capsys):
    rc, out = run_cli(capsys, "--format", "json", "table1", "--k", "2")
    assert rc == 0
    doc = json.loads(out)
    assert doc["command"] == "table1"
    assert doc["results"]["rows"][0]["s"] == 24
    assert "runtime_ms" in doc["diagnostics"]


def test_reps_csv_contains_examples(capsys):
    rc, out = run_cli(capsys, "reps", "--P", "2", "--s", "2", "--k", "2")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,count"
    assert "109,6" in lines
    assert "18,1" in lines


def test_rho_value(capsys):
    rc, out = run_cli(capsys, "rho", "--x", "2")
    assert rc == 0
    doc = json.loads(out)
    assert abs(doc["results"]["rho"] - 0.30685282) <= 1e-8


def test_expsum_and_vbeta(capsys):
    rc, out = run_cli(capsys, "expsum", "--q", "4", "--a", "1", "--k", "2", "--kind", "power")
    doc = json.loads(out)
    assert rc == 0
    assert abs(doc["results"]["re"] - 2) < 1e-9 and abs(doc["results"]["im"] - 2) < 1e-9
    rc, out = run_cli(capsys, "vbeta", "--beta", "1e-5", "--P", "4", "--k", "2")
    doc = json.loads(out)
    assert rc == 0
    assert doc["results"]["difference"] < 1e-4 * 64


def test_guard_violation_exit_code(capsys):
    rc, _ = run_cli(capsys, "expsum", "--q", "400", "--a", "1", "--k", "2",
                    "--kind", "triple-direct")
    assert rc == 3


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reps", "--P", "2"])  # missing required --s/--k
    assert exc.value.code == 2


def test_deterministic_output(tmp_path, capsys):
    """Identical runs agree byte for byte outside the runtime diagnostic."""
    docs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        rc = main(["--output", str(path), "series", "--n", "3", "--s", "6", "--k", "2", "--Q", "12"])
        assert rc == 0
        doc = json.loads(path.read_text())
        doc["diagnostics"]["runtime_ms"] = None
        docs.append(json.dumps(doc, sort_keys=True))
    assert docs[0] == docs[1]


def test_outdir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CUBEWARING_OUTDIR", str(tmp_path))
    rc = main(["--output", "out.json", "rho", "--x", "1.5"])
    assert rc == 0
    assert (tmp_path / "out.json").exists()


def test_smoothcount_warns_on_tiny_smooth_box(capsys):
    rc = main(["smoothcount", "--m", "50", "--q", "2", "--r", "1",
               "--eta", "0.1", "--P", "10"])
    captured = capsys.readouterr()
    assert rc == 0
    assert "warning" in captured.err


def test_arcint_and_dissect(capsys):
    rc, out = run_cli(capsys, "arcint", "--P", "2", "--s", "2", "--k", "2",
                      "--n", "109", "--xi", "0.4")
    doc = json.loads(out)
    assert rc == 0
    assert abs(doc["results"]["total"] - 6) < 0.05
    assert doc["results"]["resolved"] is True
    rc, out = run_cli(capsys, "dissect", "--regime", "kappa", "--P", "10000", "--k", "2")
    doc = json.loads(out)
    assert rc == 0
    assert doc["results"]["disjoint"] is True
    assert doc["results"]["total_measure"] <= 1e-6


def test_mainterm_comparison_report(capsys):
    rc, out = run_cli(capsys, "--format", "csv", "mainterm", "--k", "2", "--s", "2",
                      "--n", "120", "--n-lo", "100", "--compare-P", "2")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,R,main_term,ratio"
    row109 = [l for l in lines if l.startswith("109,")]
    assert row109 and float(row109[0].split(",")[1]) == 6.0


def test_verify_all_selected_passes(capsys):
    rc = main(["verify-all", "--only", "acceptance-01", "invariant-kernels"])
    captured = capsys.readouterr()
    assert rc == 0
    doc = json.loads(captured.out)
    assert doc["results"]["failed"] == 0
    assert {c["name"] for c in doc["results"]["checks"]} == {
        "acceptance-01-table1", "invariant-kernels-equivalence",
    }
    assert "PASS acceptance-01-table1" in captured.err


def test_verify_all_reports_known_red(capsys):
    """The singular-series agreement band is a documented failure; the exit
    status must reflect it rather than masking it."""
    rc = main(["verify-all", "--only", "acceptance-11"])
    captured = capsys.readouterr()
    assert rc == 1
    doc = json.loads(captured.out)
    [chk] = doc["results"]["checks"]
    assert chk["passed"] is False
    assert chk["detail"]["agreement_band_met"] is False
    assert chk["detail"]["min_partial"] > 0.1
    assert chk["detail"]["concentration"] <= 10.0
