import json

from digitdens.cli import main
from digitdens.density import ScanReport
from digitdens.numeric import Dyadic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ct(capsys):
    code, out, _ = run(capsys, "ct", "3")
    assert code == 0
    assert "11/16" in out and "11/2^4" in out


def test_ct_json_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "ct", "3")
    obj = json.loads(out)
    assert Dyadic.parse(obj["c"]) == Dyadic(11, 4)
    assert Dyadic.parse(obj["ctilde"]) == Dyadic(3, 3)


def test_delta_and_phi(capsys):
    code, out, _ = run(capsys, "delta", "7")
    assert code == 0 and "21/2^6" in out
    code, out, _ = run(capsys, "--format", "json", "phi", "5")
    obj = json.loads(out)
    assert obj["support"]["-2"] == "1/2^2"
    assert obj["p"] == "3/2^2"


def test_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "--format", "json", "scan", "1", "16384")
    assert code == 0
    report = ScanReport.from_json(out)
    assert report.ok and report.checked == 16383
    code, out2, _ = run(
        capsys, "--format", "json", "--workers", "2", "--epsilon", "1/2^3",
        "scan", "1", "2048",
    )
    code2, out3, _ = run(capsys, "--format", "json", "--epsilon", "1/2^3", "scan", "1", "2048")
    assert out2 == out3


def test_scan_violation_exit(capsys, monkeypatch):
    doctored = ScanReport(
        t_lo=1, t_hi=4, checked=3,
        violations_c=[3], violations_ctilde=[],
        min_c=(3, Dyadic(1, 2)), max_ctilde=(1, Dyadic(1, 1)),
    )
    import digitdens.cli as cli_mod

    monkeypatch.setattr(cli_mod.density, "scan_range", lambda *a, **k: doctored)
    code, out, err = run(capsys, "scan", "1", "4")
    assert code == 1
    assert "VIOLATION" in err and "11/16" in err  # exact witness c(3) printed


def test_special(capsys):
    code, out, _ = run(capsys, "special", "2")
    assert code == 0
    lines = out.splitlines()
    assert any(line.split()[:3] == ["0", "0", "1"] for line in lines[1:])
    assert any(line.split()[:3] == ["1", "1", "3/2^2"] for line in lines[1:])
    assert any(line.split()[:3] == ["2", "5", "5/2^3"] for line in lines[1:])


def test_oracle_and_rows_and_hyper(capsys):
    assert run(capsys, "oracle", "6")[0] == 0
    assert run(capsys, "rows", "12", "3")[0] == 0
    code, out, _ = run(capsys, "hyper", "5")
    assert code == 0 and "100" in out


def test_moments_and_diagonal(capsys):
    code, out, _ = run(capsys, "--format", "json", "moments", "4")
    obj = json.loads(out)
    assert obj["mean_c"] == "10527/2^14"
    code, out, _ = run(capsys, "--format", "json", "diagonal", "3")
    obj = json.loads(out)
    assert Dyadic.parse(obj["offset_1"]["coefficient"]).as_fraction().denominator <= 1 << 10


def test_cost_guard_exit(capsys):
    code, _, err = run(capsys, "oracle", "25")
    assert code == 2 and "cost guard" in err
    code, _, _ = run(capsys, "--max-cost", "2", "oracle", "25")
    assert code == 2


def test_verify_paper_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "3,4")
    assert code == 0
    assert "criterion  3" in out and "criterion  4" in out
    assert out.count("PASS") == 2
