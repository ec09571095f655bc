import csv
import io
import json

import pytest

from endosign.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def drop_elapsed(payload):
    if isinstance(payload, list):
        return [drop_elapsed(p) for p in payload]
    return {k: v for k, v in payload.items() if k != "elapsed_ms"}


def test_verify_pass_exit_zero(capsys):
    code, out = run_cli(capsys, "verify", "aux", "--rmax", "5")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["points_checked"] == 66  # 6 * 11 sweep points
    assert report["failures"] == []


def test_verify_reports_are_deterministic(capsys):
    _, first = run_cli(capsys, "verify", "kappasum", "--max-rr", "4")
    _, second = run_cli(capsys, "verify", "kappasum", "--max-rr", "4")
    assert drop_elapsed(json.loads(first)) == drop_elapsed(json.loads(second))


def test_resource_cap_exit_three(capsys):
    code, out = run_cli(capsys, "verify", "aux", "--rmax", "1000")
    assert code == 3
    report = json.loads(out)
    assert report["incomplete"] is True and report["pass"] is False


def test_usage_error_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonexistent"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_csv_output(capsys):
    code, out = run_cli(capsys, "verify", "kappasum", "--max-rr", "2",
                        "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    assert rows[0]["suite"] == "kappasum"
    assert rows[0]["pass"] == "True"
    assert json.loads(rows[0]["failures"]) == []


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(capsys, "verify", "aux", "--rmax", "3", "--out", str(target))
    assert code == 0 and out == ""
    report = json.loads(target.read_text())
    assert report["suite"] == "aux" and report["pass"] is True


def test_enumerate_params(capsys):
    code, out = run_cli(capsys, "enumerate", "params", "--n", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["parameter_count"] == 1
    assert payload["parameters"] == [
        {"lam_plus": [], "lam_minus": [], "characters": 1}]

    code, out = run_cli(capsys, "enumerate", "params", "--n", "3")
    payload = json.loads(out)
    assert payload["pairs"] == [[0, 3], [1, 2], [2, 1], [3, 0]]
    assert [p["partition"] for p in payload["symplectic_partitions"]][0] == [6]


def test_enumerate_descent(capsys):
    code, out = run_cli(capsys, "enumerate", "descent", "--n", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == len(payload["data"]) > 0
    for row in payload["data"]:
        # every row satisfies the dimension identity
        blocks = sum(d * f for d, f in row["blocks"])
        assert row["n_plus"] + row["n_minus"] + blocks == 3
        # ellipticity never produces (1, trivial) in the minus slot
        assert not (row["n_minus"] == 1 and row["eta_minus"] == "1")


def test_enumerate_cap(capsys):
    code, out = run_cli(capsys, "enumerate", "params", "--n", "99")
    assert code == 3
    assert json.loads(out)["incomplete"] is True


def test_verify_all_aggregates(capsys):
    code, out = run_cli(capsys, "verify", "all", "--rmax", "3", "--nmax", "2",
                        "--max-rr", "2", "--t2max", "0", "--rrmax", "0", "--q", "5")
    assert code == 0
    reports = json.loads(out)
    assert {r["suite"] for r in reports} == {
        "aux", "split", "kappasum", "counting", "constprod", "signchain",
        "transfer", "weyl"}
    assert all(r["pass"] for r in reports)
