import json

import pytest

from polylie import cli


def test_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["--suite", "nosuch"])
    assert info.value.code == 2


def test_negative_bound_exits_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["--suite", "pbw", "--max-deg", "-1"])
    assert info.value.code == 2


def test_infeasible_bounds_exit_2(capsys):
    code = cli.main(["--suite", "theorem1", "--coeff-deg", "3"])
    assert code == 2
    assert "exceeds" in capsys.readouterr().err


def test_pbw_suite_passes(capsys):
    code = cli.main(["--suite", "pbw", "--vars", "1", "--max-deg", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "[pass]" in out
    assert "all passed" in out


def test_quiet_suppresses_pass_lines(capsys):
    code = cli.main(["--suite", "prop16", "--quiet"])
    assert code == 0
    out = capsys.readouterr().out
    assert "[pass]" not in out
    assert "all passed" in out


def test_json_report_schema(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = cli.main(
        ["--suite", "hopf", "--samples", "5", "--json", str(path), "--quiet"]
    )
    capsys.readouterr()
    assert code == 0
    data = json.loads(path.read_text())
    assert set(data) == {"suite", "config", "checks", "ok"}
    assert data["ok"] is True
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)
    for check in data["checks"]:
        assert check["status"] in ("pass", "fail", "skipped")
        assert "detail" in check and "elapsed_ms" in check


def test_sampled_suite_deterministic_modulo_timings(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        assert (
            cli.main(
                [
                    "--suite",
                    "theorem2",
                    "--samples",
                    "5",
                    "--seed",
                    "3",
                    "--json",
                    str(path),
                    "--quiet",
                ]
            )
            == 0
        )
    capsys.readouterr()
    blobs = []
    for path in paths:
        data = json.loads(path.read_text())
        for check in data["checks"]:
            check.pop("elapsed_ms", None)
        blobs.append(json.dumps(data, sort_keys=True))
    assert blobs[0] == blobs[1]


def test_all_tiny_bounds(capsys):
    code = cli.main(
        ["--suite", "all", "--vars", "1", "--max-k", "1", "--samples", "3", "--quiet"]
    )
    capsys.readouterr()
    assert code == 0
