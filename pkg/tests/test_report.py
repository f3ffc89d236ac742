import json
import shutil
import subprocess
import sys

import pytest

from conftest import FIXTURES
from picip.cli import main
from picip.report import RunConfig, RunReport, format_report, load_report, report_to_dict, run
from picip.scoring import CAUSE_LABELS


def fixture(name):
    return str(FIXTURES / f"{name}.java")


def test_account_passes_threshold_one():
    report, code = run(RunConfig([fixture("account")], fail_threshold=1))
    assert code == 0
    assert [(str(s.subject), s.total) for s in report.scores] == [("Account", 0)]


def test_house_fails_threshold_three():
    report, code = run(RunConfig([fixture("house")], fail_threshold=3))
    assert code == 1
    report, code = run(RunConfig([fixture("house")], fail_threshold=4))
    assert code == 0


def test_no_threshold_never_fails():
    assert run(RunConfig([fixture("house")]))[1] == 0


def test_empty_directory(tmp_path):
    report, code = run(RunConfig([str(tmp_path)]))
    assert code == 0
    assert report.scores == [] and report.files_parsed == 0
    data = json.loads(format_report(report, "json"))
    assert data["classes"] == [] and data["summary"] == {"files_parsed": 0, "files_failed": 0}


def test_missing_path(tmp_path):
    report, code = run(RunConfig([fixture("account"), str(tmp_path / "nope")], fail_threshold=1))
    assert code == 2
    assert [e.kind for e in report.errors] == ["MissingPath"]
    assert len(report.scores) == 1


def test_parse_failure_gives_partial_report(tmp_path):
    shutil.copy(fixture("account"), tmp_path / "ok.java")
    (tmp_path / "bad.java").write_text("class Broken {\n")
    report, code = run(RunConfig([str(tmp_path)]))
    assert code == 2
    assert (report.files_parsed, report.files_failed) == (1, 1)
    assert [str(s.subject) for s in report.scores] == ["Account"]
    (err,) = report.errors
    assert err.kind == "JavaSyntaxError" and err.span.file.endswith("bad.java")


def test_parse_failure_beats_threshold(tmp_path):
    shutil.copy(fixture("house"), tmp_path / "house.java")
    (tmp_path / "bad.java").write_text("/* open")
    assert run(RunConfig([str(tmp_path)], fail_threshold=1))[1] == 2


def test_directory_walk_is_recursive_and_java_only(tmp_path):
    (tmp_path / "sub" / "deeper").mkdir(parents=True)
    (tmp_path / "sub" / "deeper" / "X.java").write_text("class X { }")
    (tmp_path / "notes.txt").write_text("class Y { }")
    report, _ = run(RunConfig([str(tmp_path)]))
    assert [str(s.subject) for s in report.scores] == ["X"]


def test_text_table_for_house():
    report, _ = run(RunConfig([fixture("house")]))
    text = format_report(report, "text")
    block = text.split("House  (")[1].splitlines()
    rows = block[1:7]
    for row, (label, value) in zip(rows, zip(CAUSE_LABELS.values(), [1, 0, 1, 0, 1, 0])):
        assert row.strip().startswith(label)
        assert row.rstrip().endswith(f" {value}")
    assert block[7].strip() == "total: 3"
    assert all(line == line.rstrip() for line in text.splitlines())


def test_compiler_cycles_json_diagnostics():
    report, _ = run(RunConfig([fixture("compiler_cycles")]))
    data = json.loads(format_report(report, "json"))
    assert sorted(d["kind"] for d in data["diagnostics"]) == [
        "D_ExtendsOwnNested",
        "D_SelfOrChainCycle",
        "D_SelfOrChainCycle",
    ]


def test_json_schema_and_key_order():
    report, _ = run(RunConfig([fixture("house")], include_metrics=True))
    text = format_report(report, "json")
    data = json.loads(text)
    assert list(data) == ["classes", "diagnostics", "metrics", "summary"]
    house = next(c for c in data["classes"] if c["name"] == "House")
    assert list(house) == ["name", "file", "causes", "total", "findings"]
    assert house["causes"] == {"C1": 1, "C2": 0, "C3": 1, "C4": 0, "C5": 1, "C6": 0}
    assert house["total"] == 3
    assert {f["kind"] for f in house["findings"]} == {
        "C1_InnerExtendsOuter",
        "C3_InnerNameMatchesTopLevel",
        "C5_DeepNesting",
    }
    assert all(line == line.rstrip() for line in text.splitlines())
    wash = next(m for m in data["metrics"] if m["name"] == "House.Bedroom.Attachedwashroom")
    assert (wash["dit"], wash["tpac"]) == (1, 1)


@pytest.mark.parametrize(
    "config",
    [
        RunConfig([str(FIXTURES)], include_metrics=True, per_class=True),
        RunConfig([str(FIXTURES)]),
        RunConfig([fixture("compiler_cycles")], include_metrics=True),
    ],
)
def test_json_round_trip(config):
    report, _ = run(config)
    back = load_report(format_report(report, "json"))
    assert back == report
    assert report_to_dict(back) == report_to_dict(report)


def test_round_trip_with_errors(tmp_path):
    (tmp_path / "bad.java").write_text("class {")
    report, _ = run(RunConfig([str(tmp_path), str(tmp_path / "missing")]))
    assert load_report(format_report(report, "json")) == report


def test_empty_report_json():
    data = json.loads(format_report(RunReport(), "json"))
    assert data == {"classes": [], "diagnostics": [], "summary": {"files_parsed": 0, "files_failed": 0}}


def test_per_class_rows_do_not_gate():
    report, code = run(RunConfig([fixture("house")], per_class=True, fail_threshold=3))
    assert [str(s.subject) for s in report.scores] == [
        "Bedroom",
        "House",
        "House.Bedroom",
        "House.Bedroom.Attachedwashroom",
    ]
    assert code == 1


@pytest.mark.parametrize("bad", [dict(inputs=[]), dict(inputs=["x"], fail_threshold=7), dict(inputs=["x"], format="xml")])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        RunConfig(**bad)


class TestCli:
    def test_exit_codes(self, capsys):
        assert main([fixture("account"), "--fail-threshold", "1"]) == 0
        assert main([fixture("house"), "--fail-threshold", "3"]) == 1
        capsys.readouterr()
        assert main([fixture("house"), "does/not/exist.java"]) == 2
        assert "does/not/exist.java" in capsys.readouterr().err

    def test_format_flag_and_env(self, capsys, monkeypatch):
        main([fixture("account"), "--format", "json"])
        assert json.loads(capsys.readouterr().out)["classes"][0]["name"] == "Account"
        monkeypatch.setenv("PICIP_FORMAT", "json")
        main([fixture("account")])
        assert json.loads(capsys.readouterr().out)["summary"]["files_parsed"] == 1
        main([fixture("account"), "--format", "text"])
        assert "total: 0" in capsys.readouterr().out

    def test_bad_env_format(self, monkeypatch):
        monkeypatch.setenv("PICIP_FORMAT", "yaml")
        with pytest.raises(SystemExit) as exc:
            main([fixture("account")])
        assert exc.value.code == 2

    @pytest.mark.parametrize("value", ["0", "7", "x"])
    def test_threshold_range(self, value):
        with pytest.raises(SystemExit) as exc:
            main([fixture("account"), "--fail-threshold", value])
        assert exc.value.code == 2

    def test_metrics_and_per_class_text(self, capsys):
        main([fixture("compiler_cycles"), "--metrics", "--per-class"])
        out = capsys.readouterr().out
        assert "metrics:" in out and "cycle" in out
        assert "B.InnerB  (" in out

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "picip", fixture("house"), "--fail-threshold", "3", "--format", "json"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 1
        assert json.loads(proc.stdout)["summary"]["files_parsed"] == 1
