from __future__ import annotations

import json

import click
import pytest
from click.testing import CliRunner

from superjet import cli


@pytest.fixture
def runner():
    return CliRunner()


def test_unknown_command_exits_2(runner):
    assert runner.invoke(cli.main, ["no-such-command"]).exit_code == 2


def test_bad_option_exits_2(runner):
    assert runner.invoke(cli.main, ["spencer", "--grading", "even"]).exit_code == 2


def test_spencer_json(runner):
    r = runner.invoke(cli.main, ["spencer", "--grading", "odd", "--degree", "0", "--json"])
    assert r.exit_code == 0, r.output
    body = json.loads(r.stdout)
    assert body["command"] == "spencer" and body["status"] == "pass"
    assert {c["name"] for c in body["checks"]} >= {"odd d=0: H^(d,1)"}
    assert all(set(c) == {"name", "expected", "got", "exact"} for c in body["checks"])


def test_json_is_byte_identical(runner):
    args = ["flag-growth", "--json"]
    a = runner.invoke(cli.main, args).stdout
    b = runner.invoke(cli.main, args).stdout
    assert a == b and "time" not in a


def test_fixture_roundtrip(runner, tmp_path):
    path = tmp_path / "golden" / "spencer.json"
    args = ["spencer", "--grading", "mixed", "--degree", "1", "--fixture", str(path)]
    assert runner.invoke(cli.main, args).exit_code == 0
    assert path.exists()
    assert runner.invoke(cli.main, args).exit_code == 0
    path.write_text(path.read_text().replace('"pass"', '"tampered"'))
    assert runner.invoke(cli.main, args).exit_code == 1


def test_failed_check_exits_1(runner, monkeypatch):
    def broken(**_):
        return [cli.CheckEntry("always wrong", False, 1, 2)]
    monkeypatch.setitem(cli.PRODUCERS, "quartic", broken)
    r = runner.invoke(cli.main, ["quartic"])
    assert r.exit_code == 1
    assert "FAIL  always wrong" in r.stdout


def test_thread_env_validation(monkeypatch):
    monkeypatch.setenv("SUPERJET_THREADS", "0")
    assert cli.thread_count() >= 1
    monkeypatch.setenv("SUPERJET_THREADS", "3")
    assert cli.thread_count() == 3
    monkeypatch.setenv("SUPERJET_THREADS", "many")
    with pytest.raises(click.UsageError):
        cli.thread_count()


def test_report_order_is_fixed():
    a = cli.run("gradings", grading="odd")
    b = cli.run("gradings", grading="odd")
    assert a.to_json() == b.to_json()
    assert a.status == "pass"


def test_jsonable_handles_nested_values():
    from fractions import Fraction
    from superjet.scalar import I
    assert cli.jsonable({2: (1, Fraction(1, 2)), 1: {I}}) == {"1": ["I"], "2": [1, "1/2"]}
