import json
import subprocess
import sys
from pathlib import Path

import pytest

from regulus.cli import run_command
from regulus.report import EXIT_CODES, comparable, dumps, replay_report

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "check_vnr_zn6": (["check", "vnr", "Zn(6)"], 0),
    "check_vnr_zn4": (["check", "vnr", "Zn(4)"], 0),
    "cor23_groupring_z2c2": (["verify", "cor2.3", "--extension", "GroupRing(Zn(2),Cyclic(2))"], 4),
}


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "regulus", *argv], capture_output=True, text=True)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name):
    argv, code = GOLDEN_CASES[name]
    out = cli(*argv, "--json", "-")
    assert out.returncode == code
    rep = json.loads(out.stdout)
    assert dumps(comparable(rep)) == (GOLDEN / f"{name}.json").read_text()
    assert all(ok for _, ok in replay_report(rep))


def test_golden_key_values():
    _, rep = run_command(["check", "vnr", "Zn(6)"])
    assert rep["result"]["verdict"] == "regular" and rep["result"]["witnesses"] == [0, 1, 2, 1, 1, 5]
    _, rep = run_command(["check", "vnr", "Zn(4)"])
    assert rep["result"]["verdict"] == "non-regular" and rep["result"]["counterexample"] == 2
    code, rep = run_command(["verify", "cor2.3", "--extension", "GroupRing(Zn(2),Cyclic(2))"])
    assert code == 4 and rep["status"] == "non-probative"
    assert rep["result"]["projectivity"]["counterexample"] == ["S", [0, 3]]


def test_human_output():
    out = cli("check", "vnr", "Zn(4)")
    assert out.returncode == 0 and "check vnr: ok" in out.stdout and "non-regular" in out.stdout


def test_parse_error_exit_code():
    out = cli("check", "vnr", "Mat(2", "--json", "-")
    assert out.returncode == 2
    rep = json.loads(out.stdout)
    assert rep["error"] == {"type": "parse", "message": rep["error"]["message"], "offset": 5}
    assert cli("check", "vnr", "Mat(2").stderr.startswith("parse error")


def test_usage_errors():
    assert cli("check").returncode == 2
    assert cli("verify", "nonsense").returncode == 2
    assert cli("check", "vnr", "Free(1 over Zn(2))").returncode == 2
    assert cli("suite", "run", "--corpus", "huge").returncode == 2
    assert cli("verify", "thm3.4", "--context", 'TableCtx("missing.ctx")').returncode == 2


def test_cap_exit_code():
    out = cli("check", "vnr", "Mat(3, Mat(2, Zn(2)))", "--json", "-")
    assert out.returncode == 3
    assert json.loads(out.stdout)["error"]["type"] == "CapExceeded"


def test_cap_from_environment():
    import os

    env = dict(os.environ, REGULUS_CAP="8")
    out = subprocess.run([sys.executable, "-m", "regulus", "check", "vnr", "Mat(2, Zn(2))"],
                         capture_output=True, text=True, env=env)
    assert out.returncode == 3


@pytest.mark.parametrize("argv,status", [
    (["check", "regular", "--module", "Zn(4)", "--over", "Zn(4)"], "ok"),
    (["check", "regular", "--module", "Zn(4)", "--over", "Zn(4)", "--relative-to",
      'TableModule("z2_over_z4.mod", Zn(4))', "--witnesses"], "ok"),
    (["verify", "prop1.2", "--module", "Zn(4)", "--relator", 'TableModule("z2_over_z4.mod", Zn(4))',
      "--witnesses"], "ok"),
    (["verify", "thm2.2", "--extension", "MatExt(2, Zn(2))", "--module", "Mat(2, Zn(2))"], "ok"),
    (["verify", "thm2.2", "--extension", "GroupRingExt(Zn(2), Cyclic(2))", "--module",
      'TableModule("socle_quotient_z2c2.mod", GroupRing(Zn(2), Cyclic(2)))'], "non-probative"),
    (["verify", "cor2.3", "--extension", "Mat(2, Zn(2))"], "ok"),
    (["verify", "cor2.3", "--extension", "Mat(2, Zn(4))"], "ok"),
    (["verify", "lem3.1", "--progenerator", "Free(2 over Zn(2))", "--u", "Zn(2)", "--m", "Zn(2)"], "ok"),
    (["verify", "lem3.1", "--progenerator", 'TableModule("z2_over_z4.mod", Zn(4))', "--u", "Zn(4)",
      "--m", "Zn(4)"], "non-probative"),
    (["verify", "thm3.2", "--progenerator", "Free(2 over Zn(4))"], "ok"),
    (["verify", "lem3.3", "Mat(2, Zn(2))"], "ok"),
    (["verify", "lem3.3", "Zn(6)", "--max-family", "1"], "ok"),
    (["verify", "thm3.4", "--context", "StdCtx(Zn(2))"], "ok"),
    (["verify", "thm3.4", "--context", 'TableCtx("row_col.ctx")'], "ok"),
])
def test_commands_and_replay(argv, status):
    code, rep = run_command(argv)
    assert rep["status"] == status and code == EXIT_CODES[status]
    checks = replay_report(rep)
    assert all(ok for _, ok in checks), [name for name, ok in checks if not ok]


def test_json_file_output(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, rep = run_command(["check", "vnr", "Zn(6)", "--json", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["result"] == rep["result"]
    assert "check vnr: ok" in capsys.readouterr().out


def test_quick_suite_is_deterministic_and_replays():
    a = cli("suite", "run", "--corpus", "quick", "--json", "-")
    b = cli("suite", "run", "--corpus", "quick", "--json", "-")
    assert a.returncode == b.returncode == 0
    ra, rb = json.loads(a.stdout), json.loads(b.stdout)
    assert dumps(comparable(ra)) == dumps(comparable(rb))
    assert set(ra["timing"]["by_kind"]) <= set(ra["result"]["summary"])
    checks = replay_report(ra)
    assert checks and all(ok for _, ok in checks)


def test_suite_only_filter():
    code, rep = run_command(["suite", "run", "--corpus", "quick", "--only", "vnr"])
    assert code == 0 and list(rep["result"]["summary"]) == ["vnr"]


def test_version():
    out = cli("--version")
    assert out.returncode == 0 and out.stdout.startswith("regulus ")
