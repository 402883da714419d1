import json
import shutil
import subprocess
import sys

import pytest

from twistfrt.cli import main
from twistfrt.pipeline import COMMANDS
from twistfrt.report import strip_timing
from twistfrt.specfile import PRESETS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "-")
    return code, json.loads(out)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "check-yb", "--preset", "quantum-plane")[0] == 0
    code, out, _ = run(capsys, "check-yb", "--preset", "b-prime")
    assert code == 1
    assert "[FAIL   ] yang-baxter" in out
    bad = tmp_path / "bad.spec"
    bad.write_text("[params]\np\n[dim]\n2\n[B]\n[1, 0, 0, 0]\n[0, 0, q, 0]\n")
    code, _, err = run(capsys, "check-yb", "--spec", str(bad))
    assert code == 2
    assert "line 7, column 8" in err and "unknown parameter 'q'" in err
    assert run(capsys, "check-yb", "--spec", str(tmp_path / "missing.spec"))[0] == 2
    assert run(capsys, "check-yb", "--param", "q=x")[0] == 2


def test_json_schema(capsys, tmp_path):
    code, payload = run_json(capsys, "check-hopf", "--preset", "gl-qp-2")
    assert code == 0
    assert payload["schema"] == 1
    assert payload["tool"]["name"] == "twistfrt"
    assert len(payload["spec_hash"]) == 64
    names = [c["name"] for c in payload["checks"]]
    assert names == sorted(names)
    for c in payload["checks"]:
        assert set(c) >= {"name", "status", "witnesses", "timing_ms"}
        assert c["status"] in {"pass", "fail", "warning"}
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "check-yb", "--json", str(target))
    assert out.startswith("# check-yb")
    assert json.loads(target.read_text())["command"] == "check-yb"


@pytest.mark.parametrize("preset", sorted(PRESETS))
def test_determinism(capsys, preset):
    for command in ("check-yb", "derive-bialgebra", "check-bialgebra", "check-hopf"):
        _, first = run_json(capsys, command, "--preset", preset)
        _, second = run_json(capsys, command, "--preset", preset)
        assert strip_timing(first) == strip_timing(second)
        assert json.dumps(strip_timing(first), sort_keys=True) == json.dumps(strip_timing(second), sort_keys=True)


def test_every_command_runs(capsys):
    for command in COMMANDS:
        extra = ("e1 b a",) if command == "normal-form" else ()
        code, out, _ = run(capsys, command, "--preset", "gl-qp-2", *extra)
        assert code == 0, out


def test_param_specialization(capsys):
    _, payload = run_json(capsys, "derive-bialgebra", "--param", "p=1")
    assert payload["outputs"]["cross_relations"][1] == "e1 b - b e1"
    _, payload = run_json(capsys, "check-hopf", "--preset", "gl-qp-2", "--param", "p=1")
    assert payload["outputs"]["determinant_central"] is True
    assert payload["outputs"]["antipode"]["b"] == "-1/q Dinv b"


def test_normal_form_command(capsys):
    code, out, _ = run(capsys, "normal-form", "--preset", "gl-qp-2", "e1 b a D")
    assert code == 0
    assert "normal_form: p^2/q a b e1 D" in out
    assert "[PASS   ] certified" in out


def test_confluence_figure(capsys, tmp_path):
    fig = tmp_path / "counts.png"
    code, out, _ = run(capsys, "confluence", "--preset", "gl-qp-2", "--figure", str(fig))
    assert code == 0
    assert fig.stat().st_size > 0
    assert "normal_words/bialgebra: 1, 4, 10, 20, 35" in out


def test_presets_command(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0 and out.split() == list(PRESETS)
    _, out, _ = run(capsys, "presets", "--show", "quantum-plane")
    assert out == PRESETS["quantum-plane"]


def test_module_entry_point():
    exe = shutil.which("twistfrt")
    cmd = [exe] if exe else [sys.executable, "-m", "twistfrt.cli"]
    proc = subprocess.run(cmd + ["check-yb", "--preset", "b-prime"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "idempotent-wording" in proc.stdout
