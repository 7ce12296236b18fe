import io
import json
import subprocess
import sys

import pytest

from satake import cache
from satake.cli import run_command


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_qmult_json():
    blob = run_json("qmult", "A2", "--lambda", "1,1", "--mu", "0,0")
    assert blob["polynomial"] == {"1": 1, "2": 1}


def test_tensor_text_and_json():
    code, out, _ = run("tensor", "A1", "--lambda", "1", "--mu", "1")
    assert code == 0 and out.strip() == "2:1, 0:1"
    assert run_json("tensor", "A1", "--lambda", "1", "--mu", "1")["decomposition"] == {"0": 1, "2": 1}


def test_klpoly_and_brylinski():
    assert run_json("klpoly", "A2", "--lambda", "1,1", "--mu", "0,0")["polynomial"] == {"0": 1, "1": 1}
    code, out, _ = run("brylinski", "A2", "--lambda", "1,1", "--mu", "0,0")
    assert code == 0 and "q^4 + q^2" in out


def test_stalks_carry_convention():
    blob = run_json("stalks", "A2", "--lambda", "2,2")
    assert blob["stalks"][0]["poly"] == {"4": 1, "6": 1, "8": 1}
    assert {s["convention_tag"] for s in blob["stalks"]} == {"reversed"}


def test_other_commands():
    assert run_json("exponents", "G2")["eigenvalues"] == [2, 10]
    assert run_json("hom-a", "A2", "--lambda", "1,1", "--mu", "1,1")["total"] == 10
    code, out, _ = run("pairing", "A1", "--lambda", "2", "--u", "2")
    assert code == 0 and out.strip() == "2"
    assert run_json("orbit", "A2", "--lambda", "1,0")["size"] == 3
    code, out, _ = run("minuscule", "A2")
    assert code == 0 and "(1,0)" in out and "(0,1)" in out
    assert run("hecke-check", "A2", "--max-length", "3")[0] == 0
    assert run("satake-check", "A1", "--lambda", "2", "--mu", "2")[0] == 0
    assert run("rootdata", "G2")[0] == 0


def test_negative_weight_syntax():
    code, _, err = run("qmult", "A2", "--lambda", "1,1", "--mu=-1,2")
    assert code == 2 and "dominant" in err


@pytest.mark.parametrize("argv", [
    ("rootdata", "Z9"),
    ("qmult", "A2", "--lambda", "1"),
    ("qmult", "A2", "--lambda", "1,x", "--mu", "0,0"),
    ("qmult", "A2", "--lambda", "1,1,1", "--mu", "0,0"),
    ("nosuchcommand",),
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_budget_exit_3():
    assert run("brylinski", "G2", "--lambda", "3,3", "--mu", "0,0", "--budget", "10")[0] == 3
    assert run("satake-check", "A2", "--lambda", "1,1", "--mu", "1,1", "--max-terms", "5")[0] == 3


def test_bad_cache_version_exit_2(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    (tmp_path / "kl-A2-coweight.jsonl").write_text('{"format":"%s","version":99}\n' % cache.FORMAT)
    code, _, err = run("klpoly", "A2", "--lambda", "1,1", "--mu", "0,0")
    assert code == 2 and "version" in err
    assert run("klpoly", "A2", "--lambda", "1,1", "--mu", "0,0", "--no-cache")[0] == 0


def test_json_is_deterministic():
    argv = ("stalks", "A2", "--lambda", "2,1", "--json")
    first, second = run(*argv), run(*argv)
    assert first == second
    assert first[1] == json.dumps(json.loads(first[1]), sort_keys=True, indent=1) + "\n"


def test_verify_rank_one_scope():
    code, out, _ = run("verify", "--datum", "A1", "--max-height", "8")
    assert code == 0
    assert out.strip().splitlines()[-1] == "overall: PASS"


def test_console_script(tmp_path):
    env = {"SATAKE_CACHE": str(tmp_path), "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "satake.cli", "qmult", "A1", "--lambda", "4",
                           "--mu", "0", "--json"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["polynomial"] == {"2": 1}
