import json
import subprocess
import sys

import pytest

from laurent_duality.cli import EXIT_FAIL, EXIT_OK, EXIT_PARSE, main
from laurent_duality.formats import bundled


def run(*args):
    return main([str(a) for a in args])


@pytest.mark.parametrize("args", [
    ("ext", bundled("k_a_d1.mod")),
    ("dualize", "verify", bundled("k_a_d2.mod")),
    ("dualize", "homological", bundled("k_a_d1.mod"), "--method", "snf"),
    ("dualize", "gs", bundled("k_a_d1.mod"), "--field", "cyclotomic:4"),
    ("crossed", "build", bundled("z2_cross.alg")),
    ("crossed", "center", bundled("z3_cross.alg")),
    ("crossed", "fsg", bundled("klein_twisted.alg")),
    ("crossed", "ext-r", bundled("z2_cross.alg")),
    ("zalg", "resolve", bundled("ut2.alg")),
    ("zalg", "nakayama", bundled("group_z2.alg")),
    ("zalg", "serre", bundled("ut2.alg")),
    ("zalg", "fsg-probe", bundled("m2.alg"), "--expect", "certified-yes"),
    ("zalg", "hom-center", bundled("hecke_a1.alg"), "--allow-undetermined"),
])
def test_successful_commands(args, capsys):
    assert run(*args) == EXIT_OK
    assert "[        pass]" in capsys.readouterr().out


def test_failures_exit_one(capsys):
    assert run("zalg", "fsg-probe", bundled("ut2.alg"), "--expect", "certified-yes") == EXIT_FAIL
    # the bimodule question is open for the Hecke algebra, so strict mode does not pass
    assert run("zalg", "hom-center", bundled("hecke_a1.alg")) == EXIT_FAIL


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.mod"
    bad.write_text('{"kind": "module", "field": "Q", "rank": 1, "dim": 1, "operators": [[["0"]]]}')
    assert run("ext", bad) == EXIT_PARSE
    assert run("ext", tmp_path / "missing.mod") == EXIT_PARSE
    assert run("ext", bundled("k_a_d1.mod"), "--field", "GF7") == EXIT_PARSE
    assert run("crossed", "build", bundled("ut2.alg")) == EXIT_PARSE
    assert run("zalg", "serre", bundled("hecke_a1.alg")) == EXIT_PARSE  # needs a field center
    assert "error:" in capsys.readouterr().err


def test_json_output_is_deterministic(tmp_path, capsys):
    outs = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        assert run("crossed", "ext-r", bundled("z3_cross.alg"), "--json-out", p) == EXIT_OK
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["summary"]["fail"] == 0 and doc["assertions"]
    assert all({"id", "anchor", "status", "witness"} <= set(a) for a in doc["assertions"])


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "laurent_duality.cli", "ext", str(bundled("k_a_d1.mod"))],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "pass" in proc.stdout
