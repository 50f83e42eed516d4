from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from conftest import CORPUS, edit
from euclid_kernel.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    from euclid_kernel.cli import build_parser, run
    code = run(build_parser().parse_args(list(argv)), out, err)
    return code, out.getvalue(), err.getvalue()


def test_corpus_summary():
    code, out, _ = run_cli("check", str(CORPUS))
    assert code == 0
    assert out.splitlines()[-1] == "4 verified, 1 primitive (1.4)"


def test_disallow_primitives():
    code, _, err = run_cli("check", str(CORPUS), "--allow-primitives=false")
    assert code == 1 and "primitive" in err


def test_missing_file():
    code, _, err = run_cli("check", "missing.euclid")
    assert code == 2 and "missing.euclid" in err


def test_parse_error_exit_two(tmp_path):
    bad = tmp_path / "bad.euclid"
    bad.write_text("problem 1.1\n  enunciation\n", encoding="utf-8")
    code, _, err = run_cli("check", str(bad))
    assert code == 2 and f"{bad}:2:" in err


def test_rejection_exit_one(tmp_path):
    src = edit(CORPUS.read_text(encoding="utf-8"), "    step s3: CA = CB by cn1[s1, s2]\n", "")
    path = tmp_path / "broken.euclid"
    path.write_text(src, encoding="utf-8")
    code, out, _ = run_cli("check", str(path))
    assert code == 1
    assert "GoalUnreached" in out and f"{path}:11:3" in out


def test_structured_agrees_with_text():
    _, text, _ = run_cli("check", str(CORPUS))
    _, data, _ = run_cli("check", str(CORPUS), "--format", "structured")
    payload = json.loads(data)
    verdicts = [r["verdict"] for f in payload["files"] for r in f["reports"]]
    assert verdicts.count("verified") == 4 and verdicts.count("primitive") == 1
    assert payload["summary"] == text.splitlines()[-1]


def test_trace_lists_production_and_provenance():
    _, out, _ = run_cli("check", str(CORPUS), "--trace")
    assert "apply_derived(1.3)" in out
    assert "provenance of angle ABC = angle ACB:" in out


def test_fail_fast_stops_early(tmp_path):
    src = edit(CORPUS.read_text(encoding="utf-8"), "    step s3: CA = CB by cn1[s1, s2]\n", "")
    path = tmp_path / "broken.euclid"
    path.write_text(src, encoding="utf-8")
    code, out, _ = run_cli("check", str(path), str(CORPUS), "--fail-fast")
    assert code == 1
    assert "problem 1.2" not in out and str(CORPUS) not in out


@pytest.mark.parametrize("argv", [["check"], ["check", "x", "--bogus"], ["check", "x", "--allow-primitives=maybe"]])
def test_bad_usage(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "euclid_kernel", "check", str(CORPUS)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.endswith("4 verified, 1 primitive (1.4)\n")
