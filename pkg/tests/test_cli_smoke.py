import json
import subprocess
import sys
from pathlib import Path

from seqwit.cli import eval_descriptor

REPO = Path(__file__).resolve().parents[1]


def _run(*args):
    cmd = [sys.executable, str(REPO / "verify.py"), *args]
    return subprocess.run(cmd, cwd=str(REPO), text=True, capture_output=True)


def test_cli_kernel_suite_json():
    proc = _run("--suite", "kernel", "--max-spoke", "4", "--max-depth", "8", "--seed", "7")
    assert proc.returncode == 0, proc.stderr
    obj = json.loads(proc.stdout)
    assert obj["schema"] == "seqwit/1"
    assert obj["verdict"] == "pass"
    assert obj["seed"] == 7
    assert obj["certificates"]["count"] == 32


def test_cli_markdown_to_file(tmp_path):
    out = tmp_path / "report.md"
    proc = _run("--suite", "realline-example", "--max-depth", "500", "--format", "markdown", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == ""
    assert "| check | status | lemma | claim | detail |" in out.read_text()


def test_cli_eval_converges():
    proc = _run("--eval", "descriptors/T_1.json", "--query", "converges")
    assert proc.returncode == 0, proc.stderr
    obj = json.loads(proc.stdout)
    assert obj["result"] is True
    assert obj["certificate"]["kind"] == "absorption"


def test_cli_eval_row_not_in_ip():
    proc = _run("--eval", "descriptors/row.json", "--query", "in-ip")
    obj = json.loads(proc.stdout)
    assert obj["result"] is False
    assert obj["certificate"]["neighborhood"]["default"] == 2


def test_cli_eval_query_documents():
    obj = json.loads(_run("--eval", "descriptors/witness_query.json", "--query", "in-witness-family").stdout)
    assert obj["result"] is True
    assert obj["certificate"]["epsilon"] == {"num": 1, "den": 1}
    obj = json.loads(_run("--eval", "descriptors/spokes_1_2.json", "--query", "almost-disjoint").stdout)
    assert obj["result"] is True
    obj = json.loads(_run("--eval", "descriptors/canonical_fan.json", "--query", "test-set-relative", "--seed", "3").stdout)
    assert obj["result"] is True


def test_cli_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert _run("--eval", str(bad), "--query", "converges").returncode == 2
    assert _run("--eval", "descriptors/T_1.json", "--query", "nope").returncode == 2
    assert _run("--suite", "nope").returncode == 2
    assert _run("--suite", "kernel", "--max-spoke", "0").returncode == 2


def test_eval_descriptor_in_process():
    answer = eval_descriptor(str(REPO / "descriptors" / "T_1.json"), "converges")
    assert answer["schema"] == "seqwit/1"
    assert answer["result"] is True
    assert answer["certificate"]["kind"] == "absorption"

    row = eval_descriptor(str(REPO / "descriptors" / "row.json"), "in-ip")
    assert row["result"] is False
