import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def test_golden_queries_script_agrees_across_modes():
    proc = subprocess.run([sys.executable, str(SCRIPTS / "golden_queries.py")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "differs" not in proc.stdout
    assert proc.stdout.count("?- ") == 16


def test_run_bench_script_writes_csv(tmp_path):
    csv = tmp_path / "rows.csv"
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / "run_bench.py"), "--reps", "2", "--runs", "1", "--csv", str(csv)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert csv.read_text().splitlines()[0] == "workload,contender,steps,cells,cps,ms"
