#!/usr/bin/env python3
"""
End-to-end check on a synthetic corpus: synth -> encode -> restore -> eval.

Usage: python scripts/run_pipeline.py [count] [work_dir]
"""
import os
import sys
import tempfile
import time

# Add src to path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from slpr.cli import main  # noqa: E402


def run_pipeline(count: int, work_dir: str) -> int:
    gt_dir = os.path.join(work_dir, "gt")
    tgt_dir = os.path.join(work_dir, "targets")
    det_dir = os.path.join(work_dir, "det")
    report = os.path.join(work_dir, "report.json")

    steps = [
        ["synth", "--count", str(count), "--out", gt_dir],
        ["encode", "--in", gt_dir, "--out", tgt_dir],
        ["restore", "--method", "pls", "--in", tgt_dir, "--out", det_dir],
        ["eval", "--gt", gt_dir, "--det", det_dir, "--report", report],
    ]
    for argv in steps:
        print(f"$ slpr {' '.join(argv)}")
        code = main(argv)
        if code != 0:
            print(f"❌ step {argv[0]} exited with {code}")
            return code
    return 0


if __name__ == "__main__":
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    work_dir = sys.argv[2] if len(sys.argv) > 2 else tempfile.mkdtemp(prefix="slpr_")
    started = time.time()
    code = run_pipeline(count, work_dir)
    print(f"{'✅' if code == 0 else '❌'} finished in {time.time() - started:.1f}s ({work_dir})")
    sys.exit(code)
