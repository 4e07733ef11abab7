#!/usr/bin/env python3
"""Run the acceptance checks outside pytest, one line per criterion.

Exits nonzero if any criterion fails.  The same checks live in
tests/test_acceptance.py; this wrapper is for quick terminal runs.
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def main() -> int:
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "pytest",
            str(ROOT / "tests" / "test_acceptance.py"),
            "-q",
            "-s",
            "--no-header",
        ],
        cwd=ROOT,
    )
    return proc.returncode


if __name__ == "__main__":
    sys.exit(main())
