#!/usr/bin/env python3
"""Print the seven reference cases with every artifact check, plus the
binomial-relation fixtures for the two demo complexes (including the three
expressions for the merged complex that do not balance under the monomial
map and are rejected by the verifier)."""

import sys
from pathlib import Path

from svtangent.toricideal import (
    check_relation_strings,
    enumerate_binomials,
    format_relation,
    parse_complex_file,
)
from svtangent.workedcases import format_results, run_worked_cases

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"


def main() -> int:
    results = run_worked_cases()
    print(format_results(results))
    print()
    for name in ("demo_complex.txt", "demo_complex_merged.txt"):
        complex_ = parse_complex_file((DATA / name).read_text())
        print(f"{name}: relations up to degree 6")
        for r in enumerate_binomials(complex_, 6):
            print("  " + format_relation(complex_, r))
    merged = parse_complex_file((DATA / "demo_complex_merged.txt").read_text())
    suspect = [
        "x_{233}-x_{23}^2",
        "x_{13}x_{233}-x_{12}x_{23}x_{33}",
        "x_{13}^2x_{233}-x_{12}^2x_{33}^2",
    ]
    print("expressions that do not balance under the monomial map:")
    for text, ok in check_relation_strings(merged, suspect).items():
        print(f"  {text}: {'balanced' if ok else 'rejected'}")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
