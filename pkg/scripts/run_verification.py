#!/usr/bin/env python3
"""Run the full verification harness and write the reports.

Produces report.json and report.md in the chosen output directory and
prints one line per entry; exits 1 if any entry fails.
"""

import argparse
import json
import pathlib
import sys

from evenlat.verify import run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tier", default="auto", choices=("auto", "1", "2", "3"))
    parser.add_argument("--out", default=".", help="output directory for the reports")
    args = parser.parse_args()

    report = run_all(args.tier)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    (out / "report.md").write_text(report.to_markdown() + "\n")
    for entry in report.entries:
        print(f"{entry.result_id:22s} {entry.status}")
    print(f"\noverall: {'PASS' if report.all_passed else 'FAIL'}")
    print(f"reports written to {out / 'report.json'} and {out / 'report.md'}")
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
