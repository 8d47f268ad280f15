"""Run the acceptance criteria and print one line per criterion.

    python scripts/run_suite.py                 # all nine
    python scripts/run_suite.py 1 5 --json out.json
    LAURENT_DUALITY_THREADS=4 python scripts/run_suite.py
"""
import argparse
import sys
from pathlib import Path

from laurent_duality.suite import SuiteConfig, run_suite, summary_lines


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("criteria", type=int, nargs="*")
    ap.add_argument("--json", type=Path, help="write the merged report here")
    ap.add_argument("--details", action="store_true", help="print every assertion")
    args = ap.parse_args()
    report, per = run_suite(SuiteConfig.from_env(), args.criteria or None)
    if args.details:
        print(report.to_text())
    for line in summary_lines(per):
        print(line)
    if args.json:
        args.json.write_text(report.to_json())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
