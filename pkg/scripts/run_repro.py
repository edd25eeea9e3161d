#!/usr/bin/env python3
"""Run the bundled reproduction suites and write the aggregated JSON
report next to this script.

Usage: python scripts/run_repro.py [suite-name] [report-path]
"""

import sys

from charp.cli import main as charp_main


def main() -> int:
    args = sys.argv[1:]
    suite = args[0] if args else "paper-repro"
    report = args[1] if len(args) > 1 else "repro_report.json"
    return charp_main(["suite", suite, "--report", report])


if __name__ == "__main__":
    sys.exit(main())
