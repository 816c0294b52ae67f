#!/usr/bin/env python3
"""Run the full identity verification registry and write the JSON report.

Usage:
    python scripts/make_report.py [--max-degree 40] [--out verification_report.json]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from intlegendre.verdict import Verdict
from intlegendre.verify import run_verification


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=40)
    parser.add_argument("--out", default="verification_report.json")
    args = parser.parse_args()

    start = time.perf_counter()
    report = run_verification(args.max_degree)
    elapsed = time.perf_counter() - start

    width = max(len(e.identity_id) for e in report.entries)
    for entry in report.entries:
        marker = "" if entry.verdict is Verdict.CONFIRMED else "  <--"
        print(f"{entry.identity_id:<{width}}  {entry.verdict.value}{marker}")
    confirmed = sum(1 for e in report.entries if e.verdict is Verdict.CONFIRMED)
    print(f"\n{confirmed}/{len(report.entries)} confirmed as stated, "
          f"{len(report.entries) - confirmed} corrected or sign-flipped, "
          f"{len(report.failed_ids)} failed  ({elapsed:.1f}s)")

    Path(args.out).write_text(report.to_json(), encoding="utf-8")
    print(f"report written to {args.out}")
    return 1 if report.failed_ids else 0


if __name__ == "__main__":
    raise SystemExit(main())
