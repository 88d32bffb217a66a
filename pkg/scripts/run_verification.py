"""Run every registered claim and write a ledger plus witness files.

Usage: python scripts/run_verification.py [--max-n 7] [--workers 4] [--out results]
"""

import argparse
import sys

from betweenness.cli import main


def parse():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="results")
    return p.parse_args()


if __name__ == "__main__":
    a = parse()
    sys.exit(main(["verify-all", "--max-n", str(a.max_n), "--workers", str(a.workers), "--out", a.out]))
