"""Rewrite the exceptional spanner catalog from exhaustive enumeration.

Usage: python3 scripts/regenerate_exceptional.py [output_dir]
"""

import sys
from pathlib import Path

from betweenness.catalog import write_catalog

if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else None
    for p in write_catalog(target):
        print(p)
        print(p.read_text())
