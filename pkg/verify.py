#!/usr/bin/env python3
"""CLI runner for seqwit (sequential test sets on the sequential fan).

This is a thin wrapper around `seqwit.cli.main`.

Examples (zsh):
  python3 verify.py --suite kernel --max-spoke 64 --max-depth 4096
  python3 verify.py --suite prefix-chain --max-depth 20 --probes 200 --seed 7
  python3 verify.py --suite minimality --format markdown --out minimality.md
  python3 verify.py --eval descriptors/row.json --query in-ip
"""

from __future__ import annotations

import sys
from pathlib import Path

# Ensure repo root is on path
_REPO_ROOT = Path(__file__).resolve().parent
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from seqwit.cli import main  # noqa: E402

if __name__ == "__main__":
    raise SystemExit(main())
