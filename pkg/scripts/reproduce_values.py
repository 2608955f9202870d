#!/usr/bin/env python3
"""Regenerate the golden value table from the shipped sweep manifest.

Writes the table-mode rows for every query in data/eval_sweep.txt.  The
committed data/eval_golden.txt was produced by this script and then checked
by hand; rerun with --out to refresh it after a deliberate rule change.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from gallai.cli import format_table_row
from gallai.formulas import evaluate
from gallai.graphs import parse_hspec, render_hspec


def sweep_queries() -> list[tuple[str, int]]:
    text = resources.files("gallai").joinpath("data/eval_sweep.txt").read_text()
    queries = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        spec, k = line.split()
        queries.append((spec, int(k)))
    return queries


def golden_text() -> str:
    rows = []
    for spec, k in sweep_queries():
        H = parse_hspec(spec)
        rows.append(format_table_row(render_hspec(H), k, evaluate(H, k)))
    return "\n".join(rows) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=None, help="write here instead of stdout")
    args = parser.parse_args(argv)
    text = golden_text()
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
