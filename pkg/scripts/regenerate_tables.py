"""Recompute every catalog table and (optionally) refresh the golden files.

    python scripts/regenerate_tables.py             # print the csv to stdout
    python scripts/regenerate_tables.py --golden    # rewrite tests/golden/
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from kowitt import catalog
from kowitt.formats import emit
from kowitt.ko import ko_table

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

BATCHES = {
    "cp": [(n,) for n in range(1, 17)],
    "gr": [(m, n) for n in range(1, 10) for m in range(1, n + 1) if m + n <= 10],
    "lg": [(n,) for n in range(1, 9)],
    "quadric": [(n,) for n in range(3, 13)],
    "spinor": [(n,) for n in range(2, 10)],
    "eiii": [()],
    "evii": [()],
    "point": [()],
}


def all_tables():
    tables = []
    for family, params in BATCHES.items():
        for ps in params:
            space = catalog.build(family, ps)
            for label in [catalog.TRIVIAL] + space.nontrivial_twists():
                tables.append(ko_table(space, label))
    return tables


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--golden", action="store_true", help="rewrite tests/golden instead of printing")
    args = ap.parse_args()
    start = time.perf_counter()
    tables = all_tables()
    elapsed = time.perf_counter() - start
    bad = []
    for t in tables:
        if t.numbers() != catalog.expected_table(t.space, t.twist_label).numbers():
            bad.append(f"{t.space} {t.twist_label}")
    if bad:
        raise SystemExit(f"refusing to write: tables disagree with the closed forms: {', '.join(bad)}")
    if not args.golden:
        print(emit(tables, "csv"), end="")
    else:
        GOLDEN.mkdir(exist_ok=True)
        (GOLDEN / "catalog.csv").write_text(emit(tables, "csv"))
        by_id = {(t.space, t.twist_label): t for t in tables}
        (GOLDEN / "evii.json").write_text(emit([by_id["evii", "O"], by_id["evii", "O(1)"]], "json"))
        (GOLDEN / "point.txt").write_text(emit(by_id["point", "O"], "text"))
        (GOLDEN / "gr_2_3.txt").write_text(emit([by_id["gr:2,3", "O"], by_id["gr:2,3", "O(1)"]], "text"))
    print(f"# {len(tables)} tables in {elapsed:.2f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
