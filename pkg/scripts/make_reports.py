#!/usr/bin/env python3
"""Write the JSON reports for the bundled data files into a directory (default: reports/).

Reports carry no timings, so rerunning this leaves the files byte-identical.
"""

import argparse
import sys
from pathlib import Path

from trivext.cli import main as trivext

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

JOBS = [
    ("check-ig", "a2_case4.alg"), ("asid", "a2_case4.alg"), ("cm-list", "a2_case4.alg"),
    ("stable-hom", "a2_case4.alg"), ("k0", "a2_case4.alg"),
    ("asid", "a2_tensor.alg"), ("cm-list", "a2_tensor.alg"),
    ("asid", "a2_regular.alg"), ("k0", "a2_regular.alg"),
    ("asid", "negative_a3.alg"),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(ROOT / "reports"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    runs = [([cmd, "--spec", str(DATA / f)], f"{Path(f).stem}.{cmd}.json") for cmd, f in JOBS]
    runs.append((["quasi-veronese", "--spec", str(DATA / "graded_example.alg"), "--ell", "2"],
                 "graded_example.quasi-veronese.json"))
    runs.append((["classify", "--quiver", "a2", "--cap", "1", "--field", "F2"], "a2.classify.json"))
    runs.append((["verify-table", "--table", "negative", "--cap", "1"], "negative.verify-table.json"))
    for argv, name in runs:
        code = trivext(argv + ["--out", str(out / name)])
        print(f"{code}  {name}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
