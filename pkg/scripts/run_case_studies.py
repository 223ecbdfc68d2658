"""Solution counts for every corpus model under all seven breaking configs.

Usage: python3 scripts/run_case_studies.py [--models DIR] [--threads N]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from indisym.cli import load_model
from indisym.engine import enumerate_solutions
from indisym.oracle import orbit_oracle
from indisym.symbreak import all_configs


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--models", default=str(Path(__file__).resolve().parent.parent / "models"))
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    configs = list(all_configs())
    header = ["model", *(str(c) for c in configs), "orbits", "secs"]
    rows = [header]
    for path in sorted(Path(args.models).glob("*.um")):
        model = load_model(str(path))
        t0 = time.perf_counter()
        counts = [enumerate_solutions(model, c, threads=args.threads).count for c in configs]
        orbits = orbit_oracle(model).count
        rows.append([path.stem, *map(str, counts), str(orbits), f"{time.perf_counter() - t0:.2f}"])
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
