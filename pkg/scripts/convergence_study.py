#!/usr/bin/env python3
"""Convergence study: float h-sweeps for every derivative order and both
point schemes.

For a parameter table (a JSON file, or a built-in demo table) the script
runs the stencil combination against the exact functional value for each
order m = 0..n under both coalescing schemes, writes one CSV per
(scheme, m) pair and prints a summary table of final errors and observed
convergence rates.

Examples:
    python3 scripts/convergence_study.py --out-dir /tmp/study
    python3 scripts/convergence_study.py --spec table.json --f f.txt \
        --z0 1,2 --h0 1/8 --steps 16 --out-dir results
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dinv import (
    ParamTable,
    Polynomial,
    points_scheme_a,
    points_scheme_b,
    sweep,
    sweep_to_csv,
)

DEMO_TABLE = ParamTable(
    d=2, n=4,
    a={(2, 2): Fraction(2), (3, 2): Fraction(3), (4, 2): Fraction(4)},
)
DEMO_F = "x1^4 + x1^2*x2 + x2^2 + x1 + x2 + 1"


def load_table(path: str | None) -> ParamTable:
    if path is None:
        return DEMO_TABLE
    with open(path, encoding="utf-8") as fh:
        return ParamTable.from_dict(json.load(fh))


def load_poly(path: str | None, dim: int) -> Polynomial:
    if path is None:
        return Polynomial.parse(DEMO_F, dim)
    text = Path(path).read_text(encoding="utf-8").strip()
    if text.startswith("{"):
        return Polynomial.from_dict(json.loads(text))
    return Polynomial.parse(text, dim)


def parse_point(text: str | None, dim: int) -> tuple[Fraction, ...]:
    if text is None:
        return tuple(Fraction(0) for _ in range(dim))
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != dim:
        raise SystemExit(f"expected {dim} coordinates, got {len(parts)}")
    return tuple(Fraction(p) for p in parts)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", help="parameter table JSON (default: built-in demo table)")
    ap.add_argument("--f", help="polynomial file, text or JSON (default: built-in demo)")
    ap.add_argument("--z0", help="comma-separated rational base point (default: origin)")
    ap.add_argument("--h0", default="1/4", help="initial step as a rational (default 1/4)")
    ap.add_argument("--steps", type=int, default=12, help="number of halvings (default 12)")
    ap.add_argument("--out-dir", default="convergence_out", help="directory for the CSV files")
    args = ap.parse_args(argv)

    table = load_table(args.spec)
    f = load_poly(args.f, table.d)
    z0 = parse_point(args.z0, table.d)
    h0 = float(Fraction(args.h0))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    schemes = {
        "a": points_scheme_a(table, z0),
        "b": points_scheme_b(table, z0),
    }

    z0_text = ", ".join(str(c) for c in z0)
    print(f"table: d={table.d} n={table.n}, f = {f.render()}, z0 = ({z0_text})")
    print(f"{'scheme':>6} {'m':>3} {'exact':>14} {'final abs_err':>14} {'median order':>13}  csv")
    for name, pts in schemes.items():
        for m in range(table.n + 1):
            rows = sweep(f, z0, m, pts, h0=h0, steps=args.steps)
            path = out_dir / f"scheme_{name}_m{m}.csv"
            path.write_text(sweep_to_csv(rows), encoding="utf-8")
            orders = [r.est_order for r in rows if r.est_order is not None and r.abs_err > 1e-12]
            median = f"{statistics.median(orders):.3f}" if orders else "exact"
            print(
                f"{name:>6} {m:>3} {rows[0].exact:>14.6g} {rows[-1].abs_err:>14.3e} "
                f"{median:>13}  {path}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
