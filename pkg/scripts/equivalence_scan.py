#!/usr/bin/env python3
"""Randomized structural scan over the subspace builders.

Draws random parameter tables, builds the basis three ways (recursion,
explicit sum, general construction specialized) and checks that all three
agree, that the derivative-closure identities hold and that the span has
breadth one.  Any violation is printed and the exit status is nonzero, so
the script doubles as a long-running fuzz harness:

    python3 scripts/equivalence_scan.py --count 1000 --seed 7
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dinv import (
    ParamTable,
    breadth,
    build_explicit,
    build_general,
    build_recursive,
    check_closure,
    specialize,
)


def random_table(rng: random.Random, d_max: int, n_max: int) -> ParamTable:
    d = rng.randint(2, d_max)
    n = rng.randint(2, n_max)
    a = {}
    for i in range(2, n + 1):
        for j in range(2, d + 1):
            if rng.random() < 0.8:
                a[(i, j)] = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
    return ParamTable(d=d, n=n, a=a)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200, help="number of random tables (default 200)")
    ap.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    ap.add_argument("--d-max", type=int, default=4, help="max variable count (default 4)")
    ap.add_argument("--n-max", type=int, default=7, help="max top degree (default 7)")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    bad = 0
    start = time.perf_counter()
    for k in range(args.count):
        t = random_table(rng, args.d_max, args.n_max)
        rec = build_recursive(t)
        problems = []
        if build_explicit(t).elements != rec.elements:
            problems.append("explicit != recursive")
        if build_general(specialize(t)).elements != rec.elements:
            problems.append("general != recursive")
        report = check_closure(rec, t)
        if not report.ok:
            problems.append(f"closure violations {report.violations}")
        if breadth(list(rec)) != 1:
            problems.append("breadth != 1")
        if problems:
            bad += 1
            print(f"[{k}] FAIL d={t.d} n={t.n} a={t.a}: {'; '.join(problems)}")
    elapsed = time.perf_counter() - start
    print(f"checked {args.count} tables in {elapsed:.2f}s: {args.count - bad} ok, {bad} failed")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
