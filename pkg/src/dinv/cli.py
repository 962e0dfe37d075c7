"""Command-line front end.

Subcommands
-----------
basis     build a basis (recursive, explicit, or general source) as JSON
verify    run exact checks: closure, equivalence, breadth, identities
points    emit the coalescing points of a scheme, symbolic or at a given h
limit     exact h-expansion check of the stencil combination at one order
sweep     float h-sweep CSV of the scaled stencil combination
example1  reproduce and verify the built-in worked example end to end

Conventions: data goes to stdout (or --out), diagnostics go to stderr.
Exit code 0 means every requested check passed; 1 means a check failed;
2 means bad input or usage.  Rationals cross the boundary as strings
like "3/4"; only the sweep CSV contains floats.  Runs are deterministic
given the arguments and input files.  The environment variable DINV_SEED
seeds the randomized parts of the test suite, not this CLI.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .discretize import expansion_check, points_scheme_a, points_scheme_b, sweep, sweep_to_csv
from .identities import falling_factorial_sum, signed_power_sum, vandermonde_oracle
from .discretize import stencil
from .poly import Polynomial
from .subspace import (
    BasisSequence,
    GeneralSpec,
    ParamTable,
    breadth,
    build_explicit,
    build_general,
    build_recursive,
    check_closure,
    degrees,
    span_contains,
    specialize,
)


class CliError(Exception):
    """Bad input or usage; message goes to stderr, exit code 2."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc


def _load_spec(path: str) -> ParamTable | GeneralSpec:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise CliError(f"{path}: expected a JSON object")
    try:
        if "b" in data or "c" in data:
            return GeneralSpec.from_dict(data)
        return ParamTable.from_dict(data)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _require_params(spec, path: str) -> ParamTable:
    if not isinstance(spec, ParamTable):
        raise CliError(f"{path}: this command needs a parameter-table spec (keys d, n, a)")
    return spec


def _load_poly(path: str, dim_hint: int) -> Polynomial:
    """Polynomial file: JSON object form, or the plain text form (in which
    case the ambient dimension is taken from the --spec file)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            return Polynomial.from_dict(json.loads(stripped))
        return Polynomial.parse(stripped, dim_hint)
    except (ValueError, json.JSONDecodeError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def _parse_point(text: str | None, d: int) -> tuple[Fraction, ...]:
    if text is None:
        return (Fraction(0),) * d
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != d:
        raise CliError(f"base point needs {d} comma-separated rationals, got {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except ValueError as exc:
        raise CliError(f"bad rational in base point {text!r}: {exc}") from exc


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- subcommands -----------------------------------------------------------


def _cmd_basis(args) -> int:
    spec = _load_spec(args.spec)
    if args.source == "general":
        if not isinstance(spec, GeneralSpec):
            raise CliError(f"{args.spec}: source 'general' needs a general spec (keys n, d, b, c)")
        basis = build_general(spec)
    else:
        params = _require_params(spec, args.spec)
        basis = build_recursive(params) if args.source == "recursive" else build_explicit(params)
    if args.pretty:
        text = "".join(p.render() + "\n" for p in basis)
    else:
        text = json.dumps(basis.to_list(), indent=2) + "\n"
    _emit(args, text)
    return 0


def _closure_via_span(basis: BasisSequence) -> tuple[bool, list[tuple[int, int]]]:
    """Generic closure check: every partial derivative of element k must
    lie in the span of elements 0..k-1."""
    bad: list[tuple[int, int]] = []
    for k in range(1, len(basis)):
        lower = list(basis.elements[:k])
        for j in range(1, basis.dim + 1):
            if span_contains(lower, basis[k].diff(j)) is None:
                bad.append((k, j))
    return (not bad, bad)


def _cmd_verify(args) -> int:
    if args.what == "identities":
        m_max, vand_max = args.m_max, args.vand_max
        r_max, i_max = args.r_max, args.i_max
        ps_ok = all(
            signed_power_sum(j, m, include_zero=True) == (1 if j == m else 0)
            for m in range(m_max + 1)
            for j in range(m + 1)
        ) and all(
            signed_power_sum(j, m, include_zero=False) == (1 if j == m else 0)
            for m in range(m_max + 1)
            for j in range(1, m + 1)
        )
        vand_ok = all(vandermonde_oracle(m) == stencil(m).coeffs for m in range(vand_max + 1))
        ff_ok = all(
            falling_factorial_sum(r, i, cap=i) == falling_factorial_sum(r, i, cap=r)
            for r in range(1, r_max + 1)
            for i in range(2, i_max + 1)
        )
        ok = ps_ok and vand_ok and ff_ok
        report = {
            "what": "identities",
            "power_sums": {"m_max": m_max, "ok": ps_ok},
            "vandermonde": {"m_max": vand_max, "ok": vand_ok},
            "falling_factorial": {"r_max": r_max, "i_max": i_max, "ok": ff_ok},
            "ok": ok,
        }
        _emit(args, json.dumps(report, indent=2) + "\n")
        _note(f"power sums (m <= {m_max}): {'ok' if ps_ok else 'FAIL'}")
        _note(f"stencil vs elimination oracle (m <= {vand_max}): {'ok' if vand_ok else 'FAIL'}")
        _note(f"falling-factorial cap identity (r <= {r_max}, i <= {i_max}): {'ok' if ff_ok else 'FAIL'}")
        return 0 if ok else 1

    if not args.spec:
        raise CliError(f"verify --what {args.what} needs --spec")
    spec = _load_spec(args.spec)

    if args.what == "closure":
        if isinstance(spec, ParamTable):
            if args.basis:
                data = _load_json(args.basis)
                if not isinstance(data, list):
                    raise CliError(f"{args.basis}: expected a JSON array of polynomials")
                try:
                    basis = BasisSequence.from_list(data)
                except ValueError as exc:
                    raise CliError(f"{args.basis}: {exc}") from exc
            else:
                basis = build_recursive(spec)
            rep = check_closure(basis, spec)
            ok, violations = rep.ok, list(rep.violations)
        else:
            if args.basis:
                data = _load_json(args.basis)
                if not isinstance(data, list):
                    raise CliError(f"{args.basis}: expected a JSON array of polynomials")
                basis = BasisSequence.from_list(data)
            else:
                basis = build_general(spec)
            ok, violations = _closure_via_span(basis)
        report = {"what": "closure", "ok": ok, "violations": [list(v) for v in violations]}
        _emit(args, json.dumps(report, indent=2) + "\n")
        _note("closure: ok" if ok else f"closure: FAIL at (element, variable) {violations}")
        return 0 if ok else 1

    if args.what == "equivalence":
        params = _require_params(spec, args.spec)
        rec = build_recursive(params)
        exp = build_explicit(params)
        rec_vs_exp = rec.elements == exp.elements
        gen_vs_rec = None
        if params.n >= 2:
            gen = build_general(specialize(params))
            gen_vs_rec = gen.elements == rec.elements
        ok = rec_vs_exp and gen_vs_rec is not False
        report = {
            "what": "equivalence",
            "recursive_vs_explicit": rec_vs_exp,
            "general_vs_recursive": gen_vs_rec,
            "ok": ok,
        }
        _emit(args, json.dumps(report, indent=2) + "\n")
        _note("equivalence: ok" if ok else "equivalence: FAIL")
        return 0 if ok else 1

    if args.what == "breadth":
        basis = build_general(spec) if isinstance(spec, GeneralSpec) else build_recursive(spec)
        value = breadth(list(basis))
        ok = value == 1
        report = {
            "what": "breadth",
            "value": value,
            "degrees": list(degrees(basis)),
            "ok": ok,
        }
        _emit(args, json.dumps(report, indent=2) + "\n")
        _note(f"breadth: {value} ({'ok' if ok else 'FAIL, expected 1'})")
        return 0 if ok else 1

    raise CliError(f"unknown verification {args.what!r}")


def _cmd_points(args) -> int:
    params = _require_params(_load_spec(args.spec), args.spec)
    z0 = _parse_point(args.z0, params.d)
    build = points_scheme_a if args.scheme == "a" else points_scheme_b
    pts = build(params, z0)
    if args.h is not None:
        try:
            h = Fraction(args.h)
        except ValueError as exc:
            raise CliError(f"bad rational --h {args.h!r}: {exc}") from exc
        numeric = pts.at(h)
        if args.pretty:
            text = "".join("(" + ", ".join(str(v) for v in pt) + ")\n" for pt in numeric)
        else:
            text = json.dumps([[str(v) for v in pt] for pt in numeric], indent=2) + "\n"
    else:
        if args.pretty:
            text = "".join(
                "(" + ", ".join(coord.render(names=["h"]) for coord in pt) + ")\n"
                for pt in pts.points
            )
        else:
            text = json.dumps(pts.to_dict(), indent=2) + "\n"
    _emit(args, text)
    return 0


def _cmd_limit(args) -> int:
    params = _require_params(_load_spec(args.spec), args.spec)
    f = _load_poly(args.f, params.d)
    if f.dim != params.d:
        raise CliError(f"{args.f}: polynomial has dimension {f.dim}, spec has {params.d}")
    z0 = _parse_point(args.z0, params.d)
    build = points_scheme_a if args.scheme == "a" else points_scheme_b
    pts = build(params, z0)
    try:
        report = expansion_check(f, z0, args.m, pts)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(args, json.dumps(report.to_dict(), indent=2) + "\n")
    _note(f"limit check m={args.m} scheme {args.scheme}: {'pass' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    params = _require_params(_load_spec(args.spec), args.spec)
    f = _load_poly(args.f, params.d)
    if f.dim != params.d:
        raise CliError(f"{args.f}: polynomial has dimension {f.dim}, spec has {params.d}")
    z0 = _parse_point(args.z0, params.d)
    build = points_scheme_a if args.scheme == "a" else points_scheme_b
    pts = build(params, z0)
    try:
        h0 = float(Fraction(args.h0))
    except ValueError as exc:
        raise CliError(f"bad --h0 {args.h0!r}: {exc}") from exc
    try:
        rows = sweep(f, z0, args.m, pts, h0=h0, steps=args.steps)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(args, sweep_to_csv(rows))
    return 0


_EXAMPLE_PARAMS = ParamTable(
    d=2,
    n=4,
    a={(2, 2): Fraction(2), (3, 2): Fraction(3), (4, 2): Fraction(4)},
)

_EXAMPLE_BASIS_TEXT = [
    "1",
    "x1",
    "1/2*x1^2 + 2*x2",
    "1/6*x1^3 + 2*x1*x2 + 3*x2",
    "1/24*x1^4 + x1^2*x2 + 3*x1*x2 + 2*x2^2 + 4*x2",
]

# Second coordinate of each point, as {h-power: coefficient}; the first
# coordinate is always i*h.
_EXAMPLE_POINTS_A = [{}, {2: 2, 3: 3, 4: 4}, {2: 8, 3: 24, 4: 64}, {2: 18, 3: 81, 4: 324}, {2: 32, 3: 192, 4: 1024}]
_EXAMPLE_POINTS_B = [{}, {}, {2: 4}, {2: 12, 3: 18}, {2: 24, 3: 72, 4: 96}]


def _cmd_example1(args) -> int:
    params = _EXAMPLE_PARAMS
    failures: list[str] = []
    out: list[str] = []

    expected_basis = [Polynomial.parse(t, 2) for t in _EXAMPLE_BASIS_TEXT]
    out.append("basis (degrees 0..4):")
    for source, build in (("recursive", build_recursive), ("explicit", build_explicit)):
        got = list(build(params))
        for k, (g, e) in enumerate(zip(got, expected_basis)):
            if g != e:
                failures.append(f"{source} element {k}: got {g.render()}, expected {e.render()}")
    for p in expected_basis:
        out.append(f"  {p.render()}")

    z0 = (Fraction(0), Fraction(0))
    for tag, build_pts, expected_second in (
        ("a", points_scheme_a, _EXAMPLE_POINTS_A),
        ("b", points_scheme_b, _EXAMPLE_POINTS_B),
    ):
        pts = build_pts(params, z0)
        out.append(f"scheme {tag} points:")
        for i, pt in enumerate(pts.points):
            out.append("  (" + ", ".join(coord.render(names=["h"]) for coord in pt) + ")")
            want_first = Polynomial(1, {(1,): Fraction(i)})
            want_second = Polynomial(1, {(e,): Fraction(c) for e, c in expected_second[i].items()})
            if pt[0] != want_first or pt[1] != want_second:
                failures.append(
                    f"scheme {tag} point {i}: got ({pt[0].render(names=['h'])}, "
                    f"{pt[1].render(names=['h'])}), expected ({want_first.render(names=['h'])}, "
                    f"{want_second.render(names=['h'])})"
                )

    f = Polynomial.parse("x1^4 + x1^2*x2 + x2^2 + x1 + x2 + 1", 2)
    out.append(f"limit checks for f = {f.render()} at the origin:")
    for tag, build_pts in (("a", points_scheme_a), ("b", points_scheme_b)):
        pts = build_pts(params, z0)
        for m in range(5):
            report = expansion_check(f, z0, m, pts)
            status = "pass" if report.passed else "FAIL"
            out.append(f"  scheme {tag}, m={m}: {status} (lead {report.lead}, target {report.target})")
            if not report.passed:
                failures.append(f"expansion m={m} scheme {tag}: {report.to_dict()}")

    out.append("result: " + ("all checks passed" if not failures else "FAILURES"))
    _emit(args, "".join(line + "\n" for line in out))
    for msg in failures:
        _note(f"FAIL: {msg}")
    return 0 if not failures else 1


# -- parser ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dinv",
        description="Exact construction and verification of breadth-one "
        "derivative-closed polynomial bases and their coalescing point schemes.",
        epilog="Exit codes: 0 all requested checks passed, 1 a check failed, "
        "2 bad input. DINV_SEED seeds the randomized test suite only.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="build a basis and print it as JSON (or --pretty text)")
    p.add_argument("--source", choices=("recursive", "explicit", "general"), required=True)
    p.add_argument("--spec", required=True, help="spec JSON file")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--pretty", action="store_true", help="human-readable polynomials")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("verify", help="run exact checks; exit 0 iff all pass")
    p.add_argument("--what", choices=("closure", "equivalence", "breadth", "identities"), required=True)
    p.add_argument("--spec", help="spec JSON file (not needed for identities)")
    p.add_argument("--basis", help="closure only: check this basis JSON instead of rebuilding")
    p.add_argument("--m-max", dest="m_max", type=int, default=20, help="identities: power-sum scan bound")
    p.add_argument("--vand-max", dest="vand_max", type=int, default=12, help="identities: oracle scan bound")
    p.add_argument("--r-max", dest="r_max", type=int, default=8, help="identities: weight scan bound")
    p.add_argument("--i-max", dest="i_max", type=int, default=8, help="identities: node scan bound")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("points", help="emit the coalescing points of a scheme")
    p.add_argument("--scheme", choices=("a", "b"), required=True)
    p.add_argument("--spec", required=True, help="parameter-table JSON file")
    p.add_argument("--z0", help="base point as comma-separated rationals (default origin)")
    p.add_argument("--h", help="evaluate at this rational step instead of printing symbolically")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--pretty", action="store_true", help="one point per line")
    p.set_defaults(func=_cmd_points)

    p = sub.add_parser("limit", help="exact h-expansion check at one order")
    p.add_argument("--spec", required=True, help="parameter-table JSON file")
    p.add_argument("--f", required=True, help="polynomial file (JSON or text)")
    p.add_argument("--m", type=int, required=True, help="derivative order to check")
    p.add_argument("--scheme", choices=("a", "b"), required=True)
    p.add_argument("--z0", help="base point (default origin)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("sweep", help="float h-sweep CSV of the scaled combination")
    p.add_argument("--spec", required=True, help="parameter-table JSON file")
    p.add_argument("--f", required=True, help="polynomial file (JSON or text)")
    p.add_argument("--m", type=int, required=True, help="derivative order")
    p.add_argument("--scheme", choices=("a", "b"), required=True)
    p.add_argument("--z0", help="base point (default origin)")
    p.add_argument("--h0", default="1/4", help="starting step (rational or float, default 1/4)")
    p.add_argument("--steps", type=int, default=12, help="number of halvings (default 12)")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("example1", help="reproduce and verify the built-in worked example")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_example1)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
