"""Coalescing point schemes and the limit verification.

For a breadth-one derivative-closed basis {B_0, ..., B_n} built from a
ParamTable, two families of n+1 points depending on a step size h collapse
to the base point z0 as h -> 0, and the stencil combination

    (1/h^m) * sum_{r=0..m} A_r^(m) * f(z_r(h))

tends to the differential functional value (B_m(D)f)(z0).  For polynomial
f everything here is exact: the combination is expanded symbolically in h
and the vanishing of the low-order coefficients is checked as an identity,
not up to a tolerance.  A float h-sweep is provided as a human-facing
diagnostic of the same limit.

Point coordinates are univariate polynomials in h (dimension-1 Polynomial
values); the generating ParamTable travels with the point set so
downstream checks can rebuild the basis it belongs to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .identities import falling_factorial
from .poly import DiffOperator, Polynomial
from .subspace import ParamTable, build_recursive


@dataclass(frozen=True)
class Stencil:
    """Finite-difference weights A_k = (-1)^(m-k) / (k! * (m-k)!), k = 0..m.

    They satisfy sum_k A_k * k^j == 0 for 0 <= j < m and == 1 for j == m,
    which is exactly what makes the point combination reproduce the m-th
    derivative order.  m = 0 is the single weight 1 (plain evaluation).
    """

    m: int
    coeffs: tuple[Fraction, ...]


def stencil(m: int) -> Stencil:
    if m < 0:
        raise ValueError(f"order must be non-negative, got {m}")
    coeffs = tuple(
        Fraction((-1) ** (m - k), math.factorial(k) * math.factorial(m - k))
        for k in range(m + 1)
    )
    return Stencil(m=m, coeffs=coeffs)


@dataclass(frozen=True)
class SymbolicPointSet:
    """n+1 points with coordinates given as exact polynomials in h.

    scheme is "a" or "b"; base is the common limit point z0; params is the
    table the points were generated from (carried so verification code can
    rebuild the matching basis).
    """

    scheme: str
    base: tuple[Fraction, ...]
    points: tuple[tuple[Polynomial, ...], ...]
    params: ParamTable

    @property
    def dim(self) -> int:
        return len(self.base)

    def at(self, h: Fraction | int) -> list[tuple[Fraction, ...]]:
        """Exact numeric points for a given rational h."""
        hv = [Fraction(h)]
        return [tuple(coord.eval(hv) for coord in pt) for pt in self.points]

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "base": [str(v) for v in self.base],
            "points": [[coord.to_dict() for coord in pt] for pt in self.points],
        }


def _check_base(params: ParamTable, z0: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    base = tuple(Fraction(v) for v in z0)
    if len(base) != params.d:
        raise ValueError(f"base point has length {len(base)}, expected {params.d}")
    return base


def points_scheme_a(params: ParamTable, z0: Sequence[Fraction | int]) -> SymbolicPointSet:
    """First scheme: one uniform formula for i = 0..n,

        z_i(h) = z0 + (i*h,  sum_{j=2..n} a[j,2]*(i*h)^j,  ...,
                             sum_{j=2..n} a[j,d]*(i*h)^j).
    """
    base = _check_base(params, z0)
    pts = []
    for i in range(params.n + 1):
        coords = [Polynomial(1, {(0,): base[0], (1,): Fraction(i)})]
        for s in range(2, params.d + 1):
            terms = {(0,): base[s - 1]}
            for j in range(2, params.n + 1):
                terms[(j,)] = params.get(j, s) * i ** j
            coords.append(Polynomial(1, terms))
        pts.append(tuple(coords))
    return SymbolicPointSet(scheme="a", base=base, points=tuple(pts), params=params)


def points_scheme_b(params: ParamTable, z0: Sequence[Fraction | int]) -> SymbolicPointSet:
    """Second scheme: z_0(h) = z0, z_1(h) = z0 + (h, 0, ..., 0), and for
    i >= 2

        z_i(h) = z0 + (i*h,  sum_{j=2..i} ff(i,j)*a[j,2]*h^j,  ...,
                             sum_{j=2..i} ff(i,j)*a[j,d]*h^j)

    with ff(i, j) = i*(i-1)*...*(i-j+1); the falling factorial vanishes
    for j > i, so summing j up to n changes nothing."""
    base = _check_base(params, z0)
    pts = []
    for i in range(params.n + 1):
        coords = [Polynomial(1, {(0,): base[0], (1,): Fraction(i)})]
        for s in range(2, params.d + 1):
            terms = {(0,): base[s - 1]}
            if i >= 2:
                for j in range(2, params.n + 1):
                    terms[(j,)] = params.get(j, s) * falling_factorial(i, j)
            coords.append(Polynomial(1, terms))
        pts.append(tuple(coords))
    return SymbolicPointSet(scheme="b", base=base, points=tuple(pts), params=params)


def combination_poly(f: Polynomial, m: int, pts: SymbolicPointSet) -> Polynomial:
    """sum_{r=0..m} A_r^(m) * f(z_r(h)), exactly, as a polynomial in h."""
    if f.dim != pts.dim:
        raise ValueError(f"dimension mismatch: f has {f.dim}, points have {pts.dim}")
    if not 0 <= m <= len(pts.points) - 1:
        raise ValueError(f"order {m} exceeds available points 0..{len(pts.points) - 1}")
    weights = stencil(m).coeffs
    total = Polynomial.zero(1)
    for r in range(m + 1):
        total = total + weights[r] * f.compose(list(pts.points[r]))
    return total


@dataclass(frozen=True)
class ExpansionReport:
    """Exact h-expansion of the stencil combination at order m.

    low_coeffs are the h^0..h^(m-1) coefficients (all must vanish), lead
    is the h^m coefficient, and target is the independently computed
    differential functional value it must equal.
    """

    m: int
    low_coeffs: tuple[Fraction, ...]
    lead: Fraction
    target: Fraction

    @property
    def passed(self) -> bool:
        return all(c == 0 for c in self.low_coeffs) and self.lead == self.target

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "low_coeffs": [str(c) for c in self.low_coeffs],
            "lead": str(self.lead),
            "target": str(self.target),
            "pass": self.passed,
        }


def _target_value(f: Polynomial, z0: Sequence[Fraction], m: int, params: ParamTable) -> Fraction:
    basis = build_recursive(params)
    return DiffOperator(basis[m]).apply_at(f, z0)


def expansion_check(
    f: Polynomial,
    z0: Sequence[Fraction | int],
    m: int,
    pts: SymbolicPointSet,
) -> ExpansionReport:
    """Exact verification of the limit at one order m.

    Expands the stencil combination in h and reports the h^0..h^(m-1)
    coefficients, the h^m coefficient, and the target (B_m(D)f)(z0)
    computed by symbolic differentiation with no reference to the points.
    z0 must be the base point the point set was built around.
    """
    base = tuple(Fraction(v) for v in z0)
    if base != pts.base:
        raise ValueError(f"evaluation point {base} differs from the point-set base {pts.base}")
    expansion = combination_poly(f, m, pts)
    low = tuple(expansion.coeff((t,)) for t in range(m))
    lead = expansion.coeff((m,))
    target = _target_value(f, base, m, pts.params)
    return ExpansionReport(m=m, low_coeffs=low, lead=lead, target=target)


@dataclass(frozen=True)
class SweepRow:
    """One float evaluation of the scaled stencil combination at step h."""

    h: float
    approx: float
    exact: float
    abs_err: float
    est_order: float | None


def _eval_float(p: Polynomial, point: Sequence[float]) -> float:
    total = 0.0
    for e, c in p.terms.items():
        term = float(c)
        for ei, v in zip(e, point):
            if ei:
                term *= v ** ei
        total += term
    return total


def sweep(
    f: Polynomial,
    z0: Sequence[Fraction | int],
    m: int,
    pts: SymbolicPointSet,
    h0: float = 0.25,
    steps: int = 12,
) -> list[SweepRow]:
    """Float h-sweep of (1/h^m) * sum_r A_r^(m) f(z_r(h)) against the exact
    target, halving h each row.  est_order is log2(err_prev / err) and is
    absent on the first row and wherever either error is zero."""
    if h0 <= 0:
        raise ValueError(f"h0 must be positive, got {h0}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    base = tuple(Fraction(v) for v in z0)
    if base != pts.base:
        raise ValueError(f"evaluation point {base} differs from the point-set base {pts.base}")
    weights = [float(c) for c in stencil(m).coeffs]
    exact = float(_target_value(f, base, m, pts.params))
    rows: list[SweepRow] = []
    prev_err: float | None = None
    for k in range(steps):
        h = h0 * 2.0 ** (-k)
        acc = 0.0
        for r, w in enumerate(weights):
            point = [_eval_float(coord, [h]) for coord in pts.points[r]]
            acc += w * _eval_float(f, point)
        approx = acc / h ** m
        err = abs(approx - exact)
        order = None
        if prev_err is not None and prev_err > 0.0 and err > 0.0:
            order = math.log2(prev_err / err)
        rows.append(SweepRow(h=h, approx=approx, exact=exact, abs_err=err, est_order=order))
        prev_err = err
    return rows


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    """CSV with header h,approx,exact,abs_err,est_order; blank est_order
    where absent."""
    lines = ["h,approx,exact,abs_err,est_order"]
    for r in rows:
        order = "" if r.est_order is None else repr(r.est_order)
        lines.append(f"{r.h!r},{r.approx!r},{r.exact!r},{r.abs_err!r},{order}")
    return "\n".join(lines) + "\n"
