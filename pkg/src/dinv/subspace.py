"""Construction and verification of breadth-one derivative-closed bases.

A derivative-closed (D-invariant) subspace of polynomials is one closed
under every partial derivative.  Breadth one means its basis contains a
single linear element, normalized here to x1.  This module builds graded
bases {B_0, ..., B_N} of such spaces three independent ways:

  * build_recursive: degree-by-degree recursion driven by antiderivatives
    of the lower-degree elements (parameterized by a ParamTable),
  * build_explicit: a closed-form sum over weighted compositions for the
    same parameters, sharing no code with the recursion,
  * build_general: a wider family parameterized by a weight vector b and
    coefficient vectors c (GeneralSpec); the ParamTable family is the
    specialization b = (1, 2, ..., n), c_1 = e_1, c_s = (0, a_{2,s}, ...).

It also provides the exact verifiers used by the test suite and CLI:
span membership, derivative-closure reports, breadth, and degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .compositions import weighted_compositions
from .linalg import rank, solve
from .poly import Polynomial


def _fact(k: int) -> int:
    return math.factorial(k)


@dataclass(frozen=True)
class ParamTable:
    """Parameters a[(i, j)] of the recursive construction.

    d is the number of variables (>= 2), n the top degree (>= 1).  The
    entry a[(i, j)] is the coefficient attached to degree i and variable
    j, for 2 <= i <= n and 2 <= j <= d; absent entries read as zero.
    """

    d: int
    n: int
    a: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"need d >= 2, got {self.d}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in self.a.items():
            if not (2 <= i <= self.n and 2 <= j <= self.d):
                raise ValueError(f"parameter index ({i},{j}) outside 2..{self.n} x 2..{self.d}")
            v = Fraction(v)
            if v != 0:
                clean[(i, j)] = v
        object.__setattr__(self, "a", clean)

    def get(self, i: int, j: int) -> Fraction:
        if not (2 <= i <= self.n and 2 <= j <= self.d):
            raise ValueError(f"parameter index ({i},{j}) outside 2..{self.n} x 2..{self.d}")
        return self.a.get((i, j), Fraction(0))

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "a": {f"{i},{j}": str(v) for (i, j), v in sorted(self.a.items())},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> ParamTable:
        try:
            d = int(data["d"])
            n = int(data["n"])
            raw = data.get("a", {})
            a = {}
            for key, v in raw.items():
                i_s, j_s = str(key).split(",")
                a[(int(i_s), int(j_s))] = Fraction(str(v))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed parameter table: {exc}") from exc
        return cls(d=d, n=n, a=a)


@dataclass(frozen=True)
class GeneralSpec:
    """Inputs of the general construction.

    b is a strictly increasing integer weight vector with b[0] == 1 and
    b[1] >= 2; c holds d coefficient vectors of length n whose first
    coordinates are not all zero (otherwise no linear element would be
    produced and the construction degenerates).
    """

    n: int
    d: int
    b: tuple[int, ...]
    c: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.d < 1:
            raise ValueError(f"need d >= 1, got {self.d}")
        b = tuple(int(v) for v in self.b)
        if len(b) != self.n:
            raise ValueError(f"b has length {len(b)}, expected {self.n}")
        if b[0] != 1:
            raise ValueError(f"b[0] must be 1, got {b[0]}")
        if b[1] < 2:
            raise ValueError(f"b[1] must be >= 2, got {b[1]}")
        if any(b[k] >= b[k + 1] for k in range(1, self.n - 1)):
            raise ValueError(f"b must be strictly increasing from slot 2, got {b}")
        c = tuple(tuple(Fraction(v) for v in row) for row in self.c)
        if len(c) != self.d:
            raise ValueError(f"c has {len(c)} vectors, expected {self.d}")
        for row in c:
            if len(row) != self.n:
                raise ValueError(f"c vector has length {len(row)}, expected {self.n}")
        if all(row[0] == 0 for row in c):
            raise ValueError("first coordinates of the c vectors must not all be zero")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def top_weight(self) -> int:
        return self.b[-1]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "b": list(self.b),
            "c": [[str(v) for v in row] for row in self.c],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> GeneralSpec:
        try:
            n = int(data["n"])
            d = int(data["d"])
            b = tuple(int(v) for v in data["b"])
            c = tuple(tuple(Fraction(str(v)) for v in row) for row in data["c"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed general spec: {exc}") from exc
        return cls(n=n, d=d, b=b, c=c)


@dataclass(frozen=True)
class BasisSequence:
    """A graded basis: element k is exactly of total degree k, element 0
    is the constant 1.  Implies linear independence, so the sequence spans
    a space of dimension len(elements)."""

    elements: tuple[Polynomial, ...]

    def __post_init__(self):
        elems = tuple(self.elements)
        if not elems:
            raise ValueError("empty basis")
        dim = elems[0].dim
        if any(p.dim != dim for p in elems):
            raise ValueError("basis elements must share one dimension")
        if elems[0] != Polynomial.constant(dim, 1):
            raise ValueError(f"element 0 must be the constant 1, got {elems[0]!r}")
        for k, p in enumerate(elems):
            if p.degree != k:
                raise ValueError(f"element {k} has degree {p.degree}, expected {k}")
        object.__setattr__(self, "elements", elems)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, k: int) -> Polynomial:
        return self.elements[k]

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.elements)

    def to_list(self) -> list[dict]:
        return [p.to_dict() for p in self.elements]

    @classmethod
    def from_list(cls, data: Sequence[Mapping]) -> BasisSequence:
        return cls(tuple(Polynomial.from_dict(item) for item in data))


@dataclass(frozen=True)
class WeightSolution:
    """One contribution index of the general construction: counts[i-1][j-1]
    copies of coefficient c[i][j], with total weight sum(b[j] * column sums)
    equal to the target degree."""

    counts: tuple[tuple[int, ...], ...]


def enumerate_weight_solutions(spec: GeneralSpec, m: int) -> list[WeightSolution]:
    """All count grids of weight exactly m, in a fixed deterministic order.

    The grid is flattened column-major (weight slot j outer, vector index i
    inner) and enumerated lexicographically descending over that flattening.
    Solutions whose coefficient product will vanish are included; filtering
    happens at summation time.
    """
    if not 0 <= m <= spec.top_weight:
        raise ValueError(f"weight {m} outside 0..{spec.top_weight}")
    weights = [spec.b[j] for j in range(spec.n) for _ in range(spec.d)]
    out = []
    for flat in weighted_compositions(m, weights):
        counts = tuple(
            tuple(flat[j * spec.d + i] for j in range(spec.n))
            for i in range(spec.d)
        )
        out.append(WeightSolution(counts))
    return out


def build_general(spec: GeneralSpec) -> BasisSequence:
    """The general family: element m sums, over all weight-m solutions,
    the monomial x1^|row 1| ... xd^|row d| with coefficient
    prod c[i][j]^counts[i][j] / counts[i][j]!  (0**0 == 1)."""
    elems = []
    for m in range(spec.top_weight + 1):
        terms: dict[tuple[int, ...], Fraction] = {}
        for sol in enumerate_weight_solutions(spec, m):
            coef = Fraction(1)
            for i in range(spec.d):
                for j in range(spec.n):
                    g = sol.counts[i][j]
                    if g:
                        coef *= spec.c[i][j] ** g
                        coef /= _fact(g)
                if coef == 0:
                    break
            if coef == 0:
                continue
            exps = tuple(sum(row) for row in sol.counts)
            terms[exps] = terms.get(exps, Fraction(0)) + coef
        elems.append(Polynomial(spec.d, terms))
    return BasisSequence(tuple(elems))


def build_recursive(params: ParamTable) -> BasisSequence:
    """Degree-by-degree recursion.  B_0 = 1, B_1 = x1, and for k >= 2

        B_k = V_k + sum_j a[k,j] * x_j,
        V_k = I_1(B_{k-1}) + sum_j I_j(part of M_j free of x1..x_{j-1}),
        M_j = a[2,j]*B_{k-2} + ... + a[k-1,j]*B_1,

    where I_j is the monomial-wise antiderivative in x_j and j runs over
    2..d."""
    d, n = params.d, params.n
    elems = [Polynomial.constant(d, 1), Polynomial.variable(d, 1)]
    for k in range(2, n + 1):
        v = elems[k - 1].integrate(1)
        for j in range(2, d + 1):
            m_j = Polynomial.zero(d)
            for i in range(2, k):
                coef = params.get(i, j)
                if coef:
                    m_j = m_j + coef * elems[k - i]
            v = v + m_j.free_of_leading(j).integrate(j)
        for j in range(2, d + 1):
            coef = params.get(k, j)
            if coef:
                v = v + coef * Polynomial.variable(d, j)
        elems.append(v)
    return BasisSequence(tuple(elems[: n + 1]))


def build_explicit(params: ParamTable) -> BasisSequence:
    """Closed-form construction for the same family as build_recursive.

    Element k sums over all (g, {g[s,j]}) with g + sum_j j*g[s,j] == k
    (g >= 0 attached to x1; s over variables 2..d, j over degrees 2..n)
    the monomial x1^g * prod_s x_s^(sum_j g[s,j]) with coefficient
    prod a[j,s]^g[s,j] / (g! * prod g[s,j]!).

    Deliberately shares no construction code with build_recursive: the
    termwise equality of the two outputs is a cross-check, not a tautology.
    """
    d, n = params.d, params.n
    slots: list[tuple[int, int]] = [(s, j) for s in range(2, d + 1) for j in range(2, n + 1)]
    weights = [1] + [j for (_, j) in slots]
    elems = []
    for k in range(n + 1):
        terms: dict[tuple[int, ...], Fraction] = {}
        for combo in weighted_compositions(k, weights):
            g1, rest = combo[0], combo[1:]
            coef = Fraction(1, _fact(g1))
            for (s, j), g in zip(slots, rest):
                if g:
                    coef *= params.get(j, s) ** g
                    coef /= _fact(g)
            if coef == 0:
                continue
            exps = [g1] + [0] * (d - 1)
            for (s, _), g in zip(slots, rest):
                exps[s - 1] += g
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + coef
        elems.append(Polynomial(d, terms))
    return BasisSequence(tuple(elems))


def specialize(params: ParamTable) -> GeneralSpec:
    """The GeneralSpec whose construction reproduces the ParamTable family:
    b = (1, 2, ..., n), c_1 = (1, 0, ..., 0), c_s = (0, a[2,s], ..., a[n,s]).

    Needs n >= 2 (the general construction has no n = 1 instance)."""
    n, d = params.n, params.d
    if n < 2:
        raise ValueError("specialization needs n >= 2")
    c1 = tuple([Fraction(1)] + [Fraction(0)] * (n - 1))
    rows = [c1]
    for s in range(2, d + 1):
        rows.append(tuple([Fraction(0)] + [params.get(i, s) for i in range(2, n + 1)]))
    return GeneralSpec(n=n, d=d, b=tuple(range(1, n + 1)), c=tuple(rows))


def span_contains(basis: Sequence[Polynomial], p: Polynomial) -> list[Fraction] | None:
    """Exact coordinates of p in the given spanning set, or None if p is
    not in the span.  Solved over the union of monomial supports; free
    coordinates (from dependent spanning sets) are returned as zero."""
    basis = list(basis)
    if not basis:
        return [] if p.is_zero else None
    if any(q.dim != p.dim for q in basis):
        raise ValueError("dimension mismatch between basis and candidate")
    support = sorted(set().union(*(q.terms.keys() for q in basis), p.terms.keys()))
    a_rows = [[q.coeff(e) for q in basis] for e in support]
    rhs = [p.coeff(e) for e in support]
    return solve(a_rows, rhs)


@dataclass(frozen=True)
class ClosureReport:
    """Result of the derivative-identity check.  violations holds (k, j)
    pairs: the derivative of element k with respect to x_j was not the
    predicted combination."""

    ok: bool
    violations: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [list(v) for v in self.violations]}


def check_closure(basis: BasisSequence, params: ParamTable) -> ClosureReport:
    """Exact derivative identities for a ParamTable-built basis:

        d(B_k)/dx1 == B_{k-1}                      for k >= 1,
        d(B_k)/dx_j == sum_{i=2..k} a[i,j]*B_{k-i}  for j >= 2, k >= 2.
    """
    bad: list[tuple[int, int]] = []
    top = len(basis) - 1
    for k in range(1, top + 1):
        if basis[k].diff(1) != basis[k - 1]:
            bad.append((k, 1))
    for k in range(2, top + 1):
        for j in range(2, params.d + 1):
            expect = Polynomial.zero(params.d)
            for i in range(2, k + 1):
                coef = params.get(i, j)
                if coef:
                    expect = expect + coef * basis[k - i]
            if basis[k].diff(j) != expect:
                bad.append((k, j))
    return ClosureReport(ok=not bad, violations=tuple(bad))


def breadth(basis: Sequence[Polynomial]) -> int:
    """Number of independent linear (degree-exactly-1) directions in the
    span: dim(span intersect {degree <= 1}) - 1.

    Requires the constant 1 to lie in the span (every derivative-closed
    space containing a nonzero element has it); raises ValueError if not.
    """
    basis = list(basis)
    if not basis:
        raise ValueError("empty basis")
    dim = basis[0].dim
    if span_contains(basis, Polynomial.constant(dim, 1)) is None:
        raise ValueError("span does not contain the constant 1")
    support = sorted(set().union(*(q.terms.keys() for q in basis)))
    full = [[q.coeff(e) for e in support] for q in basis]
    high_cols = [e for e in support if sum(e) >= 2]
    high = [[q.coeff(e) for e in high_cols] for q in basis]
    r_full = rank(full)
    r_high = rank(high) if high_cols else 0
    return (r_full - r_high) - 1


def degrees(basis: Iterable[Polynomial]) -> tuple[int, ...]:
    """Total degree of each element, in order."""
    return tuple(p.degree for p in basis)
