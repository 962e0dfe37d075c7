"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in d variables x1..xd is stored as a mapping from exponent
tuples to Fraction coefficients, e.g. for d=2:

    x1^2/2 + 2*x2  ->  {(2, 0): Fraction(1, 2), (0, 1): Fraction(2)}

Zero coefficients are never stored, so structural equality of the mapping
is polynomial equality.  Every value is immutable after construction and
every operation is pure, so polynomials can be shared freely between
threads or processes.

All arithmetic is exact; there is no floating point anywhere in this
module.  The convention 0**0 == 1 is used throughout (Python's native
behaviour for ints and Fractions).

Variable indices in the public API are 1-based (x1 is index 1), matching
the usual mathematical notation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Exponent = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)

_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?\Z")
_RAT_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def _raw_mul(a: Mapping[Exponent, Fraction], b: Mapping[Exponent, Fraction]) -> dict[Exponent, Fraction]:
    out: dict[Exponent, Fraction] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            c = out.get(e)
            out[e] = ca * cb if c is None else c + ca * cb
    return out


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    `dim` is the ambient number of variables; a constant in 2 variables is
    a different value from a constant in 3 variables.  Do not mutate
    `terms` after construction.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        clean: dict[Exponent, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != dim:
                raise ValueError(f"exponent {exps} has length {len(exps)}, expected {dim}")
            if any(e < 0 or not isinstance(e, int) for e in exps):
                raise ValueError(f"exponents must be non-negative integers, got {exps}")
            c = Fraction(coef)
            if c != 0:
                clean[exps] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> Polynomial:
        return cls(dim, {})

    @classmethod
    def constant(cls, dim: int, value: Fraction | int) -> Polynomial:
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def variable(cls, dim: int, j: int) -> Polynomial:
        """The monomial x_j (1-based index)."""
        if not 1 <= j <= dim:
            raise ValueError(f"variable index {j} out of range 1..{dim}")
        exps = [0] * dim
        exps[j - 1] = 1
        return cls(dim, {tuple(exps): _ONE})

    @classmethod
    def monomial(cls, dim: int, exps: Sequence[int], coef: Fraction | int = 1) -> Polynomial:
        return cls(dim, {tuple(exps): Fraction(coef)})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def homogeneous_part(self, k: int) -> Polynomial:
        """The degree-k homogeneous component."""
        return Polynomial(self.dim, {e: c for e, c in self.terms.items() if sum(e) == k})

    def canonical_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic descending order, x1 > x2 > ... > xd."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _check_same_dim(self, other: Polynomial) -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_dim(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return Polynomial(self.dim, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Polynomial | Fraction | int) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check_same_dim(other)
            return Polynomial(self.dim, _raw_mul(self.terms, other.terms))
        if isinstance(other, (Fraction, int)):
            c = Fraction(other)
            return Polynomial(self.dim, {e: c * v for e, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other: Fraction | int) -> Polynomial:
        return self.__mul__(other)

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial.parse({self.render()!r}, dim={self.dim})"

    # -- calculus ----------------------------------------------------------

    def diff(self, j: int) -> Polynomial:
        """Partial derivative with respect to x_j."""
        if not 1 <= j <= self.dim:
            raise ValueError(f"variable index {j} out of range 1..{self.dim}")
        i = j - 1
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = out.get(ne, _ZERO) + c * e[i]
        return Polynomial(self.dim, out)

    def diff_multi(self, alpha: Sequence[int]) -> Polynomial:
        """Mixed partial derivative of multi-order alpha, in one pass.

        A term c*x^e contributes c * prod_i e_i!/(e_i-alpha_i)! * x^(e-alpha)
        when e >= alpha componentwise, and nothing otherwise.
        """
        alpha = tuple(alpha)
        if len(alpha) != self.dim:
            raise ValueError(f"multi-order has length {len(alpha)}, expected {self.dim}")
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            factor = 1
            for ei, ai in zip(e, alpha):
                if ei < ai:
                    factor = 0
                    break
                for t in range(ei, ei - ai, -1):
                    factor *= t
            if factor == 0:
                continue
            ne = tuple(ei - ai for ei, ai in zip(e, alpha))
            out[ne] = out.get(ne, _ZERO) + c * factor
        return Polynomial(self.dim, out)

    def integrate(self, j: int) -> Polynomial:
        """Monomial-wise antiderivative in x_j: x^e -> x^e * x_j / (e_j + 1).

        Right inverse of diff(j); the constant of integration is zero.
        """
        if not 1 <= j <= self.dim:
            raise ValueError(f"variable index {j} out of range 1..{self.dim}")
        i = j - 1
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (e[i] + 1,) + e[i + 1:]
            out[ne] = c / (e[i] + 1)
        return Polynomial(self.dim, out)

    def free_of_leading(self, j: int) -> Polynomial:
        """The part made of terms containing none of x1..x_{j-1}.

        free_of_leading(1) keeps everything.
        """
        if not 1 <= j <= self.dim:
            raise ValueError(f"variable index {j} out of range 1..{self.dim}")
        keep = {e: c for e, c in self.terms.items() if all(v == 0 for v in e[:j - 1])}
        return Polynomial(self.dim, keep)

    # -- substitution and evaluation ---------------------------------------

    def compose(self, subs: Sequence[Polynomial]) -> Polynomial:
        """Substitute x_i -> subs[i-1]; all substituted polynomials must share
        one ambient dimension (which becomes the result's dimension)."""
        if len(subs) != self.dim:
            raise ValueError(f"expected {self.dim} substitutions, got {len(subs)}")
        tdim = subs[0].dim
        for s in subs:
            if s.dim != tdim:
                raise ValueError("substituted polynomials must share one dimension")
        unit: dict[Exponent, Fraction] = {(0,) * tdim: _ONE}
        # Powers of each substituted polynomial, built incrementally on demand.
        pows: list[list[dict[Exponent, Fraction]]] = [[unit] for _ in subs]
        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            prod = unit
            for i, ei in enumerate(e):
                if ei == 0:
                    continue
                cache = pows[i]
                while len(cache) <= ei:
                    cache.append(_raw_mul(cache[-1], subs[i].terms))
                prod = _raw_mul(prod, cache[ei])
            for pe, pc in prod.items():
                acc[pe] = acc.get(pe, _ZERO) + c * pc
        return Polynomial(tdim, acc)

    def eval(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a rational point (0**0 == 1)."""
        vals = [Fraction(v) for v in point]
        if len(vals) != self.dim:
            raise ValueError(f"point has length {len(vals)}, expected {self.dim}")
        total = _ZERO
        for e, c in self.terms.items():
            term = c
            for ei, v in zip(e, vals):
                if ei:
                    term *= v ** ei
            total += term
        return total

    # -- text and JSON forms -------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        """Canonical text form, terms in graded-lex descending order.

        Example: '1/2*x1^2 + 2*x2'.  Coefficients +-1 are left implicit in
        front of a non-constant monomial.
        """
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(1, self.dim + 1)]
        pieces: list[str] = []
        for e, c in self.canonical_terms():
            factors = []
            for name, ei in zip(names, e):
                if ei == 1:
                    factors.append(name)
                elif ei > 1:
                    factors.append(f"{name}^{ei}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(pieces)

    @classmethod
    def parse(cls, text: str, dim: int) -> Polynomial:
        """Inverse of render.  Accepts explicit coefficients ('1*x1') and
        repeated monomials (summed)."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        chunks: list[tuple[int, str]] = []
        sign, buf = 1, ""
        for ch in s:
            if ch in "+-":
                if buf.strip():
                    chunks.append((sign, buf))
                    sign, buf = 1, ""
                if ch == "-":
                    sign = -sign
            else:
                buf += ch
        if buf.strip():
            chunks.append((sign, buf))
        if not chunks:
            raise ValueError(f"cannot parse polynomial from {text!r}")
        terms: dict[Exponent, Fraction] = {}
        for sgn, chunk in chunks:
            coef = _ONE
            exps = [0] * dim
            for pos, raw in enumerate(chunk.split("*")):
                part = raw.strip()
                m = _VAR_RE.match(part)
                if m:
                    j = int(m.group(1))
                    if not 1 <= j <= dim:
                        raise ValueError(f"variable x{j} out of range for dim {dim}")
                    exps[j - 1] += int(m.group(2) or 1)
                elif pos == 0 and _RAT_RE.match(part):
                    coef = Fraction(part)
                else:
                    raise ValueError(f"cannot parse term part {part!r} in {text!r}")
            key = tuple(exps)
            terms[key] = terms.get(key, _ZERO) + sgn * coef
        return cls(dim, terms)

    def to_dict(self) -> dict:
        """JSON-ready form: {"dim": d, "terms": [{"exp": [...], "coef": "p/q"}, ...]}."""
        return {
            "dim": self.dim,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.canonical_terms()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Polynomial:
        try:
            dim = int(data["dim"])
            terms = {tuple(int(v) for v in t["exp"]): Fraction(t["coef"]) for t in data["terms"]}
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial object: {exc}") from exc
        return cls(dim, terms)


class DiffOperator:
    """The constant-coefficient differential operator induced by a polynomial.

    Each source term c*x^a acts as c times the mixed partial of multi-order
    a; the whole operator is the sum of those actions.  Linear in the source
    polynomial and in the argument.
    """

    __slots__ = ("source",)

    def __init__(self, source: Polynomial):
        self.source = source

    def apply(self, f: Polynomial) -> Polynomial:
        if f.dim != self.source.dim:
            raise ValueError(f"dimension mismatch: {self.source.dim} vs {f.dim}")
        out = Polynomial.zero(f.dim)
        for alpha, c in self.source.terms.items():
            out = out + c * f.diff_multi(alpha)
        return out

    def apply_at(self, f: Polynomial, point: Sequence[Fraction | int]) -> Fraction:
        """Value of the functional: apply the operator to f, evaluate at point."""
        return self.apply(f).eval(point)

    def __repr__(self) -> str:
        return f"DiffOperator({self.source!r})"
