"""Tests for the coalescing point schemes and the limit verification."""

import math
from fractions import Fraction

import pytest

from conftest import make_rng, random_param_table, random_poly, rational
from dinv import (
    DiffOperator,
    ParamTable,
    Polynomial,
    build_recursive,
    combination_poly,
    expansion_check,
    points_scheme_a,
    points_scheme_b,
    stencil,
    sweep,
    sweep_to_csv,
)

F = Fraction


def P(text: str, dim: int = 2) -> Polynomial:
    return Polynomial.parse(text, dim)


EXAMPLE_PARAMS = ParamTable(d=2, n=4, a={(2, 2): F(2), (3, 2): F(3), (4, 2): F(4)})
ORIGIN2 = (F(0), F(0))


def h_poly(coeffs: dict[int, int | Fraction]) -> Polynomial:
    return Polynomial(1, {(e,): F(c) for e, c in coeffs.items()})


class TestStencil:
    def test_order_two(self):
        assert stencil(2).coeffs == (F(1, 2), F(-1), F(1, 2))

    def test_order_zero_is_plain_evaluation(self):
        assert stencil(0).coeffs == (F(1),)

    def test_order_three(self):
        assert stencil(3).coeffs == (F(-1, 6), F(1, 2), F(-1, 2), F(1, 6))

    def test_coefficients_sum_to_zero(self):
        for m in range(1, 10):
            assert sum(stencil(m).coeffs) == 0

    def test_reproduces_power_moments(self):
        for m in range(8):
            coeffs = stencil(m).coeffs
            for j in range(m + 1):
                moment = sum(c * i ** j for i, c in enumerate(coeffs))
                assert moment == (1 if j == m else 0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            stencil(-1)


class TestPointsSchemeA:
    def test_example_point_two(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        assert pts.points[2] == (h_poly({1: 2}), h_poly({2: 8, 3: 24, 4: 64}))

    def test_point_zero_is_base(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, (F(1, 2), F(-3)))
        assert pts.points[0] == (h_poly({0: F(1, 2)}), h_poly({0: F(-3)}))

    def test_point_one_uses_uniform_formula(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        assert pts.points[1] == (h_poly({1: 1}), h_poly({2: 2, 3: 3, 4: 4}))

    def test_first_coordinate_is_linear(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, (F(5), F(7)))
        for i, pt in enumerate(pts.points):
            assert pt[0] == h_poly({0: 5, 1: i})

    def test_all_points_coalesce_at_zero(self):
        base = (F(2, 3), F(-1, 4))
        pts = points_scheme_a(EXAMPLE_PARAMS, base)
        assert all(tuple(v for v in pt) == base for pt in pts.at(0))

    def test_base_length_checked(self):
        with pytest.raises(ValueError):
            points_scheme_a(EXAMPLE_PARAMS, (F(0),))


class TestPointsSchemeB:
    def test_example_points(self):
        pts = points_scheme_b(EXAMPLE_PARAMS, ORIGIN2)
        assert pts.points[3] == (h_poly({1: 3}), h_poly({2: 12, 3: 18}))
        assert pts.points[4] == (h_poly({1: 4}), h_poly({2: 24, 3: 72, 4: 96}))

    def test_point_one_moves_only_first_coordinate(self):
        pts = points_scheme_b(EXAMPLE_PARAMS, (F(1), F(2)))
        assert pts.points[1] == (h_poly({0: 1, 1: 1}), h_poly({0: 2}))

    def test_truncation_at_index(self):
        t = ParamTable(d=3, n=5, a={(i, j): F(1) for i in range(2, 6) for j in (2, 3)})
        pts = points_scheme_b(t, (F(0),) * 3)
        for i, pt in enumerate(pts.points):
            for coord in pt[1:]:
                assert all(e[0] <= max(i, 0) for e in coord.terms)

    def test_differs_from_scheme_a_generically(self):
        a = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        b = points_scheme_b(EXAMPLE_PARAMS, ORIGIN2)
        assert a.points != b.points

    def test_coalescence(self):
        base = (F(-2), F(5, 7))
        pts = points_scheme_b(EXAMPLE_PARAMS, base)
        assert all(pt == base for pt in pts.at(0))


class TestExpansionCheck:
    def test_second_derivative_of_square(self):
        rng = make_rng(201)
        for _ in range(5):
            t = random_param_table(rng, d=2, n=rng.randint(2, 4))
            pts = points_scheme_a(t, ORIGIN2)
            report = expansion_check(P("x1^2"), ORIGIN2, 2, pts)
            assert report.low_coeffs == (F(0), F(0))
            assert report.lead == 1 and report.target == 1
            assert report.passed

    def test_high_degree_example(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        report = expansion_check(P("x1^5*x2^2"), ORIGIN2, 4, pts)
        assert report.passed

    def test_constant_function(self):
        pts = points_scheme_b(EXAMPLE_PARAMS, ORIGIN2)
        report = expansion_check(P("7"), ORIGIN2, 3, pts)
        assert report.passed
        assert report.lead == 0 and report.target == 0
        assert all(c == 0 for c in report.low_coeffs)

    def test_nonzero_base_point(self):
        pts = points_scheme_b(EXAMPLE_PARAMS, (F(1), F(-1, 2)))
        f = P("x1^3*x2 + x2^2")
        for m in range(5):
            assert expansion_check(f, (F(1), F(-1, 2)), m, pts).passed

    def test_target_is_independent_functional(self):
        f = P("x1^4 + x1^2*x2 + x2^2 + x1 + x2 + 1")
        basis = build_recursive(EXAMPLE_PARAMS)
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        for m in range(5):
            report = expansion_check(f, ORIGIN2, m, pts)
            assert report.target == DiffOperator(basis[m]).apply_at(f, ORIGIN2)
            assert report.passed

    def test_order_beyond_points_rejected(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        with pytest.raises(ValueError):
            expansion_check(P("x1"), ORIGIN2, 5, pts)

    def test_base_mismatch_rejected(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        with pytest.raises(ValueError):
            expansion_check(P("x1"), (F(1), F(0)), 1, pts)

    def test_report_json_shape(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        d = expansion_check(P("x1^2"), ORIGIN2, 2, pts).to_dict()
        assert d == {"m": 2, "low_coeffs": ["0", "0"], "lead": "1", "target": "1", "pass": True}

    def test_random_property_small(self):
        rng = make_rng(202)
        for _ in range(10):
            d = rng.choice((2, 3))
            n = rng.randint(1, 4)
            t = random_param_table(rng, d=d, n=n)
            f = random_poly(rng, dim=d, max_deg=n + 2, max_terms=4)
            z0 = tuple(rational(rng) for _ in range(d))
            for build in (points_scheme_a, points_scheme_b):
                pts = build(t, z0)
                for m in range(n + 1):
                    assert expansion_check(f, z0, m, pts).passed


class TestCombinationPoly:
    def test_cubic_gives_exact_multiple(self):
        t = ParamTable(d=2, n=2, a={(2, 2): F(1)})
        pts = points_scheme_a(t, ORIGIN2)
        assert combination_poly(P("x1^3"), 2, pts) == h_poly({3: 3})

    def test_dimension_checked(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        with pytest.raises(ValueError):
            combination_poly(Polynomial.variable(3, 1), 2, pts)


class TestSweep:
    def make_pts(self):
        t = ParamTable(d=2, n=2, a={(2, 2): F(1)})
        return points_scheme_a(t, ORIGIN2)

    def test_error_is_three_h(self):
        rows = sweep(P("x1^3"), ORIGIN2, 2, self.make_pts(), h0=0.25, steps=12)
        assert len(rows) == 12
        for k, row in enumerate(rows):
            h = 0.25 * 2.0 ** (-k)
            assert row.h == h
            assert row.exact == 0.0
            assert row.abs_err == pytest.approx(3.0 * h, rel=1e-12)
        assert rows[0].est_order is None
        for row in rows[1:]:
            assert row.est_order == pytest.approx(1.0, abs=1e-9)

    def test_exact_reproduction_has_zero_error(self):
        rows = sweep(P("x1^2"), ORIGIN2, 2, self.make_pts(), h0=0.25, steps=4)
        for row in rows:
            assert row.abs_err == 0.0
            assert row.est_order is None

    def test_input_validation(self):
        pts = self.make_pts()
        with pytest.raises(ValueError):
            sweep(P("x1"), ORIGIN2, 1, pts, h0=0.0, steps=4)
        with pytest.raises(ValueError):
            sweep(P("x1"), ORIGIN2, 1, pts, h0=0.25, steps=1)

    def test_csv_format(self):
        rows = sweep(P("x1^3"), ORIGIN2, 2, self.make_pts(), h0=0.25, steps=3)
        text = sweep_to_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "h,approx,exact,abs_err,est_order"
        assert len(lines) == 4
        assert lines[1].endswith(",")
        assert lines[2].split(",")[-1] == "1.0"


class TestPointSetSerialization:
    def test_to_dict_shape(self):
        pts = points_scheme_b(EXAMPLE_PARAMS, ORIGIN2)
        d = pts.to_dict()
        assert d["scheme"] == "b"
        assert d["base"] == ["0", "0"]
        assert len(d["points"]) == 5
        assert d["points"][3][1] == {
            "dim": 1,
            "terms": [{"exp": [3], "coef": "18"}, {"exp": [2], "coef": "12"}],
        }

    def test_numeric_points(self):
        pts = points_scheme_a(EXAMPLE_PARAMS, ORIGIN2)
        at_half = pts.at(F(1, 2))
        assert at_half[2] == (F(1), F(9))
        assert at_half[1] == (F(1, 2), F(2, 4) + F(3, 8) + F(4, 16))
