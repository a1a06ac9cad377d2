"""Expression trees, the parser, the printer, evaluation, projections."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freelattice.errors import DimensionMismatch, ExprSyntaxError, FreeLatticeError
from freelattice.expressions import (
    Point,
    delta,
    eval_expr,
    parse_expr,
    point,
    print_expr,
    project_onto,
    zero,
)
from helpers import random_cube_point, random_expr

F = Fraction


class TestPoint:
    def test_coordinates_become_fractions(self):
        p = point("1/2", -1, 0.5)
        assert p.coords == (F(1, 2), F(-1), F(1, 2))
        assert p.dim == 3
        assert p[1] == F(-1)

    def test_sup_abs_and_cube_membership(self):
        assert point(-1, "3/4").sup_abs() == F(1)
        assert point(-1, "3/4").in_cube()
        assert not point("9/8", 0).in_cube()

    def test_scaled(self):
        assert point(2, -4).scaled("1/2") == point(1, -2)


class TestParser:
    def test_single_generator(self):
        f = parse_expr("x2", 3)
        assert f == delta(2, 3)

    def test_operators_compose(self):
        f = parse_expr("(x1 v x2) + (x1 /\\ x2)", 2)
        g = delta(1, 2).join(delta(2, 2)) + delta(1, 2).meet(delta(2, 2))
        assert f == g

    def test_rational_scalars(self):
        f = parse_expr("2*x1 - 1/3*|x2|", 2)
        g = 2 * delta(1, 2) - F(1, 3) * abs(delta(2, 2))
        assert f == g

    def test_join_binds_tighter_than_sum(self):
        assert parse_expr("x1 v x2 + x1 /\\ x2", 2) == parse_expr(
            "(x1 v x2) + (x1 /\\ x2)", 2
        )

    def test_meet_binds_tighter_than_join(self):
        f = parse_expr("x1 v x2 /\\ x1", 2)
        assert f == delta(1, 2).join(delta(2, 2).meet(delta(1, 2)))

    def test_zero_literal(self):
        assert parse_expr("0", 2) == zero(2)
        assert parse_expr("x1 /\\ 0", 1) == delta(1, 1).meet(zero(1))

    @pytest.mark.parametrize(
        "text",
        ["x1 +", "* x1", "x0", "x3", "(x1", "x1 x2", "|x1", "x", "1/0*x1", "2 x1"],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(ExprSyntaxError):
            parse_expr(text, 2)

    def test_error_carries_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse_expr("x1 + ", 1)
        assert "position" in str(err.value)


class TestPrinter:
    def test_known_forms(self):
        assert print_expr(parse_expr("|x1| v |x2|", 2)) == "|x1| v |x2|"
        assert print_expr(2 * delta(1, 2) - F(1, 3) * abs(delta(2, 2))) == (
            "2*x1 - 1/3*|x2|"
        )

    def test_roundtrip_is_structural_identity(self):
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.randint(1, 3)
            f = random_expr(rng, n, rng.randint(0, 4))
            assert parse_expr(print_expr(f), n) == f


class TestEval:
    def test_linear_example(self):
        f = parse_expr("x1 + x2", 2)
        assert eval_expr(f, point(1, 2)) == F(3)

    def test_lattice_example(self):
        f = parse_expr("(2*x1 - x2) v |x2|", 2)
        assert eval_expr(f, point("1/2", -1)) == F(2)
        assert eval_expr(f, point(0, "1/2")) == F(1, 2)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            eval_expr(delta(1, 2), point(1))

    @given(st.integers(0, 4), st.integers(1, 3), st.randoms(use_true_random=False))
    def test_positive_homogeneity(self, depth, n, hyp_rng):
        rng = random.Random(hyp_rng.getrandbits(32))
        f = random_expr(rng, n, depth)
        xi = random_cube_point(rng, n)
        t = F(rng.randint(0, 12), 4)
        assert eval_expr(f, xi.scaled(t)) == t * eval_expr(f, xi)

    def test_sum_respects_pointwise_addition(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 3)
            f = random_expr(rng, n, 3)
            g = random_expr(rng, n, 3)
            xi = random_cube_point(rng, n)
            assert eval_expr(f + g, xi) == eval_expr(f, xi) + eval_expr(g, xi)
            assert eval_expr(f.join(g), xi) == max(eval_expr(f, xi), eval_expr(g, xi))
            assert eval_expr(abs(f), xi) == abs(eval_expr(f, xi))


class TestProjection:
    def test_kills_dropped_generators(self):
        f = parse_expr("x1 + x2 - |x3|", 3)
        g = project_onto(f, {1, 3})
        assert eval_expr(g, point(1, 5, -2)) == eval_expr(f, point(1, 0, -2))

    def test_projection_is_substitution(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(1, 3)
            f = random_expr(rng, n, 4)
            keep = set(rng.sample(range(1, n + 1), rng.randint(1, n)))
            g = project_onto(f, keep)
            xi = random_cube_point(rng, n)
            masked = Point(
                tuple(c if k + 1 in keep else F(0) for k, c in enumerate(xi))
            )
            assert eval_expr(g, xi) == eval_expr(f, masked)

    def test_idempotent(self):
        rng = random.Random(12)
        for _ in range(30):
            n = rng.randint(1, 3)
            f = random_expr(rng, n, 3)
            keep = set(rng.sample(range(1, n + 1), rng.randint(1, n)))
            assert project_onto(project_onto(f, keep), keep) == project_onto(f, keep)

    def test_empty_subset_rejected(self):
        with pytest.raises(FreeLatticeError):
            project_onto(delta(1, 2), set())

    def test_out_of_range_rejected(self):
        with pytest.raises(FreeLatticeError):
            project_onto(delta(1, 2), {3})


class TestConstruction:
    def test_generator_index_validated(self):
        with pytest.raises(FreeLatticeError):
            delta(0, 2)
        with pytest.raises(FreeLatticeError):
            delta(3, 2)

    def test_mixed_arity_rejected(self):
        with pytest.raises(DimensionMismatch):
            delta(1, 2) + delta(1, 3)
