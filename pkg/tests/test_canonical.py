"""Max-min rewrite, arrangement cells, the zero test, and the sup norm."""

import random
from fractions import Fraction

import pytest

from freelattice.canonical import (
    LinearForm,
    arrangement_hyperplanes,
    enumerate_cells,
    expr_equal,
    is_semantically_zero,
    semantic_zero_witness,
    sup_norm,
    sup_norm_witness,
    to_maxmin,
)
from freelattice.errors import CapExceeded
from freelattice.expressions import delta, eval_expr, parse_expr, point
from helpers import random_cube_point, random_expr, random_expr_checked, semantic_zero_expr

F = Fraction


def forms_as_sets(maxmin):
    return {frozenset(form.coeffs for form in group) for group in maxmin.groups}


class TestRewrite:
    def test_generator(self):
        F1 = to_maxmin(delta(1, 2))
        assert forms_as_sets(F1) == {frozenset({(F(1), F(0))})}

    def test_abs_splits_into_two_groups(self):
        F1 = to_maxmin(abs(delta(1, 2)))
        assert forms_as_sets(F1) == {
            frozenset({(F(1), F(0))}),
            frozenset({(F(-1), F(0))}),
        }

    def test_join_concatenates_and_meet_merges(self):
        x1, x2 = delta(1, 2), delta(2, 2)
        assert forms_as_sets(to_maxmin(x1.join(x2))) == {
            frozenset({(F(1), F(0))}),
            frozenset({(F(0), F(1))}),
        }
        assert forms_as_sets(to_maxmin(x1.meet(x2))) == {
            frozenset({(F(1), F(0)), (F(0), F(1))})
        }

    def test_sum_distributes_over_groups(self):
        x1, x2 = delta(1, 2), delta(2, 2)
        G = to_maxmin(x1.meet(x2) + x1.join(x2))
        assert len(G.groups) == 2
        assert G.form_count == 4

    def test_value_agreement_with_direct_evaluation(self):
        rng = random.Random(42)
        for _ in range(120):
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 5)
            G = to_maxmin(f)
            for _ in range(6):
                xi = random_cube_point(rng, n)
                assert G(tuple(xi)) == eval_expr(f, xi)

    def test_form_cap_enforced(self):
        # Sums of joins multiply group counts; distinct coefficients keep
        # every product group alive, so 4 summed joins give 16 forms.
        x1, x2 = delta(1, 2), delta(2, 2)
        big = (
            (1 * x1).join(1 * x2)
            + (2 * x1).join(3 * x2)
            + (4 * x1).join(9 * x2)
            + (8 * x1).join(27 * x2)
        )
        with pytest.raises(CapExceeded):
            to_maxmin(big, form_cap=8)
        assert to_maxmin(big).form_count == 16

    def test_lp_prune_removes_in_group_redundancy(self):
        f = parse_expr("x1 /\\ x2 /\\ (1/2*x1 + 1/2*x2)", 2)
        plain = to_maxmin(f)
        pruned = to_maxmin(f, lp_prune=True)
        assert plain.form_count == 3
        assert pruned.form_count == 2
        assert forms_as_sets(pruned) == {frozenset({(F(1), F(0)), (F(0), F(1))})}

    def test_lp_prune_preserves_values(self):
        rng = random.Random(43)
        for _ in range(40):
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 4)
            plain = to_maxmin(f)
            pruned = to_maxmin(f, lp_prune=True)
            assert pruned.form_count <= plain.form_count
            for _ in range(8):
                xi = tuple(random_cube_point(rng, n))
                assert pruned(xi) == plain(xi)


class TestArrangement:
    def test_two_generator_join_hyperplanes(self):
        normals = set(arrangement_hyperplanes(to_maxmin(parse_expr("x1 v x2", 2))))
        wanted = {(1, 0), (0, 1), (1, -1)}
        assert {n if n > (0,) * 2 else tuple(-c for c in n) for n in normals} == wanted

    def test_cell_counts_for_known_arrangements(self):
        assert len(enumerate_cells(to_maxmin(parse_expr("|x1|", 1)))) == 2
        assert len(enumerate_cells(to_maxmin(parse_expr("x1 v x2", 2)))) == 6
        assert len(enumerate_cells(to_maxmin(parse_expr("|x1| v |x2|", 2)))) == 8

    def test_central_line_arrangement_count(self):
        # k distinct lines through the origin always cut the plane into 2k
        # sign cells; checked against the enumeration for several k.
        rng = random.Random(99)
        for _ in range(10):
            f = random_expr_checked(rng, 2, 4)
            G = to_maxmin(f)
            k = len(arrangement_hyperplanes(G))
            if k == 0:
                continue
            assert len(enumerate_cells(G)) == 2 * k

    def test_cells_carry_correct_active_forms(self):
        rng = random.Random(100)
        for _ in range(25):
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 4)
            G = to_maxmin(f)
            for cell in enumerate_cells(G):
                w = tuple(cell.witness)
                assert cell.active(w) == G(w)
                for v in cell.vertices:
                    assert cell.active(tuple(v)) == G(tuple(v))

    def test_cells_cover_generic_points(self):
        rng = random.Random(101)
        for _ in range(20):
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 4)
            G = to_maxmin(f)
            normals = arrangement_hyperplanes(G)
            cells = {cell.signs: cell for cell in enumerate_cells(G)}
            assert len(cells) == len(enumerate_cells(G))  # sign vectors distinct
            hits = 0
            while hits < 8:
                xi = random_cube_point(rng, n, den=16)
                vals = [sum(c * x for c, x in zip(nrm, xi)) for nrm in normals]
                if any(v == 0 for v in vals):
                    continue
                signs = tuple(1 if v > 0 else -1 for v in vals)
                assert signs in cells
                assert cells[signs].active(tuple(xi)) == G(tuple(xi))
                hits += 1

    def test_facet_restriction_vertices_sit_on_facet(self):
        G = to_maxmin(parse_expr("|x1| v |x2| v |x3|", 3))
        for k in (1, 2, 3):
            for s in (1, -1):
                cells = enumerate_cells(G, restrict=(k, s))
                assert cells
                for cell in cells:
                    assert cell.vertices
                    for v in cell.vertices:
                        assert v[k - 1] == F(s)
                        assert v.in_cube()

    def test_bad_facet_spec_rejected(self):
        G = to_maxmin(parse_expr("x1", 2))
        from freelattice.errors import FreeLatticeError

        with pytest.raises(FreeLatticeError):
            enumerate_cells(G, restrict=(3, 1))
        with pytest.raises(FreeLatticeError):
            enumerate_cells(G, restrict=(1, 0))


class TestZeroDecision:
    def test_lattice_identities_are_zero(self):
        x1, x2 = delta(1, 2), delta(2, 2)
        assert is_semantically_zero((x1 + x2) - (x2 + x1))
        assert is_semantically_zero((x1.meet(x2) + x1.join(x2)) - (x1 + x2))
        assert is_semantically_zero(abs(x1) - x1.join(-x1))

    def test_scrambled_zeros(self):
        rng = random.Random(500)
        for _ in range(25):
            n = rng.randint(1, 3)
            assert is_semantically_zero(semantic_zero_expr(rng, n))

    def test_nonzero_has_exact_witness(self):
        rng = random.Random(501)
        found = 0
        while found < 25:
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 4)
            w = semantic_zero_witness(f)
            if w is None:
                continue
            assert eval_expr(f, w) != 0
            found += 1

    def test_tiny_perturbation_detected(self):
        x1, x2 = delta(1, 2), delta(2, 2)
        zero_f = (x1 + x2) - (x2 + x1)
        tilted = zero_f + F(1, 10**9) * x1
        assert not is_semantically_zero(tilted)
        w = semantic_zero_witness(tilted)
        assert eval_expr(tilted, w) != 0

    def test_expr_equal(self):
        lhs = parse_expr("x1 + x2", 2)
        rhs = parse_expr("(x1 v x2) + (x1 /\\ x2)", 2)
        assert expr_equal(lhs, rhs)
        assert not expr_equal(parse_expr("x1", 2), parse_expr("x2", 2))


class TestSupNorm:
    @pytest.mark.parametrize(
        "text,n,value",
        [
            ("x1", 1, F(1)),
            ("|x1| v |x2|", 2, F(1)),
            ("x1 + x2", 2, F(2)),
            ("x1 /\\ x2", 2, F(1)),
            ("2*x1 - x2", 2, F(3)),
            ("0", 2, F(0)),
        ],
    )
    def test_examples(self, text, n, value):
        assert sup_norm(parse_expr(text, n)) == value

    def test_witness_attains_and_grid_never_beats(self):
        rng = random.Random(600)
        for _ in range(30):
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 4)
            val, w = sup_norm_witness(f)
            assert w.in_cube()
            assert abs(eval_expr(f, w)) == val
            for _ in range(20):
                xi = random_cube_point(rng, n)
                assert abs(eval_expr(f, xi)) <= val

    def test_homogeneity_and_triangle(self):
        rng = random.Random(601)
        from helpers import expr_fits

        done = 0
        while done < 20:
            n = rng.randint(1, 3)
            f = random_expr_checked(rng, n, 3, max_forms=24, max_planes=12)
            g = random_expr_checked(rng, n, 3, max_forms=24, max_planes=12)
            if not expr_fits(f + g, 96, 20):
                continue
            c = F(rng.randint(-8, 8), rng.randint(1, 4))
            assert sup_norm(c * f) == abs(c) * sup_norm(f)
            assert sup_norm(f + g) <= sup_norm(f) + sup_norm(g)
            done += 1
