"""Induced fields, distribution ranks, involutivity, flows, leaves."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from weilkit import (
    Polynomial,
    apply_chart_field,
    chart_field,
    chart_flatten,
    coordinate_values,
    derivation_basis,
    distribution_at,
    dual_numbers,
    field_apply,
    field_from_values,
    flow,
    induced_field,
    involutivity_check,
    leaf_sample,
    lie_structure,
    liouville_demo,
    make_near_point,
    module_scale,
    parse_polynomial,
    truncated_polynomial_algebra,
)
from support import rand_element, rand_fraction, rand_near_point, rand_poly


D = dual_numbers()
X3 = truncated_polynomial_algebra(1, 2)
SQ = truncated_polynomial_algebra(2, 1)


def x3_point(x1, x2):
    return make_near_point(X3, [Fraction(0)], [X3.element([0, x1, x2])])


def test_induced_field_liouville_values():
    d0 = derivation_basis(D)[0]
    fld = induced_field(D, d0, 2)
    xi = make_near_point(
        D,
        [Fraction(1), Fraction(4)],
        [Fraction(3) * D.basis_element(1), Fraction(-2) * D.basis_element(1)],
    )
    for i, fiber in enumerate((Fraction(3), Fraction(-2))):
        value = field_apply(fld, Polynomial.variable(2, i), xi)
        assert value == fiber * D.basis_element(1)


def test_induced_field_zero_derivation():
    from weilkit import Derivation

    zero = Derivation(D, ((Fraction(0),) * 2,) * 2)
    fld = induced_field(D, zero, 1)
    xi = make_near_point(D, [Fraction(2)], [D.basis_element(1)])
    assert chart_flatten(fld, xi) == (Fraction(0), Fraction(0))


def test_induced_field_x3_is_minus_diagonal():
    d1 = derivation_basis(X3)[0]  # x -> x, matrix diag(0, 1, 2)
    fld = induced_field(X3, d1, 1)
    xi = x3_point(Fraction(5), Fraction(7))
    assert chart_flatten(fld, xi) == (Fraction(0), Fraction(-5), Fraction(-14))


def test_field_apply_kills_constants():
    d1 = derivation_basis(X3)[0]
    fld = induced_field(X3, d1, 1)
    xi = x3_point(1, 1)
    assert field_apply(fld, Polynomial.constant(1, Fraction(9, 4)), xi).is_zero()


def test_field_apply_liouville_square():
    d0 = derivation_basis(D)[0]
    fld = induced_field(D, d0, 1)
    p, v = Fraction(3), Fraction(2)
    xi = make_near_point(D, [p], [v * D.basis_element(1)])
    value = field_apply(fld, parse_polynomial("x^2", ["x"]), xi)
    assert value == (2 * p * v) * D.basis_element(1)


def test_field_apply_leibniz():
    rng = random.Random(13)
    for A in (D, X3, SQ):
        basis = derivation_basis(A)
        for _ in range(8):
            d = basis[rng.randrange(len(basis))]
            fld = induced_field(A, d, 2)
            f, g = rand_poly(rng, 2), rand_poly(rng, 2)
            xi = rand_near_point(rng, A, 2)
            lhs = field_apply(fld, f * g, xi)
            rhs = field_apply(fld, f, xi) * xi.eval(g) + xi.eval(f) * field_apply(fld, g, xi)
            assert lhs == rhs


def test_module_law_on_fields():
    rng = random.Random(37)
    for A in (D, X3, SQ):
        basis = derivation_basis(A)
        for _ in range(10):
            a = rand_element(rng, A)
            d = basis[rng.randrange(len(basis))]
            f = rand_poly(rng, 2)
            xi = rand_near_point(rng, A, 2)
            lhs = field_apply(induced_field(A, module_scale(a, d), 2), f, xi)
            rhs = a * field_apply(induced_field(A, d, 2), f, xi)
            assert lhs == rhs


def test_chart_flatten_linear_and_zero_on_section():
    d0 = derivation_basis(D)[0]
    fld = induced_field(D, d0, 1)
    assert chart_flatten(fld, make_near_point(D, [Fraction(9)])) == (Fraction(0), Fraction(0))
    xi = make_near_point(D, [Fraction(1)], [Fraction(5) * D.basis_element(1)])
    assert chart_flatten(fld, xi) == (Fraction(0), Fraction(5))
    doubled = make_near_point(D, [Fraction(2)], [Fraction(10) * D.basis_element(1)])
    assert chart_flatten(fld, doubled) == tuple(2 * x for x in chart_flatten(fld, xi))


def test_chart_field_agrees_with_field_apply():
    rng = random.Random(43)
    for A in (D, X3):
        basis = derivation_basis(A)
        for d in basis:
            fld = induced_field(A, d, 2)
            X = chart_field(fld)
            for _ in range(5):
                f = rand_poly(rng, 2)
                xi = rand_near_point(rng, A, 2)
                assert apply_chart_field(X, f, xi) == field_apply(fld, f, xi)


def test_chart_field_roundtrips_through_values():
    for A in (D, X3, SQ):
        for d in derivation_basis(A):
            fld = induced_field(A, d, 2)
            assert field_from_values(coordinate_values(fld)) == chart_field(fld)


def test_distribution_rank_table_x3():
    basis = derivation_basis(X3)
    sample = distribution_at(X3, basis, x3_point(1, 0))
    assert sample.rank == 2
    assert sample.generators == (
        (Fraction(0), Fraction(-1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(-1)),
    )
    assert distribution_at(X3, basis, x3_point(2, -3)).rank == 2
    assert distribution_at(X3, basis, x3_point(0, 1)).rank == 1
    assert distribution_at(X3, basis, x3_point(0, 0)).rank == 0


def test_distribution_rank_bound_and_generic_rank():
    rng = random.Random(3)
    for A, generic_rank in ((D, 1), (X3, 2)):
        basis = derivation_basis(A)
        for _ in range(10):
            xi = rand_near_point(rng, A, 1)
            sample = distribution_at(A, basis, xi)
            assert sample.rank <= len(basis)
        # generic nilpotent parts: first ideal coordinate nonzero
        coeffs = [Fraction(0), Fraction(1)] + [rand_fraction(rng) for _ in range(A.dim - 2)]
        xi = make_near_point(A, [Fraction(0)], [A.element(coeffs)])
        assert distribution_at(A, basis, xi).rank == generic_rank


def test_distribution_zero_section_rank_zero():
    for A in (D, X3, SQ):
        basis = derivation_basis(A)
        xi = make_near_point(A, [Fraction(1), Fraction(-2)])
        assert distribution_at(A, basis, xi).rank == 0


def test_injectivity_of_induced_fields():
    # a nonzero derivation induces a nonzero chart field
    rng = random.Random(53)
    for A in (D, X3, SQ):
        basis = derivation_basis(A)
        for _ in range(10):
            coeffs = [rand_fraction(rng) for _ in basis]
            if all(c == 0 for c in coeffs):
                coeffs[0] = Fraction(1)
            combo = None
            for c, b in zip(coeffs, basis):
                term = c * b
                combo = term if combo is None else combo + term
            if combo.is_zero():
                continue
            # some basis element of the ideal is moved; build a point from it
            moved = None
            for q in range(1, A.dim):
                if any(combo.matrix[p][q] != 0 for p in range(A.dim)):
                    moved = q
                    break
            assert moved is not None
            xi = make_near_point(A, [Fraction(0)], [A.basis_element(moved)])
            fld = induced_field(A, combo, 1)
            assert any(x != 0 for x in chart_flatten(fld, xi))


def test_involutivity_exact():
    for A in (D, X3, SQ):
        lie = lie_structure(derivation_basis(A))
        report = involutivity_check(lie, 1)
        assert report["all_pass"]
        expected_pairs = lie.rank * (lie.rank - 1) // 2
        assert len(report["pairs"]) == expected_pairs


def test_bracket_law_matrix_identity():
    # chart bracket of induced fields equals induced field of the bracket
    from weilkit import bracket
    import weilkit.linalg as la

    for A in (D, X3, SQ):
        basis = derivation_basis(A)
        for i, di in enumerate(basis):
            for dj in basis[i + 1 :]:
                mi = [list(r) for r in di.matrix]
                mj = [list(r) for r in dj.matrix]
                chart = la.mat_sub(la.mat_mul(mj, mi), la.mat_mul(mi, mj))
                induced = [[-x for x in row] for row in bracket(di, dj).matrix]
                assert chart == induced


def test_flow_dual_scaling():
    d0 = derivation_basis(D)[0]
    xi = make_near_point(D, [Fraction(3)], [Fraction(1) * D.basis_element(1)])
    moved = flow(D, d0, math.log(2.0), xi)
    assert moved.components[0].coeffs[0] == 3.0
    assert abs(moved.components[0].coeffs[1] - 2.0) < 1e-12


def test_flow_zero_time_is_identity():
    d1 = derivation_basis(X3)[0]
    xi = x3_point(Fraction(1, 2), Fraction(-2))
    moved = flow(X3, d1, 0.0, xi)
    assert [tuple(map(float, c.coeffs)) for c in moved.components] == [
        tuple(map(float, c.coeffs)) for c in xi.components
    ]


def test_flow_preserves_base_point():
    rng = random.Random(61)
    for A in (D, X3, SQ):
        basis = derivation_basis(A)
        for _ in range(5):
            d = basis[rng.randrange(len(basis))]
            xi = rand_near_point(rng, A, 2)
            t = rng.uniform(-1.5, 1.5)
            moved = flow(A, d, t, xi)
            for before, after in zip(xi.components, moved.components):
                assert abs(float(before.scalar_part) - float(after.scalar_part)) <= 1e-12


def test_flow_finite_difference_matches_field():
    rng = random.Random(67)
    h = 1e-5
    for A in (D, X3):
        basis = derivation_basis(A)
        for d in basis:
            fld = induced_field(A, d, 1)
            xi = rand_near_point(rng, A, 1)
            plus = flow(A, d, h, xi)
            minus = flow(A, d, -h, xi)
            fd = [
                (float(a) - float(b)) / (2 * h)
                for a, b in zip(plus.chart_coords(), minus.chart_coords())
            ]
            exact = [float(x) for x in chart_flatten(fld, xi)]
            scale = max(1.0, max(abs(x) for x in exact))
            assert all(abs(f - e) / scale <= 1e-6 for f, e in zip(fd, exact))


def test_leaf_sample_empty_schedule():
    basis = derivation_basis(D)
    xi = make_near_point(D, [Fraction(1)], [D.basis_element(1)])
    assert leaf_sample(D, basis, xi, []) == [xi]


def test_leaf_sample_ln2_doubles_fiber():
    basis = derivation_basis(D)
    xi = make_near_point(D, [Fraction(7)], [Fraction(1) * D.basis_element(1)])
    samples = leaf_sample(D, basis, xi, [(0, math.log(2.0))])
    assert abs(samples[-1].components[0].coeffs[1] - 2.0) < 1e-12


def test_leaf_sample_inverse_schedule_returns():
    basis = derivation_basis(X3)
    xi = x3_point(Fraction(1), Fraction(2))
    samples = leaf_sample(X3, basis, xi, [(1, 0.9), (1, -0.9), (0, 0.4), (0, -0.4)])
    final = samples[-1].chart_coords()
    start = xi.chart_coords()
    assert all(abs(float(a) - float(b)) <= 1e-9 for a, b in zip(final, start))


def test_leaf_sample_shares_base_point():
    basis = derivation_basis(X3)
    xi = x3_point(Fraction(3), Fraction(1))
    for sample in leaf_sample(X3, basis, xi, [(0, 0.3), (1, -0.7)]):
        assert float(sample.components[0].scalar_part) == 0.0


def test_leaf_sample_index_out_of_range():
    basis = derivation_basis(D)
    xi = make_near_point(D, [Fraction(1)])
    with pytest.raises(ValueError):
        leaf_sample(D, basis, xi, [(5, 1.0)])


def test_trivial_algebra_rank_zero_everywhere():
    # A = R: no derivations, so every foliation query degenerates gracefully
    R = truncated_polynomial_algebra(1, 0)
    basis = derivation_basis(R)
    assert basis == []
    xi = make_near_point(R, [Fraction(4)])
    sample = distribution_at(R, basis, xi)
    assert sample.rank == 0 and sample.generators == ()
    assert leaf_sample(R, basis, xi, []) == [xi]
    report = involutivity_check(lie_structure(basis), 1)
    assert report["all_pass"] and report["pairs"] == []


def test_liouville_demo_all_assertions():
    for n in (1, 2, 3):
        report = liouville_demo(n)
        assert report["pass"], report
        assert report["r"] == 1
        assert len(report["assertions"]) == 5


def test_liouville_demo_chart_components():
    report = liouville_demo(3)
    assert report["pass"]
    d0 = derivation_basis(D)[0]
    chart = chart_field(induced_field(D, d0, 3))
    for i in range(3):
        assert chart.component(i, 0).is_zero()
        assert chart.component(i, 1) == Polynomial.variable(6, 2 * i + 1)
