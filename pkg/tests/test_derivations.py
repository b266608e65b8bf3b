"""Derivation solver, brackets, module action and exponential flows."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from weilkit import (
    Derivation,
    NotClosedError,
    bracket,
    derivation_basis,
    dual_numbers,
    exp_flow,
    from_structure_constants,
    jacobi_residual,
    leibniz_residual,
    lie_structure,
    module_scale,
    multiplicativity_residual,
    truncated_polynomial_algebra,
)
from weilkit.jsonio import rational_from_json
import weilkit.linalg as la
from support import (
    derivation_dim_oracle,
    expm_series_oracle,
    rand_element,
    rand_fraction,
    rand_invertible,
)


def F(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def test_dual_number_generator():
    D = dual_numbers()
    basis = derivation_basis(D)
    assert len(basis) == 1
    assert basis[0].matrix == F([[0, 0], [0, -1]])
    e = D.basis_element(1)
    assert basis[0].apply(e) == -e


def test_truncated_dimensions_match_oracle():
    for k in range(1, 6):
        A = truncated_polynomial_algebra(1, k)
        basis = derivation_basis(A)
        assert len(basis) == k
        assert derivation_dim_oracle(A) == k


def test_square_zero_ideal_gives_full_linear_maps():
    A = truncated_polynomial_algebra(2, 1)
    basis = derivation_basis(A)
    assert len(basis) == 4
    assert derivation_dim_oracle(A) == 4


def test_two_variable_truncations_free_on_generators():
    # derivations of a truncated polynomial algebra are free on the images
    # of the variables, so r = (number of variables) * dim(ideal)
    for k in (1, 2):
        A = truncated_polynomial_algebra(2, k)
        expected = 2 * (A.dim - 1)
        assert len(derivation_basis(A)) == expected
        assert derivation_dim_oracle(A) == expected


def test_constrained_monomial_quotient():
    # basis {1, x, y, y^2}: the relation x*y kills the y-coefficient of d(x)
    # (x d(y) + y d(x) must vanish), leaving d(x) in span(x, y^2) and d(y) free
    from weilkit import monomial_quotient_algebra

    A = monomial_quotient_algebra(("x", "y"), [(2, 0), (0, 3), (1, 1)])
    basis = derivation_basis(A)
    assert len(basis) == 5
    assert derivation_dim_oracle(A) == 5
    x, y = A.basis_element(1), A.basis_element(2)
    for d in basis:
        image = x * d.apply(y) + y * d.apply(x)
        assert image.is_zero()


def test_reals_have_no_derivations():
    A = truncated_polynomial_algebra(1, 0)
    assert derivation_basis(A) == []


def test_solved_derivations_have_zero_leibniz_residual():
    for A in (dual_numbers(), truncated_polynomial_algebra(1, 4), truncated_polynomial_algebra(2, 2)):
        for d in derivation_basis(A):
            assert leibniz_residual(A, d.matrix) is None


def test_non_derivation_matrix_rejected():
    D = dual_numbers()
    with pytest.raises(ValueError):
        Derivation(D, F([[0, 1], [0, 0]]))  # does not kill the unit
    A = truncated_polynomial_algebra(1, 2)
    with pytest.raises(ValueError):
        Derivation(A, F([[0, 0, 0], [0, 1, 0], [0, 0, 1]]))  # Leibniz fails


def test_dimension_is_basis_independent():
    rng = random.Random(23)
    A = truncated_polynomial_algebra(1, 3)
    r = len(derivation_basis(A))
    s = A.dim
    for _ in range(3):
        # change of basis fixing the unit and mixing the ideal
        block = rand_invertible(rng, s - 1)
        change = la.identity(s)
        for i in range(1, s):
            for j in range(1, s):
                change[i][j] = block[i - 1][j - 1]
        inverse = la.invert(change)
        table = []
        for i in range(s):
            col_i = [change[p][i] for p in range(s)]
            row = []
            for j in range(s):
                col_j = [change[p][j] for p in range(s)]
                product = _mul_in(A, col_i, col_j)
                row.append(la.mat_vec(inverse, product))
            table.append(row)
        B = from_structure_constants([f"b{i}" for i in range(s)], table)
        assert len(derivation_basis(B)) == r


def _mul_in(A, u, v):
    element = A.element(u) * A.element(v)
    return list(element.coeffs)


def test_bracket_examples():
    A = truncated_polynomial_algebra(1, 2)
    d1, d2 = derivation_basis(A)  # x -> x and x -> x^2
    assert bracket(d1, d1).is_zero()
    assert bracket(d1, d2).matrix == d2.matrix
    rng = random.Random(5)
    for _ in range(10):
        c1 = [rand_fraction(rng) for _ in range(2)]
        c2 = [rand_fraction(rng) for _ in range(2)]
        e1 = c1[0] * d1 + c1[1] * d2
        e2 = c2[0] * d1 + c2[1] * d2
        lhs = bracket(e1, e2)
        rhs = bracket(e2, e1)
        assert lhs.matrix == tuple(tuple(-x for x in row) for row in rhs.matrix)


def test_bracket_algebra_mismatch():
    d = derivation_basis(dual_numbers())[0]
    e = derivation_basis(truncated_polynomial_algebra(1, 2))[0]
    with pytest.raises(ValueError):
        bracket(d, e)


def test_module_scale_examples():
    D = dual_numbers()
    d0 = derivation_basis(D)[0]
    assert module_scale(D.unit(), d0).matrix == d0.matrix
    assert module_scale(D.basis_element(1), d0).is_zero()

    A = truncated_polynomial_algebra(1, 2)
    d1, d2 = derivation_basis(A)
    x = A.basis_element(1)
    scaled = module_scale(x, d1)
    assert scaled.matrix == d2.matrix
    # oracle: matrix product M_x D1
    oracle = la.mat_mul(A.multiplication_matrix(x), [list(r) for r in d1.matrix])
    assert scaled.matrix == tuple(tuple(row) for row in oracle)


def test_module_scale_action_pointwise():
    rng = random.Random(9)
    A = truncated_polynomial_algebra(2, 2)
    basis = derivation_basis(A)
    for _ in range(10):
        a = rand_element(rng, A)
        d = basis[rng.randrange(len(basis))]
        u = rand_element(rng, A)
        assert module_scale(a, d).apply(u) == a * d.apply(u)


def test_lie_structure_dual_numbers_abelian():
    lie = lie_structure(derivation_basis(dual_numbers()))
    assert lie.rank == 1
    assert lie.constants[0][0] == (Fraction(0),)


def test_lie_structure_x3():
    lie = lie_structure(derivation_basis(truncated_polynomial_algebra(1, 2)))
    assert lie.constants[0][1] == (Fraction(0), Fraction(1))
    assert lie.constants[1][0] == (Fraction(0), Fraction(-1))


def test_lie_structure_jacobi():
    for A in (dual_numbers(), truncated_polynomial_algebra(1, 2), truncated_polynomial_algebra(2, 1)):
        lie = lie_structure(derivation_basis(A))
        assert jacobi_residual(lie) == 0


def test_lie_structure_not_closed():
    # [d1, d2 + d3] = d2 + 2 d3 escapes span(d1, d2 + d3)
    A = truncated_polynomial_algebra(1, 3)
    d1, d2, d3 = derivation_basis(A)
    with pytest.raises(NotClosedError):
        lie_structure([d1, d2 + d3])


def test_lie_structure_dependent_basis_rejected():
    A = truncated_polynomial_algebra(1, 2)
    d1, _ = derivation_basis(A)
    with pytest.raises(ValueError):
        lie_structure([d1, Fraction(2) * d1])


def test_exp_flow_identity_at_zero():
    d = derivation_basis(dual_numbers())[0]
    phi = exp_flow(d, 0.0)
    assert phi.matrix == ((1.0, 0.0), (0.0, 1.0))


def test_exp_flow_dual_scaling():
    # with d0(ε) = -ε, exp(-t d0) scales ε by e^t
    D = dual_numbers()
    d0 = derivation_basis(D)[0]
    t = 0.8
    phi = exp_flow(d0, -t)
    value = phi.apply(D.basis_element(1))
    assert abs(value.coeffs[1] - math.exp(t)) < 1e-12
    assert value.coeffs[0] == 0.0


def test_exp_flow_matches_series_oracle():
    A = truncated_polynomial_algebra(1, 3)
    for d in derivation_basis(A):
        phi = exp_flow(d, 1.3)
        oracle = expm_series_oracle([[1.3 * float(x) for x in row] for row in d.matrix])
        for i in range(A.dim):
            for j in range(A.dim):
                assert abs(phi.matrix[i][j] - oracle[i][j]) < 1e-12


def test_exp_flow_nilpotent_terminates():
    # strictly lowering derivation: exponential equals the short series sum
    A = truncated_polynomial_algebra(1, 3)
    d = derivation_basis(A)[1]  # x -> x^2 raises degree, nilpotent
    phi = exp_flow(d, 1.0)
    oracle = expm_series_oracle(d.matrix, terms=A.dim)
    for i in range(A.dim):
        for j in range(A.dim):
            assert abs(phi.matrix[i][j] - oracle[i][j]) < 1e-12


def test_exp_flow_group_law():
    A = truncated_polynomial_algebra(1, 2)
    d = derivation_basis(A)[0]
    lhs = exp_flow(d, 0.7).compose(exp_flow(d, 0.5))
    rhs = exp_flow(d, 1.2)
    for i in range(A.dim):
        for j in range(A.dim):
            assert abs(lhs.matrix[i][j] - rhs.matrix[i][j]) < 1e-10


def test_exp_flow_multiplicative():
    rng = random.Random(31)
    for A in (dual_numbers(), truncated_polynomial_algebra(1, 3), truncated_polynomial_algebra(2, 1)):
        basis = derivation_basis(A)
        for _ in range(5):
            d = basis[0]
            for extra in basis[1:]:
                d = d + Fraction(rng.randint(-1, 1)) * extra
            t = rng.uniform(-2.0, 2.0)
            assert multiplicativity_residual(exp_flow(d, t)) <= 1e-9


def test_automorphism_fixes_unit_exactly():
    for A in (dual_numbers(), truncated_polynomial_algebra(2, 2)):
        for d in derivation_basis(A)[:2]:
            phi = exp_flow(d, 1.7)
            image = phi.apply(A.unit())
            assert image.coeffs[0] == 1.0
            assert all(c == 0.0 for c in image.coeffs[1:])


def test_exp_flow_derivative_at_zero():
    # central finite difference of exp(tD) at t = 0 recovers D
    A = truncated_polynomial_algebra(1, 3)
    h = 1e-5
    for d in derivation_basis(A):
        plus = exp_flow(d, h)
        minus = exp_flow(d, -h)
        for i in range(A.dim):
            for j in range(A.dim):
                fd = (plus.matrix[i][j] - minus.matrix[i][j]) / (2 * h)
                assert abs(fd - float(d.matrix[i][j])) < 1e-6


def test_derivation_json_wire_format():
    from weilkit.jsonio import derivation_to_json

    d = derivation_basis(dual_numbers())[0]
    wire = derivation_to_json(d)
    assert wire == [["0/1", "0/1"], ["0/1", "-1/1"]]
    assert rational_from_json(wire[1][1]) == Fraction(-1)
