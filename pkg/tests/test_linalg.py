"""Exact linear algebra helpers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import weilkit.linalg as la
from support import rand_fraction


def F(rows):
    return [[Fraction(x) for x in row] for row in rows]


def test_rref_identity_pivots():
    red, pivots = la.rref(F([[2, 0], [0, 3]]))
    assert red == la.identity(2)
    assert pivots == [0, 1]


def test_nullspace_canonical_and_annihilating():
    rows = F([[1, 2, 3], [2, 4, 6]])
    basis = la.nullspace(rows, 3)
    assert len(basis) == 2
    for vec in basis:
        assert all(
            sum(r * v for r, v in zip(row, vec)) == 0 for row in rows
        )
    # canonical form: leading ones at increasing positions
    leads = [next(i for i, x in enumerate(v) if x) for v in basis]
    assert leads == sorted(leads)
    assert all(v[leads[i]] == 1 for i, v in enumerate(basis))


def test_nullspace_of_empty_system_is_full():
    assert la.nullspace([], 3) == la.identity(3)


def test_solve_consistent_and_inconsistent():
    rows = F([[1, 1], [1, -1]])
    x = la.solve(rows, [Fraction(3), Fraction(1)])
    assert x == [Fraction(2), Fraction(1)]
    rows = F([[1, 1], [2, 2]])
    assert la.solve(rows, [Fraction(1), Fraction(3)]) is None


def test_invert_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        mat = [[rand_fraction(rng) for _ in range(3)] for _ in range(3)]
        try:
            inv = la.invert(mat)
        except ValueError:
            continue
        assert la.mat_mul(mat, inv) == la.identity(3)


def test_invert_singular_raises():
    with pytest.raises(ValueError):
        la.invert(F([[1, 2], [2, 4]]))


def test_rank_with_tolerance_float_path():
    rows = [[1.0, 0.0], [1e-12, 0.0]]
    assert la.rank_with_tolerance(rows, 1e-9) == 1
    assert la.rank_with_tolerance([[1.0, 0.0], [0.0, 1e-6]], 1e-9) == 2


def test_rank_exact_path():
    rows = F([[1, 2], [2, 4], [0, 1]])
    assert la.rank(rows) == 2
    assert la.rank_with_tolerance(rows, 0) == 2
