"""Shared test helpers: independent oracles and random rational data.

The oracles deliberately avoid the library's exact solvers: derivation
dimensions are recomputed from a float constraint matrix via numpy's SVD
rank, and matrix exponentials are recomputed by direct series summation.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from weilkit import Polynomial, WeilAlgebra


# ----------------------------------------------------------------- oracles


def derivation_dim_oracle(algebra: WeilAlgebra) -> int:
    """Brute-force nullspace dimension of the Leibniz system.

    Builds the full constraint matrix (all ordered basis pairs plus the
    unit condition) with float entries and counts solutions as
    s^2 - rank, rank taken by numpy's SVD.  Independent of the exact
    rational elimination used by the library.
    """
    s = algebra.dim
    table = [[[float(x) for x in entry] for entry in row] for row in algebra.table]
    rows = []
    for p in range(s):
        row = [0.0] * (s * s)
        row[p * s] = 1.0
        rows.append(row)
    for i in range(s):
        for j in range(s):
            for p in range(s):
                row = [0.0] * (s * s)
                for k in range(s):
                    row[p * s + k] += table[i][j][k]
                for m in range(s):
                    row[m * s + i] -= table[m][j][p]
                    row[m * s + j] -= table[m][i][p]
                rows.append(row)
    matrix = np.array(rows)
    return s * s - int(np.linalg.matrix_rank(matrix))


def expm_series_oracle(matrix, terms: int = 60):
    """Plain truncated series sum of the matrix exponential."""
    m = np.array([[float(x) for x in row] for row in matrix])
    out = np.eye(len(m))
    power = np.eye(len(m))
    factorial = 1.0
    for k in range(1, terms + 1):
        power = power @ m
        factorial *= k
        out = out + power / factorial
    return out


def raw_table_mul(table, u, v):
    """Product coordinates straight from a raw structure-constant table."""
    s = len(table)
    out = [Fraction(0)] * s
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b == 0:
                continue
            for k in range(s):
                out[k] += a * b * Fraction(table[i][j][k])
    return out


# ------------------------------------------------------- random rational data


def rand_fraction(rng: random.Random, span: int = 3, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_element(rng: random.Random, algebra: WeilAlgebra):
    return algebra.element([rand_fraction(rng) for _ in range(algebra.dim)])


def rand_nilpotent(rng: random.Random, algebra: WeilAlgebra):
    coeffs = [Fraction(0)] + [rand_fraction(rng) for _ in range(algebra.dim - 1)]
    return algebra.element(coeffs)


def rand_near_point(rng: random.Random, algebra: WeilAlgebra, n: int):
    from weilkit import make_near_point

    base = [rand_fraction(rng) for _ in range(n)]
    nilparts = [rand_nilpotent(rng, algebra) for _ in range(n)]
    return make_near_point(algebra, base, nilparts)


def rand_poly(rng: random.Random, nvars: int, degree: int = 3, terms: int = 4) -> Polynomial:
    data = {}
    for _ in range(terms):
        exp = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            exp[rng.randrange(nvars)] += 1
        data[tuple(exp)] = data.get(tuple(exp), Fraction(0)) + rand_fraction(rng)
    return Polynomial(nvars, data)


def rand_invertible(rng: random.Random, size: int):
    """Random invertible rational matrix (entries small integers)."""
    import weilkit.linalg as linalg

    while True:
        mat = [
            [Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)
        ]
        try:
            linalg.invert([row[:] for row in mat])
            return mat
        except ValueError:
            continue
