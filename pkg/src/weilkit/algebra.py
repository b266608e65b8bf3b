"""Finite-dimensional local algebras given by multiplication tables.

A :class:`WeilAlgebra` is a commutative unital algebra of finite dimension
over the rationals whose nilpotent elements form a maximal ideal of
codimension one.  Every construction path runs the full axiom check:

* commutativity and associativity of the structure-constant tensor,
* existence of a unit (solved for as a linear system),
* locality: the nilpotent radical is computed as the kernel of the trace
  form of the regular representation (valid in characteristic zero), then
  verified constructively (each radical element has a nilpotent
  multiplication operator, the radical is an ideal, and its codimension
  is exactly one),
* nilpotency of the ideal, which also yields the height.

After verification the basis is normalised so that basis element 0 is the
unit and elements 1..s-1 span the maximal ideal; the scalar part of an
element is then literally its coordinate 0.  All scalars in this module are
exact ``Fraction``s with no tolerances; elements may carry floats only in
flow integration, which never feeds back into verification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .poly import Exponents, Polynomial, grlex_key, monomial_str

Table = tuple[tuple[tuple[Fraction, ...], ...], ...]


class AlgebraAxiomError(ValueError):
    """A multiplication table failed one of the local-algebra axioms."""

    axiom = "Axiom"


class NotCommutativeError(AlgebraAxiomError):
    axiom = "NotCommutative"


class NotAssociativeError(AlgebraAxiomError):
    axiom = "NotAssociative"


class NoUnitError(AlgebraAxiomError):
    axiom = "NoUnit"


class NotLocalError(AlgebraAxiomError):
    axiom = "NotLocal"


class NotNilpotentError(AlgebraAxiomError):
    axiom = "NotNilpotent"


class InfiniteDimensionalError(ValueError):
    """A monomial quotient without a pure power of every variable."""


@dataclass(frozen=True)
class WeilAlgebra:
    """Verified local algebra over a normalised basis.

    ``table[i][j][k]`` is the coefficient of basis element k in the product
    of basis elements i and j.  Basis element 0 is the unit; elements
    1..dim-1 span the maximal ideal.  ``height`` is the smallest k with
    m^(k+1) = 0 and ``width`` is dim(m/m^2).
    """

    labels: tuple[str, ...]
    table: Table
    height: int
    width: int

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return (
            f"WeilAlgebra(dim={self.dim}, height={self.height}, "
            f"width={self.width}, labels={list(self.labels)})"
        )

    # ------------------------------------------------------------- elements

    def element(self, coeffs: Sequence) -> "AlgebraElement":
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return AlgebraElement(self, tuple(_scalar(c) for c in coeffs))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.dim)

    def unit(self) -> "AlgebraElement":
        return self.basis_element(0)

    def basis_element(self, i: int) -> "AlgebraElement":
        if not 0 <= i < self.dim:
            raise ValueError(f"basis index {i} out of range")
        coeffs = [Fraction(0)] * self.dim
        coeffs[i] = Fraction(1)
        return AlgebraElement(self, tuple(coeffs))

    def from_scalar(self, value) -> "AlgebraElement":
        coeffs = [_scalar(0)] * self.dim
        coeffs[0] = _scalar(value)
        return AlgebraElement(self, tuple(coeffs))

    def maximal_ideal_basis(self) -> tuple["AlgebraElement", ...]:
        return tuple(self.basis_element(i) for i in range(1, self.dim))

    def multiplication_matrix(self, u: "AlgebraElement") -> list[list[Fraction]]:
        """Matrix of v -> u*v on the basis (columns are images of basis elements)."""
        if u.algebra is not self and u.algebra != self:
            raise ValueError("element belongs to a different algebra")
        s = self.dim
        mat = [[Fraction(0)] * s for _ in range(s)]
        for i, ui in enumerate(u.coeffs):
            if ui == 0:
                continue
            for q in range(s):
                row = self.table[i][q]
                for p in range(s):
                    if row[p]:
                        mat[p][q] += ui * row[p]
        return mat


@dataclass(frozen=True)
class AlgebraElement:
    """Coefficient vector over an algebra's basis.

    Coefficients are Fractions on the exact path; flows produce float
    coefficients, and mixed arithmetic degrades to float as usual.
    """

    algebra: WeilAlgebra
    coeffs: tuple

    def _check_same(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check_same(other)
            table = self.algebra.table
            s = self.algebra.dim
            out = [Fraction(0)] * s
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b == 0:
                        continue
                    ab = a * b
                    row = table[i][j]
                    for k in range(s):
                        if row[k]:
                            out[k] = out[k] + ab * row[k]
            return AlgebraElement(self.algebra, tuple(out))
        if isinstance(other, (int, Fraction, float)):
            c = _scalar(other)
            return AlgebraElement(self.algebra, tuple(c * a for a in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.algebra.unit()
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def scalar_part(self):
        return self.coeffs[0]

    def nilpotent_part(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, (Fraction(0),) + self.coeffs[1:])

    def __str__(self) -> str:
        return format_element(self)


def _scalar(value):
    if isinstance(value, float):
        return value
    return Fraction(value)


def split_scalar_nilpotent(u: AlgebraElement):
    """Decompose u = c*1 + m with m in the maximal ideal; returns (c, m)."""
    return u.scalar_part, u.nilpotent_part()


def format_element(u: AlgebraElement) -> str:
    """Human-readable rendering, e.g. ``3 + 2*ε``."""
    labels = u.algebra.labels
    pieces: list[str] = []
    for i, c in enumerate(u.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        mag_str = _coeff_str(mag)
        if i == 0:
            body = mag_str
        elif mag == 1:
            body = labels[i]
        else:
            body = f"{mag_str}*{labels[i]}"
        if not pieces:
            pieces.append(body if _is_positive(c) else f"-{body}")
        else:
            pieces.append(f"{'+' if _is_positive(c) else '-'} {body}")
    return " ".join(pieces) if pieces else "0"


def _is_positive(c) -> bool:
    return c > 0


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return f"{c:.12g}"


# ----------------------------------------------------------------- raw tables


def _table_from(raw) -> list[list[list[Fraction]]]:
    s = len(raw)
    table = []
    for i in range(s):
        if len(raw[i]) != s:
            raise ValueError("structure-constant tensor is not s x s x s")
        row = []
        for j in range(s):
            entry = raw[i][j]
            if len(entry) != s:
                raise ValueError("structure-constant tensor is not s x s x s")
            row.append([Fraction(x) for x in entry])
        table.append(row)
    return table


def _table_mul(table, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    s = len(table)
    out = [Fraction(0)] * s
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b == 0:
                continue
            ab = a * b
            row = table[i][j]
            for k in range(s):
                if row[k]:
                    out[k] += ab * row[k]
    return out


def _check_commutative(table, labels) -> None:
    s = len(table)
    for i in range(s):
        for j in range(i + 1, s):
            if table[i][j] != table[j][i]:
                raise NotCommutativeError(
                    f"{labels[i]}*{labels[j]} != {labels[j]}*{labels[i]}"
                )


def _check_associative(table, labels) -> None:
    s = len(table)
    for i in range(s):
        for j in range(s):
            ij = table[i][j]
            for l in range(s):
                left = [Fraction(0)] * s
                for k in range(s):
                    if ij[k]:
                        row = table[k][l]
                        for p in range(s):
                            if row[p]:
                                left[p] += ij[k] * row[p]
                right = _table_mul(table, _unit_vector(s, i), table[j][l])
                if left != right:
                    raise NotAssociativeError(
                        f"({labels[i]}*{labels[j]})*{labels[l]} != "
                        f"{labels[i]}*({labels[j]}*{labels[l]})"
                    )


def _unit_vector(s: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * s
    v[i] = Fraction(1)
    return v


def _find_unit(table) -> list[Fraction] | None:
    # Solve u * a_j = a_j for all j; commutativity makes this two-sided.
    s = len(table)
    rows, rhs = [], []
    for j in range(s):
        for k in range(s):
            rows.append([table[i][j][k] for i in range(s)])
            rhs.append(Fraction(1) if j == k else Fraction(0))
    return linalg.solve(rows, rhs)


def _trace_form_kernel(table) -> list[list[Fraction]]:
    # In characteristic zero the radical is the kernel of the trace form
    # of the regular representation: x is nilpotent iff trace(M_{x*a}) = 0
    # for every a.
    s = len(table)
    traces = [sum(table[k][q][q] for q in range(s)) for k in range(s)]
    gram = [
        [sum(table[i][j][k] * traces[k] for k in range(s)) for i in range(s)]
        for j in range(s)
    ]
    return linalg.nullspace(gram, s)


def _multiplication_matrix(table, u: Sequence[Fraction]) -> list[list[Fraction]]:
    s = len(table)
    mat = [[Fraction(0)] * s for _ in range(s)]
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        for q in range(s):
            row = table[i][q]
            for p in range(s):
                if row[p]:
                    mat[p][q] += ui * row[p]
    return mat


def _is_nilpotent_matrix(mat) -> bool:
    power = mat
    for _ in range(len(mat)):
        if linalg.is_zero_matrix(power):
            return True
        power = linalg.mat_mul(power, mat)
    return linalg.is_zero_matrix(power)


def _in_span(rref_basis: list[list[Fraction]], vec: Sequence[Fraction]) -> bool:
    residual = list(vec)
    for row in rref_basis:
        pivot = next(i for i, x in enumerate(row) if x != 0)
        f = residual[pivot]
        if f:
            for i in range(len(residual)):
                if row[i]:
                    residual[i] -= f * row[i]
    return all(x == 0 for x in residual)


def from_structure_constants(
    labels: Sequence[str], raw_table: Sequence[Sequence[Sequence]]
) -> WeilAlgebra:
    """Verify a multiplication table and return the normalised algebra.

    Raises NotCommutativeError, NotAssociativeError, NoUnitError,
    NotLocalError or NotNilpotentError when the corresponding axiom fails.
    """
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise ValueError("algebra dimension must be at least 1")
    if len(raw_table) != len(labels):
        raise ValueError("label count does not match table size")
    table = _table_from(raw_table)
    s = len(table)

    _check_commutative(table, labels)
    unit = _find_unit(table)
    if unit is None:
        raise NoUnitError("no element satisfies u*a = a for every basis element a")
    _check_associative(table, labels)

    radical = _trace_form_kernel(table)
    if len(radical) != s - 1:
        raise NotLocalError(
            f"nilpotent elements span dimension {len(radical)}, expected {s - 1}; "
            "the algebra contains a nontrivial idempotent or semisimple part"
        )
    for vec in radical:
        if not _is_nilpotent_matrix(_multiplication_matrix(table, vec)):
            raise NotNilpotentError("candidate maximal ideal contains a non-nilpotent element")
    for vec in radical:
        for i in range(s):
            product = _table_mul(table, _unit_vector(s, i), vec)
            if not _in_span(radical, product):
                raise NotLocalError("nilpotent elements do not form an ideal")

    # Change of basis: unit first, then the canonical radical basis.
    change = [[unit[p]] + [vec[p] for vec in radical] for p in range(s)]
    try:
        inverse = linalg.invert(change)
    except ValueError:
        raise NotLocalError("unit lies in the span of the nilpotent elements") from None

    is_identity = change == linalg.identity(s)
    new_table = []
    for i in range(s):
        col_i = [change[p][i] for p in range(s)]
        row = []
        for j in range(s):
            col_j = [change[p][j] for p in range(s)]
            product = _table_mul(table, col_i, col_j)
            row.append(tuple(linalg.mat_vec(inverse, product)))
        new_table.append(tuple(row))
    new_table = tuple(new_table)

    if is_identity:
        new_labels = labels
    else:
        new_labels = ("1",) + tuple(
            _combination_label([vec[p] for p in range(s)], labels) for vec in radical
        )

    height = _ideal_height(new_table)
    m_dim = s - 1
    m2_dim = len(_ideal_power_basis(new_table, 2))
    width = m_dim - m2_dim

    return WeilAlgebra(labels=new_labels, table=new_table, height=height, width=width)


def _combination_label(coeffs: Sequence[Fraction], labels: Sequence[str]) -> str:
    pieces = []
    for c, name in zip(coeffs, labels):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{_coeff_str(mag)}*{name}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if c > 0 else '-'}{body}")
    return "".join(pieces) if pieces else "0"


def _ideal_power_basis(table: Table, power: int) -> list[list[Fraction]]:
    """RREF basis of m^power in a normalised table (m spanned by e_1..e_{s-1})."""
    s = len(table)
    current = [_unit_vector(s, i) for i in range(1, s)]
    if not current:
        return []
    generators = list(current)
    for _ in range(power - 1):
        products = []
        for u in current:
            for v in generators:
                w = _table_mul(table, u, v)
                if any(x != 0 for x in w):
                    products.append(w)
        if not products:
            return []
        current, _ = linalg.rref(products)
        current = [row for row in current if any(x != 0 for x in row)]
        if not current:
            return []
    return current


def _ideal_height(table: Table) -> int:
    s = len(table)
    if s == 1:
        return 0
    k = 1
    while True:
        if not _ideal_power_basis(table, k + 1):
            return k
        k += 1
        if k > s:
            raise NotNilpotentError("maximal ideal is not nilpotent")


# ------------------------------------------------------------- constructions


def _default_names(num_vars: int) -> tuple[str, ...]:
    if num_vars <= 3:
        return ("x", "y", "z")[:num_vars]
    return tuple(f"x{i + 1}" for i in range(num_vars))


def truncated_polynomial_algebra(
    num_vars: int, order: int, names: Sequence[str] | None = None
) -> WeilAlgebra:
    """Polynomials in ``num_vars`` variables truncated beyond total degree
    ``order``: the quotient by the (order+1)-st power of the variable ideal.

    The basis is the monomials of total degree <= order in graded-lex order;
    dimension is C(num_vars+order, order), height is ``order`` and width is
    ``num_vars`` (0 when order = 0).
    """
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if order < 0:
        raise ValueError("order must be non-negative")
    names = tuple(names) if names is not None else _default_names(num_vars)
    if len(names) != num_vars:
        raise ValueError("variable-name count mismatch")
    exponents = sorted(
        (
            e
            for e in itertools.product(range(order + 1), repeat=num_vars)
            if sum(e) <= order
        ),
        key=grlex_key,
    )
    return _monomial_basis_algebra(
        names, exponents, lambda e: sum(e) > order
    )


def monomial_quotient_algebra(
    names: Sequence[str], relations: Sequence[Exponents]
) -> WeilAlgebra:
    """Quotient of a polynomial ring by a monomial ideal.

    ``relations`` are the exponent tuples of the ideal generators.  The
    ideal must contain a pure power of every variable, otherwise the
    quotient is infinite dimensional.  The basis is the set of standard
    monomials (those divisible by no relation).
    """
    names = tuple(names)
    if not names:
        raise ValueError("need at least one variable")
    nv = len(names)
    rels = []
    for rel in relations:
        rel = tuple(int(e) for e in rel)
        if len(rel) != nv:
            raise ValueError("relation arity does not match variable count")
        if any(e < 0 for e in rel):
            raise ValueError("negative exponent in relation")
        if sum(rel) == 0:
            raise ValueError("constant relation collapses the algebra to zero")
        rels.append(rel)
    bounds = []
    for i in range(nv):
        pure = [
            rel[i]
            for rel in rels
            if rel[i] > 0 and all(rel[j] == 0 for j in range(nv) if j != i)
        ]
        if not pure:
            raise InfiniteDimensionalError(
                f"variable {names[i]} has no pure power among the relations"
            )
        bounds.append(min(pure))

    def divisible(e: Exponents) -> bool:
        return any(all(r <= x for r, x in zip(rel, e)) for rel in rels)

    exponents = sorted(
        (
            e
            for e in itertools.product(*(range(b) for b in bounds))
            if not divisible(e)
        ),
        key=grlex_key,
    )
    return _monomial_basis_algebra(names, exponents, divisible)


def _monomial_basis_algebra(names, exponents, reduces_to_zero) -> WeilAlgebra:
    index = {e: i for i, e in enumerate(exponents)}
    s = len(exponents)
    labels = [monomial_str(e, names) for e in exponents]
    table = []
    for ei in exponents:
        row = []
        for ej in exponents:
            e = tuple(a + b for a, b in zip(ei, ej))
            coords = [Fraction(0)] * s
            if not reduces_to_zero(e):
                coords[index[e]] = Fraction(1)
            row.append(coords)
        table.append(row)
    return from_structure_constants(labels, table)


def dual_numbers(name: str = "ε") -> WeilAlgebra:
    """The dual numbers: one nilpotent generator with square zero."""
    return truncated_polynomial_algebra(1, 1, names=(name,))


def eval_in_algebra(p: Polynomial, args: Sequence[AlgebraElement]) -> AlgebraElement:
    """Image of p under the algebra homomorphism sending variable i to args[i]."""
    if not args:
        raise ValueError("need at least one argument to determine the algebra")
    algebra = args[0].algebra
    for arg in args[1:]:
        if arg.algebra is not algebra and arg.algebra != algebra:
            raise ValueError("arguments belong to different algebras")
    if len(args) != p.nvars:
        raise ValueError(f"polynomial has {p.nvars} variables, got {len(args)} arguments")
    return p.evaluate(args, one=algebra.unit())
