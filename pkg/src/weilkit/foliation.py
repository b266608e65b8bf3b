"""Vector fields on near-point charts induced by algebra derivations, and
the distribution they span.

A derivation D of the algebra induces a field on the chart whose value at a
near point is, componentwise, -D applied to the point's components; acting
on lifted functions it is f -> -D(point(f)).  The fields induced by a
derivation basis span a distribution whose rank stratifies the chart: it
vanishes on the zero section (points with no nilpotent part) and reaches
the full derivation dimension at generic points.  Their chart brackets
reproduce the algebra brackets exactly, so the distribution is involutive
and integrates to a (possibly singular) foliation whose leaves are orbits
of the automorphism flows exp(-tD), all inside a single fiber over the base
point.

For the dual numbers the whole picture collapses to the classical one on a
tangent bundle: one generator, the Liouville field, fiber dilation e^t.
``liouville_demo`` checks that specialisation end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import AlgebraElement, WeilAlgebra, dual_numbers
from .derivations import (
    Derivation,
    LieStructure,
    bracket,
    derivation_basis,
    exp_flow,
)
from .nearpoints import (
    ChartVectorField,
    NearPoint,
    chart_variable_names,
    field_from_values,
    make_near_point,
)
from .poly import Polynomial


@dataclass(frozen=True)
class InducedField:
    """Chart vector field induced by a derivation: blockwise u -> -D(u)."""

    derivation: Derivation
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one manifold coordinate")

    @property
    def algebra(self) -> WeilAlgebra:
        return self.derivation.algebra

    def value_at(self, point: NearPoint) -> list[AlgebraElement]:
        """Componentwise value -D(point_i)."""
        _check_point(self, point)
        return [-self.derivation.apply(c) for c in point.components]


def induced_field(algebra: WeilAlgebra, d: Derivation, n: int) -> InducedField:
    if d.algebra is not algebra and d.algebra != algebra:
        raise ValueError("derivation belongs to a different algebra")
    return InducedField(d, n)


def _check_point(field: InducedField, point: NearPoint) -> None:
    if point.algebra is not field.algebra and point.algebra != field.algebra:
        raise ValueError("point belongs to a different algebra")
    if point.n != field.n:
        raise ValueError(f"field has {field.n} coordinates, point has {point.n}")


def field_apply(field: InducedField, f: Polynomial, point: NearPoint) -> AlgebraElement:
    """Action on a lifted function: -D(point(f)).  Exact for rational data,
    and a derivation with respect to lifted multiplication."""
    _check_point(field, point)
    if f.nvars != field.n:
        raise ValueError(f"polynomial has {f.nvars} variables, field has {field.n}")
    return -field.derivation.apply(point.eval(f))


def chart_flatten(field: InducedField, point: NearPoint) -> tuple:
    """Chart coordinates of the field value: the n blocks -D(point_i),
    concatenated.  Linear in the point's chart coordinates."""
    out = []
    for value in field.value_at(point):
        out.extend(value.coeffs)
    return tuple(out)


def coordinate_values(field: InducedField) -> list[list[Polynomial]]:
    """Symbolic action on the coordinate functions.

    Entry [i][j] is the coefficient of basis element j in the field applied
    to coordinate i, as a (linear) polynomial in the chart variables; feeding
    the result to ``field_from_values`` yields the chart form of the field.
    """
    s = field.algebra.dim
    n = field.n
    nvars = n * s
    matrix = field.derivation.matrix
    values = []
    for i in range(n):
        row = []
        for k in range(s):
            terms = {}
            for l in range(s):
                if matrix[k][l]:
                    exp = [0] * nvars
                    exp[i * s + l] = 1
                    terms[tuple(exp)] = -matrix[k][l]
            row.append(Polynomial(nvars, terms))
        values.append(row)
    return values


def chart_field(field: InducedField) -> ChartVectorField:
    """The induced field as an explicit chart vector field."""
    return field_from_values(coordinate_values(field))


@dataclass(frozen=True)
class DistributionSample:
    """Distribution generators and their rank at a single near point."""

    point: NearPoint
    generators: tuple[tuple, ...]
    rank: int
    tolerance: float


def distribution_at(
    algebra: WeilAlgebra,
    basis: Sequence[Derivation],
    point: NearPoint,
    tol: float | None = None,
) -> DistributionSample:
    """Evaluate all induced fields at a point and compute the span's rank.

    ``tol`` defaults to 0 (exact) when every chart coordinate is rational
    and to 1e-9 otherwise; pivots at or below the tolerance count as zero.
    """
    fields = [induced_field(algebra, d, point.n) for d in basis]
    generators = tuple(chart_flatten(f, point) for f in fields)
    if tol is None:
        exact = all(
            isinstance(x, (int, Fraction)) for gen in generators for x in gen
        )
        tol = 0.0 if exact else 1e-9
    if generators:
        rank = linalg.rank_with_tolerance([list(g) for g in generators], tol)
    else:
        rank = 0
    return DistributionSample(point=point, generators=generators, rank=rank, tolerance=tol)


def involutivity_check(lie: LieStructure, n: int) -> dict:
    """Verify, exactly, that chart brackets of the induced fields agree with
    the induced field of the algebra bracket expanded in the basis.

    For linear fields u -> Mu the chart bracket of (M1, M2) has matrix
    M2 M1 - M1 M2; with M = -D per block this must equal -sum_k c_k D_k for
    the structure constants of the pair.  The identity is blockwise, so it
    is independent of n.  Returns {"pairs": [...], "all_pass": bool}.
    """
    if n < 1:
        raise ValueError("need at least one manifold coordinate")
    r = lie.rank
    pairs = []
    all_pass = True
    for i in range(r):
        di = [list(row) for row in lie.basis[i].matrix]
        for j in range(i + 1, r):
            dj = [list(row) for row in lie.basis[j].matrix]
            # chart bracket of u -> -D_i u and u -> -D_j u
            chart = linalg.mat_sub(linalg.mat_mul(dj, di), linalg.mat_mul(di, dj))
            expected = linalg.mat_scale(Fraction(-1), _combination(lie, lie.constants[i][j]))
            ok = chart == expected
            all_pass = all_pass and ok
            pairs.append({"i": i, "j": j, "pass": ok})
    return {"pairs": pairs, "all_pass": all_pass}


def _combination(lie: LieStructure, coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    s = lie.basis[0].algebra.dim
    out = [[Fraction(0)] * s for _ in range(s)]
    for c, d in zip(coeffs, lie.basis):
        if c == 0:
            continue
        for p in range(s):
            for q in range(s):
                if d.matrix[p][q]:
                    out[p][q] += c * d.matrix[p][q]
    return out


def flow(algebra: WeilAlgebra, d: Derivation, t: float, point: NearPoint) -> NearPoint:
    """Flow of the induced field for time t: apply exp(-tD) componentwise.

    The base point is preserved exactly (the unit row of D is zero, which
    survives the floating exponential bit for bit); flow(0) is the identity
    and flows compose additively in t up to round-off.
    """
    if point.algebra is not algebra and point.algebra != algebra:
        raise ValueError("point belongs to a different algebra")
    phi = exp_flow(d, -t)
    return NearPoint(tuple(phi.apply(c) for c in point.components))


def leaf_sample(
    algebra: WeilAlgebra,
    basis: Sequence[Derivation],
    point: NearPoint,
    schedule: Sequence[tuple[int, float]],
) -> list[NearPoint]:
    """Iterated flows along (derivation index, time) steps.

    Returns the visited points, starting with the input.  All samples lie in
    the same fiber: base points never change along the leaf.
    """
    samples = [point]
    current = point
    for index, t in schedule:
        if not 0 <= index < len(basis):
            raise ValueError(f"derivation index {index} out of range for basis of size {len(basis)}")
        current = flow(algebra, basis[index], t, current)
        samples.append(current)
    return samples


# ------------------------------------------------------------ Liouville demo


def liouville_demo(n: int) -> dict:
    """Run the tangent-bundle specialisation over R^n and report assertions.

    Over the dual numbers the derivation space is one-dimensional with
    generator ε -> -ε; the induced field is the Liouville field (sum of
    y_i d/dy_i in tangent-bundle coordinates), its value on coordinate i is
    ε·y_i, its flow scales fibers by e^t, and its rank is 1 off the zero
    section and 0 on it.  Each assertion is checked and reported.
    """
    if n < 1:
        raise ValueError("need at least one coordinate")
    algebra = dual_numbers()
    basis = derivation_basis(algebra)
    assertions = []

    generator_ok = (
        len(basis) == 1
        and basis[0].matrix == ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(-1)))
    )
    assertions.append(
        {
            "name": "derivation algebra",
            "pass": generator_ok,
            "detail": "dim Der = 1 with generator ε ↦ -ε"
            if generator_ok
            else f"unexpected basis of size {len(basis)}",
        }
    )
    if not generator_ok:
        return {"n": n, "r": len(basis), "assertions": assertions, "pass": False}

    d0 = basis[0]
    fld = induced_field(algebra, d0, n)
    names = chart_variable_names(algebra, n)

    values = coordinate_values(fld)
    value_ok = all(
        values[i][0].is_zero() and values[i][1] == Polynomial.variable(2 * n, 2 * i + 1)
        for i in range(n)
    )
    assertions.append(
        {
            "name": "derivation form",
            "pass": value_ok,
            "detail": "value on coordinate i is ε·y_i"
            if value_ok
            else "; ".join(
                f"x{i + 1}: " + " , ".join(v.to_str(names) for v in values[i])
                for i in range(n)
            ),
        }
    )

    chart = chart_field(fld)
    chart_ok = all(
        chart.component(i, 0).is_zero()
        and chart.component(i, 1) == Polynomial.variable(2 * n, 2 * i + 1)
        for i in range(n)
    )
    assertions.append(
        {
            "name": "chart field",
            "pass": chart_ok,
            "detail": "Liouville field: sum of y_i d/dy_i"
            if chart_ok
            else "chart components differ from the Liouville field",
        }
    )

    base = [Fraction(i + 1) for i in range(n)]
    fiber = [Fraction(2 * i + 1, 2) for i in range(n)]
    nilparts = [fiber[i] * algebra.basis_element(1) for i in range(n)]
    point = make_near_point(algebra, base, nilparts)
    flow_checks = []
    worst = 0.0
    for t in (0.5, math.log(2.0), -1.25):
        moved = flow(algebra, d0, t, point)
        scale = math.exp(t)
        residual = 0.0
        for i in range(n):
            target = float(fiber[i]) * scale
            residual = max(residual, abs(float(moved.components[i].coeffs[1]) - target))
            residual = max(
                residual, abs(float(moved.components[i].coeffs[0]) - float(base[i]))
            )
        flow_checks.append({"t": t, "max_residual": residual})
        worst = max(worst, residual)
    flow_ok = worst <= 1e-9
    assertions.append(
        {
            "name": "flow",
            "pass": flow_ok,
            "detail": f"fiber scaling by e^t, max residual {worst:.3e}",
        }
    )

    off_section = distribution_at(algebra, basis, point)
    zero_section = distribution_at(algebra, basis, make_near_point(algebra, base))
    rank_ok = off_section.rank == 1 and zero_section.rank == 0
    assertions.append(
        {
            "name": "rank stratification",
            "pass": rank_ok,
            "detail": f"rank {off_section.rank} off the zero section, "
            f"{zero_section.rank} on it (expected 1 and 0)",
        }
    )

    return {
        "n": n,
        "r": len(basis),
        "assertions": assertions,
        "flow_checks": flow_checks,
        "rank_samples": [
            {"point": "generic fiber point", "rank": off_section.rank},
            {"point": "zero section", "rank": zero_section.rank},
        ],
        "pass": all(a["pass"] for a in assertions),
    }
