"""JSON formats for algebra specs, near points, oracles and reports.

Rationals travel as strings ``"p/q"`` in lowest terms with the sign on the
numerator, so serialised data round-trips bit for bit.  Floats are accepted
where flows produce them; structure-constant tables must stay rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import (
    WeilAlgebra,
    from_structure_constants,
    monomial_quotient_algebra,
    truncated_polynomial_algebra,
)
from .derivations import Derivation, LieStructure
from .nearpoints import NearPoint, TaylorOracle, make_near_point
from .poly import parse_polynomial


class SpecFormatError(ValueError):
    """Structurally malformed spec data (missing keys, bad scalars, ...)."""


def fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(value) -> Fraction:
    """Exact rational from a JSON int or "p/q" string; floats are rejected."""
    if isinstance(value, bool):
        raise SpecFormatError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFormatError(f"bad rational literal {value!r}") from exc
    raise SpecFormatError(f"expected a rational, got {value!r}")


def scalar_from_json(value):
    """Rational where possible, float when the JSON value is a float."""
    if isinstance(value, float):
        return value
    return rational_from_json(value)


def scalar_to_json(value):
    if isinstance(value, Fraction):
        return fraction_to_str(value)
    if isinstance(value, int):
        return fraction_to_str(Fraction(value))
    return float(value)


# -------------------------------------------------------------- algebra specs


def algebra_from_spec(spec: dict) -> WeilAlgebra:
    """Build and verify an algebra from its JSON spec.

    Three variants: ``truncated_polynomial`` (variables + order),
    ``monomial_quotient`` (variables + relation monomials) and
    ``structure_constants`` (labels + s x s x s rational table).
    """
    if not isinstance(spec, dict):
        raise SpecFormatError("algebra spec must be a JSON object")
    kind = spec.get("type")
    if kind == "truncated_polynomial":
        variables = _string_list(spec, "variables")
        order = spec.get("order")
        if not isinstance(order, int) or order < 0:
            raise SpecFormatError("order must be a non-negative integer")
        return truncated_polynomial_algebra(len(variables), order, names=variables)
    if kind == "monomial_quotient":
        variables = _string_list(spec, "variables")
        raw = spec.get("relations")
        if not isinstance(raw, list) or not raw:
            raise SpecFormatError("relations must be a non-empty list of monomial strings")
        relations = [_monomial_exponents(text, variables) for text in raw]
        return monomial_quotient_algebra(variables, relations)
    if kind == "structure_constants":
        labels = _string_list(spec, "labels")
        table = spec.get("table")
        if not isinstance(table, list):
            raise SpecFormatError("table must be a nested list")
        try:
            rational = [
                [[rational_from_json(x) for x in entry] for entry in row] for row in table
            ]
        except TypeError as exc:
            raise SpecFormatError("table must be a s x s x s nested list") from exc
        return from_structure_constants(labels, rational)
    raise SpecFormatError(f"unknown algebra spec type {kind!r}")


def algebra_to_spec(algebra: WeilAlgebra) -> dict:
    """Emit the verified table as a structure-constants spec."""
    return {
        "type": "structure_constants",
        "labels": list(algebra.labels),
        "table": [
            [[fraction_to_str(x) for x in entry] for entry in row]
            for row in algebra.table
        ],
    }


def _string_list(spec: dict, key: str) -> list[str]:
    value = spec.get(key)
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(x, str) for x in value)
    ):
        raise SpecFormatError(f"{key} must be a non-empty list of strings")
    return value


def _monomial_exponents(text: str, variables: Sequence[str]):
    if not isinstance(text, str):
        raise SpecFormatError(f"relation must be a string, got {text!r}")
    p = parse_polynomial(text, variables)
    terms = p.terms()
    if len(terms) != 1 or terms[0][1] != 1:
        raise SpecFormatError(f"relation {text!r} is not a plain monomial")
    return terms[0][0]


def algebra_summary(algebra: WeilAlgebra) -> dict:
    return {
        "dim": algebra.dim,
        "height": algebra.height,
        "width": algebra.width,
        "labels": list(algebra.labels),
    }


# ---------------------------------------------------------------- near points


def near_point_from_json(algebra: WeilAlgebra, data: dict) -> NearPoint:
    """Near point from {"base": [...], "nilparts": [[m-basis coeffs], ...]}.

    Nilpotent parts are coefficient rows over the maximal-ideal basis
    (length dim-1); they may be omitted for the canonical base-point copy.
    """
    if not isinstance(data, dict):
        raise SpecFormatError("near point must be a JSON object")
    base_raw = data.get("base")
    if not isinstance(base_raw, list) or not base_raw:
        raise SpecFormatError("base must be a non-empty list")
    base = [scalar_from_json(x) for x in base_raw]
    s = algebra.dim
    nilparts = None
    if "nilparts" in data:
        rows = data["nilparts"]
        if not isinstance(rows, list) or len(rows) != len(base):
            raise ValueError("nilparts must have one row per base coordinate")
        nilparts = []
        for row in rows:
            if not isinstance(row, list) or len(row) != s - 1:
                raise ValueError(
                    f"each nilpotent part needs {s - 1} coefficients over the ideal basis"
                )
            coeffs = [Fraction(0)] + [scalar_from_json(x) for x in row]
            nilparts.append(algebra.element(coeffs))
    return make_near_point(algebra, base, nilparts)


def near_point_to_json(point: NearPoint) -> dict:
    return {
        "base": [scalar_to_json(b) for b in point.base_point()],
        "nilparts": [
            [scalar_to_json(c) for c in comp.coeffs[1:]] for comp in point.components
        ],
    }


# -------------------------------------------------------------- Taylor oracles


def taylor_oracle_from_json(data: dict) -> TaylorOracle:
    """Oracle from {"base": [...], "partials": {"(2,0)": value, ...}}."""
    if not isinstance(data, dict):
        raise SpecFormatError("oracle must be a JSON object")
    base = data.get("base")
    if not isinstance(base, list) or not base:
        raise SpecFormatError("base must be a non-empty list")
    raw = data.get("partials")
    if not isinstance(raw, dict):
        raise SpecFormatError("partials must be an object keyed by multi-index")
    partials = {}
    for key, value in raw.items():
        partials[_parse_multi_index(key, len(base))] = float(value)
    return TaylorOracle([float(b) for b in base], partials)


def taylor_oracle_to_json(oracle: TaylorOracle) -> dict:
    return {
        "base": list(oracle.base),
        "partials": {
            "(" + ",".join(str(e) for e in alpha) + ")": value
            for alpha, value in sorted(oracle.partials().items())
        },
    }


def _parse_multi_index(key: str, arity: int):
    text = key.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        alpha = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise SpecFormatError(f"bad multi-index {key!r}") from exc
    if len(alpha) != arity:
        raise SpecFormatError(f"multi-index {key!r} does not match base arity {arity}")
    return alpha


# ------------------------------------------------------------------ reports


def derivation_to_json(d: Derivation) -> list[list[str]]:
    """Row-major rational matrix."""
    return [[fraction_to_str(x) for x in row] for row in d.matrix]


def lie_constants_to_json(lie: LieStructure) -> list[list]:
    """Sparse (i, j, k, value) list of the nonzero structure constants."""
    out = []
    for i in range(lie.rank):
        for j in range(lie.rank):
            for k, value in enumerate(lie.constants[i][j]):
                if value != 0:
                    out.append([i, j, k, fraction_to_str(value)])
    return out
