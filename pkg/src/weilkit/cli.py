"""Command-line surface: verify algebras, list derivations, print induced
fields, probe the distribution, integrate flows, run the Liouville check.

Exit codes: 0 success, 1 domain failure (failed axiom or assertion, bad
index, invalid point), 2 usage or parse failure.  ``--json`` switches every
command to a deterministic machine-readable report; the default output uses
tangent-bundle notation (ε, y_i, d0) where it applies.  Set WEIL_COLOR=0 to
suppress ANSI colors.

All math happens in the library modules; this file only parses, dispatches
and formats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algebra import AlgebraAxiomError, InfiniteDimensionalError, WeilAlgebra, format_element
from .derivations import derivation_basis, lie_structure
from .foliation import (
    coordinate_values,
    distribution_at,
    flow,
    induced_field,
    involutivity_check,
    liouville_demo,
)
from .jsonio import (
    SpecFormatError,
    algebra_from_spec,
    algebra_summary,
    derivation_to_json,
    lie_constants_to_json,
    near_point_from_json,
    near_point_to_json,
    scalar_to_json,
)
from .nearpoints import NearPoint, chart_variable_names
from .poly import PolynomialParseError


def _use_color() -> bool:
    return sys.stdout.isatty() and os.environ.get("WEIL_COLOR") != "0"


def _passfail(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if _use_color():
        return f"\x1b[32m{word}\x1b[0m" if ok else f"\x1b[31m{word}\x1b[0m"
    return word


def _load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{float(x):.12g}"


def _format_value(components, labels, names) -> str:
    """Render an algebra-valued chart expression: sum of label*(polynomial)."""
    pieces = []
    for label, comp in zip(labels, components):
        if comp.is_zero():
            continue
        body = comp.to_str(names)
        needs_parens = len(comp) > 1 or body.startswith("-")
        rendered = f"({body})" if needs_parens else body
        pieces.append(rendered if label == "1" else f"{label}·{rendered}")
    return " + ".join(pieces) if pieces else "0"


def _format_chart_field(field_values, names) -> str:
    pieces = []
    for name, comp in zip(names, field_values):
        if comp.is_zero():
            continue
        body = comp.to_str(names)
        rendered = f"({body})" if len(comp) > 1 or body.startswith("-") else body
        pieces.append(f"{rendered} ∂/∂{name}")
    return " + ".join(pieces) if pieces else "0"


def _point_lines(point: NearPoint) -> list[str]:
    return [
        f"  ξ{i + 1} = {format_element(comp)}"
        for i, comp in enumerate(point.components)
    ]


# ----------------------------------------------------------------- commands


def _cmd_check(args) -> int:
    report = {"command": "check", "input": args.spec}
    try:
        algebra = algebra_from_spec(_load_json_file(args.spec))
    except (AlgebraAxiomError, InfiniteDimensionalError) as exc:
        name = getattr(exc, "axiom", type(exc).__name__.removesuffix("Error"))
        report.update({"weil": False, "axiom": name, "reason": str(exc), "status": 1})
        if args.json:
            _emit(report)
        else:
            print(f"{name}: {exc}")
        return 1
    report.update({"weil": True, "algebra": algebra_summary(algebra), "status": 0})
    if args.json:
        _emit(report)
    else:
        print(f"Weil: dim {algebra.dim}, height {algebra.height}, width {algebra.width}")
        print(f"basis: {', '.join(algebra.labels)}")
        if algebra.dim > 1:
            print(f"maximal ideal: span({', '.join(algebra.labels[1:])})")
    return 0


def _cmd_derivations(args) -> int:
    algebra = algebra_from_spec(_load_json_file(args.spec))
    basis = derivation_basis(algebra)
    lie = lie_structure(basis)
    if args.json:
        _emit(
            {
                "command": "derivations",
                "input": args.spec,
                "algebra": algebra_summary(algebra),
                "r": len(basis),
                "basis": [derivation_to_json(d) for d in basis],
                "lie_constants": lie_constants_to_json(lie),
                "normalization": "reduced row echelon over row-major matrix entries; "
                "dual-number generator rescaled to ε ↦ -ε",
                "status": 0,
            }
        )
        return 0
    print(f"Weil: dim {algebra.dim}, height {algebra.height}, width {algebra.width}")
    print(f"dim Der(A) = {len(basis)}")
    for idx, d in enumerate(basis):
        print(f"d{idx}:")
        for j in range(1, algebra.dim):
            image = d.apply(algebra.basis_element(j))
            print(f"  d{idx}({algebra.labels[j]}) = {format_element(image)}")
    lines = []
    for i in range(lie.rank):
        for j in range(i + 1, lie.rank):
            terms = [
                f"d{k}" if c == 1 else f"-d{k}" if c == -1 else f"{_format_scalar(c)}·d{k}"
                for k, c in enumerate(lie.constants[i][j])
                if c != 0
            ]
            if terms:
                lines.append(f"  [d{i},d{j}] = {' + '.join(terms)}")
    if lines:
        print("Lie structure (nonzero brackets):")
        for line in lines:
            print(line)
    else:
        print("Lie structure: abelian (all brackets vanish)")
    return 0


def _indexed_field(algebra: WeilAlgebra, index: int, n: int):
    basis = derivation_basis(algebra)
    if not 0 <= index < len(basis):
        raise IndexError(
            f"derivation index {index} out of range (dim Der = {len(basis)})"
        )
    return basis, induced_field(algebra, basis[index], n)


def _cmd_field(args) -> int:
    algebra = algebra_from_spec(_load_json_file(args.spec))
    try:
        basis, fld = _indexed_field(algebra, args.derivation, args.n)
    except IndexError as exc:
        if args.json:
            _emit({"command": "field", "error": str(exc), "status": 1})
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    names = chart_variable_names(algebra, args.n)
    values = coordinate_values(fld)
    chart = [values[i][j] for i in range(args.n) for j in range(algebra.dim)]
    if args.json:
        _emit(
            {
                "command": "field",
                "input": args.spec,
                "algebra": algebra_summary(algebra),
                "n": args.n,
                "derivation": args.derivation,
                "matrix": derivation_to_json(basis[args.derivation]),
                "values": [
                    [comp.to_str(names) for comp in row] for row in values
                ],
                "chart": [comp.to_str(names) for comp in chart],
                "chart_variables": names,
                "status": 0,
            }
        )
        return 0
    print(f"Weil: dim {algebra.dim}, height {algebra.height}, width {algebra.width}")
    i = args.derivation
    for q in range(args.n):
        print(f"d{i}*(x{q + 1}) = {_format_value(values[q], algebra.labels, names)}")
    print(f"chart: d{i}* = {_format_chart_field(chart, names)}")
    return 0


def _cmd_foliation(args) -> int:
    algebra = algebra_from_spec(_load_json_file(args.spec))
    point = near_point_from_json(algebra, _load_json_file(args.point))
    if point.n != args.n:
        raise ValueError(f"point has {point.n} coordinates, expected {args.n}")
    basis = derivation_basis(algebra)
    lie = lie_structure(basis)
    sample = distribution_at(algebra, basis, point, tol=args.tol)
    inv = involutivity_check(lie, args.n)
    if args.json:
        _emit(
            {
                "command": "foliation",
                "input": args.spec,
                "algebra": algebra_summary(algebra),
                "n": args.n,
                "r": len(basis),
                "generators": [
                    [scalar_to_json(x) for x in gen] for gen in sample.generators
                ],
                "rank_samples": [
                    {"point": near_point_to_json(point), "rank": sample.rank}
                ],
                "tolerance": sample.tolerance,
                "bracket_law": inv["pairs"],
                "status": 0,
            }
        )
        return 0
    print(f"Weil: dim {algebra.dim}, height {algebra.height}, width {algebra.width}")
    print(f"dim Der(A) = r = {len(basis)}")
    print("point:")
    for line in _point_lines(point):
        print(line)
    print("generators (chart coordinates):")
    for idx, gen in enumerate(sample.generators):
        print(f"  d{idx}*: ({', '.join(_format_scalar(x) for x in gen)})")
    print(f"rank at point: {sample.rank}")
    if inv["pairs"]:
        print("involutivity ([di*,dj*] = [di,dj]*):")
        for pair in inv["pairs"]:
            print(f"  ({pair['i']},{pair['j']}): {_passfail(pair['pass'])}")
    else:
        print("involutivity: trivial (fewer than two generators)")
    return 0


def _cmd_flow(args) -> int:
    algebra = algebra_from_spec(_load_json_file(args.spec))
    point = near_point_from_json(algebra, _load_json_file(args.point))
    if point.n != args.n:
        raise ValueError(f"point has {point.n} coordinates, expected {args.n}")
    basis = derivation_basis(algebra)
    if not 0 <= args.derivation < len(basis):
        message = f"derivation index {args.derivation} out of range (dim Der = {len(basis)})"
        if args.json:
            _emit({"command": "flow", "error": message, "status": 1})
        else:
            print(f"error: {message}", file=sys.stderr)
        return 1
    moved = flow(algebra, basis[args.derivation], args.t, point)
    drift = max(
        abs(float(a.scalar_part) - float(b.scalar_part))
        for a, b in zip(point.components, moved.components)
    )
    if args.json:
        _emit(
            {
                "command": "flow",
                "input": args.spec,
                "algebra": algebra_summary(algebra),
                "n": args.n,
                "derivation": args.derivation,
                "t": args.t,
                "point": near_point_to_json(point),
                "flowed": near_point_to_json(moved),
                "base_drift": drift,
                "status": 0,
            }
        )
        return 0
    print(f"flow of d{args.derivation}* for t = {args.t:.12g}")
    print("start:")
    for line in _point_lines(point):
        print(line)
    print("end:")
    for line in _point_lines(moved):
        print(line)
    print(f"base point preserved: max drift {drift:.3e}")
    return 0


def _cmd_liouville(args) -> int:
    report = liouville_demo(args.n)
    if args.json:
        _emit({"command": "liouville", **report, "status": 0 if report["pass"] else 1})
    else:
        print(f"Liouville check on the tangent-bundle chart over R^{args.n} "
              f"(dual numbers, dim Der = {report['r']})")
        for assertion in report["assertions"]:
            print(f"{_passfail(assertion['pass'])} {assertion['name']}: {assertion['detail']}")
        verdict = "all assertions pass" if report["pass"] else "some assertions FAILED"
        print(verdict)
    return 0 if report["pass"] else 1


# ------------------------------------------------------------------- parser


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weil",
        description="Weil algebra toolkit: verification, derivations, induced "
        "fields, foliation probes and flows on near-point charts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_spec=True):
        if with_spec:
            p.add_argument("spec", help="algebra spec file (JSON)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p_check = sub.add_parser("check", help="verify the local-algebra axioms")
    add_common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_der = sub.add_parser("derivations", help="basis of the derivation space and its brackets")
    add_common(p_der)
    p_der.set_defaults(func=_cmd_derivations)

    p_field = sub.add_parser("field", help="chart form of one induced vector field")
    add_common(p_field)
    p_field.add_argument("--n", type=_positive_int, required=True, help="manifold dimension")
    p_field.add_argument("--derivation", type=_non_negative_int, default=0, help="basis index")
    p_field.set_defaults(func=_cmd_field)

    p_fol = sub.add_parser("foliation", help="distribution generators, rank and involutivity at a point")
    add_common(p_fol)
    p_fol.add_argument("--n", type=_positive_int, required=True, help="manifold dimension")
    p_fol.add_argument("--point", required=True, help="near point file (JSON)")
    p_fol.add_argument("--tol", type=float, default=None,
                       help="rank tolerance (default: exact for rational points, 1e-9 otherwise)")
    p_fol.set_defaults(func=_cmd_foliation)

    p_flow = sub.add_parser("flow", help="integrate one induced field from a point")
    add_common(p_flow)
    p_flow.add_argument("--n", type=_positive_int, required=True, help="manifold dimension")
    p_flow.add_argument("--derivation", type=_non_negative_int, default=0, help="basis index")
    p_flow.add_argument("--t", type=float, required=True, help="flow time")
    p_flow.add_argument("--point", required=True, help="near point file (JSON)")
    p_flow.set_defaults(func=_cmd_flow)

    p_liou = sub.add_parser("liouville", help="tangent-bundle specialisation check")
    p_liou.add_argument("--n", type=_positive_int, required=True, help="manifold dimension")
    p_liou.add_argument("--json", action="store_true", help="emit a JSON report")
    p_liou.set_defaults(func=_cmd_liouville)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (json.JSONDecodeError, SpecFormatError, PolynomialParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraAxiomError, InfiniteDimensionalError) as exc:
        name = getattr(exc, "axiom", type(exc).__name__.removesuffix("Error"))
        print(f"{name}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
