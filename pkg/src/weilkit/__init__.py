"""Weil algebras, near-point charts, derivation Lie algebras, and the
foliations their induced vector fields generate.

Everything exact is computed over ``fractions.Fraction``; floating point
appears only in flow integration (matrix exponentials).
"""

from .algebra import (
    AlgebraAxiomError,
    AlgebraElement,
    InfiniteDimensionalError,
    NoUnitError,
    NotAssociativeError,
    NotCommutativeError,
    NotLocalError,
    NotNilpotentError,
    WeilAlgebra,
    dual_numbers,
    eval_in_algebra,
    from_structure_constants,
    monomial_quotient_algebra,
    split_scalar_nilpotent,
    truncated_polynomial_algebra,
)
from .derivations import (
    Automorphism,
    Derivation,
    LieStructure,
    NotClosedError,
    bracket,
    derivation_basis,
    exp_flow,
    jacobi_residual,
    leibniz_residual,
    lie_structure,
    module_scale,
    multiplicativity_residual,
)
from .foliation import (
    DistributionSample,
    InducedField,
    chart_field,
    chart_flatten,
    coordinate_values,
    distribution_at,
    field_apply,
    flow,
    induced_field,
    involutivity_check,
    leaf_sample,
    liouville_demo,
)
from .nearpoints import (
    BasePointMismatchError,
    ChartVectorField,
    MissingPartialError,
    NearPoint,
    NonzeroScalarPartError,
    TaylorOracle,
    apply_chart_field,
    chart_components,
    chart_variable_names,
    field_from_values,
    make_near_point,
)
from .poly import Polynomial, PolynomialParseError, grlex_key, monomial_str, parse_polynomial

__all__ = [
    "AlgebraAxiomError",
    "AlgebraElement",
    "Automorphism",
    "BasePointMismatchError",
    "ChartVectorField",
    "Derivation",
    "DistributionSample",
    "InducedField",
    "InfiniteDimensionalError",
    "LieStructure",
    "MissingPartialError",
    "NearPoint",
    "NoUnitError",
    "NonzeroScalarPartError",
    "NotAssociativeError",
    "NotClosedError",
    "NotCommutativeError",
    "NotLocalError",
    "NotNilpotentError",
    "Polynomial",
    "PolynomialParseError",
    "TaylorOracle",
    "WeilAlgebra",
    "apply_chart_field",
    "bracket",
    "chart_components",
    "chart_field",
    "chart_flatten",
    "chart_variable_names",
    "coordinate_values",
    "derivation_basis",
    "distribution_at",
    "dual_numbers",
    "eval_in_algebra",
    "exp_flow",
    "field_apply",
    "field_from_values",
    "flow",
    "from_structure_constants",
    "grlex_key",
    "induced_field",
    "involutivity_check",
    "jacobi_residual",
    "leaf_sample",
    "leibniz_residual",
    "lie_structure",
    "liouville_demo",
    "make_near_point",
    "module_scale",
    "monomial_quotient_algebra",
    "monomial_str",
    "multiplicativity_residual",
    "parse_polynomial",
    "split_scalar_nilpotent",
    "truncated_polynomial_algebra",
]

__version__ = "0.1.0"
