"""Exact computer algebra for two-parameter deformed superplane calculi."""

from superplane.algebra import (
    DEFAULT_FUEL,
    AlgebraError,
    ConfluenceFailure,
    ConfluenceReport,
    CriticalPair,
    Expression,
    FuelExhausted,
    GenClass,
    GeneratorDecl,
    IncompletePresentation,
    Involution,
    MissingImage,
    MixedPresentation,
    Morphism,
    NotInvolutive,
    Presentation,
    RewriteRule,
    RuleError,
    adjoin_inverse,
    check_local_confluence,
    critical_pairs,
)
from superplane.parsing import (
    ExprSyntaxError,
    UnknownGenerator,
    fingerprint,
    parse_expression,
    parse_presentation,
    render_expression,
    render_presentation,
)
from superplane.presentations import (
    AlgebraCatalog,
    CompositeElements,
    ConstructionFailure,
    ContractionMap,
    DerivedRelation,
    IncompleteLocalization,
    RoundTripFailure,
    build_catalog,
    catalog_presentations,
    expression_parity,
    localize,
)
from superplane.scalars import (
    DivisionByZero,
    GaussianRational,
    IndeterminateAtPoint,
    Poly,
    PoleAtPoint,
    Scalar,
    poly_gcd,
)
from superplane.verify import (
    CheckResult,
    SuiteReport,
    SUITES,
    overall_ok,
    render_structured,
    render_text,
    run_all,
)

__all__ = [
    "DEFAULT_FUEL",
    "AlgebraCatalog",
    "AlgebraError",
    "CheckResult",
    "CompositeElements",
    "ConfluenceFailure",
    "ConfluenceReport",
    "ConstructionFailure",
    "ContractionMap",
    "CriticalPair",
    "DerivedRelation",
    "DivisionByZero",
    "ExprSyntaxError",
    "Expression",
    "FuelExhausted",
    "GaussianRational",
    "GenClass",
    "GeneratorDecl",
    "IncompleteLocalization",
    "IncompletePresentation",
    "IndeterminateAtPoint",
    "Involution",
    "MissingImage",
    "MixedPresentation",
    "Morphism",
    "NotInvolutive",
    "Poly",
    "PoleAtPoint",
    "Presentation",
    "RewriteRule",
    "RoundTripFailure",
    "RuleError",
    "SUITES",
    "Scalar",
    "SuiteReport",
    "UnknownGenerator",
    "adjoin_inverse",
    "build_catalog",
    "catalog_presentations",
    "check_local_confluence",
    "critical_pairs",
    "expression_parity",
    "fingerprint",
    "localize",
    "overall_ok",
    "parse_expression",
    "parse_presentation",
    "poly_gcd",
    "render_expression",
    "render_presentation",
    "render_structured",
    "render_text",
    "run_all",
]
