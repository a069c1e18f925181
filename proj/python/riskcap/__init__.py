"""Capital requirements with general eligible assets on finite scenario spaces."""

from ._core import (
    AcceptanceSpec,
    EligibleAsset,
    ParseError,
    PricingFunctional,
    ScenarioSpace,
    ValidationError,
    axiom_suite,
    cash_subadditivity_report,
    check_numeraire_identity,
    check_quasiconvexity,
    dual_rho,
    dual_vertices,
    is_acceptable,
    load_scenarios,
    rho,
    rho_illiquid,
    tvar_value,
    var_value,
)

__all__ = [
    "AcceptanceSpec",
    "EligibleAsset",
    "ParseError",
    "PricingFunctional",
    "ScenarioSpace",
    "ValidationError",
    "axiom_suite",
    "cash_subadditivity_report",
    "check_numeraire_identity",
    "check_quasiconvexity",
    "dual_rho",
    "dual_vertices",
    "is_acceptable",
    "load_scenarios",
    "rho",
    "rho_illiquid",
    "tvar_value",
    "var_value",
]

__version__ = "0.1.0"
