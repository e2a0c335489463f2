"""Lot sizing for leaky inventories under triangular fuzzy rates.

The package models a stock point whose inventory is drained by demand and
by a leakage rate, both of which may be known only fuzzily.  Fuzzy demand
and leakage are triangular fuzzy numbers; signed-distance defuzzification
turns them into two scalars (a mean demand and a mean leakage fraction)
that slot into a closed-form lot-size rule.  Every closed form ships with
an independent quadrature route that validates it, a sweep runner for
spread grids, and an audit of the bundled published results table.
"""

from .defuzzify import (
    NEAR_SINGULAR_RATIO,
    FuzzySpreads,
    delta_signed_demand,
    demand_fuzzy,
    leak_fraction_cuts,
    leakage_fuzzy,
    uses_quadrature_fallback,
    zeta,
    zeta_closed_form,
    zeta_quadrature,
)
from .errors import DomainError, QuadratureError
from .fuzzy import (
    AlphaLevel,
    Interval,
    TriangularFuzzyNumber,
    signed_distance_quadrature,
)
from .model import (
    CrispParams,
    CycleQuantities,
    SolutionRecord,
    crisp_optimal,
    crisp_total_cost,
    cycle_quantities,
    fuzzy_cost,
    fuzzy_optimal,
    lot_cost,
    optimal_lot_size,
    rel_metrics,
    truncated_baseline,
)
from .quadrature import adaptive_simpson
from .sensitivity import (
    AUDIT_COLUMNS,
    REFERENCE_PARAMS,
    AuditCell,
    AuditRow,
    ReferenceRow,
    SweepRow,
    SweepSpec,
    TableAudit,
    audit_table,
    load_reference_table,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaLevel",
    "AuditCell",
    "AuditRow",
    "AUDIT_COLUMNS",
    "CrispParams",
    "CycleQuantities",
    "DomainError",
    "FuzzySpreads",
    "Interval",
    "NEAR_SINGULAR_RATIO",
    "QuadratureError",
    "REFERENCE_PARAMS",
    "ReferenceRow",
    "SolutionRecord",
    "SweepRow",
    "SweepSpec",
    "TableAudit",
    "TriangularFuzzyNumber",
    "adaptive_simpson",
    "audit_table",
    "crisp_optimal",
    "crisp_total_cost",
    "cycle_quantities",
    "delta_signed_demand",
    "demand_fuzzy",
    "fuzzy_cost",
    "fuzzy_optimal",
    "leak_fraction_cuts",
    "leakage_fuzzy",
    "load_reference_table",
    "lot_cost",
    "optimal_lot_size",
    "rel_metrics",
    "run_sweep",
    "signed_distance_quadrature",
    "truncated_baseline",
    "uses_quadrature_fallback",
    "zeta",
    "zeta_closed_form",
    "zeta_quadrature",
    "__version__",
]
