"""Batch solves over spread grids and an audit of the shipped results table.

The package bundles the published sensitivity table for the worked
example (demand 600, leakage 10, holding cost 10, setup cost 100):
eighteen spread combinations with the reported defuzzified demand, mean
leakage fraction, optimum, and percent deviations from a whole-unit
crisp baseline.

``run_sweep`` re-solves any sequence of spread rows, collecting per-row
failures instead of aborting.  ``audit_table`` re-derives the table and
compares column by column.  Two modes:

* default: every column recomputed from the spreads by this package's
  own pipeline (exact crisp baseline);
* ``paper_baseline``: the published mean-leakage-fraction values are
  replayed through the lot-size formula, and deviations are taken
  against the truncated baseline the published table used.  In this mode
  the lot-size, cost, and rel-lot-size columns carry hard tolerances.

The published zeta column disagrees in sign and magnitude with both
independent routes computed here; the audit reports that per row instead
of failing, and flags each non-positive published value as contradicting
the positivity of the recomputed fraction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .defuzzify import FuzzySpreads, delta_signed_demand, zeta
from .errors import DomainError
from .model import (
    CrispParams,
    SolutionRecord,
    crisp_optimal,
    fuzzy_optimal,
    lot_cost,
    optimal_lot_size,
    truncated_baseline,
)

REFERENCE_PARAMS = CrispParams(phi=600.0, psi=10.0, h=10.0, s=100.0)

AUDIT_COLUMNS = ("delta", "zeta", "q_star", "z_star", "rel_q", "rel_z")

# Informational cells count as deviations above this floor.
DEVIATION_FLOOR = 1e-9

_DELTA_TOL = 1e-9
_REPLAY_REL_TOL = 0.005
_REL_Q_TOL = 0.01


@dataclass(frozen=True)
class SweepSpec:
    """A batch of spread rows to solve under one parameter set."""

    params: CrispParams
    rows: tuple[FuzzySpreads, ...]


@dataclass(frozen=True)
class SweepRow:
    """Outcome for one sweep row: a record, or the error that stopped it."""

    index: int
    spreads: FuzzySpreads
    record: Optional[SolutionRecord]
    error: Optional[str]


def run_sweep(
    spec: SweepSpec,
    *,
    paper_baseline: bool = False,
    relax_bounds: bool = False,
) -> tuple[SweepRow, ...]:
    """Solve every row of ``spec`` in order.

    A row whose spreads violate the bounds for ``spec.params`` yields a
    ``SweepRow`` carrying the error message; remaining rows still run.
    """
    out = []
    for i, spreads in enumerate(spec.rows):
        try:
            record = fuzzy_optimal(
                spec.params,
                spreads,
                paper_baseline=paper_baseline,
                relax_bounds=relax_bounds,
            )
        except DomainError as exc:
            out.append(SweepRow(index=i, spreads=spreads, record=None, error=str(exc)))
        else:
            out.append(SweepRow(index=i, spreads=spreads, record=record, error=None))
    return tuple(out)


@dataclass(frozen=True)
class ReferenceRow:
    """One published table row, exactly as printed."""

    d1: float
    d2: float
    d3: float
    d4: float
    delta: float
    zeta: float
    q_star: float
    z_star: float
    rel_q: float
    rel_z: float

    @property
    def spreads(self) -> FuzzySpreads:
        return FuzzySpreads(self.d1, self.d2, self.d3, self.d4)

    def value(self, column: str) -> float:
        if column not in AUDIT_COLUMNS:
            raise DomainError(f"unknown audit column {column!r}")
        return getattr(self, column)


@lru_cache(maxsize=1)
def load_reference_table() -> tuple[ReferenceRow, ...]:
    """The published sensitivity table bundled with the package."""
    text = resources.files(__package__).joinpath("data/reference_table.csv").read_text()
    rows = []
    for raw in csv.DictReader(text.splitlines()):
        rows.append(ReferenceRow(**{key: float(val) for key, val in raw.items()}))
    return tuple(rows)


@dataclass(frozen=True)
class AuditCell:
    """One recomputed-vs-published comparison.

    ``tolerance`` of None marks the cell informational: its deviation is
    reported but never fails the audit.  Otherwise the tolerance applies
    to the relative deviation when ``relative`` is set, else to the
    absolute one.
    """

    column: str
    recomputed: float
    paper: float
    tolerance: Optional[float]
    relative: bool

    @property
    def abs_dev(self) -> float:
        return abs(self.recomputed - self.paper)

    @property
    def rel_dev(self) -> float:
        if self.paper == 0.0:
            return float("inf") if self.abs_dev > 0.0 else 0.0
        return self.abs_dev / abs(self.paper)

    @property
    def passed(self) -> Optional[bool]:
        if self.tolerance is None:
            return None
        dev = self.rel_dev if self.relative else self.abs_dev
        return dev <= self.tolerance


@dataclass(frozen=True)
class AuditRow:
    index: int
    spreads: FuzzySpreads
    cells: tuple[AuditCell, ...]
    zeta_sign_contradiction: bool

    def cell(self, column: str) -> AuditCell:
        for cell in self.cells:
            if cell.column == column:
                return cell
        raise DomainError(f"unknown audit column {column!r}")


@dataclass(frozen=True)
class TableAudit:
    """Full audit: one row per published row, one cell per compared column."""

    params: CrispParams
    paper_baseline: bool
    rows: tuple[AuditRow, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != 18:
            raise DomainError(f"expected 18 audit rows (got {len(self.rows)})")
        for row in self.rows:
            if tuple(cell.column for cell in row.cells) != AUDIT_COLUMNS:
                raise DomainError(f"row {row.index} does not cover {AUDIT_COLUMNS}")

    @property
    def hard_pass(self) -> bool:
        return all(
            cell.passed for row in self.rows for cell in row.cells
            if cell.passed is not None
        )

    @property
    def deviations(self) -> tuple[tuple[int, str], ...]:
        """(row index, column) of informational cells that do not reproduce."""
        return tuple(
            (row.index, cell.column)
            for row in self.rows
            for cell in row.cells
            if cell.tolerance is None and cell.abs_dev > DEVIATION_FLOOR
        )

    @property
    def sign_contradictions(self) -> tuple[int, ...]:
        return tuple(row.index for row in self.rows if row.zeta_sign_contradiction)


def audit_table(
    params: Optional[CrispParams] = None,
    *,
    paper_baseline: bool = False,
) -> TableAudit:
    """Re-derive the published table and compare it column by column.

    The defuzzified-demand column must reproduce to 1e-9 in every mode.
    With ``paper_baseline`` the published zeta values are replayed through
    the lot-size and cost formulas and those columns, plus the relative
    lot-size column against the truncated baseline, become hard checks.
    The zeta column itself is always informational: it does not reproduce
    from the spreads, and each non-positive published value is flagged as
    a sign contradiction (the recomputed fraction is strictly positive).
    """
    p = REFERENCE_PARAMS if params is None else params
    baseline = crisp_optimal(p)
    if paper_baseline:
        baseline = truncated_baseline(baseline)
    audit_rows = []
    for i, ref in enumerate(load_reference_table()):
        spreads = ref.spreads
        if paper_baseline:
            d = delta_signed_demand(p.phi, spreads)
            z = zeta(p.phi, p.psi, spreads)
            q = optimal_lot_size(p.s, p.h, d, ref.zeta)
            z_star = lot_cost(q, p.s, p.h, d, ref.zeta)
            rel_q = (q - baseline.q_star) / baseline.q_star * 100.0
            rel_z = (z_star - baseline.z_star) / baseline.z_star * 100.0
            cells = (
                AuditCell("delta", d, ref.delta, _DELTA_TOL, False),
                AuditCell("zeta", z, ref.zeta, None, False),
                AuditCell("q_star", q, ref.q_star, _REPLAY_REL_TOL, True),
                AuditCell("z_star", z_star, ref.z_star, _REPLAY_REL_TOL, True),
                AuditCell("rel_q", rel_q, ref.rel_q, _REL_Q_TOL, False),
                AuditCell("rel_z", rel_z, ref.rel_z, None, False),
            )
        else:
            rec = fuzzy_optimal(p, spreads)
            cells = (
                AuditCell("delta", rec.delta, ref.delta, _DELTA_TOL, False),
                AuditCell("zeta", rec.zeta, ref.zeta, None, False),
                AuditCell("q_star", rec.q_star, ref.q_star, None, False),
                AuditCell("z_star", rec.z_star, ref.z_star, None, False),
                AuditCell("rel_q", rec.rel_q, ref.rel_q, None, False),
                AuditCell("rel_z", rec.rel_z, ref.rel_z, None, False),
            )
        audit_rows.append(
            AuditRow(
                index=i,
                spreads=spreads,
                cells=cells,
                zeta_sign_contradiction=ref.zeta <= 0.0,
            )
        )
    return TableAudit(params=p, paper_baseline=paper_baseline, rows=tuple(audit_rows))
