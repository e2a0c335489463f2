"""Lot-size optimization for an inventory that loses stock to leakage.

Crisp model: stock depletes at the demand rate ``phi`` plus a leakage
rate ``psi``, but only the demanded share earns anything, so ordering
lots of size q costs, per unit time,

    q h / 2  +  phi s / q  +  psi q h / (2 (phi + psi))

(plain holding, ordering, and the holding surcharge attributable to the
leaked share).  The fuzzy model keeps this shape and replaces phi by the
defuzzified demand ``delta`` and the leakage fraction psi / (phi + psi)
by its defuzzified counterpart ``zeta``:

    Z(q) = q h / 2 + (s / q) delta + (q h / 2) zeta

Both versions are minimized in closed form by balancing the holding-like
terms against the ordering term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .defuzzify import FuzzySpreads, delta_signed_demand, zeta
from .errors import DomainError
from .fuzzy import _require_finite


@dataclass(frozen=True)
class CrispParams:
    """Crisp model inputs: demand rate, leakage rate, holding and setup cost."""

    phi: float
    psi: float
    h: float
    s: float

    def __post_init__(self) -> None:
        for name in ("phi", "psi", "h", "s"):
            _require_finite(name, getattr(self, name))
        if not self.phi > 0.0:
            raise DomainError(f"phi > 0 violated (got {self.phi!r})")
        if not self.psi >= 0.0:
            raise DomainError(f"psi >= 0 violated (got {self.psi!r})")
        if not self.h > 0.0:
            raise DomainError(f"h > 0 violated (got {self.h!r})")
        if not self.s > 0.0:
            raise DomainError(f"s > 0 violated (got {self.s!r})")


@dataclass(frozen=True)
class CycleQuantities:
    """Timing of one replenishment cycle and the stock lost during it.

    ``t`` is the cycle length a lot would last if leakage served demand,
    ``t1`` the time until the lot is actually exhausted, ``leaked`` the
    stock lost to leakage over the cycle.
    """

    t: float
    t1: float
    leaked: float

    def __post_init__(self) -> None:
        for name in ("t", "t1", "leaked"):
            _require_finite(name, getattr(self, name))
        if not self.t1 <= self.t:
            raise DomainError(f"t1 <= t violated (got t1={self.t1!r}, t={self.t!r})")
        if not self.leaked >= 0.0:
            raise DomainError(f"leaked >= 0 violated (got {self.leaked!r})")


@dataclass(frozen=True)
class SolutionRecord:
    """One solved instance: defuzzified inputs, the optimum, and the
    percent deviations from the crisp baseline."""

    delta: float
    zeta: float
    q_star: float
    z_star: float
    rel_q: float
    rel_z: float

    def __post_init__(self) -> None:
        for name in ("delta", "zeta", "q_star", "z_star", "rel_q", "rel_z"):
            _require_finite(name, getattr(self, name))
        if not self.q_star > 0.0:
            raise DomainError(f"q_star > 0 violated (got {self.q_star!r})")
        if not self.z_star > 0.0:
            raise DomainError(f"z_star > 0 violated (got {self.z_star!r})")

    def to_dict(self) -> dict[str, float]:
        return {
            "delta": self.delta,
            "zeta": self.zeta,
            "q_star": self.q_star,
            "z_star": self.z_star,
            "rel_q": self.rel_q,
            "rel_z": self.rel_z,
        }


def crisp_total_cost(q: float, p: CrispParams) -> float:
    """Average cost per unit time of ordering crisp lots of size q."""
    _require_finite("q", q)
    if not q > 0.0:
        raise DomainError(f"q > 0 violated (got {q!r})")
    eta = p.phi + p.psi
    return q * p.h / 2.0 + p.phi * p.s / q + p.psi * q * p.h / (2.0 * eta)


def lot_cost(q: float, s: float, h: float, delta: float, zeta_value: float) -> float:
    """Cost per unit time of lot size q given defuzzified inputs.

    ``delta`` and ``zeta_value`` normally come from the defuzzify module
    but may be replayed from any external source; see ``fuzzy_cost`` for
    the spread-driven wrapper.
    """
    _require_finite("q", q)
    if not q > 0.0:
        raise DomainError(f"q > 0 violated (got {q!r})")
    return q * h / 2.0 + (s / q) * delta + (q * h / 2.0) * zeta_value


def optimal_lot_size(s: float, h: float, delta: float, zeta_value: float) -> float:
    """Cost-minimizing lot size sqrt(2 s delta / (h (1 + zeta))).

    Stationary point of ``lot_cost`` in q; the second derivative
    2 s delta / q^3 is strictly positive there, so it is the minimum.
    """
    for name, value in (("s", s), ("h", h), ("delta", delta)):
        _require_finite(name, value)
        if not value > 0.0:
            raise DomainError(f"{name} > 0 violated (got {value!r})")
    _require_finite("zeta", zeta_value)
    if not 1.0 + zeta_value > 0.0:
        raise DomainError(f"1 + zeta > 0 violated (got zeta={zeta_value!r})")
    return math.sqrt(2.0 * s * delta / (h * (1.0 + zeta_value)))


def crisp_optimal(p: CrispParams) -> SolutionRecord:
    """Closed-form minimizer of the crisp cost.

    Equivalent to ``optimal_lot_size`` with delta = phi and
    zeta = psi / (phi + psi); expanding gives the familiar
    sqrt(2 s phi (phi + psi) / (h (phi + 2 psi))).  The relative columns
    are zero by definition: this record is its own baseline.
    """
    eta = p.phi + p.psi
    zeta_value = p.psi / eta
    q = optimal_lot_size(p.s, p.h, p.phi, zeta_value)
    return SolutionRecord(
        delta=p.phi,
        zeta=zeta_value,
        q_star=q,
        z_star=crisp_total_cost(q, p),
        rel_q=0.0,
        rel_z=0.0,
    )


def cycle_quantities(q: float, p: CrispParams) -> CycleQuantities:
    """Cycle length, exhaustion time, and leaked stock for lot size q."""
    _require_finite("q", q)
    if not q > 0.0:
        raise DomainError(f"q > 0 violated (got {q!r})")
    eta = p.phi + p.psi
    return CycleQuantities(t=q / p.phi, t1=q / eta, leaked=p.psi * q / eta)


def truncated_baseline(record: SolutionRecord) -> SolutionRecord:
    """The crisp baseline truncated to whole units.

    Matches the published reference values, which report the worked
    example's optimum as 108 units at cost 1104 (truncation, not
    arithmetic rounding: the exact values are 108.657 and 1104.388).
    """
    return SolutionRecord(
        delta=record.delta,
        zeta=record.zeta,
        q_star=float(math.floor(record.q_star)),
        z_star=float(math.floor(record.z_star)),
        rel_q=record.rel_q,
        rel_z=record.rel_z,
    )


def rel_metrics(fuzzy: SolutionRecord, crisp: SolutionRecord) -> tuple[float, float]:
    """Percent deviations of a fuzzy optimum from a crisp baseline."""
    if not crisp.q_star > 0.0:
        raise DomainError(f"crisp.q_star > 0 violated (got {crisp.q_star!r})")
    if not crisp.z_star > 0.0:
        raise DomainError(f"crisp.z_star > 0 violated (got {crisp.z_star!r})")
    rel_q = (fuzzy.q_star - crisp.q_star) / crisp.q_star * 100.0
    rel_z = (fuzzy.z_star - crisp.z_star) / crisp.z_star * 100.0
    return rel_q, rel_z


def fuzzy_cost(
    q: float,
    p: CrispParams,
    spreads: FuzzySpreads,
    *,
    relax_bounds: bool = False,
) -> float:
    """Defuzzified cost per unit time of lot size q under fuzzy rates."""
    d = delta_signed_demand(p.phi, spreads, relax_bounds=relax_bounds)
    z = zeta(p.phi, p.psi, spreads, relax_bounds=relax_bounds)
    return lot_cost(q, p.s, p.h, d, z)


def fuzzy_optimal(
    p: CrispParams,
    spreads: FuzzySpreads,
    *,
    paper_baseline: bool = False,
    relax_bounds: bool = False,
) -> SolutionRecord:
    """Minimize the defuzzified cost and report deviations from crisp.

    With ``paper_baseline`` the deviations are taken against the crisp
    optimum truncated to whole units, the baseline the published
    reference table used; otherwise against the exact crisp optimum.
    """
    d = delta_signed_demand(p.phi, spreads, relax_bounds=relax_bounds)
    z = zeta(p.phi, p.psi, spreads, relax_bounds=relax_bounds)
    q = optimal_lot_size(p.s, p.h, d, z)
    assert 2.0 * p.s * d / q**3 > 0.0  # convexity at the stationary point
    z_star = lot_cost(q, p.s, p.h, d, z)
    baseline = crisp_optimal(p)
    if paper_baseline:
        baseline = truncated_baseline(baseline)
    partial = SolutionRecord(
        delta=d, zeta=z, q_star=q, z_star=z_star, rel_q=0.0, rel_z=0.0
    )
    rel_q, rel_z = rel_metrics(partial, baseline)
    return SolutionRecord(
        delta=d, zeta=z, q_star=q, z_star=z_star, rel_q=rel_q, rel_z=rel_z
    )
