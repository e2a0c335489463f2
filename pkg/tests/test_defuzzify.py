"""Tests for the defuzzified demand and leakage-fraction quantities."""

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzy_eoq import (
    DomainError,
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
from fuzzy_eoq.sensitivity import load_reference_table

from conftest import random_params, random_spreads

# frozen from a high-precision evaluation of the antiderivative
ZETA_100_100_1_1 = 0.01663775852707594
ZETA_150_200_1_1 = 0.01665802942376451
ZETA_NEAR_CRISP = 0.01639344262296175
PSI_OVER_ETA = 0.01639344262295082


@st.composite
def valid_cases(draw):
    phi = draw(st.floats(50, 5000))
    psi = phi * draw(st.floats(0.005, 0.5))
    spreads = FuzzySpreads(
        d1=phi * draw(st.floats(0.01, 0.95)),
        d2=phi * draw(st.floats(0.01, 0.95)),
        d3=psi * draw(st.floats(0.01, 0.95)),
        d4=psi * draw(st.floats(0.01, 0.95)),
    )
    return phi, psi, spreads


class TestSpreads:
    def test_positivity_enforced(self):
        for bad in ("d1", "d2", "d3", "d4"):
            kwargs = {"d1": 1.0, "d2": 1.0, "d3": 1.0, "d4": 1.0, bad: 0.0}
            with pytest.raises(DomainError, match=f"{bad} > 0"):
                FuzzySpreads(**kwargs)

    def test_combined_spreads(self):
        sp = FuzzySpreads(100.0, 200.0, 1.0, 2.0)
        assert sp.d5 == 101.0
        assert sp.d6 == 202.0

    def test_bounds_against_rates(self):
        sp = FuzzySpreads(100.0, 100.0, 1.0, 1.0)
        sp.validate_against(phi=600.0, psi=10.0)
        with pytest.raises(DomainError, match="d1 < phi"):
            FuzzySpreads(700.0, 100.0, 1.0, 1.0).validate_against(phi=600.0)
        with pytest.raises(DomainError, match="d3 < psi"):
            FuzzySpreads(100.0, 100.0, 15.0, 1.0).validate_against(phi=600.0, psi=10.0)

    def test_relax_bounds_lifts_only_upper_spreads(self):
        high_up = FuzzySpreads(100.0, 900.0, 1.0, 12.0)
        with pytest.raises(DomainError, match="d2 < phi"):
            high_up.validate_against(phi=600.0, psi=10.0)
        high_up.validate_against(phi=600.0, psi=10.0, relax_bounds=True)
        low_down = FuzzySpreads(100.0, 100.0, 15.0, 1.0)
        with pytest.raises(DomainError, match="d3 < psi"):
            low_down.validate_against(phi=600.0, psi=10.0, relax_bounds=True)

    def test_fuzzy_rate_constructors(self):
        sp = FuzzySpreads(100.0, 100.0, 1.0, 1.0)
        assert demand_fuzzy(600.0, sp).signed_distance() == 600.0
        assert leakage_fuzzy(10.0, sp).signed_distance() == 10.0


class TestDelta:
    def test_reference_blocks(self):
        assert delta_signed_demand(600.0, FuzzySpreads(100, 100, 1, 1)) == 600.0
        assert delta_signed_demand(600.0, FuzzySpreads(150, 200, 1, 1)) == 612.5
        assert delta_signed_demand(600.0, FuzzySpreads(200, 300, 1, 1)) == 625.0

    def test_equals_signed_distance_of_fuzzy_demand(self):
        sp = FuzzySpreads(150.0, 200.0, 1.0, 1.0)
        assert delta_signed_demand(600.0, sp) == demand_fuzzy(600.0, sp).signed_distance()

    def test_bound_violation_raises(self):
        with pytest.raises(DomainError, match="d1 < phi"):
            delta_signed_demand(600.0, FuzzySpreads(700.0, 100.0, 1.0, 1.0))


class TestZetaRoutes:
    def test_closed_form_frozen_values(self):
        got = zeta_closed_form(600.0, 10.0, FuzzySpreads(100, 100, 1, 1))
        assert math.isclose(got, ZETA_100_100_1_1, rel_tol=1e-12)
        got = zeta_closed_form(600.0, 10.0, FuzzySpreads(150, 200, 1, 1))
        assert math.isclose(got, ZETA_150_200_1_1, rel_tol=1e-12)

    def test_quadrature_frozen_values(self):
        got = zeta_quadrature(600.0, 10.0, FuzzySpreads(100, 100, 1, 1))
        assert math.isclose(got, ZETA_100_100_1_1, rel_tol=1e-10)

    def test_routes_agree_on_reference_rows(self):
        for row in load_reference_table():
            closed = zeta_closed_form(600.0, 10.0, row.spreads)
            quad = zeta_quadrature(600.0, 10.0, row.spreads)
            assert math.isclose(closed, quad, rel_tol=1e-8)

    def test_routes_agree_on_random_inputs(self):
        rng = random.Random(421)
        for _ in range(200):
            p = random_params(rng)
            sp = random_spreads(rng, p.phi, p.psi)
            closed = zeta_closed_form(p.phi, p.psi, sp)
            quad = zeta_quadrature(p.phi, p.psi, sp)
            assert math.isclose(closed, quad, rel_tol=1e-8)

    @given(valid_cases())
    def test_positive_everywhere(self, case):
        phi, psi, spreads = case
        assert zeta_closed_form(phi, psi, spreads) > 0.0

    @given(valid_cases())
    def test_within_cut_hull(self, case):
        # the mean of the cut midpoints cannot leave the level-0 hull
        phi, psi, spreads = case
        cut_lo, cut_hi = leak_fraction_cuts(phi, psi, spreads)
        value = zeta_closed_form(phi, psi, spreads)
        assert cut_lo(0.0) - 1e-12 <= value <= cut_hi(0.0) + 1e-12

    def test_cut_ordering_and_peak(self):
        cut_lo, cut_hi = leak_fraction_cuts(600.0, 10.0, FuzzySpreads(100, 100, 7, 6))
        for k in range(11):
            a = k / 10.0
            assert cut_lo(a) <= cut_hi(a) + 1e-15
        assert math.isclose(cut_lo(1.0), 10.0 / 610.0, rel_tol=1e-12)
        assert math.isclose(cut_hi(1.0), 10.0 / 610.0, rel_tol=1e-12)

    def test_near_crisp_limit_approaches_fraction(self):
        sp = FuzzySpreads(6e-4, 6e-4, 1e-5, 1e-5)
        got = zeta_closed_form(600.0, 10.0, sp)
        assert math.isclose(got, ZETA_NEAR_CRISP, rel_tol=1e-9)
        assert abs(got - PSI_OVER_ETA) < 1e-6

    def test_bound_violation_raises(self):
        with pytest.raises(DomainError, match="d3 < psi"):
            zeta_closed_form(600.0, 10.0, FuzzySpreads(100.0, 100.0, 15.0, 1.0))
        with pytest.raises(DomainError, match="d4 < psi"):
            zeta_quadrature(600.0, 10.0, FuzzySpreads(100.0, 100.0, 1.0, 15.0))

    def test_relax_bounds_passthrough(self):
        sp = FuzzySpreads(100.0, 100.0, 1.0, 15.0)
        closed = zeta_closed_form(600.0, 10.0, sp, relax_bounds=True)
        quad = zeta_quadrature(600.0, 10.0, sp, relax_bounds=True)
        assert math.isclose(closed, quad, rel_tol=1e-8)
        assert closed > 0.0


class TestDispatch:
    def test_normal_regime_uses_closed_form(self):
        sp = FuzzySpreads(100.0, 100.0, 1.0, 1.0)
        assert not uses_quadrature_fallback(600.0, 10.0, sp)
        assert zeta(600.0, 10.0, sp) == zeta_closed_form(600.0, 10.0, sp)

    def test_near_singular_regime_uses_quadrature(self):
        # combined spreads below 1e-8 of the combined rate
        sp = FuzzySpreads(3e-6, 100.0, 1e-7, 1.0)
        assert uses_quadrature_fallback(600.0, 10.0, sp)
        assert zeta(600.0, 10.0, sp) == zeta_quadrature(600.0, 10.0, sp)

    def test_fallback_value_is_sane_where_closed_form_cancels(self):
        sp = FuzzySpreads(3e-6, 100.0, 1e-7, 1.0)
        got = zeta(600.0, 10.0, sp)
        cut_lo, cut_hi = leak_fraction_cuts(600.0, 10.0, sp)
        assert cut_lo(0.0) <= got <= cut_hi(0.0)
