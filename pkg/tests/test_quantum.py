"""Quantum layer: invariant coefficients, moments, conservation, coherence scan.

Frozen values for the default state z = 1 + 0.2i at t = 0 were derived by hand
from eps(0) = sqrt(3/2) and eps_dot(0) = i*sqrt(2/3):
  <q> = sqrt(3),  <p> = sqrt(2)*0.8164966*0.2 = 0.23094010767585033,
  (sigma_q^2, sigma_p^2, c_qp) = (3/4, 1/3, 0).
"""

import math

import pytest

from switchosc import (
    ClassicalAmplitude,
    DomainError,
    OscParams,
    QuadraticCoefficients,
    RangeError,
    SmusState,
    coherence_scan,
    conserved_pair,
    epsilon,
    first_moments,
    general_first_moments,
    general_second_moments,
    invariant_coefficients,
    omega_of,
    second_moments,
    switch_end,
)

FIG = OscParams()
FLAT = OscParams(alpha=0.0)
Z = 1.0 + 0.2j
TJ = switch_end(FIG)
GRID = [-5.0 + 15.0 * i / 999.0 for i in range(1000)]


class TestInvariantCoefficients:
    def test_static_invariant_starts_as_the_annihilation_operator(self):
        coeffs = invariant_coefficients(0.0, FLAT)
        assert coeffs.u == pytest.approx(1.0 + 0j, abs=1e-14)
        assert coeffs.v == pytest.approx(0.0 + 0j, abs=1e-14)
        assert coeffs.omega0 == 1.0

    def test_reference_frequency_is_the_initial_one(self):
        assert invariant_coefficients(7.0, FIG).omega0 == omega_of(0.0, FIG)

    def test_normalization_identity_everywhere(self):
        worst = max(
            abs(abs(c.u) ** 2 - abs(c.v) ** 2 - 1.0)
            for c in (invariant_coefficients(t, FIG) for t in GRID)
        )
        assert worst < 1e-12


class TestFirstMoments:
    def test_figure_state_at_zero(self):
        fm = first_moments(Z, 0.0, FIG)
        assert fm.q_mean == pytest.approx(math.sqrt(3.0), abs=1e-12)
        assert fm.p_mean == pytest.approx(0.23094010767585033, abs=1e-12)

    def test_vacuum_label_has_zero_means(self):
        fm = first_moments(0.0, 3.0, FIG)
        assert fm.q_mean == 0.0 and fm.p_mean == 0.0

    def test_state_wrapper_is_equivalent_to_a_bare_label(self):
        assert first_moments(SmusState(Z), 1.3, FIG) == first_moments(Z, 1.3, FIG)

    @pytest.mark.parametrize("t", [-4.1, -0.5, 0.0, 0.9, TJ, 2.4, 8.0])
    def test_general_form_specializes_exactly(self, t):
        amp = epsilon(t, FIG)
        coeffs = QuadraticCoefficients(a=1.0 / (2.0 * FIG.m), b=0.0, c=0.0)
        general = general_first_moments(Z, amp, coeffs, FIG.hbar)
        special = first_moments(Z, t, FIG)
        assert general.q_mean == pytest.approx(special.q_mean, rel=1e-14, abs=1e-15)
        assert general.p_mean == pytest.approx(special.p_mean, rel=1e-14, abs=1e-15)

    def test_cross_term_hamiltonian_case(self):
        # a=0.5, b=0.3, unit amplitude: the only regression point with b != 0
        amp = ClassicalAmplitude(t=0.0, eps=1.0 + 0j, eps_dot=1j)
        fm = general_first_moments(1.0 + 0j, amp, QuadraticCoefficients(a=0.5, b=0.3, c=0.0), 1.0)
        assert fm.q_mean == pytest.approx(1.4142135623730951, abs=1e-13)
        assert fm.p_mean == pytest.approx(-0.848528137423857, abs=1e-13)

    def test_nonpositive_a_rejected(self):
        amp = ClassicalAmplitude(t=0.0, eps=1.0 + 0j, eps_dot=1j)
        with pytest.raises(DomainError):
            general_first_moments(Z, amp, QuadraticCoefficients(a=0.0, b=0.0, c=0.0), 1.0)


class TestSecondMoments:
    def test_ideal_squeezed_at_zero(self):
        cov = second_moments(0.0, FIG)
        assert cov.sq2 == pytest.approx(0.75, abs=1e-12)
        assert cov.sp2 == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert cov.cqp == 0.0

    @pytest.mark.parametrize("p", [FLAT, OscParams(alpha=0.0, m=2.0, omega=0.7, hbar=1.3)])
    def test_static_oscillator_keeps_textbook_values(self, p):
        for t in (-3.0, 0.0, 1.7, 9.0):
            cov = second_moments(t, p)
            assert cov.sq2 == pytest.approx(p.hbar / (2.0 * p.m * p.omega), abs=1e-12)
            assert cov.sp2 == pytest.approx(p.hbar * p.m * p.omega / 2.0, abs=1e-12)
            assert abs(cov.cqp) < 1e-12

    def test_window_end_value(self):
        assert second_moments(TJ, FIG).sq2 == pytest.approx(0.5, abs=1e-12)

    def test_determinant_identity_everywhere(self):
        hb4 = 0.25 * FIG.hbar**2
        worst = max(
            abs(c.sq2 * c.sp2 - c.cqp**2 - hb4) for c in (second_moments(t, FIG) for t in GRID)
        )
        assert worst < 1e-10

    @pytest.mark.parametrize("t", [-4.1, -0.5, 0.0, 0.9, TJ, 2.4, 8.0])
    def test_general_form_specializes_exactly(self, t):
        amp = epsilon(t, FIG)
        coeffs = QuadraticCoefficients(a=0.5, b=0.0, c=0.0)
        general = general_second_moments(amp, coeffs, FIG.hbar)
        special = second_moments(t, FIG)
        assert general.sq2 == pytest.approx(special.sq2, rel=1e-14)
        assert general.sp2 == pytest.approx(special.sp2, rel=1e-14)
        assert general.cqp == pytest.approx(special.cqp, rel=1e-14, abs=1e-15)

    def test_stationary_unit_amplitude(self):
        amp = ClassicalAmplitude(t=0.3, eps=complex(math.cos(0.3), math.sin(0.3)),
                                 eps_dot=1j * complex(math.cos(0.3), math.sin(0.3)))
        cov = general_second_moments(amp, QuadraticCoefficients(a=0.5, b=0.0, c=0.0), 1.0)
        assert cov.sq2 == pytest.approx(0.5, abs=1e-13)
        assert cov.sp2 == pytest.approx(0.5, abs=1e-13)
        assert abs(cov.cqp) < 1e-13

    def test_cross_term_cofluctuation(self):
        # frozen envelope (|eps| = 1, slope 0) isolates the b-term: cqp^2 = 0.09
        amp = ClassicalAmplitude(t=0.0, eps=1.0 + 0j, eps_dot=1j)
        cov = general_second_moments(amp, QuadraticCoefficients(a=0.5, b=0.3, c=0.0), 1.0)
        assert cov.cqp**2 == pytest.approx(0.09, abs=1e-14)

    def test_nonpositive_a_rejected(self):
        amp = ClassicalAmplitude(t=0.0, eps=1.0 + 0j, eps_dot=1j)
        with pytest.raises(DomainError):
            general_second_moments(amp, QuadraticCoefficients(a=-1.0, b=0.0, c=0.0), 1.0)


class TestConservedPair:
    def test_vacuum_label_gives_zero(self):
        for t in (-2.0, 0.0, 5.0):
            assert conserved_pair(0.0, t, FIG) == (0.0, 0.0)

    def test_constant_in_time(self):
        q0_a, p0_a = conserved_pair(Z, -3.0, FIG)
        q0_b, p0_b = conserved_pair(Z, 5.0, FIG)
        assert q0_a == pytest.approx(q0_b, abs=1e-9)
        assert p0_a == pytest.approx(p0_b, abs=1e-9)

    def test_initial_scaling(self):
        # at t=0 the amplitude is real, so Q0 reduces to <q>(0)/(sqrt(Omega0)*eps(0))
        q0, _ = conserved_pair(Z, 0.0, FIG)
        fm = first_moments(Z, 0.0, FIG)
        w0 = omega_of(0.0, FIG)
        assert q0 == pytest.approx(fm.q_mean / (math.sqrt(w0) * epsilon(0.0, FIG).eps.real), abs=1e-12)

    def test_closed_form_from_wronskian_algebra(self):
        # Q0 = sqrt(2*hbar/(m*Omega0))*Re z and P0 = sqrt(2*hbar*m*Omega0)*Im z
        w0 = omega_of(0.0, FIG)
        for t in (-4.0, 0.2, 6.0):
            q0, p0 = conserved_pair(Z, t, FIG)
            assert q0 == pytest.approx(math.sqrt(2.0 / w0) * Z.real, abs=1e-12)
            assert p0 == pytest.approx(math.sqrt(2.0 * w0) * Z.imag, abs=1e-12)


class TestCoherenceScan:
    def test_static_oscillator_is_always_coherent(self):
        res = coherence_scan(FLAT, switch_end(FLAT), switch_end(FLAT) + 2.0 * math.pi)
        assert res.always_coherent
        assert res.events == ()
        assert res.sq_ratio == pytest.approx(1.0, abs=1e-12)
        assert res.sp_ratio == pytest.approx(1.0, abs=1e-12)

    def test_events_follow_the_post_switch_envelope_spacing(self):
        spacing = math.pi / (2.0 * math.sqrt(0.5))
        res = coherence_scan(FIG, TJ, TJ + 3.0 * 2.0 * math.pi / math.sqrt(0.5))
        assert len(res.events) >= 4
        times = [e.t for e in res.events]
        assert times[0] == pytest.approx(TJ + spacing, abs=1e-9)
        for a, b in zip(times, times[1:]):
            assert b - a == pytest.approx(spacing, abs=1e-9)

    def test_ratios_alternate_between_the_two_squeeze_values(self):
        res = coherence_scan(FIG, TJ, TJ + 12.0)
        low, high = math.sqrt(0.5), 1.0 / math.sqrt(0.5)
        for k, e in enumerate(res.events):
            sq_expect, sp_expect = (high, low) if k % 2 == 0 else (low, high)
            assert e.sq_ratio == pytest.approx(sq_expect, abs=1e-9)
            assert e.sp_ratio == pytest.approx(sp_expect, abs=1e-9)

    def test_cofluctuation_vanishes_and_heisenberg_holds_at_events(self):
        res = coherence_scan(FIG, TJ, TJ + 12.0)
        for e in res.events:
            assert abs(e.cqp) < 1e-10
            cov = second_moments(e.t, FIG)
            assert cov.sq2 * cov.sp2 == pytest.approx(0.25, abs=1e-10)

    def test_reference_predictions_are_reported(self):
        res = coherence_scan(FIG, TJ, TJ + 12.0)
        for e in res.events:
            assert math.isfinite(e.t_predicted) and e.t_predicted > TJ
            assert e.offset == pytest.approx(abs(e.t - e.t_predicted), abs=1e-15)

    def test_window_validation(self):
        with pytest.raises(RangeError):
            coherence_scan(FIG, 0.0, 5.0)
        with pytest.raises(RangeError):
            coherence_scan(FIG, TJ + 1.0, TJ + 1.0)
