"""Closed-form complex amplitude driving the oscillator's quantum evolution.

The amplitude eps(t) solves eps'' + Omega(t)^2 * eps = 0 with a distinct
closed form in each frequency region.  The pieces are glued so that the value
and the first derivative are continuous at both junctions.  Two conventions
are load-bearing and are cross-checked by the test suite against the
independent integrator:

* the constant phase of the post-switch piece is the switch-window phase
  integral evaluated at the window end, pi/(2*sqrt(1 + alpha*omega)); any
  other constant breaks C1 continuity at the junction,
* the switching-window derivative is the derivative of the closed form, i.e.
  d/dt sqrt(1/omega + alpha*cos(omega*t)^2) carries the factor alpha*omega/2
  in front of sin(2*omega*t); finite differences of the closed form confirm
  it (the Wronskian cannot discriminate here — any real coefficient in that
  slot cancels out of it).

Exactly at a junction instant the switching-window form is used, matching
:func:`switchosc.frequency.region_of`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import RangeError
from .frequency import OscParams, Region, region_of, switch_end, validate_params


@dataclass(frozen=True)
class ClassicalAmplitude:
    """Complex amplitude and its time derivative at one instant.

    For any amplitude produced by :func:`epsilon` the Wronskian
    eps*conj(eps_dot) - eps_dot*conj(eps) equals -2i and |eps| never vanishes.
    """

    t: float
    eps: complex
    eps_dot: complex


@dataclass(frozen=True)
class Envelope:
    """Modulus r = |eps| and its time derivative."""

    r: float
    r_dot: float


def phase_integral(t: float, p: OscParams) -> float:
    """Accumulated phase int_0^t ds / (1/omega + alpha*cos(omega*s)^2).

    Strictly increasing on the switch window.  Evaluated in closed form,
    arctan(tan(omega*t)/sqrt(1+alpha*omega)) / sqrt(1+alpha*omega); the
    endpoint omega*t = pi/2 is a removable singularity of tan with limit
    pi / (2*sqrt(1 + alpha*omega)).

    Raises:
        RangeError: if ``t`` lies outside [0, pi/(2*omega)].
    """
    validate_params(p)
    t_end = switch_end(p)
    if not 0.0 <= t <= t_end:
        raise RangeError(f"t={t!r} outside the switch window [0, {t_end!r}]")
    root = math.sqrt(1.0 + p.alpha * p.omega)
    u = p.omega * t
    if u >= 0.5 * math.pi:
        # endpoint, or one rounding step past it: use the limit value
        return 0.5 * math.pi / root
    return math.atan(math.tan(u) / root) / root


def junction_phase(p: OscParams) -> float:
    """Constant phase of the post-switch piece.

    Equals pi / (2*sqrt(1 + alpha*omega)) analytically; computed by evaluating
    :func:`phase_integral` at the window end so the post-switch piece matches
    the switching piece bit for bit.
    """
    return phase_integral(switch_end(p), p)


def _eps_before(t: float, p: OscParams) -> ClassicalAmplitude:
    aw = p.alpha * p.omega
    w0 = p.omega * math.sqrt(1.0 - aw / (1.0 + aw) ** 2)
    a_coef = math.sqrt((1.0 + aw) / p.omega)
    b_coef = math.sqrt((1.0 + aw) / (p.omega * (1.0 + aw + aw * aw)))
    c, s = math.cos(w0 * t), math.sin(w0 * t)
    return ClassicalAmplitude(
        t=t,
        eps=complex(a_coef * c, b_coef * s),
        eps_dot=complex(-a_coef * w0 * s, b_coef * w0 * c),
    )


def _eps_switching(t: float, p: OscParams) -> ClassicalAmplitude:
    aw = p.alpha * p.omega
    u = p.omega * t
    c = math.cos(u)
    sigma = math.sqrt(1.0 / p.omega + p.alpha * c * c)
    phase = cmath.exp(1j * phase_integral(t, p))
    # sigma*sigma_dot = -(alpha*omega/2)*sin(2*omega*t)
    ss_dot = -0.5 * aw * math.sin(2.0 * u)
    return ClassicalAmplitude(
        t=t,
        eps=sigma * phase,
        eps_dot=phase * complex(ss_dot, 1.0) / sigma,
    )


def _eps_after(t: float, p: OscParams) -> ClassicalAmplitude:
    aw = p.alpha * p.omega
    w3 = p.omega * math.sqrt(1.0 - aw)
    c_coef = 1.0 / math.sqrt(p.omega)
    d_coef = 1.0 / math.sqrt(p.omega * (1.0 - aw))
    dt = t - switch_end(p)
    phase = cmath.exp(1j * junction_phase(p))
    c, s = math.cos(w3 * dt), math.sin(w3 * dt)
    return ClassicalAmplitude(
        t=t,
        eps=phase * complex(c_coef * c, d_coef * s),
        eps_dot=phase * complex(-c_coef * w3 * s, d_coef * w3 * c),
    )


def epsilon(t: float, p: OscParams) -> ClassicalAmplitude:
    """Amplitude and derivative at time ``t`` from the region's closed form.

    Raises:
        DomainError: if ``p`` is invalid.
    """
    region = region_of(t, p)
    if region is Region.BEFORE:
        return _eps_before(t, p)
    if region is Region.SWITCHING:
        return _eps_switching(t, p)
    return _eps_after(t, p)


def wronskian(s: ClassicalAmplitude) -> complex:
    """eps*conj(eps_dot) - eps_dot*conj(eps); equals -2i for solutions."""
    return s.eps * s.eps_dot.conjugate() - s.eps_dot * s.eps.conjugate()


def envelope(t: float, p: OscParams) -> Envelope:
    """Modulus of the amplitude and its analytic slope (no finite differencing).

    r_dot follows from d|eps|^2/dt = 2*Re(conj(eps)*eps_dot) and |eps| > 0.
    """
    amp = epsilon(t, p)
    r = abs(amp.eps)
    r_dot = (amp.eps.conjugate() * amp.eps_dot).real / r
    return Envelope(r=r, r_dot=r_dot)
