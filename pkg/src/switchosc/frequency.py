"""Piecewise switched frequency of the oscillator and its Hamiltonian coefficients.

The frequency is constant in the past, decreases smoothly over the window
[0, pi/(2*omega)], and is constant (and lower) afterwards.  Every other module
evaluates the switch through :func:`omega_of`, so the three-region bookkeeping
lives in one place.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class Region(enum.Enum):
    """Branch selector for the switched frequency."""

    BEFORE = "before"
    SWITCHING = "switching"
    AFTER = "after"


@dataclass(frozen=True)
class OscParams:
    """Problem constants: mass, action quantum, and the switch shape.

    ``alpha`` (a time) and ``omega`` (a frequency) shape the switch.  Their
    product must lie in [0, 1), otherwise the post-switch frequency
    ``omega*sqrt(1 - alpha*omega)`` is imaginary.  The library is
    unit-agnostic; fields are taken at face value.
    """

    m: float = 1.0
    hbar: float = 1.0
    alpha: float = 0.5
    omega: float = 1.0


@dataclass(frozen=True)
class QuadraticCoefficients:
    """Coefficients of a quadratic Hamiltonian a*p^2 + b*(pq+qp) + c*q^2."""

    a: float
    b: float
    c: float
    a_dot: float = 0.0


def validate_params(p: OscParams) -> OscParams:
    """Return ``p`` unchanged, raising :class:`DomainError` on any invalid field."""
    if not (math.isfinite(p.m) and p.m > 0.0):
        raise DomainError(f"mass must be positive and finite, got {p.m!r}")
    if not (math.isfinite(p.hbar) and p.hbar > 0.0):
        raise DomainError(f"hbar must be positive and finite, got {p.hbar!r}")
    if not (math.isfinite(p.omega) and p.omega > 0.0):
        raise DomainError(f"omega must be positive and finite, got {p.omega!r}")
    if not (math.isfinite(p.alpha) and p.alpha >= 0.0):
        raise DomainError(f"alpha must be nonnegative and finite, got {p.alpha!r}")
    aw = p.alpha * p.omega
    if aw >= 1.0:
        raise DomainError(
            f"alpha*omega must be below 1, got {aw!r}: the post-switch "
            "frequency omega*sqrt(1 - alpha*omega) would be imaginary"
        )
    return p


def switch_end(p: OscParams) -> float:
    """Instant pi/(2*omega) at which the switch window closes."""
    return math.pi / (2.0 * p.omega)


def junction_times(p: OscParams) -> tuple[float, float]:
    """The two region boundaries, (0, pi/(2*omega))."""
    return 0.0, switch_end(p)


def region_of(t: float, p: OscParams) -> Region:
    """Classify ``t``; both boundary instants belong to the switching window."""
    validate_params(p)
    if t < 0.0:
        return Region.BEFORE
    if t <= switch_end(p):
        return Region.SWITCHING
    return Region.AFTER


def omega_of(t: float, p: OscParams) -> float:
    """Instantaneous frequency at time ``t``.

    Continuous everywhere: the switching branch coincides with the flat
    branches at both window edges, where cos^2(omega*t) is exactly 1 and 0.
    Monotonically non-increasing on the switching window for alpha > 0.
    """
    validate_params(p)
    aw = p.alpha * p.omega
    region = region_of(t, p)
    if region is Region.BEFORE:
        return p.omega * math.sqrt(1.0 - aw / (1.0 + aw) ** 2)
    if region is Region.SWITCHING:
        c = math.cos(p.omega * t)
        return p.omega * math.sqrt(1.0 - aw / (1.0 + aw * c * c) ** 2)
    return p.omega * math.sqrt(1.0 - aw)


def hamiltonian_coefficients(t: float, p: OscParams) -> QuadraticCoefficients:
    """Coefficients of this oscillator's Hamiltonian: (1/(2m), 0, m*Omega^2/2)."""
    w = omega_of(t, p)
    return QuadraticCoefficients(a=1.0 / (2.0 * p.m), b=0.0, c=0.5 * p.m * w * w, a_dot=0.0)
