"""Quantum evolution built from the classical amplitude.

All quantum quantities of the minimum-uncertainty states — the linear
invariant's coefficients, the conserved pair, first moments, the three second
moments, and the coherence scan — are pure functions of (eps, eps_dot).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import ClassicalAmplitude, envelope, epsilon
from .errors import DomainError, RangeError
from .frequency import OscParams, QuadraticCoefficients, omega_of, switch_end, validate_params
from .numerics import find_root


@dataclass(frozen=True)
class SmusState:
    """Minimum-uncertainty Gaussian state labeled by the invariant's eigenvalue."""

    z: complex


@dataclass(frozen=True)
class InvariantCoefficients:
    """Ladder-operator coefficients (u, v) of the linear invariant at one instant.

    ``omega0`` is the reference frequency Omega(0) entering the ladder
    operators; |u|^2 - |v|^2 = 1 at all times by Wronskian conservation.
    """

    u: complex
    v: complex
    omega0: float


@dataclass(frozen=True)
class FirstMoments:
    """Mean position and momentum."""

    q_mean: float
    p_mean: float


@dataclass(frozen=True)
class CovarianceState:
    """Second moments (sigma_q^2, sigma_p^2, c_qp) of a Gaussian state.

    Minimum-uncertainty states satisfy sq2*sp2 - cqp^2 = hbar^2/4 identically.
    The sign of ``cqp`` follows the envelope slope; only cqp^2 is fixed by the
    moment formulas.
    """

    sq2: float
    sp2: float
    cqp: float


@dataclass(frozen=True)
class CoherenceEvent:
    """One zero of the cofluctuation in the post-switch region.

    ``sq_ratio`` and ``sp_ratio`` are the dimensionless variances
    m*Omega*sigma_q^2/(hbar/2) and sigma_p^2/(m*Omega*hbar/2); both equal one
    for a true coherent state.  ``t_predicted`` is the nearest instant from
    the reference coherent-instant formula and ``offset`` the gap to it —
    diagnostic output, not an invariant.
    """

    t: float
    sq_ratio: float
    sp_ratio: float
    cqp: float
    t_predicted: float
    offset: float


@dataclass(frozen=True)
class CoherenceScanResult:
    """Outcome of scanning for cofluctuation zeros.

    With a static frequency (alpha = 0) the cofluctuation vanishes
    identically; ``always_coherent`` is then set and the uniform ratios are
    reported instead of discrete events.
    """

    always_coherent: bool
    events: tuple[CoherenceEvent, ...]
    sq_ratio: float | None = None
    sp_ratio: float | None = None


def _eigenvalue(z: SmusState | complex) -> complex:
    return z.z if isinstance(z, SmusState) else complex(z)


def invariant_coefficients(t: float, p: OscParams) -> InvariantCoefficients:
    """Coefficients of the annihilation/creation operators in the invariant."""
    validate_params(p)
    amp = epsilon(t, p)
    w0 = omega_of(0.0, p)
    rw = math.sqrt(w0)
    u = 0.5 * (rw * amp.eps - 1j * amp.eps_dot / rw)
    v = -0.5 * (rw * amp.eps + 1j * amp.eps_dot / rw)
    return InvariantCoefficients(u=u, v=v, omega0=w0)


def first_moments(z: SmusState | complex, t: float, p: OscParams) -> FirstMoments:
    """Mean position and momentum of the state labeled ``z`` at time ``t``.

    q = sqrt(hbar/2m) * 2*Re(eps * conj(z)),
    p = sqrt(hbar*m/2) * 2*Re(eps_dot * conj(z));
    real by construction (the symmetric sum is taken as a real part).
    """
    validate_params(p)
    zz = _eigenvalue(z)
    amp = epsilon(t, p)
    q_mean = math.sqrt(p.hbar / (2.0 * p.m)) * 2.0 * (amp.eps * zz.conjugate()).real
    p_mean = math.sqrt(p.hbar * p.m / 2.0) * 2.0 * (amp.eps_dot * zz.conjugate()).real
    return FirstMoments(q_mean=q_mean, p_mean=p_mean)


def general_first_moments(z: SmusState | complex, amp: ClassicalAmplitude,
                          coeffs: QuadraticCoefficients, hbar: float) -> FirstMoments:
    """First moments for a general quadratic Hamiltonian (a, b, a_dot terms).

    Specializing to (a=1/2m, b=0, a_dot=0) reproduces :func:`first_moments`.
    """
    if not coeffs.a > 0.0:
        raise DomainError(f"coefficient a must be positive, got {coeffs.a!r}")
    zz = _eigenvalue(z)
    q_mean = math.sqrt(hbar * coeffs.a) * 2.0 * (amp.eps * zz.conjugate()).real
    inner = coeffs.b * amp.eps - 0.5 * amp.eps_dot - 0.25 * (coeffs.a_dot / coeffs.a) * amp.eps
    p_mean = -math.sqrt(hbar / coeffs.a) * 2.0 * (inner * zz.conjugate()).real
    return FirstMoments(q_mean=q_mean, p_mean=p_mean)


def conserved_pair(z: SmusState | complex, t: float, p: OscParams) -> tuple[float, float]:
    """Mean values (Q0, P0) of the conserved pair; constant in ``t`` for fixed z.

    Q0 = (Im(eps_dot)*<q> - Im(eps)*<p>/m) / sqrt(Omega0),
    P0 = sqrt(Omega0) * (-m*Re(eps_dot)*<q> + Re(eps)*<p>).
    """
    fm = first_moments(z, t, p)
    amp = epsilon(t, p)
    w0 = omega_of(0.0, p)
    rw = math.sqrt(w0)
    q0 = (amp.eps_dot.imag * fm.q_mean - amp.eps.imag * fm.p_mean / p.m) / rw
    p0 = rw * (-p.m * amp.eps_dot.real * fm.q_mean + amp.eps.real * fm.p_mean)
    return q0, p0


def second_moments(t: float, p: OscParams) -> CovarianceState:
    """The three second moments at time ``t``.

    sq2 = hbar*|eps|^2/(2m), sp2 = (hbar*m/2)*(1/|eps|^2 + r_dot^2),
    cqp = (hbar/2)*|eps|*r_dot, so sq2*sp2 - cqp^2 = hbar^2/4 identically.
    """
    validate_params(p)
    env = envelope(t, p)
    sq2 = p.hbar * env.r * env.r / (2.0 * p.m)
    sp2 = 0.5 * p.hbar * p.m * (1.0 / (env.r * env.r) + env.r_dot * env.r_dot)
    cqp = 0.5 * p.hbar * env.r * env.r_dot
    return CovarianceState(sq2=sq2, sp2=sp2, cqp=cqp)


def general_second_moments(amp: ClassicalAmplitude, coeffs: QuadraticCoefficients,
                           hbar: float) -> CovarianceState:
    """Second moments for a general quadratic Hamiltonian.

    The shared inner term is b*r - r_dot/2 - (a_dot/4a)*r; cqp is its signed
    product with -hbar*r so that the (a=1/2m, b=0, a_dot=0) specialization
    matches :func:`second_moments` including sign.
    """
    if not coeffs.a > 0.0:
        raise DomainError(f"coefficient a must be positive, got {coeffs.a!r}")
    r = abs(amp.eps)
    r_dot = (amp.eps.conjugate() * amp.eps_dot).real / r
    inner = coeffs.b * r - 0.5 * r_dot - 0.25 * (coeffs.a_dot / coeffs.a) * r
    sq2 = hbar * coeffs.a * r * r
    sp2 = (hbar / coeffs.a) * (0.25 / (r * r) + inner * inner)
    cqp = -hbar * r * inner
    return CovarianceState(sq2=sq2, sp2=sp2, cqp=cqp)


def coherence_scan(p: OscParams, t_lo: float, t_hi: float) -> CoherenceScanResult:
    """Find all cofluctuation zeros in [t_lo, t_hi] of the post-switch region.

    Zeros of c_qp coincide with envelope extrema, so the scan brackets sign
    changes of the envelope slope and polishes each with the root finder.
    Zeros sitting exactly on a window edge are ambiguous and dropped.  Each
    event also records the nearest reference coherent-instant prediction and
    the offset from it, as diagnostics.

    Raises:
        RangeError: if ``t_lo`` precedes the switch end or t_hi <= t_lo.
    """
    validate_params(p)
    t_j = switch_end(p)
    if t_lo < t_j:
        raise RangeError(f"scan must start at or after the switch end {t_j!r}, got {t_lo!r}")
    if not t_hi > t_lo:
        raise RangeError(f"need t_hi > t_lo, got [{t_lo!r}, {t_hi!r}]")
    half = 0.5 * p.hbar
    if p.alpha == 0.0:
        cov = second_moments(t_lo, p)
        w = omega_of(t_lo, p)
        return CoherenceScanResult(
            always_coherent=True,
            events=(),
            sq_ratio=p.m * w * cov.sq2 / half,
            sp_ratio=cov.sp2 / (p.m * w * half),
        )

    aw = p.alpha * p.omega
    spacing = math.pi / (2.0 * p.omega * math.sqrt(1.0 - aw))
    pred_spacing = math.pi / (4.0 * omega_of(0.0, p))

    def slope(x: float) -> float:
        return envelope(x, p).r_dot

    n = max(8, math.ceil((t_hi - t_lo) / (spacing / 16.0)))
    grid = [t_lo + i * (t_hi - t_lo) / n for i in range(n + 1)]
    values = [slope(x) for x in grid]
    roots: list[float] = []
    for i in range(n):
        f0, f1 = values[i], values[i + 1]
        if f0 == 0.0:
            roots.append(grid[i])
        elif f1 != 0.0 and (f0 > 0.0) != (f1 > 0.0):
            roots.append(find_root(slope, (grid[i], grid[i + 1]), tol=1e-13))
    if values[-1] == 0.0:
        roots.append(grid[-1])
    edge = 1e-6 * spacing
    roots = [r for r in roots if r - t_lo > edge and t_hi - r > edge]

    events = []
    for r in roots:
        cov = second_moments(r, p)
        w = omega_of(r, p)
        n_near = max(1, round((r - t_j) / pred_spacing - 0.5))
        t_pred = t_j + (n_near + 0.5) * pred_spacing
        events.append(
            CoherenceEvent(
                t=r,
                sq_ratio=p.m * w * cov.sq2 / half,
                sp_ratio=cov.sp2 / (p.m * w * half),
                cqp=cov.cqp,
                t_predicted=t_pred,
                offset=abs(r - t_pred),
            )
        )
    return CoherenceScanResult(always_coherent=False, events=tuple(events))
