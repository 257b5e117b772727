"""Independent numerical machinery used to cross-check every closed form.

Nothing here knows the analytic solution: the integrator sees only the
frequency profile, the quadrature sees only an integrand, the root finder
only a bracket.  That independence is the point — these routines arbitrate
whenever a closed form is in doubt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NoSignChange, RangeError, ToleranceNotMet
from .frequency import OscParams, junction_times, omega_of, validate_params

# Dormand-Prince 5(4) pair.  The fifth-order solution is propagated; the
# embedded fourth-order difference drives the step controller.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_ERR = _B5 - _B4

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


@dataclass(frozen=True)
class Trajectory:
    """Sampled numerical solution of the amplitude equation.

    ``states[k]`` holds (eps, eps_dot) at ``times[k]``; times are strictly
    increasing.  Immutable once returned.
    """

    times: np.ndarray
    states: np.ndarray
    tol: float

    @property
    def eps(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def eps_dot(self) -> np.ndarray:
        return self.states[:, 1]


def _dp_step(f, t: float, y: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.empty((7, y.size))
    k[0] = f(t, y)
    for i in range(1, 7):
        k[i] = f(t + _C[i] * h, y + h * (_A[i] @ k[:i]))
    return y + h * (_B5 @ k), h * (_ERR @ k)


def integrate_ode(
    p: OscParams,
    t0: float,
    t1: float,
    init: tuple[complex, complex],
    tol: float,
    *,
    t_eval: Sequence[float] | None = None,
    force_junctions: bool = True,
    fixed_step: float | None = None,
    max_steps: int = 2_000_000,
) -> Trajectory:
    """Integrate eps'' + Omega(t)^2 * eps = 0 as a 4-dimensional real system.

    Adaptive embedded Runge-Kutta with local error per step kept at ``tol``
    (mixed absolute/relative scale).  Step boundaries are placed exactly on
    the region junctions inside [t0, t1] — Omega^2 is continuous but not
    smooth there — and exactly on every requested ``t_eval`` point, so no
    interpolation is ever involved.

    Args:
        init: (eps, eps_dot) at ``t0``.
        t_eval: when given, the trajectory records exactly these times
            (plus ``t0`` if present); otherwise every accepted step.
        force_junctions: disable to measure the cost of stepping blindly
            across the junctions.
        fixed_step: bypass the controller and march with this step instead
            (reproducibility fallback; no error estimate).

    Raises:
        ToleranceNotMet: if the step size underflows or the step budget
            is exhausted.
    """
    validate_params(p)
    if not 1e-13 <= tol <= 1e-3:
        raise DomainError(f"tol must lie in [1e-13, 1e-3], got {tol!r}")
    if not t1 > t0:
        raise DomainError(f"need t1 > t0, got [{t0!r}, {t1!r}]")
    if fixed_step is not None and not fixed_step > 0.0:
        raise DomainError(f"fixed_step must be positive, got {fixed_step!r}")

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        w = omega_of(t, p)
        w2 = w * w
        return np.array([y[2], y[3], -w2 * y[0], -w2 * y[1]])

    y = np.array([init[0].real, init[0].imag, init[1].real, init[1].imag], dtype=float)

    eval_set: set[float] = set()
    stops: set[float] = {t1}
    if t_eval is not None:
        pts = [float(x) for x in t_eval]
        if any(x < t0 or x > t1 for x in pts):
            raise RangeError("t_eval points must lie within [t0, t1]")
        eval_set = set(pts)
        stops.update(x for x in pts if x > t0)
    if force_junctions:
        stops.update(tj for tj in junction_times(p) if t0 < tj < t1)
    stop_list = sorted(stops)

    record_all = t_eval is None
    times: list[float] = []
    states: list[np.ndarray] = []
    if record_all or t0 in eval_set:
        times.append(t0)
        states.append(y.copy())

    t = t0
    h = fixed_step if fixed_step is not None else min((t1 - t0) / 64.0, stop_list[0] - t0)
    tiny = 16.0 * np.finfo(float).eps
    si = 0
    steps = 0
    while t < t1:
        while stop_list[si] <= t:
            si += 1
        stop = stop_list[si]
        gap = stop - t
        if h < gap:
            h_try, hit = h, False
        else:
            h_try, hit = gap, True
        y_new, err = _dp_step(rhs, t, y, h_try)
        if fixed_step is None:
            # budget each step a decade below the requested tolerance so the
            # accumulated drift of conserved quantities stays within a few tol
            scale = 0.1 * tol * (1.0 + np.maximum(np.abs(y), np.abs(y_new)))
            err_norm = math.sqrt(float(np.mean((err / scale) ** 2)))
        else:
            err_norm = 0.0
        if err_norm <= 1.0:
            t = stop if hit else t + h_try
            y = y_new
            if record_all or t in eval_set:
                times.append(t)
                states.append(y.copy())
            if fixed_step is None:
                grow = _MAX_FACTOR if err_norm == 0.0 else _SAFETY * err_norm**-0.2
                h = h_try * min(_MAX_FACTOR, max(_MIN_FACTOR, grow))
        else:
            h = h_try * max(_MIN_FACTOR, _SAFETY * err_norm**-0.2)
            if h < tiny * max(1.0, abs(t)):
                raise ToleranceNotMet(f"step size underflow at t={t!r} (tol={tol!r})")
        steps += 1
        if steps > max_steps:
            raise ToleranceNotMet(f"step budget exhausted after {max_steps} steps")

    raw = np.array(states, dtype=float).reshape(len(states), 4)
    out = np.empty((len(times), 2), dtype=complex)
    out[:, 0] = raw[:, 0] + 1j * raw[:, 1]
    out[:, 1] = raw[:, 2] + 1j * raw[:, 3]
    return Trajectory(times=np.array(times), states=out, tol=tol)


def quadrature(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
               max_depth: int = 50) -> float:
    """Adaptive Simpson integral of ``f`` over [a, b] to absolute accuracy ``tol``.

    Uses recursive bisection with the standard 15x Richardson acceptance test
    and returns the extrapolated value.

    Raises:
        RangeError: if a > b.
        DomainError: if the integrand returns a non-finite value.
        ToleranceNotMet: if the recursion depth limit is reached before the
            local error budget is satisfied.
    """
    if a > b:
        raise RangeError(f"need a <= b, got a={a!r}, b={b!r}")
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    if not (math.isfinite(fa) and math.isfinite(fm) and math.isfinite(fb)):
        raise DomainError(f"integrand is not finite on [{a!r}, {b!r}]")
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adapt_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _adapt_simpson(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    if not (math.isfinite(flm) and math.isfinite(frm) and math.isfinite(fm)):
        raise DomainError(f"integrand is not finite inside [{a!r}, {b!r}]")
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise ToleranceNotMet(f"quadrature tolerance {tol!r} not met on [{a!r}, {b!r}]")
    return _adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _adapt_simpson(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def find_root(f: Callable[[float], float], bracket: tuple[float, float],
              tol: float = 1e-12, max_iter: int = 200) -> float:
    """Locate a zero of ``f`` inside a sign-changing bracket to within ``tol``.

    Secant steps alternate with bisection, so the bracket at least halves
    every other iteration regardless of how the secant behaves.

    Raises:
        NoSignChange: if f has the same sign at both bracket ends.
    """
    a, b = bracket
    if not a < b:
        raise RangeError(f"bracket must satisfy lo < hi, got {bracket!r}")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise NoSignChange(f"f({a!r})={fa!r} and f({b!r})={fb!r} have the same sign")
    use_secant = True
    for _ in range(max_iter):
        if b - a <= 2.0 * tol:
            return 0.5 * (a + b)
        if use_secant and fb != fa:
            x = b - fb * (b - a) / (fb - fa)
            if not a < x < b:
                x = 0.5 * (a + b)
        else:
            x = 0.5 * (a + b)
        use_secant = not use_secant
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    raise ToleranceNotMet(f"root not located to {tol!r} within {max_iter} iterations")


def derivative(f, x: float, h: float = 1e-4):
    """Fourth-order central difference df/dx; f may be real or complex valued."""
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h)


def second_derivative(f, x: float, h: float = 1e-3):
    """Fourth-order central difference d2f/dx2; f may be real or complex valued."""
    return (
        -f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)
    ) / (12.0 * h * h)
