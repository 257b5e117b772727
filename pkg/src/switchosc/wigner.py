"""Gaussian phase-space distribution of the minimum-uncertainty states.

The distribution is evaluated from the first and second moments alone, on a
rectangular grid centered at the means.  The prefactor is 1/(pi*hbar): with
the determinant identity sq2*sp2 - cqp^2 = hbar^2/4 that is the unique choice
integrating to one over phase space (a factor-2 variant circulates; the
validation report shows its integral is 2).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotNormalized
from .frequency import OscParams, validate_params
from .quantum import CovarianceState, FirstMoments, SmusState, _eigenvalue, first_moments, second_moments


@dataclass(frozen=True)
class WignerGrid:
    """Distribution values on a uniform phase-space grid.

    ``values[i, j]`` is the density at (q_axis[i], p_axis[j]); densities are
    nonnegative everywhere.  The instant, the oscillator parameters, and the
    state label are carried along for provenance.
    """

    q_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray
    t: float
    params: OscParams
    z: complex


def wigner_value(q: float, p: float, fm: FirstMoments, cov: CovarianceState,
                 hbar: float) -> float:
    """Density at one phase-space point.

    exp{-(2/hbar^2)[sq2*(p-<p>)^2 - 2*cqp*(p-<p>)(q-<q>) + sp2*(q-<q>)^2]}
    normalized by 1/(pi*hbar); the peak value 1/(pi*hbar) sits exactly at the
    means for every instant (purity is conserved).

    Raises:
        DomainError: if ``cov`` violates the determinant identity beyond 1e-6
            relative — the closed form presumes a minimum-uncertainty state.
    """
    det = cov.sq2 * cov.sp2 - cov.cqp * cov.cqp
    if not (cov.sq2 > 0.0 and cov.sp2 > 0.0) or abs(det * 4.0 / (hbar * hbar) - 1.0) > 1e-6:
        raise DomainError(
            f"covariances {cov!r} do not describe a minimum-uncertainty state "
            f"(det={det!r}, expected {hbar * hbar / 4.0!r})"
        )
    dq = q - fm.q_mean
    dp = p - fm.p_mean
    expo = -(2.0 / (hbar * hbar)) * (cov.sq2 * dp * dp - 2.0 * cov.cqp * dp * dq + cov.sp2 * dq * dq)
    return math.exp(expo) / (math.pi * hbar)


def wigner_grid(t: float, z: SmusState | complex, p: OscParams,
                half_widths: tuple[float, float] = (6.0, 6.0),
                resolution: tuple[int, int] = (256, 256)) -> WignerGrid:
    """Evaluate the distribution on a grid spanning +-n_sigma per axis.

    The grid is centered at the first moments and spans ``half_widths`` times
    the marginal standard deviation along each axis.

    Raises:
        DomainError: if a resolution is below 16 or a half width below 3.
    """
    validate_params(p)
    n_q, n_p = resolution
    hw_q, hw_p = half_widths
    if n_q < 16 or n_p < 16:
        raise DomainError(f"resolution must be at least 16 per axis, got {resolution!r}")
    if hw_q < 3.0 or hw_p < 3.0:
        raise DomainError(f"half widths must be at least 3 sigma, got {half_widths!r}")
    fm = first_moments(z, t, p)
    cov = second_moments(t, p)
    s_q = math.sqrt(cov.sq2)
    s_p = math.sqrt(cov.sp2)
    q_axis = np.linspace(fm.q_mean - hw_q * s_q, fm.q_mean + hw_q * s_q, n_q)
    p_axis = np.linspace(fm.p_mean - hw_p * s_p, fm.p_mean + hw_p * s_p, n_p)
    dq = (q_axis - fm.q_mean)[:, None]
    dp = (p_axis - fm.p_mean)[None, :]
    h2 = p.hbar * p.hbar
    expo = -(2.0 / h2) * (cov.sq2 * dp * dp - 2.0 * cov.cqp * dp * dq + cov.sp2 * dq * dq)
    values = np.exp(expo) / (math.pi * p.hbar)
    return WignerGrid(q_axis=q_axis, p_axis=p_axis, values=values,
                      t=t, params=p, z=_eigenvalue(z))


def _simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights on ``n`` uniform points with spacing ``h``.

    For an even point count the last three intervals use the 3/8 rule, which
    keeps fourth-order accuracy without restricting the grid parity.
    """
    if n < 8:
        raise DomainError(f"need at least 8 points for the composite rule, got {n}")
    w = np.zeros(n)
    if n % 2 == 1:
        w[0] = w[-1] = 1.0
        w[1:-1:2] = 4.0
        w[2:-2:2] = 2.0
        w *= h / 3.0
    else:
        w[0] = 1.0
        w[1 : n - 4 : 2] = 4.0
        w[2 : n - 4 : 2] = 2.0
        w[n - 4] = 1.0
        w *= h / 3.0
        w[n - 4 :] += np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * h / 8.0)
    return w


def grid_integral(g: WignerGrid) -> float:
    """Total mass of the grid by the composite Simpson rule on both axes."""
    wq = _simpson_weights(len(g.q_axis), float(g.q_axis[1] - g.q_axis[0]))
    wp = _simpson_weights(len(g.p_axis), float(g.p_axis[1] - g.p_axis[0]))
    return float(wq @ g.values @ wp)


def grid_moments(g: WignerGrid) -> tuple[FirstMoments, CovarianceState]:
    """Recover first and second moments from the grid by discrete quadrature.

    Closes the loop: at 6 sigma and 256^2 the recovered moments match the
    analytic ones to better than 1e-4 relative.

    Raises:
        NotNormalized: if the grid mass deviates from one by more than 1e-4.
    """
    wq = _simpson_weights(len(g.q_axis), float(g.q_axis[1] - g.q_axis[0]))
    wp = _simpson_weights(len(g.p_axis), float(g.p_axis[1] - g.p_axis[0]))
    total = float(wq @ g.values @ wp)
    if abs(total - 1.0) > 1e-4:
        raise NotNormalized(f"grid mass {total!r} deviates from 1 by more than 1e-4")
    q = g.q_axis
    p = g.p_axis
    q_mean = float((wq * q) @ g.values @ wp) / total
    p_mean = float(wq @ g.values @ (wp * p)) / total
    dq = q - q_mean
    dp = p - p_mean
    sq2 = float((wq * dq * dq) @ g.values @ wp) / total
    sp2 = float(wq @ g.values @ (wp * dp * dp)) / total
    cqp = float((wq * dq) @ g.values @ (wp * dp)) / total
    return FirstMoments(q_mean=q_mean, p_mean=p_mean), CovarianceState(sq2=sq2, sp2=sp2, cqp=cqp)


def _fmt(x: float) -> str:
    # shortest decimal that round-trips the double exactly
    return repr(float(x))


def _meta_items(g: WignerGrid) -> list[tuple[str, str]]:
    return [
        ("t", _fmt(g.t)),
        ("m", _fmt(g.params.m)),
        ("hbar", _fmt(g.params.hbar)),
        ("alpha", _fmt(g.params.alpha)),
        ("omega", _fmt(g.params.omega)),
        ("z_re", _fmt(g.z.real)),
        ("z_im", _fmt(g.z.imag)),
        ("n_q", str(len(g.q_axis))),
        ("n_p", str(len(g.p_axis))),
    ]


def grid_to_csv(g: WignerGrid, comments: tuple[tuple[str, str], ...] = ()) -> str:
    """Render the grid as '(q, p, w)' triplet rows with '#' metadata comments.

    Values are written with full round-trip precision (better than the 15
    significant digits the format guarantees).
    """
    lines = [f"# {k} = {v}" for k, v in (*_meta_items(g), *comments)]
    lines.append("q,p,w")
    for i, qv in enumerate(g.q_axis):
        row = g.values[i]
        q_s = _fmt(qv)
        for j, pv in enumerate(g.p_axis):
            lines.append(f"{q_s},{_fmt(pv)},{_fmt(row[j])}")
    return "\n".join(lines) + "\n"


def grid_to_json(g: WignerGrid, extra_meta: dict | None = None) -> str:
    """Render the grid as compact JSON: metadata, both axes, row-major values."""
    meta: dict = {k: v for k, v in _meta_items(g)}
    if extra_meta:
        meta.update(extra_meta)
    doc = {
        "meta": meta,
        "q_axis": [float(x) for x in g.q_axis],
        "p_axis": [float(x) for x in g.p_axis],
        "values": [float(x) for x in g.values.ravel(order="C")],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"
