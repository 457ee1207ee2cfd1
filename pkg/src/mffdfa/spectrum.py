"""Scaling-law fit and the singularity spectrum.

The generalized Hurst exponent h(q) is the OLS slope of ln F_q(s) against
ln s.  The multifractal (singularity) spectrum follows by the Legendre-type
transform

    alpha = h(q) + q h'(q),      f(alpha) = q [alpha - h(q)] + 1,

with h'(q) taken as plain central differences on the q grid (one-sided at
the ends) -- no smoothing of h(q) beforehand.  The spectrum width
Delta_alpha = alpha_max - alpha_min is the headline multifractality
measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .fluctuation import FluctuationSurface


@dataclass(frozen=True)
class GeneralizedHurst:
    q_grid: np.ndarray
    h: np.ndarray
    intercepts: np.ndarray
    fit_r2: np.ndarray


@dataclass(frozen=True)
class SingularitySpectrum:
    q_grid: np.ndarray
    alpha: np.ndarray
    f_alpha: np.ndarray
    delta_alpha: float
    alpha_at_q0: float


def fit_hurst(surface: FluctuationSurface, s_range: tuple[float, float] | None = None
              ) -> GeneralizedHurst:
    """h(q), intercepts and per-q goodness of the log-log line.

    By default the regression runs over every usable scale; s_range
    optionally narrows it to [lo, hi] (inclusive) when a scaling window
    is known a priori.
    """
    keep = surface.usable.copy()
    if s_range is not None:
        lo, hi = s_range
        keep &= (surface.scales >= lo) & (surface.scales <= hi)
    if int(keep.sum()) < 4:
        raise NumericalError(
            f"{int(keep.sum())} usable scales for the h(q) regression "
            f"(q from {surface.q_grid[0]} to {surface.q_grid[-1]}); need at least 4"
        )
    ls = np.log(surface.scales[keep].astype(float))
    q = surface.q_grid
    h = np.empty(q.size)
    c0 = np.empty(q.size)
    r2 = np.empty(q.size)
    for i in range(q.size):
        lf = np.log(surface.values[i, keep])
        slope, intercept = np.polyfit(ls, lf, 1)
        resid = lf - (slope * ls + intercept)
        ss_tot = np.sum((lf - lf.mean()) ** 2)
        h[i] = slope
        c0[i] = intercept
        r2[i] = 1.0 - resid @ resid / ss_tot if ss_tot > 0 else 1.0
    return GeneralizedHurst(q_grid=q, h=h, intercepts=c0, fit_r2=r2)


def legendre_transform(hurst: GeneralizedHurst) -> SingularitySpectrum:
    """(alpha, f(alpha)) from h(q); needs at least 3 q nodes to difference."""
    q = hurst.q_grid
    if q.size < 3:
        raise NumericalError("q grid too short for finite differences (need >= 3 points)")
    dh = np.gradient(hurst.h, q)
    alpha = hurst.h + q * dh
    f_alpha = q * (alpha - hurst.h) + 1.0
    i0 = int(np.argmin(np.abs(q)))
    return SingularitySpectrum(
        q_grid=q, alpha=alpha, f_alpha=f_alpha,
        delta_alpha=float(alpha.max() - alpha.min()),
        alpha_at_q0=float(alpha[i0]),
    )


def spectrum_width(spectrum: SingularitySpectrum) -> float:
    """Delta_alpha = alpha_max - alpha_min."""
    return float(spectrum.alpha.max() - spectrum.alpha.min())
