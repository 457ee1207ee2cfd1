"""Per-segment variances and the q-order fluctuation function.

For each scale s the profile is cut into M partly overlapping segments,
each segment is detrended per policy, and the detrended variances

    F^2(nu, s) = (1/s) sum_t (Y_t - trend_t)^2

are aggregated into the generalized fluctuation function

    F_q(s) = { (1/M) sum_nu [F^2]^{q/2} }^{1/q},       q != 0
    F_0(s) = exp{ (1/(2M)) sum_nu ln F^2 }.

The q = 0 branch is the q -> 0 limit of the power mean (the bare average
of ln F^2 is a log-scale quantity, not a fluctuation magnitude, hence the
1/2 in the exponent).  Segments with exactly zero variance would blow up
the q <= 0 moments, so they are dropped there with M reduced accordingly,
while for q > 0 they simply contribute nothing; exclusions are counted
per scale.  Note the guard is a compromise the aggregation formulas don't
know about: with exclusions present the q -> 0+ limit no longer matches
F_0, so power-mean monotonicity in q is only guaranteed exclusion-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import logsumexp

from .detrend import DetrendPolicy, FlexibleBasis, batch_segment_variances
from .errors import InputError, NumericalError
from .segmentation import layout
from .signal import Profile


def default_q_grid(q_min: float = -10.0, q_max: float = 10.0,
                   step: float = 0.2) -> np.ndarray:
    """Uniform q grid, endpoints inclusive, with exact 0.0 when it lands there.

    The q = 0 node must compare equal to literal zero so the logarithmic
    branch is taken, hence the snap.
    """
    if step <= 0 or q_max <= q_min:
        raise InputError("need q_min < q_max and step > 0")
    n = int(round((q_max - q_min) / step)) + 1
    q = np.round(q_min + step * np.arange(n), 12)
    q[np.abs(q) < 1e-12] = 0.0
    return q


def segment_variance(profile_segment, trend) -> float:
    """Local detrended variance F^2(nu, s) of one segment."""
    y = np.asarray(profile_segment, dtype=float)
    f = np.asarray(trend, dtype=float)
    if y.shape != f.shape:
        raise InputError(f"segment and trend lengths differ: {y.shape} vs {f.shape}")
    d = y - f
    return float(d @ d) / y.size


@dataclass(frozen=True)
class FluctuationSurface:
    """F_q(s) over the (q, scale) grid plus per-scale bookkeeping."""

    q_grid: np.ndarray
    scales: np.ndarray
    values: np.ndarray                    # shape (n_q, n_scales); NaN where unusable
    segment_counts: np.ndarray            # M_{s_k} per scale
    excluded_counts: np.ndarray           # zero-variance segments per scale
    usable: np.ndarray                    # per-scale: any positive variance at all
    selection_counts: np.ndarray | None = field(default=None)  # (n_scales, |Q|), flexible only
    basis_names: tuple[str, ...] | None = None


def fluctuation_function(profile, scales, k: int, policy: DetrendPolicy,
                         q_grid) -> FluctuationSurface:
    """Steps 2-4: segment, detrend, and aggregate over the scale grid.

    Accumulation order is fixed (ascending segment start, ascending scale,
    ascending q) so results never depend on scheduling.
    """
    y = profile.values if isinstance(profile, Profile) else np.asarray(profile, dtype=float)
    scales = np.asarray(scales, dtype=int)
    q = np.asarray(q_grid, dtype=float)
    if q.size == 0 or np.any(np.diff(q) <= 0):
        raise InputError("q grid must be non-empty and strictly increasing")

    flexible = isinstance(policy, FlexibleBasis)
    n_bases = len(policy.bases())
    values = np.full((q.size, scales.size), np.nan)
    seg_counts = np.zeros(scales.size, dtype=int)
    excl_counts = np.zeros(scales.size, dtype=int)
    usable = np.zeros(scales.size, dtype=bool)
    sel_counts = np.zeros((scales.size, n_bases), dtype=int) if flexible else None

    for j, s in enumerate(scales):
        win = layout(y.size, int(s), k)
        segments = sliding_window_view(y, int(s))[win.starts]
        fsq, chosen = batch_segment_variances(segments, policy)
        seg_counts[j] = win.count
        if flexible:
            sel_counts[j] = np.bincount(chosen, minlength=n_bases)

        nonzero = fsq > 0.0
        m_nz = int(np.count_nonzero(nonzero))
        excl_counts[j] = win.count - m_nz
        if m_nz == 0:
            continue                      # unusable scale, stays NaN
        usable[j] = True
        log_fsq = np.log(fsq[nonzero])
        for i, qq in enumerate(q):
            if qq == 0.0:
                values[i, j] = np.exp(log_fsq.mean() / 2.0)
            elif qq > 0.0:
                values[i, j] = np.exp((logsumexp(qq / 2.0 * log_fsq) - np.log(win.count)) / qq)
            else:
                values[i, j] = np.exp((logsumexp(qq / 2.0 * log_fsq) - np.log(m_nz)) / qq)

    if int(usable.sum()) < 4:
        raise NumericalError(
            f"only {int(usable.sum())} usable scales out of {scales.size}; "
            "the scaling regression needs at least 4"
        )
    names = tuple(b.name for b in policy.bases()) if flexible else None
    return FluctuationSurface(
        q_grid=q, scales=scales, values=values,
        segment_counts=seg_counts, excluded_counts=excl_counts,
        usable=usable, selection_counts=sel_counts, basis_names=names,
    )
