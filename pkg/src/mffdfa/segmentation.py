"""Window layout: partly overlapping segments and the scale grid.

A scale s and an overlap factor k define windows of length s advancing by
stride floor(s/k).  k = 1 recovers the classical non-overlapping division;
k = 2 (the default) doubles coverage without re-starting the division from
the series end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class SegmentLayout:
    """Start offsets of the M_{s_k} windows of length s over N samples."""

    s: int
    k: int
    starts: np.ndarray = field(repr=False)
    count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "count", int(self.starts.size))


def layout(N: int, s: int, k: int) -> SegmentLayout:
    """Window layout for series length N, scale s, overlap factor k.

    Stride is floor(s/k); windows run forward from offset 0 and any tail
    shorter than one stride is discarded.  The segment count obeys
    floor((N - s)/stride) + 1.
    """
    if s < 1 or N < 1 or k < 1:
        raise InputError("layout arguments must be positive")
    if s > N:
        raise InputError(f"scale s={s} exceeds series length N={N}")
    if k > s:
        raise InputError(f"overlap factor k={k} exceeds s={s}; lower k so the stride stays >= 1")
    stride = s // k
    starts = np.arange(0, N - s + 1, stride, dtype=np.intp)
    return SegmentLayout(s=int(s), k=int(k), starts=starts)


def default_scale_grid(N: int, s_min: int = 30, s_max: int | None = None,
                       n_scales: int = 30) -> np.ndarray:
    """Approximately log-uniform integer scales in [s_min, s_max].

    s_max defaults to floor(N/10).  Rounding to integers deduplicates the
    small end of the grid; fewer than 4 surviving scales is an error since
    the scaling-law regression needs at least that many points.
    """
    if s_max is None:
        s_max = N // 10
    if s_min < 4:
        raise InputError(f"s_min={s_min} too small; detrending needs more samples than parameters")
    if not (s_min < s_max <= N):
        raise InputError(f"need s_min < s_max <= N, got s_min={s_min} s_max={s_max} N={N}")
    grid = np.unique(np.rint(np.geomspace(s_min, s_max, n_scales)).astype(int))
    if grid.size < 4:
        raise InputError(f"only {grid.size} distinct scales in [{s_min}, {s_max}]; widen the range")
    return grid
