"""Independent reference implementations the tests compare against.

Everything here is coded from the defining formulas, deliberately avoiding
the package's own machinery: plain loops, np.polyfit, mpmath normal
equations.  Slow is fine; independent is the point.
"""

import math

import mpmath
import numpy as np


def running_sum_profile(x):
    """Cumulative sum of (x - mean) via a plain Python loop."""
    x = list(map(float, x))
    mean = sum(x) / len(x)
    out, acc = [], 0.0
    for v in x:
        acc += v - mean
        out.append(acc)
    return np.asarray(out)


def log_returns_direct(prices):
    return np.asarray([math.log(prices[i + 1]) - math.log(prices[i])
                       for i in range(len(prices) - 1)])


def r_squared_direct(y, fitted):
    y = np.asarray(y, dtype=float)
    fitted = np.asarray(fitted, dtype=float)
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return 1.0 - ss_res / ss_tot


def segment_variance_direct(seg, trend):
    return sum((a - b) ** 2 for a, b in zip(seg, trend)) / len(seg)


def textbook_mfdfa(x, scales, q_values, m):
    """Classical MFDFA-m, one np.polyfit per segment.

    Non-overlapping windows from offset 0 (any tail shorter than s is
    dropped; no re-division from the series end).  Returns the F_q(s)
    matrix with shape (len(q_values), len(scales)).
    """
    x = np.asarray(x, dtype=float)
    y = np.cumsum(x - x.mean())
    F = np.empty((len(q_values), len(scales)))
    for j, s in enumerate(scales):
        n_seg = len(y) // s
        t = np.arange(1, s + 1, dtype=float)
        fsq = np.empty(n_seg)
        for v in range(n_seg):
            seg = y[v * s:(v + 1) * s]
            coeff = np.polyfit(t, seg, m)
            resid = seg - np.polyval(coeff, t)
            fsq[v] = np.mean(resid ** 2)
        for i, q in enumerate(q_values):
            if q == 0:
                F[i, j] = np.exp(np.mean(np.log(fsq)) / 2.0)
            else:
                F[i, j] = np.mean(fsq ** (q / 2.0)) ** (1.0 / q)
    return F


def dfa_rms(x, scales, m):
    """Plain DFA: sqrt of the average detrended variance per scale (q = 2)."""
    x = np.asarray(x, dtype=float)
    y = np.cumsum(x - x.mean())
    out = []
    for s in scales:
        n_seg = len(y) // s
        t = np.arange(1, s + 1, dtype=float)
        acc = 0.0
        for v in range(n_seg):
            seg = y[v * s:(v + 1) * s]
            resid = seg - np.polyval(np.polyfit(t, seg, m), t)
            acc += np.mean(resid ** 2)
        out.append(math.sqrt(acc / n_seg))
    return np.asarray(out)


def normal_equations_fitted(columns, y, dps=40):
    """Least-squares fitted values by solving A^T A c = A^T y in mpmath.

    `columns` is the list/array of design columns evaluated on the segment's
    abscissa.  High working precision stands in for exact arithmetic, which
    is what makes this a fair referee for the float implementation.
    """
    with mpmath.workdps(dps):
        A = mpmath.matrix([[mpmath.mpf(float(c[i])) for c in columns]
                           for i in range(len(y))])
        b = mpmath.matrix([mpmath.mpf(float(v)) for v in y])
        AtA = A.T * A
        Atb = A.T * b
        c = mpmath.lu_solve(AtA, Atb)
        fitted = A * c
        return np.asarray([float(v) for v in fitted])


def popcount_cascade(a, n_max):
    """Binomial cascade via str.count popcounts, no vectorization."""
    return np.asarray([
        a ** bin(k).count("1") * (1 - a) ** (n_max - bin(k).count("1"))
        for k in range(2 ** n_max)
    ])


def cascade_oracle_mpmath(a, q_values, dps=50):
    """High-precision tau/alpha/f/h for the cascade, straight from the formulas."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(a)
        b = 1 - a
        ln2 = mpmath.log(2)
        tau, alpha, f, h = [], [], [], []
        for q in map(mpmath.mpf, q_values):
            aq, bq = a ** q, b ** q
            t = -mpmath.log(aq + bq) / ln2
            al = -(aq * mpmath.log(a) + bq * mpmath.log(b)) / ((aq + bq) * ln2)
            tau.append(float(t))
            alpha.append(float(al))
            f.append(float(q * al - t))
            if q == 0:
                h.append(float(al))
            else:
                h.append(float((t + 1) / q))
        return (np.asarray(tau), np.asarray(alpha), np.asarray(f), np.asarray(h))
