"""Scalar minimization helpers used by the brute-force orthogonality path."""

from __future__ import annotations

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi


def golden_min(f, a: float, b: float, xtol: float, max_iter: int = 400):
    """Golden-section search for the minimum of a unimodal f on [a, b].

    Returns (x, f(x), evaluations).  Convex functions are unimodal, possibly
    with a flat bottom, in which case some point of the flat set is returned.
    """
    evals = 0
    c = b - (b - a) * _INVPHI
    d = a + (b - a) * _INVPHI
    fc, fd = f(c), f(d)
    evals += 2
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    it = 0
    while (b - a) > xtol and it < max_iter:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INVPHI
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INVPHI
            fd = f(d)
        evals += 1
        it += 1
        if fc < best_f:
            best_x, best_f = c, fc
        if fd < best_f:
            best_x, best_f = d, fd
    return best_x, best_f, evals


def golden_max(f, a: float, b: float, xtol: float, max_iter: int = 400):
    x, fneg, evals = golden_min(lambda t: -f(t), a, b, xtol, max_iter)
    return x, -fneg, evals


def coordinate_min_2d(f2, bound: float, xtol: float, step_tol: float,
                      max_sweeps: int = 60):
    """Minimize a jointly convex f2(x, y) by alternating golden sections.

    The search window per coordinate starts at the full bound, then shrinks
    with the observed movement (and re-expands whenever a minimizer lands on
    the window edge).  After convergence an 8-direction line-search polish
    runs from the final iterate: plain coordinate descent can stall on a
    non-smooth ridge, and the polish only ever lowers the value.
    """
    evals = 0
    x = y = 0.0
    fxy = f2(x, y)
    evals += 1
    window = bound

    def line_min(g, center, w):
        nonlocal evals
        lo, hi = center - w, center + w
        while True:
            t, v, e = golden_min(g, lo, hi, xtol)
            evals += e
            edge = 0.02 * (hi - lo)
            if (t - lo > edge and hi - t > edge) or (hi - lo) >= 2 * bound:
                return t, v
            span = hi - lo
            lo, hi = t - span, t + span

    for sweep in range(max_sweeps):
        x0, y0 = x, y
        x, fxy = line_min(lambda t: f2(t, y), x, window)
        y, fxy = line_min(lambda t: f2(x, t), y, window)
        moved = math.hypot(x - x0, y - y0)
        window = min(bound, max(2.5 * moved, 256.0 * xtol))
        if moved < step_tol and sweep >= 1:
            break

    for _ in range(3):
        improved = False
        w = max(1e-5 * (1.0 + math.hypot(x, y)), 1e-6)
        for k in range(8):
            ang = math.pi * (k + 0.37) / 8.0
            dx, dy = math.cos(ang), math.sin(ang)
            t, v, e = golden_min(lambda t: f2(x + t * dx, y + t * dy), -w, w, xtol)
            evals += e
            if v < fxy - 1e-15:
                x, y, fxy = x + t * dx, y + t * dy, v
                improved = True
        if not improved:
            break

    return x, y, fxy, evals


def pattern_search(f, x0, step0: float, step_tol: float, max_iter: int = 4000):
    """Coordinate pattern search on the unit sphere of R^m.

    f takes a unit vector; iterates stay normalized.  Returns (x, f(x)).
    """
    import numpy as np

    x = np.asarray(x0, dtype=float)
    x = x / np.linalg.norm(x)
    fx = f(x)
    step = step0
    m = x.shape[0]
    it = 0
    while step > step_tol and it < max_iter:
        improved = False
        for i in range(m):
            for sgn in (1.0, -1.0):
                it += 1
                y = x.copy()
                y[i] += sgn * step
                y /= np.linalg.norm(y)
                fy = f(y)
                if fy < fx - 1e-15:
                    x, fx = y, fy
                    improved = True
                    break
        if not improved:
            step *= 0.5
    return x, fx
