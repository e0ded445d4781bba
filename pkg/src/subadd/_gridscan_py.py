"""Pure-Python (NumPy) grid-scan kernel.

Fallback implementation of the kernel contract shared with the compiled
extension ``subadd._gridscan``:

``scan_block(a, mu, sigma, alpha, x0, dx, y0, dy, i0, i1, j0, j1)``
evaluates the order-``a`` gap of the working function at every node
``(x0 + i*dx, y0 + j*dy)`` for ``i in [i0, i1)``, ``j in [j0, j1)`` and
returns ``(min_gap, best_i, best_j)`` where ``(best_i, best_j)`` is the
first row-major node attaining the minimum (strict ``<`` tracking), or
``(-1, -1)`` if no node produced a finite value.

Determinism contract:
- node coordinates are computed as ``x0 + i*dx`` (multiply, then add) with
  absolute indices, so any block partition of the index rectangle yields
  bit-identical coordinates;
- the function value is built with the exact expression tree of
  ``analytic_core.eval_f`` and the gap as ``(a*f(x) + f(y)) - f(a*x + y)``;
- row-major first-occurrence tie-breaking equals the lexicographically
  smallest ``(i, j)`` among minimisers, which makes block-wise reduction
  associative (combine: keep the earlier block's result on value ties).

Within one backend results are bit-reproducible.  Across the two backends
the only permitted divergence is the last ulp of the vendored ``exp``/
``log1p`` implementations; callers treat cross-backend comparisons with a
tolerance.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy-fallback"


def _f_values(t: np.ndarray, mu: float, sigma: float, alpha: float, h0: float) -> np.ndarray:
    """Vectorised working-function values with eval_f's expression tree."""
    at = np.fabs(t)
    g = at + np.log1p(at)
    z = (at - mu) / sigma
    h = np.exp(-(z * z))
    return g + alpha * (h - h0)


def scan_block(
    a: float,
    mu: float,
    sigma: float,
    alpha: float,
    x0: float,
    dx: float,
    y0: float,
    dy: float,
    i0: int,
    i1: int,
    j0: int,
    j1: int,
):
    """Scan one index block; see the module docstring for the contract."""
    z0 = (0.0 - mu) / sigma
    h0 = float(np.exp(-(z0 * z0)))

    i_idx = np.arange(i0, i1, dtype=np.float64)
    j_idx = np.arange(j0, j1, dtype=np.float64)
    xs = x0 + i_idx * dx
    ys = y0 + j_idx * dy

    fx = _f_values(xs, mu, sigma, alpha, h0)
    fy = _f_values(ys, mu, sigma, alpha, h0)
    s = a * xs[:, None] + ys[None, :]
    fs = _f_values(s, mu, sigma, alpha, h0)

    gaps = (a * fx[:, None] + fy[None, :]) - fs

    if gaps.size == 0:
        return np.inf, -1, -1

    # First row-major occurrence of the minimum; NaN/inf (overflow
    # artefacts) never win, matching the compiled kernel's strict-<
    # tracking from +inf.
    finite = np.isfinite(gaps)
    if not finite.any():
        return np.inf, -1, -1
    flat = np.nanargmin(np.where(finite, gaps, np.inf))
    bi, bj = np.unravel_index(flat, gaps.shape)
    return float(gaps[bi, bj]), int(i0 + bi), int(j0 + bj)
