"""Scalar and row-batched bisection used by the norm and root solvers."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError

MAX_ITER = 200


def bisect_decreasing(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    tol: float = 1e-12,
) -> float:
    """Solve g(x) = target for nonincreasing g on [lo, hi].

    Stops once the bracket is shorter than ``tol * lo`` (relative) and
    returns its midpoint.
    """
    g_lo, g_hi = g(lo), g(hi)
    if g_lo < target or g_hi > target:
        raise BracketError(
            f"no root in [{lo!r}, {hi!r}]: g(lo)={g_lo!r}, g(hi)={g_hi!r}, target={target!r}"
        )
    for _ in range(MAX_ITER):
        if hi - lo <= tol * abs(lo):
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            return mid
        if g(mid) > target:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not converge in {MAX_ITER} iterations")


def batch_norm_bisect(
    modular_of: Callable[[np.ndarray], np.ndarray],
    mags: np.ndarray,
    tol: float = 1e-12,
) -> np.ndarray:
    """Row-wise Luxemburg bisection.

    ``mags`` is a (rows, cols) array of nonnegative magnitudes, and
    ``modular_of(u)`` returns the row modulars of the same-shaped array
    ``u``. Each row is solved for inf{t : modular(row / t) <= 1} on the
    bracket [max(row), sum(row)]. Returns the upper end of the final
    bracket, so modular(row / result) <= 1 holds for every row.
    """
    mags = np.atleast_2d(np.asarray(mags, dtype=float))
    lo = mags.max(axis=1, initial=0.0)
    hi = mags.sum(axis=1)
    out = np.zeros(mags.shape[0])
    live = hi > 0
    if not live.any():
        return out
    lo, hi, m = lo[live], hi[live], mags[live]
    for _ in range(MAX_ITER):
        open_ = (hi - lo) > tol * lo
        if not open_.any():
            break
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        open_ &= ~stuck
        if not open_.any():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            val = modular_of(m[open_] / mid[open_, None])
        above = val > 1.0
        idx = np.flatnonzero(open_)
        lo[idx[above]] = mid[open_][above]
        hi[idx[~above]] = mid[open_][~above]
    else:
        raise ConvergenceError(f"Luxemburg bisection did not converge in {MAX_ITER} iterations")
    out[live] = hi
    return out
