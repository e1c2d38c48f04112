"""Normalized convex Orlicz functions and function-level checks.

Every function here satisfies F(0) = 0 and F(1) = 1 and is convex and
nondecreasing on [0, inf). Instances are immutable and evaluate
elementwise on numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._bisect import bisect_decreasing
from .errors import DegenerateFlowError, DomainError, ShapeError

INV_E = math.exp(-1.0)
DUALG_KNOT = math.exp(-1.5)


class OrliczFunction:
    """Base class. Subclasses implement ``_raw`` on nonnegative arrays."""

    family: str = "abstract"

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise DomainError(f"Orlicz functions are defined on [0, inf); got {t!r}")
        out = self._raw(arr)
        if out.ndim == 0:
            return float(out)
        return out

    def _raw(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Power(OrliczFunction):
    p: float
    family = "power"

    def __post_init__(self):
        if not self.p >= 1:
            raise DomainError(f"power exponent must be >= 1, got {self.p}")

    def _raw(self, t):
        return np.power(t, self.p)

    def to_dict(self):
        return {"family": "power", "p": self.p}


@dataclass(frozen=True)
class Fpa(OrliczFunction):
    """t^p (-log t)^(-a), rescaled near the origin and glued to t^(p+a).

    The left branch carries the factor e^(-a) so that both branches equal
    e^(-(p+a)) at t = 1/e; with that factor the derivatives match there as
    well, so the function is C^1 and convex for p >= 1, a > 0.
    """

    p: float
    a: float
    family = "fpa"

    def __post_init__(self):
        if not self.p >= 1:
            raise DomainError(f"F^(p,a) needs p >= 1, got {self.p}")
        if not self.a > 0:
            raise DomainError(f"F^(p,a) needs a > 0, got {self.a}")

    def _raw(self, t):
        out = np.zeros_like(t, dtype=float)
        left = (t > 0) & (t < INV_E)
        right = t >= INV_E
        tl = t[left]
        out[left] = math.exp(-self.a) * np.power(tl, self.p) * np.power(-np.log(tl), -self.a)
        out[right] = np.power(t[right], self.p + self.a)
        return out

    def to_dict(self):
        return {"family": "fpa", "p": self.p, "a": self.a}


def _dualg_unscaled(t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t, dtype=float)
    near = (t > 0) & (t <= DUALG_KNOT)
    far = t > DUALG_KNOT
    tn = t[near]
    out[near] = tn * tn * (-np.log(tn))
    g0 = DUALG_KNOT**2 * 1.5
    slope = 2.0 * DUALG_KNOT  # G'(t) = t(-2 log t - 1) at the knot
    out[far] = g0 + slope * (t[far] - DUALG_KNOT)
    return out


_DUALG_AT_ONE = float(_dualg_unscaled(np.array([1.0]))[0])


@dataclass(frozen=True)
class DualG(OrliczFunction):
    """t^2 (-log t) near the origin, tangent-line extension past e^(-3/2),
    divided by its value at 1."""

    family = "dualG"

    def _raw(self, t):
        return _dualg_unscaled(t) / _DUALG_AT_ONE

    def to_dict(self):
        return {"family": "dualG"}


@dataclass(frozen=True)
class Flow(OrliczFunction):
    """F_s(t) = F(s t) / F(s)."""

    base: OrliczFunction
    s: float
    _fs: float = field(init=False, repr=False, compare=False)
    family = "flow"

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"flow scale must be positive, got {self.s}")
        fs = float(self.base._raw(np.asarray(float(self.s))))
        if fs <= 0:
            raise DegenerateFlowError(f"F(s) = 0 at s = {self.s}; flow undefined")
        object.__setattr__(self, "_fs", fs)

    def _raw(self, t):
        return self.base._raw(self.s * t) / self._fs

    def to_dict(self):
        return {"family": "flow", "s": self.s, "base": self.base.to_dict()}


@dataclass(frozen=True)
class Table(OrliczFunction):
    """Piecewise-linear interpolation of (t, F(t)) samples.

    (0, 0) is prepended when missing, values are divided by the
    interpolated value at 1, and the last segment is extended linearly.
    Non-monotone or non-convex samples are rejected.
    """

    points: tuple
    _t: np.ndarray = field(init=False, repr=False, compare=False)
    _f: np.ndarray = field(init=False, repr=False, compare=False)
    family = "table"

    def __post_init__(self):
        pts = sorted((float(t), float(f)) for t, f in self.points)
        if not pts:
            raise ShapeError("table needs at least one point")
        if pts[0][0] < 0:
            raise DomainError("table abscissae must be nonnegative")
        if pts[0][0] > 0:
            pts.insert(0, (0.0, 0.0))
        elif pts[0][1] != 0:
            raise ShapeError("table must satisfy F(0) = 0")
        t = np.array([p[0] for p in pts])
        f = np.array([p[1] for p in pts])
        if np.any(np.diff(t) <= 0):
            raise ShapeError("table abscissae must be distinct")
        if len(t) < 2:
            raise ShapeError("table needs a point with t > 0")
        slopes = np.diff(f) / np.diff(t)
        scale = max(1.0, float(np.abs(slopes).max()))
        if np.any(slopes < -1e-12 * scale):
            raise ShapeError("table is not nondecreasing")
        if np.any(np.diff(slopes) < -1e-12 * scale):
            raise ShapeError("table is not convex")
        f1 = float(_interp_extrap(np.array([1.0]), t, f)[0])
        if f1 <= 0:
            raise ShapeError("table vanishes at t = 1; cannot normalize")
        object.__setattr__(self, "_t", t)
        object.__setattr__(self, "_f", f / f1)
        object.__setattr__(self, "points", tuple((float(a), float(b)) for a, b in zip(t, f / f1)))

    def _raw(self, t):
        return _interp_extrap(t, self._t, self._f)

    def to_dict(self):
        return {"family": "table", "points": [list(p) for p in self.points]}


def _interp_extrap(x: np.ndarray, t: np.ndarray, f: np.ndarray) -> np.ndarray:
    out = np.interp(x, t, f)
    beyond = x > t[-1]
    if np.any(beyond):
        slope = (f[-1] - f[-2]) / (t[-1] - t[-2])
        out = np.where(beyond, f[-1] + slope * (x - t[-1]), out)
    return out


def evaluate(F: OrliczFunction, t):
    return F(t)


def flow(F: OrliczFunction, s: float) -> Flow:
    return Flow(F, float(s))


def delta2_estimate(
    F: OrliczFunction,
    a: float,
    grid_size: int = 512,
    t_min: float | None = None,
    grid: Sequence[float] | None = None,
) -> float:
    """Lower estimate of the Delta_2 constant at the origin.

    Returns the max of F(2t)/F(t) over a log-spaced grid on [t_min, a]
    (t_min defaults to a * 1e-8). An explicit ``grid`` overrides the
    generated one; points above ``a`` are dropped.
    """
    if not 0 < a <= 0.5:
        raise DomainError(f"need 0 < a <= 1/2, got {a}")
    if grid is None:
        if grid_size < 10:
            raise DomainError(f"grid_size must be >= 10, got {grid_size}")
        lo = a * 1e-8 if t_min is None else t_min
        if not 0 < lo < a:
            raise DomainError(f"need 0 < t_min < a, got {lo}")
        ts = np.geomspace(lo, a, grid_size)
    else:
        ts = np.asarray(grid, dtype=float)
        ts = ts[(ts > 0) & (ts <= a)]
        if ts.size == 0:
            raise DomainError("explicit grid has no points in (0, a]")
    num, den = F(2 * ts), F(ts)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(den > 0, num / den, np.where(num > 0, np.inf, 1.0))
    return float(ratio.max())


def multiplicative_convexity_check(F: OrliczFunction, grid_size: int = 64, t_min: float = 1e-6) -> float:
    """Max of F(s^th t^(1-th)) - F(s)^th F(t)^(1-th) over a grid in (0,1)^3.

    s and t are log-spaced on [t_min, 1), theta uniform in (0, 1); the
    grid has grid_size**3 points. Returns 0 when no violation is found.
    """
    st = np.geomspace(t_min, 1.0, grid_size + 1)[:-1]
    th = np.linspace(0.0, 1.0, grid_size + 2)[1:-1]
    fs = F(st)
    s, t, theta = st[:, None, None], st[None, :, None], th[None, None, :]
    lhs = F(np.exp(theta * np.log(s) + (1 - theta) * np.log(t)))
    with np.errstate(divide="ignore"):
        rhs = np.exp(theta * np.log(fs[:, None, None]) + (1 - theta) * np.log(fs[None, :, None]))
    return max(0.0, float((lhs - rhs).max()))


def fundamental_function(F: OrliczFunction, N: float, tol: float = 1e-12) -> float:
    """D_N with F(1/D_N) = 1/N, i.e. the norm of an N-term indicator in l_F."""
    if not N >= 1:
        raise DomainError(f"need N >= 1, got {N}")
    if N == 1:
        return 1.0
    return bisect_decreasing(lambda D: F(1.0 / D), 1.0, float(N), 1.0 / N, tol)
