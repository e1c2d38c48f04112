"""Musielak-Orlicz modulars, Luxemburg norms and the Nakano special case.

A Musielak-Orlicz space is described by its coordinate functions
F_n; the modular of x is sum_n F_n(|x_n|) and the norm is
inf{t > 0 : modular(x / t) <= 1}. Three families are provided:

* ``NakanoSpace``  F_n(t) = t^{p_n}
* ``OrliczSpace``  F_n = F for every n
* ``FlowSpace``    F_n = F_{s_n}, the flow of a fixed F at scale s_n
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._bisect import batch_norm_bisect
from .errors import DegenerateFlowError, DomainError
from .orlicz import OrliczFunction
from .sequences import (
    ConstantTail,
    ConjugateTail,
    DivergentTail,
    ExponentSequence,
    ScaleSequence,
    conjugate_values,
)
from .vectors import FiniteVector

DEFAULT_TOL = 1e-12


class MusielakSpace:
    """Common interface: elementwise coordinate functions F_n."""

    kind = "musielak"

    def coord_values(self, idx: np.ndarray, u: np.ndarray) -> np.ndarray:
        """F_n(u) with n running over ``idx`` along the last axis of ``u``."""
        raise NotImplementedError

    @property
    def symmetric(self) -> bool:
        raise NotImplementedError

    def norm_batch(self, idx, mags, tol: float = DEFAULT_TOL) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        prepared = self._prepare(idx)
        return batch_norm_bisect(lambda u: prepared(u).sum(axis=1), mags, tol)

    def _prepare(self, idx: np.ndarray):
        return lambda u: self.coord_values(idx, u)


@dataclass(frozen=True)
class NakanoSpace(MusielakSpace):
    exponents: ExponentSequence
    kind = "nakano"

    def coord_values(self, idx, u):
        return np.power(u, self.exponents.values(idx))

    def _prepare(self, idx):
        p = self.exponents.values(idx)
        return lambda u: np.power(u, p)

    @property
    def symmetric(self) -> bool:
        return self.exponents.is_constant

    def to_dict(self):
        return {"kind": "nakano", "exponents": self.exponents.to_dict()}


@dataclass(frozen=True)
class OrliczSpace(MusielakSpace):
    F: OrliczFunction
    kind = "orlicz"

    def coord_values(self, idx, u):
        return self.F._raw(np.asarray(u, dtype=float))

    @property
    def symmetric(self) -> bool:
        return True

    def to_dict(self):
        return {"kind": "orlicz", "function": self.F.to_dict()}


@dataclass(frozen=True)
class FlowSpace(MusielakSpace):
    """The space built from the flows F_{s_n}(t) = F(s_n t) / F(s_n)."""

    base: OrliczFunction
    scales: ScaleSequence
    kind = "flow"

    def _prepare(self, idx):
        s = self.scales.values(idx)
        fs = self.base._raw(s)
        if np.any(fs <= 0):
            bad = np.asarray(idx)[fs <= 0]
            raise DegenerateFlowError(f"F(s_n) = 0 at n = {bad.tolist()}")
        return lambda u: self.base._raw(s * u) / fs

    def coord_values(self, idx, u):
        return self._prepare(np.asarray(idx, dtype=np.int64))(np.asarray(u, dtype=float))

    @property
    def symmetric(self) -> bool:
        return self.scales.is_constant

    def to_dict(self):
        return {"kind": "flow", "base": self.base.to_dict(), "scales": self.scales.to_dict()}


def modular(space: MusielakSpace, x: FiniteVector) -> float:
    if len(x) == 0:
        return 0.0
    return float(np.sum(space.coord_values(x.idx, x.mags)))


def luxemburg_norm(space: MusielakSpace, x: FiniteVector, tol: float = DEFAULT_TOL) -> float:
    """inf{t > 0 : modular(x / t) <= 1}, by bisection on [max|x_n|, sum|x_n|].

    The lower end works because the largest coordinate alone contributes
    F_k(1) = 1 there; the upper end because convexity and F(0) = 0 give
    F(lam) <= lam on [0, 1].
    """
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    if len(x) == 0:
        return 0.0
    return float(space.norm_batch(x.idx, x.mags[None, :], tol)[0])


@dataclass(frozen=True)
class BridgeResult:
    modular: float
    norm: float
    lower: float
    upper: float
    s: float
    passed: bool


def bridge_check(space: NakanoSpace, x: FiniteVector, tol: float = 1e-10) -> BridgeResult:
    """Check min(|x|, |x|^s) <= m(x) <= max(|x|, |x|^s), s = max exponent on supp x."""
    if len(x) == 0:
        return BridgeResult(0.0, 0.0, 0.0, 0.0, 1.0, True)
    s = float(space.exponents.values(x.idx).max())
    m = modular(space, x)
    nrm = luxemburg_norm(space, x)
    a, b = nrm, nrm**s
    lower, upper = min(a, b), max(a, b)
    slack = tol * max(1.0, m)
    passed = lower <= m + slack and m <= upper + slack
    return BridgeResult(m, nrm, lower, upper, s, passed)


def conjugate_exponents(e: ExponentSequence) -> ExponentSequence:
    """q_n = p_n / (p_n - 1), with a summable choice where p_n = 1.

    The k-th index with p_n = 1 receives max(2, 2 log2(k + 1)).
    """
    if e.tail is None:
        return ExponentSequence.finite(conjugate_values(np.asarray(e.prefix)))
    if isinstance(e.tail, ConstantTail):
        p = e.tail.p
        if p > 1:
            return ExponentSequence.constant(p / (p - 1.0))
        # every index has p_n = 1, so the rank of n is n itself
        return ExponentSequence((), DivergentTail("log_power", c=2.0 / math.log(2.0), shift=1.0, gamma=1.0))
    return ExponentSequence((), ConjugateTail(e))


def holder_ratio(e: ExponentSequence, x: FiniteVector, y: FiniteVector) -> float:
    """|<x, y>| / (|x|_{(p_n)} |y|_{(q_n)}); at most 2 by Young's inequality."""
    nx = luxemburg_norm(NakanoSpace(e), x)
    ny = luxemburg_norm(NakanoSpace(conjugate_exponents(e)), y)
    if nx == 0 or ny == 0:
        raise DomainError("holder ratio undefined for a zero vector")
    common, ix, iy = np.intersect1d(x.idx, y.idx, return_indices=True)
    # normalize first so that tiny vectors do not underflow the product
    pairing = float(np.dot(x.val[ix] / nx, y.val[iy] / ny)) if common.size else 0.0
    return abs(pairing)
