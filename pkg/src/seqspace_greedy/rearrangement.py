"""Weights, decreasing rearrangements and the symmetric sequence norms.

Covers the Lorentz norm sum_n a*_n w_n, the Marcinkiewicz norm
sup_n (1/s_n) sum_{i<=n} a*_i, the weak-Lorentz quasi-norm
sup_n (sum_{i<=n} v_i) a*_n, weight property constants, and the
equidistributed-block fundamental function together with its
Abel-summation increments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import DescriptorError, DomainError, ShapeError, WeightShapeError
from .vectors import FiniteVector

FORMS = ("one_over_n", "pow_diff", "const", "custom", "recip_diff")


@dataclass(frozen=True)
class Weight:
    """Positive weight (w_n) with primitive s_n = w_1 + ... + w_n.

    ``form`` is "one_over_n", "pow_diff:<p>" (n^{1/p} - (n-1)^{1/p}),
    "const" / "const:<c>", "custom" (prefix only) or "recip_diff", the
    latter meaning v_n = 1/w_n - 1/w_{n-1} for the ``base`` weight w, with
    1/w_0 := 0.
    """

    form: str = "custom"
    prefix: tuple = ()
    base: Optional["Weight"] = None

    def __post_init__(self):
        head = self.form.split(":", 1)[0]
        if head not in FORMS:
            raise DescriptorError(f"unknown weight form {self.form!r}")
        if head == "pow_diff" and not self.param > 1:
            raise DescriptorError("pow_diff needs p > 1")
        if head == "recip_diff" and self.base is None:
            raise DescriptorError("recip_diff needs a base weight")
        pre = tuple(float(v) for v in self.prefix)
        object.__setattr__(self, "prefix", pre)
        if head == "custom" and not pre:
            raise DescriptorError("custom weight needs a nonempty prefix")
        if any(not v > 0 for v in pre):
            raise WeightShapeError("weights must be positive")
        if pre and head != "custom":
            closed = self._closed(len(pre))
            if np.any(np.abs(closed - np.asarray(pre)) > 1e-12 * np.maximum(1.0, closed)):
                raise DescriptorError("weight prefix disagrees with its closed form")

    @property
    def head(self) -> str:
        return self.form.split(":", 1)[0]

    @property
    def param(self) -> float:
        if ":" in self.form:
            return float(self.form.split(":", 1)[1])
        return 1.0

    def _closed(self, n: int) -> np.ndarray:
        k = np.arange(1, n + 1, dtype=float)
        head = self.head
        if head == "one_over_n":
            return 1.0 / k
        if head == "const":
            return np.full(n, self.param)
        if head == "pow_diff":
            r = 1.0 / self.param
            out = -np.power(k, r) * np.expm1(r * np.log1p(-1.0 / np.maximum(k, 2.0)))
            out[:1] = 1.0
            return out
        if head == "recip_diff":
            inv = 1.0 / self.base.values(n)
            return np.diff(inv, prepend=0.0)
        raise DescriptorError(f"weight of form {self.form!r} is only defined on its prefix")

    def values(self, n: int) -> np.ndarray:
        """w_1, ..., w_n."""
        return _values(self, int(n))

    def primitive(self, n: int) -> np.ndarray:
        """s_1, ..., s_n."""
        return _primitive(self, int(n))

    def available(self) -> Optional[int]:
        """Number of defined terms, or None when a closed form covers every n."""
        return len(self.prefix) if self.head == "custom" else None

    @property
    def tail_verdict(self) -> dict:
        """Closed-form facts about the full weight, where known."""
        head = self.head
        if head == "one_over_n":
            return {"decreasing_to_zero": True, "primitive_unbounded": True}
        if head == "pow_diff":
            return {"decreasing_to_zero": True, "primitive_unbounded": True}
        if head == "const":
            return {"decreasing_to_zero": False, "primitive_unbounded": True}
        return {"decreasing_to_zero": None, "primitive_unbounded": None}

    def to_dict(self) -> dict:
        out = {"form": self.form, "prefix": list(self.prefix)}
        if self.base is not None:
            out["base"] = self.base.to_dict()
        return out


@lru_cache(maxsize=256)
def _values(w: Weight, n: int) -> np.ndarray:
    if n < 0:
        raise DomainError("length must be nonnegative")
    k = len(w.prefix)
    if w.head == "custom":
        if n > k:
            raise DescriptorError(f"custom weight defines {k} terms, {n} requested")
        out = np.asarray(w.prefix[:n], dtype=float)
    else:
        out = w._closed(n)
        out[: min(n, k)] = w.prefix[: min(n, k)]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=256)
def _primitive(w: Weight, n: int) -> np.ndarray:
    head = w.head
    k = np.arange(1, n + 1, dtype=float)
    if head == "pow_diff":
        out = np.power(k, 1.0 / w.param)
    elif head == "const":
        out = w.param * k
    elif head == "recip_diff":
        out = 1.0 / w.base.values(n)
    else:
        out = np.cumsum(w.values(n))
    out.setflags(write=False)
    return out


def recip_diff_weight(w: Weight) -> Weight:
    """v with v_1 + ... + v_n = 1/w_n, so that d_{v,inf} = m_s for regular w."""
    return Weight("recip_diff", (), w)


# rearrangement and norms ----------------------------------------------------


def decreasing_rearrangement(x: FiniteVector) -> np.ndarray:
    return -np.sort(-x.mags)


def _sorted_rows(mags) -> np.ndarray:
    m = np.atleast_2d(np.asarray(mags, dtype=float))
    return -np.sort(-np.abs(m), axis=1)


def check_marcinkiewicz_weight(w: Weight, n: int) -> None:
    vals = w.values(max(n, 1))
    if np.any(np.diff(vals) > 0):
        raise WeightShapeError("Marcinkiewicz norm needs a nonincreasing weight")


def marcinkiewicz_rows(w: Weight, mags) -> np.ndarray:
    a = _sorted_rows(mags)
    if a.shape[1] == 0:
        return np.zeros(a.shape[0])
    check_marcinkiewicz_weight(w, a.shape[1])
    s = w.primitive(a.shape[1])
    # a* vanishes past the support and s_n grows, so the sup is attained here
    return (np.cumsum(a, axis=1) / s).max(axis=1)


def lorentz_rows(w: Weight, mags) -> np.ndarray:
    a = _sorted_rows(mags)
    return a @ w.values(a.shape[1])


def weak_lorentz_rows(v: Weight, mags) -> np.ndarray:
    a = _sorted_rows(mags)
    if a.shape[1] == 0:
        return np.zeros(a.shape[0])
    return (a * v.primitive(a.shape[1])).max(axis=1)


def marcinkiewicz_norm(w: Weight, x: FiniteVector) -> float:
    """sup_n (1/s_n) sum_{i<=n} a*_i."""
    return float(marcinkiewicz_rows(w, x.mags[None, :])[0])


def lorentz_d1_norm(w: Weight, x: FiniteVector) -> float:
    """sum_n a*_n w_n."""
    return float(lorentz_rows(w, x.mags[None, :])[0])


def weak_lorentz_norm(v: Weight, x: FiniteVector) -> float:
    """sup_n (v_1 + ... + v_n) a*_n."""
    return float(weak_lorentz_rows(v, x.mags[None, :])[0])


def weak_sup_ratio(w: Weight, x: FiniteVector) -> float:
    """sup_n a*_n / w_n."""
    a = decreasing_rearrangement(x)
    if a.size == 0:
        return 0.0
    return float((a / w.values(a.size)).max())


# weight constants -----------------------------------------------------------


@dataclass(frozen=True)
class WeightProperties:
    M: int
    doubling: float
    regularity: float
    submultiplicativity: float
    nonincreasing: bool
    tail: dict


def weight_properties(w: Weight, M: int) -> WeightProperties:
    """Range-bounded constants on [1, M]; closed-form facts are reported apart.

    doubling            sup_{n<=M} s_{2n} / s_n
    regularity          sup_{n<=M} s_n / (n w_n)
    submultiplicativity sup_{nk<=M} s_{nk} / (s_n s_k)
    """
    if M < 4:
        raise DomainError("M must be at least 4")
    avail = w.available()
    if avail is not None and avail < 2 * M:
        raise DescriptorError(f"weight_properties needs {2 * M} terms, weight defines {avail}")
    wv = w.values(2 * M)
    s = w.primitive(2 * M)
    n = np.arange(1, M + 1)
    doubling = float((s[2 * n - 1] / s[n - 1]).max())
    regularity = float((s[:M] / (n * wv[:M])).max())
    sub = 0.0
    for a in range(1, M + 1):
        k = np.arange(1, M // a + 1)
        sub = max(sub, float((s[a * k - 1] / (s[a - 1] * s[k - 1])).max()))
    return WeightProperties(
        M=M,
        doubling=doubling,
        regularity=regularity,
        submultiplicativity=sub,
        nonincreasing=bool(np.all(np.diff(wv[:M]) <= 0)),
        tail=w.tail_verdict,
    )


# equidistributed blocks -----------------------------------------------------


def _check_profile(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ShapeError("profile must be one-dimensional")
    if np.any(y < 0):
        raise ShapeError("profile must be nonnegative")
    if np.any(np.diff(y) > 0):
        raise ShapeError("profile must be nonincreasing")
    return y


def block_fundamental(w: Weight, y, N: int) -> float:
    """sum_j y_j (w_{(j-1)N+1} + ... + w_{jN}).

    This is the lower democracy function at N of disjoint blocks that are
    all equidistributed with the decreasing profile y.
    """
    y = _check_profile(y)
    if N < 1:
        raise DomainError("N must be >= 1")
    J = y.size
    if J == 0:
        return 0.0
    s = np.concatenate(([0.0], w.primitive(J * N)))
    j = np.arange(1, J + 1)
    return float(np.dot(y, s[j * N] - s[(j - 1) * N]))


def v_weight(w: Weight, y, N: int) -> float:
    """Increment v_N = sum_j (y_j - y_{j+1}) (w_{j(N-1)+1} + ... + w_{jN}).

    The v_k for k <= N sum to block_fundamental(w, y, N).
    """
    y = _check_profile(y)
    if N < 1:
        raise DomainError("N must be >= 1")
    J = y.size
    if J == 0:
        return 0.0
    s = np.concatenate(([0.0], w.primitive(J * N)))
    j = np.arange(1, J + 1)
    drops = y - np.append(y[1:], 0.0)
    return float(np.dot(drops, s[j * N] - s[j * (N - 1)]))


# spaces ---------------------------------------------------------------------


@dataclass(frozen=True)
class MarcinkiewiczSpace:
    weight: Weight
    kind = "marcinkiewicz"
    symmetric = True

    def norm_batch(self, idx, mags, tol=None):
        return marcinkiewicz_rows(self.weight, mags)

    def to_dict(self):
        return {"kind": "marcinkiewicz", "weight": self.weight.to_dict()}


@dataclass(frozen=True)
class LorentzSpace:
    weight: Weight
    kind = "lorentz"
    symmetric = True

    def norm_batch(self, idx, mags, tol=None):
        return lorentz_rows(self.weight, mags)

    def to_dict(self):
        return {"kind": "lorentz", "weight": self.weight.to_dict()}


@dataclass(frozen=True)
class WeakLorentzSpace:
    weight: Weight
    kind = "weak_lorentz"
    symmetric = True

    def norm_batch(self, idx, mags, tol=None):
        return weak_lorentz_rows(self.weight, mags)

    def to_dict(self):
        return {"kind": "weak_lorentz", "weight": self.weight.to_dict()}
