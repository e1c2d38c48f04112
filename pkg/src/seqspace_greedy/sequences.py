"""Exponent and scale sequences: a finite prefix plus an analytic tail.

Norm computations only ever evaluate these at concrete indices. The
criteria module additionally reads the tail descriptors symbolically,
since a prefix alone cannot decide a statement about all n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DescriptorError, DomainError

AGREE_TOL = 1e-12


def _as_index(n) -> np.ndarray:
    arr = np.asarray(n, dtype=np.int64)
    if arr.size and arr.min() < 1:
        raise DomainError("sequence indices start at 1")
    return arr


# exponent tails -------------------------------------------------------------


@dataclass(frozen=True)
class ConstantTail:
    p: float

    def values(self, n: np.ndarray) -> np.ndarray:
        return np.full(np.shape(n), float(self.p))

    @property
    def limit(self) -> float:
        return float(self.p)

    def to_dict(self):
        return {"type": "constant", "p": self.p}


RATES = ("log", "sqrt_log")


@dataclass(frozen=True)
class ConvergentTail:
    """p_n = p + c / log(n+1)  (rate "log")  or  p + c / sqrt(log(n+2))  (rate "sqrt_log")."""

    p: float
    rate: str
    c: float

    def __post_init__(self):
        if self.rate not in RATES:
            raise DescriptorError(f"unknown rate {self.rate!r}; expected one of {RATES}")

    def values(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        if self.rate == "log":
            return self.p + self.c / np.log(n + 1.0)
        return self.p + self.c / np.sqrt(np.log(n + 2.0))

    @property
    def limit(self) -> float:
        return float(self.p)

    def to_dict(self):
        return {"type": "convergent", "p": self.p, "rate": self.rate, "c": self.c}


DIVERGENT_KINDS = ("log_power", "power", "loglog")


@dataclass(frozen=True)
class DivergentTail:
    """Exponents tending to infinity.

    log_power: offset + c * log(n + shift)**gamma
    power:     offset + c * n**gamma
    loglog:    offset + c * log(log(n + shift))
    """

    kind: str
    c: float = 1.0
    shift: float = 0.0
    gamma: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in DIVERGENT_KINDS:
            raise DescriptorError(f"unknown divergent form {self.kind!r}")
        if not self.c > 0 or not self.gamma > 0:
            raise DescriptorError("divergent forms need c > 0 and gamma > 0")

    @classmethod
    def log2_shifted(cls, shift: float = 2.0) -> "DivergentTail":
        """p_n = log2(n + shift)."""
        return cls("log_power", c=1.0 / math.log(2.0), shift=shift, gamma=1.0)

    def values(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        if self.kind == "log_power":
            return self.offset + self.c * np.log(n + self.shift) ** self.gamma
        if self.kind == "power":
            return self.offset + self.c * n**self.gamma
        return self.offset + self.c * np.log(np.log(n + self.shift))

    @property
    def limit(self) -> float:
        return math.inf

    def to_dict(self):
        return {
            "type": "divergent",
            "form": self.kind,
            "c": self.c,
            "shift": self.shift,
            "gamma": self.gamma,
            "offset": self.offset,
        }


@dataclass(frozen=True)
class OscillatingTail:
    """Periodic exponents: p_n = pattern[(n - 1) % len(pattern)]."""

    pattern: tuple

    def __post_init__(self):
        pat = tuple(float(v) for v in self.pattern)
        if len(pat) < 2 or min(pat) == max(pat):
            raise DescriptorError("oscillating pattern needs at least two distinct values")
        object.__setattr__(self, "pattern", pat)

    def values(self, n: np.ndarray) -> np.ndarray:
        pat = np.asarray(self.pattern)
        return pat[(np.asarray(n, dtype=np.int64) - 1) % pat.size]

    @property
    def liminf(self) -> float:
        return min(self.pattern)

    @property
    def limsup(self) -> float:
        return max(self.pattern)

    @property
    def limit(self) -> Optional[float]:
        return None

    def to_dict(self):
        return {"type": "oscillating", "pattern": list(self.pattern)}


@dataclass(frozen=True)
class CountTail:
    """Tail known only through counts of indices meeting a condition.

    Carries no closed form for p_n itself, so values beyond the prefix
    cannot be evaluated.
    """

    description: str = ""
    log_counts: tuple = ()

    def values(self, n):
        raise DescriptorError("count-function tails have no closed form for p_n")

    @property
    def limit(self) -> Optional[float]:
        return None

    def to_dict(self):
        return {"type": "count", "description": self.description, "log_counts": list(self.log_counts)}


@dataclass(frozen=True)
class ConjugateTail:
    """Tail of the conjugate exponents of another sequence (see modular.conjugate_exponents)."""

    base: "ExponentSequence"

    def values(self, n: np.ndarray) -> np.ndarray:
        n = _as_index(n)
        if n.size == 0:
            return np.zeros(0)
        upto = int(n.max())
        p = self.base.values(np.arange(1, upto + 1))
        q = conjugate_values(p)
        return q[np.asarray(n) - 1]

    @property
    def limit(self) -> Optional[float]:
        lim = self.base.limit
        if lim is None:
            return None
        if lim == math.inf:
            return 1.0
        if lim == 1:
            return math.inf
        return lim / (lim - 1)

    def to_dict(self):
        return {"type": "conjugate", "base": self.base.to_dict()}


def conjugate_values(p: np.ndarray) -> np.ndarray:
    """Hoelder conjugates of a full prefix p_1..p_M.

    Where p_n = 1 the k-th such coordinate gets max(2, 2 log2(k + 1)), which
    keeps sum over those n of (1/2)^{q_n} <= sum (k+1)^{-2} finite.
    """
    p = np.asarray(p, dtype=float)
    q = np.empty_like(p)
    ones = p == 1.0
    with np.errstate(divide="ignore"):
        q[~ones] = p[~ones] / (p[~ones] - 1.0)
    rank = np.cumsum(ones)[ones]
    q[ones] = np.maximum(2.0, 2.0 * np.log2(rank + 1.0))
    return q


Tail = ConstantTail | ConvergentTail | DivergentTail | OscillatingTail | CountTail | ConjugateTail


@dataclass(frozen=True)
class ExponentSequence:
    """Nakano exponents (p_n): explicit prefix values, optionally an analytic tail.

    The tail, when given, defines p_n for every n and the prefix must
    agree with it; without a tail only the prefix indices are defined.
    """

    prefix: tuple = ()
    tail: Optional[Tail] = None

    def __post_init__(self):
        pre = tuple(float(v) for v in self.prefix)
        object.__setattr__(self, "prefix", pre)
        if any(not v >= 1 for v in pre):
            raise DomainError("Nakano exponents must be >= 1")
        if self.tail is None and not pre:
            raise DescriptorError("exponent sequence needs a prefix or a tail")
        if pre and self.tail is not None and not isinstance(self.tail, CountTail):
            closed = self.tail.values(np.arange(1, len(pre) + 1))
            if np.any(np.abs(closed - np.asarray(pre)) > AGREE_TOL * np.maximum(1.0, np.abs(closed))):
                raise DescriptorError("prefix disagrees with the tail's closed form")

    @classmethod
    def constant(cls, p: float) -> "ExponentSequence":
        return cls((), ConstantTail(float(p)))

    @classmethod
    def finite(cls, values) -> "ExponentSequence":
        return cls(tuple(values), None)

    def values(self, n) -> np.ndarray:
        n = _as_index(n)
        out = np.empty(n.shape, dtype=float)
        k = len(self.prefix)
        inside = n <= k
        if np.any(inside):
            out[inside] = np.asarray(self.prefix)[n[inside] - 1]
        if np.any(~inside):
            if self.tail is None:
                raise DescriptorError(
                    f"exponent requested at n={int(n[~inside].max())} beyond prefix of length {k} with no tail"
                )
            vals = self.tail.values(n[~inside])
            if np.any(vals < 1):
                raise DomainError("tail produced an exponent below 1")
            out[~inside] = vals
        return out

    def __call__(self, n) -> float:
        return float(self.values(np.asarray([n]))[0])

    @property
    def limit(self) -> Optional[float]:
        return None if self.tail is None else self.tail.limit

    @property
    def is_constant(self) -> bool:
        vals = set(self.prefix)
        if isinstance(self.tail, ConstantTail):
            vals.add(float(self.tail.p))
            return len(vals) == 1
        return self.tail is None and len(vals) == 1

    def to_dict(self) -> dict:
        out = {"prefix": list(self.prefix)}
        out["tail"] = None if self.tail is None else self.tail.to_dict()
        return out


# scale sequences ------------------------------------------------------------


def _scale_form(form: str):
    if form == "exp(-n)":
        return lambda n: np.exp(-n)
    if form == "1/log(n+1)":
        return lambda n: 1.0 / np.log(n + 1.0)
    if form.startswith("pow:"):
        b = float(form[4:])
        return lambda n: n**b
    if form.startswith("const:"):
        c = float(form[6:])
        return lambda n: np.full(np.shape(n), c)
    raise DescriptorError(f"unknown scale form {form!r}")


@dataclass(frozen=True)
class ScaleSequence:
    """Positive scales (s_n) for flow spaces.

    ``form`` is one of "exp(-n)", "1/log(n+1)", "pow:<b>" (n**b) and
    "const:<c>"; ``None`` means only the prefix is defined.
    """

    prefix: tuple = ()
    form: Optional[str] = None
    _fn: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pre = tuple(float(v) for v in self.prefix)
        object.__setattr__(self, "prefix", pre)
        if any(not v > 0 for v in pre):
            raise DomainError("scales must be positive")
        fn = None if self.form is None else _scale_form(self.form)
        object.__setattr__(self, "_fn", fn)
        if fn is None and not pre:
            raise DescriptorError("scale sequence needs a prefix or a form")
        if fn is not None and pre:
            closed = fn(np.arange(1, len(pre) + 1, dtype=float))
            if np.any(np.abs(closed - np.asarray(pre)) > AGREE_TOL * np.maximum(1.0, np.abs(closed))):
                raise DescriptorError("scale prefix disagrees with its closed form")

    def values(self, n) -> np.ndarray:
        n = _as_index(n)
        out = np.empty(n.shape, dtype=float)
        k = len(self.prefix)
        inside = n <= k
        if np.any(inside):
            out[inside] = np.asarray(self.prefix)[n[inside] - 1]
        if np.any(~inside):
            if self._fn is None:
                raise DescriptorError(
                    f"scale requested at n={int(n[~inside].max())} beyond prefix of length {k} with no form"
                )
            out[~inside] = self._fn(n[~inside].astype(float))
        return out

    @property
    def is_constant(self) -> bool:
        if self.form is not None:
            if not self.form.startswith("const:"):
                return False
            c = float(self.form[6:])
            return all(v == c for v in self.prefix)
        return len(set(self.prefix)) == 1

    def count_function(self, limit: int = 10**6) -> "CountFunction":
        if self.form == "exp(-n)" and not self.prefix:
            return ExpDecayCount(1.0)
        if self.form == "1/log(n+1)" and not self.prefix:
            return InverseLogCount()
        return EnumeratedCount(self, limit)

    def to_dict(self) -> dict:
        return {"prefix": list(self.prefix), "form": self.form}


# count functions for log|{n : s_n >= exp(-2^k)}| ----------------------------


class CountFunction:
    """log of the cardinality of {n : s_n >= exp(-2^k)}, as a function of k."""

    closed_form = False

    def log_count(self, k: int) -> float:
        raise NotImplementedError

    def log_log_count(self, k: int) -> float:
        lc = self.log_count(k)
        return math.log(lc) if lc > 0 else -math.inf


@dataclass(frozen=True)
class ExpDecayCount(CountFunction):
    """s_n = exp(-c n): the set is {n <= 2^k / c}."""

    c: float = 1.0
    closed_form = True

    def log_count(self, k: int) -> float:
        bound = 2.0**k / self.c
        if bound < 2.0**52:
            cnt = math.floor(bound)
            return math.log(cnt) if cnt > 0 else -math.inf
        return k * math.log(2.0) - math.log(self.c)

    def ratio_monotone_from(self) -> int:
        """Smallest k from which log_count(k) / 2^k is nonincreasing."""
        return max(0, math.ceil(1.0 + math.log2(self.c)))


@dataclass(frozen=True)
class InverseLogCount(CountFunction):
    """s_n = 1/log(n+1): the set is {n <= exp(e^{2^k}) - 1}."""

    closed_form = True

    def log_count(self, k: int) -> float:
        try:
            big = math.exp(2.0**k)
        except OverflowError:
            return math.inf
        if big < 700:
            return math.log(math.floor(math.expm1(big)))
        return big

    def log_log_count(self, k: int) -> float:
        # log(log count) = 2^k up to a correction below 1e-300 once 2^k > log(700)
        if 2.0**k > math.log(700.0):
            return 2.0**k
        return math.log(self.log_count(k))


@dataclass(frozen=True)
class EnumeratedCount(CountFunction):
    """Direct enumeration of n <= limit; counts reaching ``limit`` are truncated."""

    scales: ScaleSequence
    limit: int = 10**6

    def count(self, k: int) -> tuple[int, bool]:
        n = np.arange(1, self.limit + 1)
        s = self.scales.values(n)
        # relative slack absorbs last-ulp differences between exp(-n) and exp(-2^k)
        cnt = int(np.count_nonzero(s >= math.exp(-(2.0**k)) * (1.0 - 1e-12)))
        return cnt, cnt >= self.limit

    def log_count(self, k: int) -> float:
        cnt, _ = self.count(k)
        return math.log(cnt) if cnt > 0 else -math.inf
