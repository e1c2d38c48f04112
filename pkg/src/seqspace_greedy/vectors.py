"""Finitely supported real sequences indexed from 1."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DescriptorError


@dataclass(frozen=True)
class FiniteVector:
    """Sparse vector with strictly increasing positive indices and no stored zeros."""

    indices: tuple = ()
    values: tuple = ()
    _idx: np.ndarray = field(init=False, repr=False, compare=False)
    _val: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).reshape(-1)
        val = np.asarray(self.values, dtype=float).reshape(-1)
        if idx.shape != val.shape:
            raise DescriptorError("indices and values differ in length")
        if idx.size and idx.min() < 1:
            raise DescriptorError("indices must be positive integers")
        if np.any(np.diff(idx) <= 0):
            raise DescriptorError("indices must be strictly increasing")
        if not np.all(np.isfinite(val)):
            raise DescriptorError("values must be finite")
        keep = val != 0
        idx, val = idx[keep], val[keep]
        idx.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "_idx", idx)
        object.__setattr__(self, "_val", val)
        object.__setattr__(self, "indices", tuple(int(i) for i in idx))
        object.__setattr__(self, "values", tuple(float(v) for v in val))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "FiniteVector":
        pairs = sorted((int(i), float(v)) for i, v in pairs)
        seen = [i for i, _ in pairs]
        if len(set(seen)) != len(seen):
            raise DescriptorError("duplicate index in vector entries")
        return cls(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))

    @classmethod
    def from_dense(cls, values: Iterable[float], start: int = 1) -> "FiniteVector":
        vals = [float(v) for v in values]
        return cls(tuple(range(start, start + len(vals))), tuple(vals))

    @classmethod
    def unit(cls, n: int) -> "FiniteVector":
        return cls((int(n),), (1.0,))

    @classmethod
    def indicator(cls, indices: Iterable[int]) -> "FiniteVector":
        idx = sorted(int(i) for i in indices)
        return cls(tuple(idx), (1.0,) * len(idx))

    @property
    def idx(self) -> np.ndarray:
        return self._idx

    @property
    def val(self) -> np.ndarray:
        return self._val

    @property
    def mags(self) -> np.ndarray:
        return np.abs(self._val)

    def __len__(self) -> int:
        return self._idx.size

    def __getitem__(self, n: int) -> float:
        pos = np.searchsorted(self._idx, n)
        if pos < self._idx.size and self._idx[pos] == n:
            return float(self._val[pos])
        return 0.0

    def scale(self, c: float) -> "FiniteVector":
        return FiniteVector(self.indices, tuple(c * v for v in self.values))

    def __add__(self, other: "FiniteVector") -> "FiniteVector":
        acc = dict(zip(self.indices, self.values))
        for i, v in zip(other.indices, other.values):
            acc[i] = acc.get(i, 0.0) + v
        return FiniteVector.from_pairs(acc.items())

    def __sub__(self, other: "FiniteVector") -> "FiniteVector":
        return self + other.scale(-1.0)

    def restrict(self, keep: Iterable[int]) -> "FiniteVector":
        keep = set(int(i) for i in keep)
        pairs = [(i, v) for i, v in zip(self.indices, self.values) if i in keep]
        return FiniteVector.from_pairs(pairs)

    def drop(self, remove: Iterable[int]) -> "FiniteVector":
        remove = set(int(i) for i in remove)
        pairs = [(i, v) for i, v in zip(self.indices, self.values) if i not in remove]
        return FiniteVector.from_pairs(pairs)

    def to_dict(self) -> dict:
        return {"entries": [[i, v] for i, v in zip(self.indices, self.values)]}
