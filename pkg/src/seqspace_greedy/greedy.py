"""Thresholding greedy operator, best N-term error and democracy functions.

All norms here are lattice norms for the unit vector basis, so the best
coefficients on a kept set A are x's own and

    sigma_N(x) = min_{|A| = N} || x restricted to the complement of A ||,

which turns best N-term approximation into a search over subsets of the
support.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ArityError, BudgetError, DescriptorError, DomainError, HypothesisError
from .modular import DEFAULT_TOL, FlowSpace, NakanoSpace, OrliczSpace
from .rearrangement import LorentzSpace, MarcinkiewiczSpace, WeakLorentzSpace, Weight
from .vectors import FiniteVector

SpaceDescriptor = Union[NakanoSpace, OrliczSpace, FlowSpace, MarcinkiewiczSpace, LorentzSpace, WeakLorentzSpace]
SPACE_TYPES = (NakanoSpace, OrliczSpace, FlowSpace, MarcinkiewiczSpace, LorentzSpace, WeakLorentzSpace)

SUBSET_BUDGET = 22
EXHAUSTIVE_WINDOW = 20
_CHUNK_ROWS = 1 << 15


def _check_space(s) -> None:
    if not isinstance(s, SPACE_TYPES):
        raise DescriptorError(f"not a space descriptor: {type(s).__name__}")


def norm_rows(s: SpaceDescriptor, idx, mags, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Norms of the rows of ``mags``, all supported on the index array ``idx``."""
    _check_space(s)
    mags = np.atleast_2d(np.asarray(mags, dtype=float))
    if mags.shape[1] == 0:
        return np.zeros(mags.shape[0])
    return np.asarray(s.norm_batch(np.asarray(idx, dtype=np.int64), mags, tol), dtype=float)


def space_norm(s: SpaceDescriptor, x: FiniteVector, tol: float = DEFAULT_TOL) -> float:
    if len(x) == 0:
        _check_space(s)
        return 0.0
    return float(norm_rows(s, x.idx, x.mags[None, :], tol)[0])


# greedy operator -------------------------------------------------------------


@dataclass(frozen=True)
class GreedyReport:
    N: int
    greedy_set: tuple
    approximant: FiniteVector
    residual: FiniteVector
    residual_norm: Optional[float] = None
    sigma: Optional[float] = None
    ratio: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "greedy_set": list(self.greedy_set),
            "approximant": self.approximant.to_dict(),
            "residual": self.residual.to_dict(),
            "residual_norm": self.residual_norm,
            "sigma": self.sigma,
            "ratio": self.ratio,
        }


def greedy_order(x: FiniteVector) -> np.ndarray:
    """Positions of x's entries by decreasing magnitude, ties to the lowest index."""
    return np.lexsort((x.idx, -x.mags))


def greedy_step(x: FiniteVector, N: int) -> GreedyReport:
    """G_N(x): keep the N largest coefficients (ties broken by lowest index)."""
    N = int(N)
    if N < 0 or N > len(x):
        raise ArityError(f"N = {N} outside [0, {len(x)}] (support size)")
    order = greedy_order(x)
    keep = np.zeros(len(x), dtype=bool)
    keep[order[:N]] = True
    lam = tuple(int(i) for i in x.idx[keep])
    approx = FiniteVector(tuple(x.idx[keep]), tuple(x.val[keep]))
    resid = FiniteVector(tuple(x.idx[~keep]), tuple(x.val[~keep]))
    return GreedyReport(N, lam, approx, resid)


def _subset_rows(m: int, N: int):
    """Yield boolean keep-masks of all N-subsets of range(m), in chunks."""
    combos = itertools.combinations(range(m), N)
    while True:
        block = list(itertools.islice(combos, _CHUNK_ROWS))
        if not block:
            return
        mask = np.zeros((len(block), m), dtype=bool)
        if N:
            cols = np.asarray(block, dtype=np.int64)
            mask[np.arange(len(block))[:, None], cols] = True
        yield mask


def best_nterm_error(s: SpaceDescriptor, x: FiniteVector, N: int, tol: float = DEFAULT_TOL) -> float:
    """sigma_N(x) by exhaustive search over the N-subsets of supp x."""
    _check_space(s)
    m = len(x)
    N = int(N)
    if N < 0 or N > m:
        raise ArityError(f"N = {N} outside [0, {m}] (support size)")
    if m > SUBSET_BUDGET:
        raise BudgetError(
            f"support size {m} exceeds the subset budget of {SUBSET_BUDGET}; "
            "subsample the vector before calling"
        )
    if N == m:
        return 0.0
    best = math.inf
    mags = x.mags
    for keep in _subset_rows(m, N):
        rows = np.where(keep, 0.0, mags[None, :])
        best = min(best, float(norm_rows(s, x.idx, rows, tol).min()))
    return best


def greedy_report(s: SpaceDescriptor, x: FiniteVector, N: int, tol: float = DEFAULT_TOL) -> GreedyReport:
    step = greedy_step(x, N)
    sigma = best_nterm_error(s, x, N, tol)
    rn = 0.0
    if len(step.residual):
        # same row layout as the subset search, so equal residuals give equal norms
        rn = float(norm_rows(s, x.idx, np.where(np.isin(x.idx, step.greedy_set), 0.0, x.mags)[None, :], tol)[0])
    if sigma == 0.0:
        if rn != 0.0:
            raise ArithmeticError("sigma_N = 0 with a nonzero greedy residual; the norm is not a lattice norm")
        ratio = 1.0
    else:
        ratio = rn / sigma
    return GreedyReport(step.N, step.greedy_set, step.approximant, step.residual, rn, sigma, ratio)


def greedy_ratio(s: SpaceDescriptor, x: FiniteVector, N: int, tol: float = DEFAULT_TOL) -> float:
    """||x - G_N(x)|| / sigma_N(x), with 0/0 read as 1."""
    return float(greedy_report(s, x, N, tol).ratio)


def random_vector(rng: np.random.Generator, support: int, window: int) -> FiniteVector:
    """Random support of the given size inside [1, window], coefficients uniform on [-1, 1]."""
    if support > window:
        raise DomainError("support larger than window")
    idx = np.sort(rng.choice(window, size=support, replace=False) + 1)
    vals = rng.uniform(-1.0, 1.0, size=support)
    return FiniteVector(tuple(idx), tuple(vals))


# democracy functions ----------------------------------------------------------


METHODS = ("exact-symmetric", "monotone-window", "exhaustive", "heuristic")


@dataclass(frozen=True)
class DemocracyRow:
    N: int
    phi_l: float
    phi_u: float
    ratio: float
    method: str
    phi_u_tail: Optional[float] = None


@dataclass(frozen=True)
class DemocracyTable:
    rows: tuple
    window: int

    def column(self, name: str) -> np.ndarray:
        return np.asarray([getattr(r, name) for r in self.rows], dtype=float)

    def row(self, N: int) -> DemocracyRow:
        for r in self.rows:
            if r.N == N:
                return r
        raise KeyError(N)

    def to_dict(self) -> dict:
        rows = []
        for r in self.rows:
            d = {"N": r.N, "phi_l": r.phi_l, "phi_u": r.phi_u, "ratio": r.ratio, "method": r.method}
            if r.phi_u_tail is not None:
                d["phi_u_tail"] = r.phi_u_tail
            rows.append(d)
        return {"window": self.window, "rows": rows}

    def to_csv(self, fmt: str = "%.12g") -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "phi_l", "phi_u", "ratio", "method"])
        for r in self.rows:
            w.writerow([r.N, fmt % r.phi_l, fmt % r.phi_u, fmt % r.ratio, r.method])
        return buf.getvalue()


def _indicator_norms(s, idx_sets: np.ndarray, tol: float) -> np.ndarray:
    """Norms of indicators, one per row of an (rows, N) index array."""
    out = np.empty(idx_sets.shape[0])
    for start in range(0, idx_sets.shape[0], _CHUNK_ROWS):
        block = idx_sets[start : start + _CHUNK_ROWS]
        if isinstance(s, (NakanoSpace, FlowSpace)):
            # coordinate functions depend on the index, so evaluate on the union
            union = np.unique(block)
            pos = np.searchsorted(union, block)
            mags = np.zeros((block.shape[0], union.size))
            mags[np.arange(block.shape[0])[:, None], pos] = 1.0
            out[start : start + block.shape[0]] = norm_rows(s, union, mags, tol)
        else:
            out[start : start + block.shape[0]] = norm_rows(s, block[0], np.ones(block.shape), tol)
    return out


def _tail_phi(s) -> Optional[callable]:
    if isinstance(s, NakanoSpace):
        p = s.exponents.limit
        if p is not None and math.isfinite(p):
            return lambda N: float(N) ** (1.0 / p)
    return None


def democracy_functions(
    s: SpaceDescriptor, N_max: int, window: int, tol: float = DEFAULT_TOL, grid_size: int = 64
) -> DemocracyTable:
    """phi_l(N) and phi_u(N) for N = 1..N_max over index sets inside [1, window].

    symmetric spaces   indicator of [1..N]                      exact-symmetric
    Nakano             N largest / smallest exponents           monotone-window
    other, window<=20  all N-subsets                            exhaustive
    other              top/bottom-N sets of F_n(1/t) on a grid  heuristic

    The Nakano path is exact within the window because the indicator norm
    decreases when any exponent increases.
    """
    _check_space(s)
    N_max, window = int(N_max), int(window)
    if N_max < 1:
        raise DomainError("N_max must be >= 1")
    if window < N_max:
        raise DomainError(f"window {window} must be >= N_max {N_max}")
    Ns = np.arange(1, N_max + 1)
    tail = _tail_phi(s)

    if s.symmetric:
        phis = np.array([space_norm(s, FiniteVector.indicator(range(1, N + 1)), tol) for N in Ns])
        lo, hi, method = phis, phis, "exact-symmetric"
    elif isinstance(s, NakanoSpace):
        n = np.arange(1, window + 1)
        p = s.exponents.values(n)
        by_p = n[np.lexsort((n, p))]  # increasing exponent, ties by index
        hi = _indicator_norms_prefixes(s, by_p, N_max, tol)
        lo = _indicator_norms_prefixes(s, by_p[::-1], N_max, tol)
        method = "monotone-window"
    elif window <= EXHAUSTIVE_WINDOW:
        lo, hi = np.empty(N_max), np.empty(N_max)
        base = np.arange(1, window + 1)
        for k, N in enumerate(Ns):
            sets = np.asarray(list(itertools.combinations(base, int(N))), dtype=np.int64)
            norms = _indicator_norms(s, sets, tol)
            lo[k], hi[k] = norms.min(), norms.max()
        method = "exhaustive"
    else:
        lo, hi = _heuristic_phis(s, N_max, window, tol, grid_size)
        method = "heuristic"

    rows = []
    for k, N in enumerate(Ns):
        rows.append(
            DemocracyRow(
                N=int(N),
                phi_l=float(lo[k]),
                phi_u=float(hi[k]),
                ratio=float(hi[k] / lo[k]),
                method=method,
                phi_u_tail=None if tail is None else tail(N),
            )
        )
    return DemocracyTable(tuple(rows), window)


def _indicator_norms_prefixes(s, order: np.ndarray, N_max: int, tol: float) -> np.ndarray:
    """Norm of the indicator of order[:N] for N = 1..N_max."""
    idx = np.sort(order[:N_max])
    pos = np.searchsorted(idx, order[:N_max])
    mags = np.zeros((N_max, N_max))
    for N in range(1, N_max + 1):
        mags[N - 1, pos[:N]] = 1.0
    return norm_rows(s, idx, mags, tol)


def _heuristic_phis(s, N_max: int, window: int, tol: float, grid_size: int):
    """Candidate extremal sets: for each t, the N indices with largest/smallest F_n(1/t)."""
    n = np.arange(1, window + 1)
    lo = np.full(N_max, np.inf)
    hi = np.zeros(N_max)
    # indicator norms of N-sets lie in [1, N]
    for t in np.geomspace(1.0, float(N_max), grid_size):
        c = s.coord_values(n, np.full(window, 1.0 / t))
        up = n[np.lexsort((n, -c))]
        down = n[np.lexsort((n, c))]
        hi = np.maximum(hi, _indicator_norms_prefixes(s, up, N_max, tol))
        lo = np.minimum(lo, _indicator_norms_prefixes(s, down, N_max, tol))
    # phi_u is a sup over |A| <= N and phi_l an inf over |A| >= N
    hi = np.maximum.accumulate(hi)
    lo = np.minimum.accumulate(lo[::-1])[::-1]
    return lo, hi


# right dominance --------------------------------------------------------------


def dominance_ratio(s: SpaceDescriptor, xs: Sequence[FiniteVector], ys: Sequence[FiniteVector]) -> float:
    """||sum x_j|| / ||sum y_j|| for disjoint blocks."""
    sx = FiniteVector.from_pairs(p for x in xs for p in zip(x.indices, x.values))
    sy = FiniteVector.from_pairs(p for y in ys for p in zip(y.indices, y.values))
    den = space_norm(s, sy)
    if den == 0:
        raise DomainError("y blocks sum to zero")
    return space_norm(s, sx) / den


def right_dominance_ratio(
    s: NakanoSpace, trials: int, seed: int = 0, window: int = 64, max_blocks: int = 4, max_block_len: int = 3
) -> float:
    """Largest observed ||sum x_j|| / ||sum y_j|| over random admissible block families.

    Each trial draws J <= max_blocks pairs of blocks with supp x_j left of
    supp y_j, all 2J blocks pairwise disjoint, coefficients uniform on
    [-1, 1]; x_j is shrunk when needed so that ||x_j|| <= ||y_j||.
    """
    if not isinstance(s, NakanoSpace):
        raise DescriptorError("right dominance is estimated for Nakano spaces only")
    p = s.exponents.values(np.arange(1, window + 1))
    if np.any(np.diff(p) > 0):
        raise HypothesisError("exponents must be nonincreasing on the sampled window")
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(int(trials)):
        J = int(rng.integers(1, max_blocks + 1))
        lens = rng.integers(1, max_block_len + 1, size=2 * J)
        total = int(lens.sum())
        if total > window:
            continue
        # token order on the line: x_j before y_j
        tokens = rng.permutation(2 * J)
        seen = set()
        order = []
        for t in tokens:
            j = int(t) % J
            order.append(("x" if j not in seen else "y", j))
            seen.add(j)
        pos = np.sort(rng.choice(window, size=total, replace=False) + 1)
        blocks = {}
        cur = 0
        for side, j in order:
            k = int(lens[j] if side == "x" else lens[J + j])
            blocks[(side, j)] = pos[cur : cur + k]
            cur += k
        union = pos
        rows = np.zeros((2 * J, total))
        for r, key in enumerate([("x", j) for j in range(J)] + [("y", j) for j in range(J)]):
            sel = np.searchsorted(union, blocks[key])
            rows[r, sel] = rng.uniform(-1.0, 1.0, size=sel.size)
        norms = norm_rows(s, union, np.abs(rows))
        nx, ny = norms[:J], norms[J:]
        if np.any(ny == 0):
            continue
        shrink = np.where(nx > ny, ny / np.where(nx > 0, nx, 1.0), 1.0)
        rows[:J] *= shrink[:, None]
        sums = np.vstack([np.abs(rows[:J]).sum(axis=0), np.abs(rows[J:]).sum(axis=0)])
        num, den = norm_rows(s, union, sums)
        best = max(best, float(num / den))
    return best


# embeddings ---------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingConstants:
    lower: float  # sup s_N / phi_l(N)
    upper: float  # sup phi_u(N) / s_N
    lower_growth: float
    upper_growth: float
    lower_growing: bool
    upper_growing: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


GROWTH_FLAG = 1.05


def embedding_constants(table: DemocracyTable, w: Optional[Weight]) -> EmbeddingConstants:
    """Range-bounded sup s_N/phi_l(N) and sup phi_u(N)/s_N.

    The growth figures compare each ratio at N_max with its value at
    N_max // 2; a factor above 1.05 is flagged as growth.
    """
    if w is None:
        raise DomainError("embedding constants need a weight")
    if not table.rows:
        raise DomainError("empty democracy table")
    Ns = np.asarray([r.N for r in table.rows])
    s = w.primitive(int(Ns.max()))[Ns - 1]
    a = s / table.column("phi_l")
    b = table.column("phi_u") / s
    half = max(1, int(Ns.max()) // 2)
    k = int(np.searchsorted(Ns, half))
    k = min(k, len(Ns) - 1)
    ga, gb = float(a[-1] / a[k]), float(b[-1] / b[k])
    return EmbeddingConstants(float(a.max()), float(b.max()), ga, gb, ga > GROWTH_FLAG, gb > GROWTH_FLAG)


def greedy_rows_csv(reports: Sequence[GreedyReport], fmt: str = "%.12g") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "sigma", "residual_norm", "ratio"])
    for r in reports:
        w.writerow([r.N, fmt % r.sigma, fmt % r.residual_norm, fmt % r.ratio])
    return buf.getvalue()
