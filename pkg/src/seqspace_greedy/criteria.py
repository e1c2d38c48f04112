"""Identification criteria for Nakano and flow spaces, and the block-basis builder.

The conditions are statements about infinite tails ("there is r < 1 with
sum r^{p_n} < inf", "|{n : s_n >= exp(-2^k)}| <= R^{2^k} for all k"). A
verdict of "holds" or "fails" is only issued when a closed-form tail
decides the statement; otherwise the verdict is "inconclusive" and the
evidence carries what was computed at finite scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BracketError, DescriptorError, DomainError, ShapeError
from .modular import FlowSpace, MusielakSpace
from .orlicz import OrliczFunction, fundamental_function
from .sequences import (
    ConstantTail,
    ConvergentTail,
    CountFunction,
    CountTail,
    DivergentTail,
    EnumeratedCount,
    ExpDecayCount,
    ExponentSequence,
    InverseLogCount,
    OscillatingTail,
    ScaleSequence,
)
from .vectors import FiniteVector

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
EVIDENCE_RANGE = 10**6


@dataclass(frozen=True)
class CriterionVerdict:
    criterion: str
    verdict: str
    evidence: dict = field(default_factory=dict)
    basis: str = ""

    def __post_init__(self):
        if self.verdict not in (HOLDS, FAILS, INCONCLUSIVE):
            raise DomainError(f"bad verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict,
            "evidence": dict(self.evidence),
            "basis": self.basis,
        }


@dataclass(frozen=True)
class NakanoClassification:
    identification: str  # "= l_p", "= c_0", "not l_p", "not c_0", "unknown"
    p: Optional[float]
    unit_basis_greedy: Optional[bool]
    democratic: Optional[bool]
    conclusion: str
    verdicts: tuple

    def verdict(self, criterion: str) -> CriterionVerdict:
        for v in self.verdicts:
            if v.criterion == criterion:
                return v
        raise KeyError(criterion)

    def to_dict(self) -> dict:
        return {
            "identification": self.identification,
            "p": self.p,
            "unit_basis_greedy": self.unit_basis_greedy,
            "democratic": self.democratic,
            "conclusion": self.conclusion,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def _lp(p: float) -> str:
    return f"l_{p:g}"


BASIS_LP = "unit basis greedy iff the space equals l_p for some p in [1, inf] (p = inf read as c_0)"
BASIS_LP_IDENT = "equality with l_p iff sum_n r^(p p_n / |p_n - p|) < inf for some 0 < r < 1"
BASIS_C0 = "equality with c_0 iff sum_n r^(p_n) < inf for some 0 < r < 1"
BASIS_DENSITY = "finite sequences are dense iff sup_n p_n < inf"
BASIS_NO_GREEDY_1 = (
    "exponents tending to 1 with sum_n r^(1/|p_n - 1|) = inf for every r: "
    "no greedy basis at all (a greedy basis would force equality with l_1)"
)
BASIS_NO_GREEDY_INF = "exponents tending to inf: the space has a greedy basis iff it equals c_0"
BASIS_CLUSTER = "two cluster points p1 < p2 give phi_u / phi_l >= c N^(1/p1 - 1/p2)"


def _evidence_range(e: ExponentSequence, upto: int = EVIDENCE_RANGE) -> np.ndarray:
    return e.values(np.arange(1, upto + 1))


def _density_verdict(e: ExponentSequence, bounded: Optional[bool], p: np.ndarray) -> CriterionVerdict:
    ev = {"sup_p_on_range": float(p.max()), "range": int(p.size)}
    if bounded is None:
        return CriterionVerdict("density", INCONCLUSIVE, ev, BASIS_DENSITY)
    return CriterionVerdict("density", HOLDS if bounded else FAILS, ev, BASIS_DENSITY)


def nakano_space_verdict(e: ExponentSequence, evidence_range: int = EVIDENCE_RANGE) -> NakanoClassification:
    """Classify a Nakano space from its exponent tail.

    constant p         = l_p, greedy
    p + c/log(n+1)     = l_p (sup log(n)|p_n - p| <= |c|)
    p + c/sqrt(log)    not l_p; for p = 1 no greedy basis at all
    divergent          = c_0 iff sum r^{p_n} < inf, decided from the form
    periodic           not democratic
    """
    tail = e.tail
    if tail is None or isinstance(tail, CountTail):
        p = np.asarray(e.prefix) if e.prefix else np.zeros(1)
        ev = {
            "prefix_length": len(e.prefix),
            "prefix_min": float(p.min()),
            "prefix_max": float(p.max()),
            "prefix_last": float(p[-1]),
        }
        v = CriterionVerdict("identification", INCONCLUSIVE, ev, BASIS_LP)
        return NakanoClassification("unknown", None, None, None, "inconclusive at scale: no closed-form tail", (v,))

    n = np.arange(1, evidence_range + 1, dtype=float)
    pv = _evidence_range(e, evidence_range)
    verdicts = []

    if isinstance(tail, ConstantTail) or (isinstance(tail, ConvergentTail) and tail.c == 0):
        p = float(tail.p)
        ev = {"p": p, "max_deviation_on_range": float(np.abs(pv - p).max())}
        verdicts.append(CriterionVerdict("lp_identification", HOLDS, ev, BASIS_LP_IDENT))
        verdicts.append(_density_verdict(e, True, pv))
        return NakanoClassification(
            f"= {_lp(p)}", p, True, True, f"= {_lp(p)}; unit basis greedy", tuple(verdicts)
        )

    if isinstance(tail, ConvergentTail):
        p, c = float(tail.p), float(tail.c)
        dev = np.abs(pv - p)
        sup_log_dev = float((np.log(n) * dev).max())
        k = len(e.prefix)
        if tail.rate == "log":
            # p_n p >= 1 gives exponent >= log(n+1)/|c|, so r = exp(-2|c|) yields terms <= (n+1)^-2
            r = math.exp(-2.0 * abs(c))
            expo = pv * p / np.where(dev > 0, dev, np.inf)
            partial = float(np.exp(expo * math.log(r)).sum())
            prefix_part = float((np.log(n[:k]) * dev[:k]).max()) if k else 0.0
            ev = {
                "p": p,
                "sup_log_n_deviation_bound": max(abs(c), prefix_part),
                "sup_log_n_deviation_on_range": sup_log_dev,
                "witness_r": r,
                "partial_sum_on_range": partial,
                "range": evidence_range,
            }
            verdicts.append(CriterionVerdict("lp_identification", HOLDS, ev, BASIS_LP_IDENT))
            verdicts.append(_density_verdict(e, True, pv))
            return NakanoClassification(
                f"= {_lp(p)}", p, True, True, f"= {_lp(p)}; unit basis greedy", tuple(verdicts)
            )
        # sqrt_log: log(n) |c| / sqrt(log(n+2)) grows like sqrt(log n)
        checkpoints = [10**j for j in range(1, int(math.log10(evidence_range)) + 1)]
        trend = {str(m): float(math.log(m) * abs(pv[m - 1] - p)) for m in checkpoints}
        r_probe = 0.5
        expo = pv * p / np.where(dev > 0, dev, np.inf)
        ev = {
            "p": p,
            "log_n_deviation_trend": trend,
            "growth": "sqrt(log n)",
            "partial_sum_r_half_on_range": float(np.exp(expo * math.log(r_probe)).sum()),
            "range": evidence_range,
        }
        verdicts.append(CriterionVerdict("lp_identification", FAILS, ev, BASIS_LP_IDENT))
        verdicts.append(_density_verdict(e, True, pv))
        if p == 1.0:
            verdicts.append(
                CriterionVerdict("greedy_basis_exists", FAILS, {"p": p, "rests_on": "cited result"}, BASIS_NO_GREEDY_1)
            )
            return NakanoClassification(
                f"not {_lp(p)}", p, False, None, f"not {_lp(p)}; no greedy basis", tuple(verdicts)
            )
        return NakanoClassification(
            f"not {_lp(p)}", p, False, None, f"not {_lp(p)}; unit basis not greedy", tuple(verdicts)
        )

    if isinstance(tail, DivergentTail):
        decided, r, reason = _c0_symbolic(tail)
        ev = {"form": tail.kind, "reason": reason, "range": evidence_range}
        if decided:
            ev["witness_r"] = r
            ev["partial_sum_on_range"] = float(np.exp(pv * math.log(r)).sum())
            ev["last_term"] = float(math.exp(pv[-1] * math.log(r)))
        else:
            ev["partial_sum_r_half_on_range"] = float(np.exp(pv * math.log(0.5)).sum())
        verdicts.append(CriterionVerdict("c0_identification", HOLDS if decided else FAILS, ev, BASIS_C0))
        verdicts.append(_density_verdict(e, False, pv))
        if decided:
            return NakanoClassification("= c_0", math.inf, True, True, "= c_0; unit basis greedy", tuple(verdicts))
        verdicts.append(CriterionVerdict("greedy_basis_exists", FAILS, {"rests_on": "cited result"}, BASIS_NO_GREEDY_INF))
        return NakanoClassification("not c_0", math.inf, False, None, "not c_0; no greedy basis", tuple(verdicts))

    if isinstance(tail, OscillatingTail):
        p1, p2 = tail.liminf, tail.limsup
        ev = {"liminf": p1, "limsup": p2, "ratio_exponent": 1.0 / p1 - 1.0 / p2}
        verdicts.append(CriterionVerdict("democracy", FAILS, ev, BASIS_CLUSTER))
        verdicts.append(_density_verdict(e, True, pv))
        return NakanoClassification(
            "not l_p", None, False, False, "not democratic; unit basis not greedy", tuple(verdicts)
        )

    v = CriterionVerdict("identification", INCONCLUSIVE, {"tail": type(tail).__name__}, BASIS_LP)
    return NakanoClassification("unknown", None, None, None, "inconclusive at scale", (v,))


def _c0_symbolic(t: DivergentTail):
    """Decide whether sum_n r^{p_n} < inf for some r in (0, 1)."""
    if t.kind == "power":
        return True, 0.5, "r^(c n^gamma) decays faster than any power of n"
    if t.kind == "loglog":
        return False, None, "r^(c log log n) = (log n)^(c log r) is never summable"
    if t.gamma > 1:
        return True, 0.5, "r^(c log^gamma n) with gamma > 1 decays faster than any power of n"
    if t.gamma == 1:
        r = math.exp(-2.0 / t.c)
        return True, r, "r^(c log(n+shift)) = (n+shift)^(c log r); r = exp(-2/c) gives exponent -2"
    return False, None, "r^(c log^gamma n) with gamma < 1 decays slower than any power of n"


# condition on scale counts ----------------------------------------------------


def condition_c_check(counts: CountFunction, R: float, k_max: int) -> CriterionVerdict:
    """Test log|{n : s_n >= exp(-2^k)}| <= 2^k log R, all in log space.

    Closed-form counts decide every k: exponential decay holds once the
    ratio log_count / 2^k is past its monotone point; the inverse
    logarithm has log log count = 2^k and fails for every R. Enumerated
    counts are lower bounds, so a violation refutes this R, while passing
    comparisons stay inconclusive.
    """
    if not R > 1:
        raise DomainError(f"need R > 1, got {R}")
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    log_R = math.log(R)
    basis = "greedy unit basis of a flow space of F^{p,a} iff |{n : s_n >= exp(-2^k)}| <= R^(2^k) for all k"

    def violated(k: int) -> bool:
        llc = counts.log_log_count(k)
        if llc == -math.inf:
            return False
        return llc > k * math.log(2.0) + math.log(log_R)

    def row(k: int) -> dict:
        return {"k": k, "log_count": _finite(counts.log_count(k)), "bound": (2.0**k) * log_R}

    if isinstance(counts, ExpDecayCount):
        last = max(k_max, counts.ratio_monotone_from())
        rows = [row(k) for k in range(last + 1)]
        bad = [k for k in range(last + 1) if violated(k)]
        ev = {"R": R, "checked_through_k": last, "rows": rows[: k_max + 1], "closed_form": "exp(-c n)"}
        best_R = max(math.exp(counts.log_count(k) / 2.0**k) for k in range(last + 1) if counts.log_count(k) > -math.inf)
        ev["smallest_valid_R"] = best_R
        if bad:
            ev["witness_k"] = bad[0]
            return CriterionVerdict("condition_c", FAILS, ev, basis)
        return CriterionVerdict("condition_c", HOLDS, ev, basis)

    if isinstance(counts, InverseLogCount):
        k = 0
        while not violated(k):
            k += 1
        ev = {
            "R": R,
            "witness_k": k,
            "log_log_count": counts.log_log_count(k),
            "log_bound": k * math.log(2.0) + math.log(log_R),
            "fails_for_every_R": True,
            "rows": [row(j) for j in range(min(k_max, 6) + 1)],
            "closed_form": "1/log(n+1)",
        }
        return CriterionVerdict("condition_c", FAILS, ev, basis)

    rows, truncated = [], False
    for k in range(k_max + 1):
        r = row(k)
        if isinstance(counts, EnumeratedCount):
            cnt, tr = counts.count(k)
            r["count"] = cnt
            r["truncated"] = tr
            truncated |= tr
        rows.append(r)
        if violated(k):
            ev = {"R": R, "witness_k": k, "rows": rows, "count_is_lower_bound": True}
            return CriterionVerdict("condition_c", FAILS, ev, basis)
    ev = {"R": R, "rows": rows, "truncated": truncated, "status": "pass-at-scale"}
    return CriterionVerdict("condition_c", INCONCLUSIVE, ev, basis)


def _finite(v: float):
    return v if math.isfinite(v) else ("inf" if v > 0 else "-inf")


# block basis ------------------------------------------------------------------


@dataclass(frozen=True)
class BlockBasis:
    F: OrliczFunction
    lengths: tuple
    scales: tuple
    blocks: tuple  # FiniteVector per block

    @property
    def flow_space(self) -> FlowSpace:
        return FlowSpace(self.F, ScaleSequence(self.scales, None))

    def combine(self, a: Sequence[float]) -> FiniteVector:
        """sum_n a_n x_n."""
        pairs = []
        for coef, blk in zip(a, self.blocks):
            pairs.extend((i, coef * v) for i, v in zip(blk.indices, blk.values))
        return FiniteVector.from_pairs(pairs)

    def to_dict(self) -> dict:
        starts = np.cumsum((0,) + self.lengths[:-1]) + 1
        return {
            "function": self.F.to_dict(),
            "lengths": list(self.lengths),
            "scales": list(self.scales),
            "block_starts": [int(s) for s in starts],
        }


def build_block_basis(F: OrliczFunction, lengths: Sequence[int], tol: float = 1e-12) -> BlockBasis:
    """Consecutive blocks x_n = s_n 1_{B_n}, |B_n| = N_n, with N_n F(s_n) = 1.

    Then the modular of sum a_n x_n in l_F equals sum_n F(s_n |a_n|)/F(s_n),
    so (x_n) is isometrically equivalent to the unit basis of the flow space.
    """
    lengths = tuple(int(N) for N in lengths)
    if not lengths or any(N < 1 for N in lengths):
        raise DomainError("block lengths must be positive")
    scales = []
    for N in lengths:
        try:
            scales.append(1.0 / fundamental_function(F, N, tol))
        except BracketError as exc:
            raise ShapeError(f"cannot solve N F(s) = 1 for N = {N}: {exc}") from exc
    blocks, start = [], 1
    for N, s in zip(lengths, scales):
        blocks.append(FiniteVector(tuple(range(start, start + N)), (s,) * N))
        start += N
    return BlockBasis(F, lengths, tuple(scales), tuple(blocks))


@dataclass(frozen=True)
class IsometryCheck:
    trials: int
    max_relative_error: float
    passed: bool
    tol: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_block_isometry(bb: BlockBasis, trials: int = 100, seed: int = 0, tol: float = 1e-9) -> IsometryCheck:
    """Compare ||sum a_n x_n|| in l_F with ||a|| in the flow space on random a."""
    from .modular import OrliczSpace

    rng = np.random.default_rng(seed)
    m = len(bb.lengths)
    lf, flow = OrliczSpace(bb.F), bb.flow_space
    idx_a = np.arange(1, m + 1)
    total = int(sum(bb.lengths))
    idx_x = np.arange(1, total + 1)
    A = rng.uniform(-1.0, 1.0, size=(trials, m))
    rep = np.repeat(np.asarray(bb.scales), bb.lengths)
    X = np.abs(np.repeat(A, bb.lengths, axis=1)) * rep
    lhs = lf.norm_batch(idx_x, X)
    rhs = flow.norm_batch(idx_a, np.abs(A))
    err = float((np.abs(lhs - rhs) / np.maximum(rhs, 1e-300)).max()) if trials else 0.0
    return IsometryCheck(int(trials), err, err <= tol, tol)


# witness verification -----------------------------------------------------------


@dataclass(frozen=True)
class MusielakWitness:
    """(a_n) prefix, delta, b, C for "G_n(t) < delta => F_n(t) <= C G_n(b t) + a_n"."""

    a: tuple
    delta: float
    b: float = 1.0
    C: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        if any(v < 0 for v in self.a):
            raise DomainError("a_n must be nonnegative")
        if self.delta < 0 or not self.b > 0 or not self.C > 0:
            raise DomainError("need delta >= 0 and b, C > 0")


def _grid(t_min: float, t_max: float, size: int) -> np.ndarray:
    return np.geomspace(t_min, t_max, size)


def _implication_check(guard, lhs, rhs, samples: int, a: tuple, grid: np.ndarray, rel: float):
    """First (n, t) with guard true and lhs > rhs + a_n, scanning n = 1..samples."""
    checked = 0
    for n in range(1, samples + 1):
        g = guard(n, grid)
        on = g
        if not np.any(on):
            continue
        t = grid[on]
        left, right = lhs(n, t), rhs(n, t) + a[n - 1]
        checked += t.size
        bad = left > right * (1.0 + rel) + 1e-300
        if np.any(bad):
            j = int(np.flatnonzero(bad)[0])
            return (n, float(t[j]), float(left[j]), float(right[j])), checked
    return None, checked


def musielak_witness_check(
    Fs: MusielakSpace,
    Gs: MusielakSpace,
    witness: MusielakWitness,
    samples: int = 64,
    grid_size: int = 400,
    t_range: tuple = (1e-12, 1.0),
    rel: float = 1e-12,
) -> CriterionVerdict:
    """Check "G_n(t) < delta => F_n(t) <= C G_n(b t) + a_n" on a log grid.

    The condition characterizes l_(G_n) in l_(F_n): with F_n = t^2 and
    G_n = t it holds with a_n = 0, matching l_1 in l_2.

    A violation refutes the witness ("fails"); passing is evidence at
    scale only ("inconclusive"), since the statement covers every n and t.
    """
    return _witness(
        "inclusion_witness",
        lambda n, t: Gs.coord_values(np.full(t.shape, n), t) < witness.delta,
        lambda n, t: Fs.coord_values(np.full(t.shape, n), t),
        lambda n, t: witness.C * Gs.coord_values(np.full(t.shape, n), witness.b * t),
        witness,
        samples,
        grid_size,
        t_range,
        rel,
        "inclusion l_(G_n) in l_(F_n) iff some (a_n) in l_1, delta, b, C make G_n(t) < delta imply F_n(t) <= C G_n(b t) + a_n",
    )


def musielak_density_witness_check(
    Fs: MusielakSpace,
    witness: MusielakWitness,
    samples: int = 64,
    grid_size: int = 400,
    t_range: tuple = (1e-12, 1.0),
    rel: float = 1e-12,
) -> CriterionVerdict:
    """Check "F_n(t) < delta => F_n(2t) <= C F_n(t) + a_n" on a log grid (b is ignored)."""
    return _witness(
        "density_witness",
        lambda n, t: Fs.coord_values(np.full(t.shape, n), t) < witness.delta,
        lambda n, t: Fs.coord_values(np.full(t.shape, n), 2.0 * t),
        lambda n, t: witness.C * Fs.coord_values(np.full(t.shape, n), t),
        witness,
        samples,
        grid_size,
        t_range,
        rel,
        "finite sequences dense iff some (a_n) in l_1, delta, C make F_n(t) < delta imply F_n(2t) <= C F_n(t) + a_n",
    )


def _witness(name, guard, lhs, rhs, witness, samples, grid_size, t_range, rel, basis) -> CriterionVerdict:
    if len(witness.a) < samples:
        raise DescriptorError(f"witness supplies {len(witness.a)} values of a_n, {samples} needed")
    ev = {
        "samples": samples,
        "grid_size": grid_size,
        "t_range": list(t_range),
        "a_prefix_sum": float(sum(witness.a[:samples])),
        "delta": witness.delta,
        "b": witness.b,
        "C": witness.C,
    }
    if witness.delta == 0:
        ev["status"] = "vacuous"
        return CriterionVerdict(name, INCONCLUSIVE, ev, basis)
    grid = _grid(t_range[0], t_range[1], grid_size)
    hit, checked = _implication_check(guard, lhs, rhs, samples, witness.a, grid, rel)
    ev["points_checked"] = checked
    if hit is not None:
        n, t, left, right = hit
        ev.update({"status": "violation", "n": n, "t": t, "lhs": left, "rhs": right})
        return CriterionVerdict(name, FAILS, ev, basis)
    ev["status"] = "pass-at-scale"
    return CriterionVerdict(name, INCONCLUSIVE, ev, basis)
