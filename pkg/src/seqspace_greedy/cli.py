"""Command-line entry point: analyze, table, criteria, blocks.

Exit codes: 0 success, 1 input error, 2 expectation mismatch (--expect),
3 combinatorial budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import descriptors
from .criteria import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    build_block_basis,
    condition_c_check,
    nakano_space_verdict,
    verify_block_isometry,
)
from .errors import BudgetError, SeqSpaceError
from .greedy import (
    democracy_functions,
    embedding_constants,
    greedy_report,
    greedy_rows_csv,
    random_vector,
    space_norm,
)
from .modular import FlowSpace, NakanoSpace, OrliczSpace
from .orlicz import delta2_estimate, fundamental_function
from .rearrangement import LorentzSpace, MarcinkiewiczSpace, WeakLorentzSpace, weight_properties
from .report import FLOAT_FMT, to_json
from .vectors import FiniteVector

EXIT_OK, EXIT_INPUT, EXIT_EXPECT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    space: Optional[str] = None
    vector: Optional[str] = None
    N_max: int = 16
    window: Optional[int] = None
    trials: int = 20
    seed: int = 0
    tol: float = 1e-12
    fmt: str = "json"
    out: Optional[str] = None
    expect: Optional[str] = None
    greedy: bool = False
    R: float = 2.0
    k_max: int = 10
    lengths: tuple = (2, 4, 8, 16)

    def __post_init__(self):
        if not self.tol > 0:
            raise InputError("--tol must be positive")
        if self.N_max < 1:
            raise InputError("--Nmax must be >= 1")
        if self.window is not None and self.window < self.N_max:
            raise InputError("--window must be >= --Nmax")
        if self.trials < 0:
            raise InputError("--trials must be >= 0")

    @property
    def effective_window(self) -> int:
        return self.window if self.window is not None else 2 * self.N_max


# pipelines -------------------------------------------------------------------


def _space_verdict(space, cfg: RunConfig) -> tuple[str, dict, list]:
    """Primary verdict (unit basis greedy?), criteria payload and summary lines."""
    if isinstance(space, NakanoSpace):
        cls = nakano_space_verdict(space.exponents)
        verdict = {True: HOLDS, False: FAILS, None: INCONCLUSIVE}[cls.unit_basis_greedy]
        return verdict, cls.to_dict(), [f"verdict: {cls.conclusion}"]
    if isinstance(space, FlowSpace):
        if space.scales.is_constant:
            return HOLDS, {"note": "constant scales give the Orlicz space itself"}, ["verdict: symmetric unit basis"]
        v = condition_c_check(space.scales.count_function(), cfg.R, cfg.k_max)
        line = {HOLDS: "greedy unit basis (condition c holds)", FAILS: "unit basis not greedy (condition c fails)"}
        return v.verdict, v.to_dict(), [f"verdict: {line.get(v.verdict, 'inconclusive at scale')}"]
    return HOLDS, {"note": "symmetric space: unit basis greedy"}, ["verdict: greedy unit basis (symmetric)"]


def _spot_checks(space, cfg: RunConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    vecs = [("e_1", FiniteVector.unit(1)), ("indicator[1..4]", FiniteVector.indicator(range(1, 5)))]
    for j in range(3):
        vecs.append((f"random_{j}", random_vector(rng, 6, max(6, cfg.effective_window))))
    return [{"label": lab, "vector": v.to_dict(), "norm": space_norm(space, v, cfg.tol)} for lab, v in vecs]


def _greedy_sampling(space, cfg: RunConfig) -> dict:
    rng = np.random.default_rng(cfg.seed + 1)
    support = min(8, cfg.effective_window)
    ratios = []
    for _ in range(cfg.trials):
        x = random_vector(rng, support, cfg.effective_window)
        N = int(rng.integers(1, support))
        ratios.append(greedy_report(space, x, N, cfg.tol).ratio)
    if not ratios:
        return {"trials": 0}
    return {"trials": cfg.trials, "support": support, "max_ratio": max(ratios), "mean_ratio": float(np.mean(ratios))}


def _kind_extras(space, table, cfg: RunConfig) -> tuple[dict, list]:
    extras, lines = {}, []
    if isinstance(space, OrliczSpace):
        extras["delta2_estimate"] = delta2_estimate(space.F, 0.5)
        extras["fundamental_function"] = [
            {"N": N, "D_N": fundamental_function(space.F, N)} for N in (1, 2, 4, 8, 16, 32, 64)
        ]
    if isinstance(space, (MarcinkiewiczSpace, LorentzSpace, WeakLorentzSpace)):
        w = space.weight
        M = min(1024, max(4, 4 * cfg.N_max))
        wp = weight_properties(w, M)
        extras["weight_properties"] = {
            "M": wp.M,
            "doubling": wp.doubling,
            "regularity": wp.regularity,
            "submultiplicativity": wp.submultiplicativity,
            "nonincreasing": wp.nonincreasing,
            "tail": wp.tail,
        }
        lines.append(
            f"regularity {FLOAT_FMT % wp.regularity}; submultiplicativity {FLOAT_FMT % wp.submultiplicativity}"
        )
        if not isinstance(space, WeakLorentzSpace):
            extras["embedding_constants"] = embedding_constants(table, w).to_dict()
        if isinstance(space, MarcinkiewiczSpace):
            s = w.primitive(cfg.N_max)
            extras["fundamental_N_over_s_N"] = [
                {"N": r.N, "norm": r.phi_u, "N_over_s_N": r.N / s[r.N - 1]} for r in table.rows
            ]
    return extras, lines


def cmd_analyze(cfg: RunConfig) -> tuple[dict, str]:
    space = _load_space(cfg)
    table = democracy_functions(space, cfg.N_max, cfg.effective_window, cfg.tol)
    verdict, crit, lines = _space_verdict(space, cfg)
    ratio_at_max = table.rows[-1].ratio
    lines.insert(0, f"democracy ratio at N={cfg.N_max}: {FLOAT_FMT % ratio_at_max}")
    extras, more = _kind_extras(space, table, cfg)
    report = {
        "command": "analyze",
        "config": _config_dict(cfg),
        "space": space.to_dict(),
        "norm_checks": _spot_checks(space, cfg),
        "democracy": table.to_dict(),
        "greedy_sampling": _greedy_sampling(space, cfg),
        "criteria": crit,
        "verdict": verdict,
        "summary": lines + more,
    }
    report.update(extras)
    return report, verdict


def cmd_table(cfg: RunConfig):
    space = _load_space(cfg)
    if cfg.greedy:
        if cfg.vector is None:
            raise InputError("--greedy needs --vector")
        x = descriptors.load_vector(cfg.vector)
        reports = [greedy_report(space, x, N, cfg.tol) for N in range(1, min(cfg.N_max, len(x)) + 1)]
        if cfg.fmt == "csv":
            return greedy_rows_csv(reports)
        rows = [{"N": r.N, "sigma": r.sigma, "residual_norm": r.residual_norm, "ratio": r.ratio} for r in reports]
        return {"command": "table", "config": _config_dict(cfg), "greedy_rows": rows}
    table = democracy_functions(space, cfg.N_max, cfg.effective_window, cfg.tol)
    if cfg.fmt == "csv":
        return table.to_csv(FLOAT_FMT)
    return {"command": "table", "config": _config_dict(cfg), "democracy": table.to_dict()}


def cmd_criteria(cfg: RunConfig) -> tuple[dict, str]:
    space = _load_space(cfg)
    verdict, crit, lines = _space_verdict(space, cfg)
    return {"command": "criteria", "config": _config_dict(cfg), "criteria": crit, "verdict": verdict, "summary": lines}, verdict


def cmd_blocks(cfg: RunConfig) -> tuple[dict, str]:
    raw = _load_raw(cfg.space, "--space")
    if isinstance(raw, dict) and "family" in raw:
        F = descriptors.parse_function(raw)
    else:
        space = descriptors.parse_space(raw)
        if not isinstance(space, OrliczSpace):
            raise InputError("blocks needs an Orlicz function or an orlicz space")
        F = space.F
    bb = build_block_basis(F, cfg.lengths)
    check = verify_block_isometry(bb, cfg.trials, cfg.seed)
    verdict = HOLDS if check.passed else FAILS
    return {"command": "blocks", "config": _config_dict(cfg), "blocks": bb.to_dict(), "isometry": check.to_dict(), "verdict": verdict}, verdict


# plumbing ----------------------------------------------------------------------


def _load_raw(path, flag):
    if path is None:
        raise InputError(f"{flag} is required")
    return descriptors.load_file(path)


def _load_space(cfg: RunConfig):
    return descriptors.parse_space(_load_raw(cfg.space, "--space"))


def _config_dict(cfg: RunConfig) -> dict:
    # paths are reported by file name only so outputs do not depend on the working directory
    return {
        "space": None if cfg.space is None else Path(cfg.space).name,
        "vector": None if cfg.vector is None else Path(cfg.vector).name,
        "Nmax": cfg.N_max,
        "window": cfg.effective_window,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "tol": cfg.tol,
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seqspace-greedy", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("analyze", "full report for one space"),
        ("table", "democracy table, or greedy table with --greedy"),
        ("criteria", "identification criteria only"),
        ("blocks", "block basis of an Orlicz space and its isometry check"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--space", help="space (or, for blocks, Orlicz function) JSON file")
        p.add_argument("--vector", help="vector JSON file")
        p.add_argument("--Nmax", type=int, default=16)
        p.add_argument("--window", type=int, default=None)
        p.add_argument("--trials", type=int, default=100 if name == "blocks" else 20)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-12)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--expect", choices=(HOLDS, FAILS))
        p.add_argument("--greedy", action="store_true", help="table: greedy rows for --vector")
        p.add_argument("--R", type=float, default=2.0, help="candidate R for the scale-count condition")
        p.add_argument("--kmax", type=int, default=10)
        p.add_argument("--lengths", default="2,4,8,16", help="comma-separated block lengths")
    return ap


def _config_from_args(ns) -> RunConfig:
    try:
        lengths = tuple(int(v) for v in ns.lengths.split(",") if v.strip())
    except ValueError:
        raise InputError(f"bad --lengths {ns.lengths!r}") from None
    return RunConfig(
        command=ns.command,
        space=ns.space,
        vector=ns.vector,
        N_max=ns.Nmax,
        window=ns.window,
        trials=ns.trials,
        seed=ns.seed,
        tol=ns.tol,
        fmt=ns.format,
        out=ns.out,
        expect=ns.expect,
        greedy=ns.greedy,
        R=ns.R,
        k_max=ns.kmax,
        lengths=lengths,
    )


COMMANDS = {"analyze": cmd_analyze, "table": cmd_table, "criteria": cmd_criteria, "blocks": cmd_blocks}


def run(cfg: RunConfig) -> tuple[str, Optional[str]]:
    result = COMMANDS[cfg.command](cfg)
    verdict = None
    if isinstance(result, tuple):
        result, verdict = result
    if isinstance(result, str):
        return result, verdict
    if cfg.fmt == "csv":
        raise InputError(f"{cfg.command} has no CSV form; use --format json")
    return to_json(result), verdict


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(ns)
        text, verdict = run(cfg)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, SeqSpaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if cfg.expect is not None and verdict != cfg.expect:
        print(f"expectation mismatch: expected {cfg.expect}, got {verdict}", file=sys.stderr)
        return EXIT_EXPECT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
