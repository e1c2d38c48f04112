"""JSON descriptors for functions, sequences, weights, spaces and vectors."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import DescriptorError
from .modular import FlowSpace, NakanoSpace, OrliczSpace
from .orlicz import DualG, Flow, Fpa, OrliczFunction, Power, Table
from .rearrangement import LorentzSpace, MarcinkiewiczSpace, WeakLorentzSpace, Weight
from .sequences import (
    ConjugateTail,
    ConstantTail,
    ConvergentTail,
    CountTail,
    DivergentTail,
    ExponentSequence,
    OscillatingTail,
    ScaleSequence,
)
from .vectors import FiniteVector


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_file(path) -> object:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DescriptorError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, str(path))


def _need(d: dict, key: str, what: str):
    if not isinstance(d, dict):
        raise DescriptorError(f"{what} must be a JSON object")
    if key not in d:
        raise DescriptorError(f"{what} is missing {key!r}")
    return d[key]


def _num(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DescriptorError(f"{what} must be a number, got {v!r}")
    return float(v)


def _nums(v, what: str) -> tuple:
    if not isinstance(v, list):
        raise DescriptorError(f"{what} must be a list")
    return tuple(_num(x, what) for x in v)


# Orlicz functions


def parse_function(d: dict) -> OrliczFunction:
    fam = _need(d, "family", "Orlicz function")
    if fam == "power":
        return Power(_num(_need(d, "p", "power"), "p"))
    if fam == "fpa":
        return Fpa(_num(_need(d, "p", "fpa"), "p"), _num(_need(d, "a", "fpa"), "a"))
    if fam == "dualG":
        return DualG()
    if fam == "flow":
        return Flow(parse_function(_need(d, "base", "flow")), _num(_need(d, "s", "flow"), "s"))
    if fam == "table":
        pts = _need(d, "points", "table")
        if not isinstance(pts, list) or any(not isinstance(p, list) or len(p) != 2 for p in pts):
            raise DescriptorError("table points must be [[t, F], ...]")
        return Table(tuple((_num(a, "t"), _num(b, "F")) for a, b in pts))
    raise DescriptorError(f"unknown Orlicz family {fam!r}")


# sequences


def parse_tail(d):
    if d is None:
        return None
    kind = _need(d, "type", "tail")
    if kind == "constant":
        return ConstantTail(_num(_need(d, "p", "constant tail"), "p"))
    if kind == "convergent":
        return ConvergentTail(
            _num(_need(d, "p", "convergent tail"), "p"),
            str(_need(d, "rate", "convergent tail")),
            _num(d.get("c", 1.0), "c"),
        )
    if kind == "divergent":
        return DivergentTail(
            str(_need(d, "form", "divergent tail")),
            c=_num(d.get("c", 1.0), "c"),
            shift=_num(d.get("shift", 0.0), "shift"),
            gamma=_num(d.get("gamma", 1.0), "gamma"),
            offset=_num(d.get("offset", 0.0), "offset"),
        )
    if kind == "oscillating":
        return OscillatingTail(_nums(_need(d, "pattern", "oscillating tail"), "pattern"))
    if kind == "count":
        return CountTail(str(d.get("description", "")), _nums(d.get("log_counts", []), "log_counts"))
    if kind == "conjugate":
        return ConjugateTail(parse_exponents(_need(d, "base", "conjugate tail")))
    raise DescriptorError(f"unknown tail type {kind!r}")


def parse_exponents(d: dict) -> ExponentSequence:
    if not isinstance(d, dict):
        raise DescriptorError("exponents must be a JSON object")
    return ExponentSequence(_nums(d.get("prefix", []), "prefix"), parse_tail(d.get("tail")))


def parse_scales(d: dict) -> ScaleSequence:
    if not isinstance(d, dict):
        raise DescriptorError("scales must be a JSON object")
    form = d.get("form")
    return ScaleSequence(_nums(d.get("prefix", []), "prefix"), None if form is None else str(form))


def parse_weight(d: dict) -> Weight:
    if not isinstance(d, dict):
        raise DescriptorError("weight must be a JSON object")
    form = str(d.get("form", "custom"))
    base = d.get("base")
    return Weight(form, _nums(d.get("prefix", []), "prefix"), None if base is None else parse_weight(base))


# spaces and vectors


def parse_space(d: dict):
    kind = _need(d, "kind", "space")
    if kind == "nakano":
        return NakanoSpace(parse_exponents(_need(d, "exponents", "nakano space")))
    if kind == "orlicz":
        return OrliczSpace(parse_function(_need(d, "function", "orlicz space")))
    if kind == "flow":
        return FlowSpace(parse_function(_need(d, "base", "flow space")), parse_scales(_need(d, "scales", "flow space")))
    if kind == "marcinkiewicz":
        return MarcinkiewiczSpace(parse_weight(_need(d, "weight", "marcinkiewicz space")))
    if kind == "lorentz":
        return LorentzSpace(parse_weight(_need(d, "weight", "lorentz space")))
    if kind == "weak_lorentz":
        return WeakLorentzSpace(parse_weight(_need(d, "weight", "weak_lorentz space")))
    raise DescriptorError(f"unknown space kind {kind!r}")


def parse_vector(d: dict) -> FiniteVector:
    entries = _need(d, "entries", "vector")
    if not isinstance(entries, list) or any(not isinstance(e, list) or len(e) != 2 for e in entries):
        raise DescriptorError("vector entries must be [[index, value], ...]")
    pairs = []
    for i, v in entries:
        if isinstance(i, bool) or not isinstance(i, int):
            raise DescriptorError(f"vector index must be an integer, got {i!r}")
        pairs.append((i, _num(v, "vector value")))
    return FiniteVector.from_pairs(pairs)


def dump(obj) -> dict:
    """Descriptor of any object with ``to_dict``."""
    return obj.to_dict()


def load_space(path):
    return parse_space(load_file(path))


def load_vector(path) -> FiniteVector:
    return parse_vector(load_file(path))
