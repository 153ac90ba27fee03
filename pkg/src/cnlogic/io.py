"""Canonical JSON files for models and reports.

Sets of worlds are written as sorted name lists and every mapping is
written with sorted keys, so equal models serialize to identical bytes.
The kind of a model file is recognised by its fields: ``neighbourhoods``
(conditional neighbourhood), ``weights`` (weight) or ``geq`` (comparison).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .cn_model import CnModel
from .comparison import ComparisonModel
from .errors import ModelFormatError
from .weight_model import WeightModel
from .worldset import from_names, to_names

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _set_key(names: list[str]):
    return (len(names), names)


def _valuation(m) -> dict:
    return {p: to_names(v, m.worlds) for p, v in sorted(m.valuation.items())}


def model_to_dict(m) -> dict:
    if isinstance(m, CnModel):
        hoods = {}
        for a in m.agents:
            rows = []
            for c in m.cells[a]:
                fams = {}
                for (ag, cell, key), members in m.nbhd.items():
                    if ag != a or cell != c:
                        continue
                    lists = sorted((to_names(y, m.worlds) for y in members), key=_set_key)
                    fams[",".join(to_names(key, m.worlds))] = lists
                rows.append({"cell": to_names(c, m.worlds), "families": fams})
            hoods[a] = sorted(rows, key=lambda r: r["cell"])
        return {"worlds": list(m.worlds), "agents": list(m.agents),
                "valuation": _valuation(m), "neighbourhoods": hoods}
    if isinstance(m, WeightModel):
        return {
            "worlds": list(m.worlds),
            "agents": list(m.agents),
            "valuation": _valuation(m),
            "cells": {a: sorted(to_names(c, m.worlds) for c in m.cells[a]) for a in m.agents},
            "weights": {a: {w: f"{v.numerator}/{v.denominator}" for w, v in m.weights[a].items()}
                        for a in m.agents},
        }
    if isinstance(m, ComparisonModel):
        pairs = sorted([to_names(x, m.worlds), to_names(y, m.worlds)] for x, y in m.geq)
        return {"worlds": list(m.worlds), "valuation": _valuation(m), "geq": pairs}
    raise TypeError(f"not a model: {m!r}")


def model_dumps(m) -> str:
    return dumps(model_to_dict(m))


def _field(doc, name):
    try:
        return doc[name]
    except KeyError:
        raise ModelFormatError(f"missing field {name!r}") from None


def _mask(names, index) -> int:
    try:
        return from_names(names, index)
    except KeyError as exc:
        raise ModelFormatError(f"unknown world {exc.args[0]!r}") from None
    except TypeError:
        raise ModelFormatError(f"expected a list of world names, got {names!r}") from None


def _rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise ModelFormatError(f"weight {text!r} is not an exact rational like '3/2'")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ModelFormatError(f"weight {text!r} has a zero denominator") from None


def model_from_dict(doc: dict):
    if not isinstance(doc, dict):
        raise ModelFormatError("model file must hold a JSON object")
    worlds = _field(doc, "worlds")
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise ModelFormatError("'worlds' must be a list of names")
    if len(set(worlds)) != len(worlds):
        raise ModelFormatError("world names must be distinct")
    index = {w: i for i, w in enumerate(worlds)}
    valuation = {p: _mask(v, index) for p, v in _field(doc, "valuation").items()}
    if "neighbourhoods" in doc:
        agents = _field(doc, "agents")
        cells, nbhd = {}, {}
        for a in agents:
            rows = doc["neighbourhoods"].get(a)
            if rows is None:
                raise ModelFormatError(f"no neighbourhoods for agent {a!r}")
            cells[a] = []
            for row in rows:
                c = _mask(_field(row, "cell"), index)
                cells[a].append(c)
                for key, members in _field(row, "families").items():
                    k = _mask([x for x in key.split(",") if x], index)
                    nbhd[(a, c, k)] = [_mask(y, index) for y in members]
        return CnModel(worlds, agents, cells, nbhd, valuation)
    if "weights" in doc:
        agents = _field(doc, "agents")
        cells = {a: [_mask(c, index) for c in _field(doc, "cells").get(a, [])] for a in agents}
        weights = {}
        for a in agents:
            raw = doc["weights"].get(a)
            if raw is None:
                raise ModelFormatError(f"no weights for agent {a!r}")
            weights[a] = {w: _rational(v) for w, v in raw.items()}
        return WeightModel(worlds, agents, cells, weights, valuation)
    if "geq" in doc:
        pairs = []
        for pair in doc["geq"]:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ModelFormatError("each 'geq' entry must be a pair of world lists")
            pairs.append((_mask(pair[0], index), _mask(pair[1], index)))
        return ComparisonModel(worlds, pairs, valuation)
    raise ModelFormatError("cannot tell the model kind: expected 'neighbourhoods', 'weights' or 'geq'")


def model_loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc}") from None
    return model_from_dict(doc)


def load_model(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc.strerror}") from None
    return model_loads(text)


def save_model(m, path) -> None:
    Path(path).write_text(model_dumps(m), encoding="utf-8")
