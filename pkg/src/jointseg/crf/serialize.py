"""Text model file.

Layout (one record per line, UTF-8)::

    JOINTSEG-CRF-MODEL
    version 1
    [meta] <n>            n lines: key<TAB>json value
    [labels] <n>          n lines: one label each
    [columns] <n>         number of feature columns in the training data
    [templates] <n>       n template lines, as in a template file
    [features] <n>        n lines: <L weights, space separated><TAB>feature string
    [transitions] <n>     n lines: <L*L weights, row-major prev x cur><TAB>template id
    [end]

Weights are written with ``repr`` so they round-trip exactly.
"""
from __future__ import annotations

import json

import numpy as np

from .._io import atomic_write_text
from ..errors import JointSegError, ModelFormatError, TemplateParseError
from ..template import parse_templates
from .model import CrfModel, FeatureIndex, LabelAlphabet

MAGIC = "JOINTSEG-CRF-MODEL"
VERSION = 1


def _weights(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def dumps_model(model: CrfModel) -> str:
    L = len(model.alphabet)
    idx = model.index
    w = model.weights
    meta = dict(model.meta, template_name=model.templates.name)
    out = [MAGIC, f"version {VERSION}"]
    out.append(f"[meta] {len(meta)}")
    out.extend(f"{k}\t{json.dumps(meta[k], sort_keys=True)}" for k in sorted(meta))
    out.append(f"[labels] {L}")
    out.extend(model.alphabet.labels)
    out.append(f"[columns] {model.n_columns}")
    tpl_lines = model.templates.render().splitlines()
    out.append(f"[templates] {len(tpl_lines)}")
    out.extend(tpl_lines)
    out.append(f"[features] {idx.n_features}")
    for i, feat in enumerate(idx.features):
        out.append(f"{_weights(w[i * L : (i + 1) * L])}\t{feat}")
    out.append(f"[transitions] {idx.n_transitions}")
    off = idx.n_features * L
    for k, tid in enumerate(idx.transitions):
        out.append(f"{_weights(w[off + k * L * L : off + (k + 1) * L * L])}\t{tid}")
    out.append("[end]")
    return "\n".join(out) + "\n"


def save_model(model: CrfModel, path) -> None:
    atomic_write_text(path, dumps_model(model))


class _Reader:
    def __init__(self, lines):
        self.lines = lines
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ModelFormatError("model file is truncated")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def section(self, name: str) -> int:
        line = self.next()
        head, _, count = line.partition(" ")
        if head != f"[{name}]":
            raise ModelFormatError(f"line {self.pos}: expected [{name}] section, got {line[:40]!r}")
        try:
            n = int(count)
        except ValueError:
            raise ModelFormatError(f"line {self.pos}: bad count in [{name}] header") from None
        if n < 0:
            raise ModelFormatError(f"line {self.pos}: negative count")
        return n

    def weighted(self, width: int):
        line = self.next()
        values, sep, key = line.partition("\t")
        if not sep:
            raise ModelFormatError(f"line {self.pos}: missing tab separator")
        try:
            ws = [float(v) for v in values.split(" ")]
        except ValueError:
            raise ModelFormatError(f"line {self.pos}: bad weight") from None
        if len(ws) != width:
            raise ModelFormatError(f"line {self.pos}: expected {width} weights, got {len(ws)}")
        return ws, key


def loads_model(text: str) -> CrfModel:
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    r = _Reader(lines)
    if r.next() != MAGIC:
        raise ModelFormatError("not a jointseg CRF model (bad magic header)")
    if r.next() != f"version {VERSION}":
        raise ModelFormatError(f"unsupported model version (expected {VERSION})")

    meta = {}
    for _ in range(r.section("meta")):
        key, sep, value = r.next().partition("\t")
        if not sep:
            raise ModelFormatError(f"line {r.pos}: bad meta record")
        try:
            meta[key] = json.loads(value)
        except json.JSONDecodeError:
            raise ModelFormatError(f"line {r.pos}: bad meta value") from None

    labels = [r.next() for _ in range(r.section("labels"))]
    n_columns = r.section("columns")
    tpl_text = "\n".join(r.next() for _ in range(r.section("templates")))
    try:
        templates = parse_templates(tpl_text, name=meta.get("template_name", "model"))
    except TemplateParseError as exc:
        raise ModelFormatError(f"bad template block: {exc}") from None

    L = len(labels)
    features, weights = [], []
    for _ in range(r.section("features")):
        ws, feat = r.weighted(L)
        features.append(feat)
        weights.extend(ws)
    transitions = []
    for _ in range(r.section("transitions")):
        ws, tid = r.weighted(L * L)
        transitions.append(tid)
        weights.extend(ws)
    if r.next() != "[end]":
        raise ModelFormatError(f"line {r.pos}: expected [end]")
    if any(line for line in r.lines[r.pos :]):
        raise ModelFormatError("trailing data after [end]")
    if tuple(transitions) != tuple(t.id for t in templates.transitions):
        raise ModelFormatError("transition records do not match the template block")
    try:
        return CrfModel(
            templates,
            FeatureIndex(features, transitions, L),
            np.asarray(weights, dtype=np.float64),
            n_columns,
            LabelAlphabet(labels),
            meta,
        )
    except JointSegError as exc:
        raise ModelFormatError(f"inconsistent model file: {exc}") from None


def load_model(path) -> CrfModel:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError:
        raise ModelFormatError(f"{path}: model file is not valid UTF-8") from None
    try:
        return loads_model(text)
    except ModelFormatError as exc:
        raise ModelFormatError(f"{path}: {exc}") from None
