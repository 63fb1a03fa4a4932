"""Linear-chain CRF over BMES labels: indexing, objective, decoding, training."""
from __future__ import annotations

import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .. import corpus
from ..errors import ConfigurationError, InvalidInputError, NumericalError
from ..template import TemplateSet, TokenGrid, expand_all
from . import backend
from ._pykernels import forward_backward

log = logging.getLogger(__name__)


class LabelAlphabet:
    def __init__(self, labels: Sequence[str] = corpus.TAGS):
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InvalidInputError("duplicate labels")

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, LabelAlphabet) and self.labels == other.labels

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidInputError(f"unknown label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]


class FeatureIndex:
    """Feature string -> id. Slot layout is described in ``_pykernels``."""

    def __init__(self, features: Sequence[str], transitions: Sequence[str], n_labels: int = 4):
        self.features = tuple(features)
        self.transitions = tuple(transitions)
        self.n_labels = n_labels
        self.ids = {f: i for i, f in enumerate(self.features)}
        if len(self.ids) != len(self.features):
            raise InvalidInputError("duplicate feature strings")

    def __len__(self):
        return len(self.features)

    def __eq__(self, other):
        return (
            isinstance(other, FeatureIndex)
            and self.features == other.features
            and self.transitions == other.transitions
            and self.n_labels == other.n_labels
        )

    @property
    def n_features(self) -> int:
        return len(self.features)

    @property
    def n_transitions(self) -> int:
        return len(self.transitions)

    @property
    def n_slots(self) -> int:
        L = self.n_labels
        return self.n_features * L + self.n_transitions * L * L

    def unigram_slot(self, feature: str, label: int) -> int:
        return self.ids[feature] * self.n_labels + label

    def transition_slot(self, k: int, prev: int, cur: int) -> int:
        L = self.n_labels
        return self.n_features * L + k * L * L + prev * L + cur


@dataclass(frozen=True)
class TrainConfig:
    l2_sigma: float = 1.0
    max_iterations: int = 200
    gradient_tolerance: float = 1e-4
    feature_cutoff: int = 1

    def __post_init__(self):
        if not self.l2_sigma > 0:
            raise ConfigurationError("l2_sigma must be positive")
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be positive")
        if not self.gradient_tolerance > 0:
            raise ConfigurationError("gradient_tolerance must be positive")
        if self.feature_cutoff < 0:
            raise ConfigurationError("feature_cutoff must be non-negative")


@dataclass
class CrfModel:
    templates: TemplateSet
    index: FeatureIndex
    weights: np.ndarray
    n_columns: int
    alphabet: LabelAlphabet = field(default_factory=LabelAlphabet)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.weights = np.ascontiguousarray(self.weights, dtype=np.float64)
        if self.weights.shape != (self.index.n_slots,):
            raise InvalidInputError(
                f"weight vector has {self.weights.size} entries, index needs {self.index.n_slots}"
            )
        if not np.all(np.isfinite(self.weights)):
            raise NumericalError("model weights must be finite")

    def viterbi(self, grid: TokenGrid) -> list[str]:
        return viterbi(self, grid)

    def marginals(self, grid: TokenGrid) -> np.ndarray:
        return marginals(self, grid)


@dataclass
class _Compiled:
    sent_ptr: np.ndarray  # int64, n_sent + 1 offsets into positions
    feat_ptr: np.ndarray  # int64, n_pos + 1 offsets into feat_ids
    feat_ids: np.ndarray  # int32
    gold: Optional[np.ndarray]  # int32 label per position

    @property
    def n_sentences(self) -> int:
        return len(self.sent_ptr) - 1


def _grid_features(grid: TokenGrid, templates: TemplateSet) -> list[list[str]]:
    """Per template, the feature string at every position."""
    return [expand_all(t, grid) for t in templates.unigrams]


def build_index(
    grids: Sequence[TokenGrid], templates: TemplateSet, cutoff: int = 1
) -> FeatureIndex:
    """Index every feature string seen at least ``cutoff`` times, in first-seen order."""
    counts: dict[str, int] = {}
    for grid in grids:
        for per_tpl in zip(*_grid_features(grid, templates)):
            for f in per_tpl:
                counts[f] = counts.get(f, 0) + 1
    features = [f for f, c in counts.items() if c >= cutoff]
    if not features:
        raise ConfigurationError(f"no features occur at least {cutoff} time(s)")
    return FeatureIndex(features, [t.id for t in templates.transitions], len(corpus.TAGS))


def _compile(grids, templates, index, alphabet=None) -> _Compiled:
    ids = index.ids
    sent_ptr = [0]
    feat_ptr = [0]
    feat_ids: list[int] = []
    gold: Optional[list[int]] = [] if alphabet is not None else None
    for grid in grids:
        for per_tpl in zip(*_grid_features(grid, templates)):
            feat_ids.extend(i for i in map(ids.get, per_tpl) if i is not None)
            feat_ptr.append(len(feat_ids))
        sent_ptr.append(sent_ptr[-1] + len(grid))
        if gold is not None:
            if grid.gold is None:
                raise InvalidInputError("training grid has no gold label column")
            gold.extend(alphabet.index(y) for y in grid.gold)
    return _Compiled(
        np.asarray(sent_ptr, dtype=np.int64),
        np.asarray(feat_ptr, dtype=np.int64),
        np.asarray(feat_ids, dtype=np.int32),
        np.asarray(gold, dtype=np.int32) if gold is not None else None,
    )


def _shards(n: int, k: int) -> list[tuple[int, int]]:
    k = max(1, min(k, n))
    step, extra = divmod(n, k)
    out, lo = [], 0
    for i in range(k):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _data_term(w, data: _Compiled, index: FeatureIndex, threads: int = 1):
    """Unpenalized NLL and gradient, summed over sentences in fixed shard order."""
    kern = backend.kernels()
    L, nf, nt = index.n_labels, index.n_features, index.n_transitions
    sent_nll = np.zeros(data.n_sentences)

    def run(bounds):
        g = np.zeros(index.n_slots)
        kern.nll_grad(w, L, nf, nt, data.sent_ptr, data.feat_ptr, data.feat_ids, data.gold,
                      bounds[0], bounds[1], g, sent_nll)
        return g

    shards = _shards(data.n_sentences, threads)
    if len(shards) == 1:
        grad = run(shards[0])
    else:
        with ThreadPoolExecutor(len(shards)) as pool:
            parts = list(pool.map(run, shards))
        grad = parts[0]
        for g in parts[1:]:
            grad += g
    bad = np.flatnonzero(~np.isfinite(sent_nll))
    if bad.size:
        raise NumericalError(f"non-finite log-likelihood in sentence {int(bad[0])}")
    return float(math.fsum(sent_nll)), grad


def _penalized(w, data, index, l2_sigma, threads=1):
    nll, grad = _data_term(w, data, index, threads)
    if math.isfinite(l2_sigma):
        inv = 1.0 / (l2_sigma * l2_sigma)
        nll += 0.5 * inv * float(np.dot(w, w))
        grad += inv * w
    if not (math.isfinite(nll) and np.all(np.isfinite(grad))):
        raise NumericalError("objective or gradient is not finite")
    return nll, grad


def _check_columns(model: CrfModel, grid: TokenGrid) -> None:
    if grid.n_columns != model.n_columns:
        raise InvalidInputError(
            f"grid has {grid.n_columns} feature column(s), model expects {model.n_columns}"
        )


def log_likelihood_and_gradient(
    model: CrfModel, grids: Sequence[TokenGrid], l2_sigma: Optional[float] = None, threads: int = 1
) -> tuple[float, np.ndarray]:
    """L2-penalized negative log-likelihood of ``grids`` and its gradient.

    ``l2_sigma`` defaults to the value the model was trained with (1.0 if
    unknown); pass ``math.inf`` for the unpenalized objective.
    """
    for g in grids:
        _check_columns(model, g)
    if l2_sigma is None:
        l2_sigma = model.meta.get("l2_sigma", 1.0)
    data = _compile(grids, model.templates, model.index, model.alphabet)
    return _penalized(model.weights, data, model.index, l2_sigma, threads)


def _lattice(model: CrfModel, grid: TokenGrid):
    data = _compile([grid], model.templates, model.index)
    L, nf, nt = model.index.n_labels, model.index.n_features, model.index.n_transitions
    return data, L, nf, nt


def marginals(model: CrfModel, grid: TokenGrid) -> np.ndarray:
    """Per-position label posteriors (T x L) via log-space forward-backward."""
    from . import _pykernels as pk

    _check_columns(model, grid)
    data, L, nf, nt = _lattice(model, grid)
    E = pk.emissions(model.weights, L, nf, data.feat_ptr, data.feat_ids)
    A = pk.transition_matrix(model.weights, L, nf, nt)
    alpha, beta, logZ = forward_backward(E, A)
    return np.exp(alpha + beta - logZ)


def viterbi(model: CrfModel, grid: TokenGrid) -> list[str]:
    _check_columns(model, grid)
    data, L, nf, nt = _lattice(model, grid)
    out = np.zeros(len(grid), dtype=np.int32)
    backend.kernels().viterbi(model.weights, L, nf, nt, data.feat_ptr, data.feat_ids, out)
    return [model.alphabet.label(i) for i in out]


def corpus_fingerprint(grids: Sequence[TokenGrid]) -> str:
    h = hashlib.sha256()
    for grid in grids:
        for row in grid.rows():
            h.update(" ".join(row).encode("utf-8"))
            h.update(b"\n")
        h.update(b"\n")
    return h.hexdigest()


def train(
    grids: Sequence[TokenGrid],
    templates: TemplateSet,
    config: TrainConfig = TrainConfig(),
    threads: int = 1,
) -> CrfModel:
    """Fit weights by L-BFGS on the L2-penalized negative log-likelihood."""
    grids = list(grids)
    if not grids:
        raise InvalidInputError("empty training corpus")
    n_columns = grids[0].n_columns
    for i, g in enumerate(grids):
        if g.gold is None:
            raise InvalidInputError(f"training grid {i} has no gold label column")
        if g.n_columns != n_columns:
            raise InvalidInputError(f"training grid {i} has {g.n_columns} columns, expected {n_columns}")
    templates.validate(n_columns)

    alphabet = LabelAlphabet()
    index = build_index(grids, templates, config.feature_cutoff)
    data = _compile(grids, templates, index, alphabet)
    log.info(
        "training on %d sentences, %d positions, %d features, %d weights",
        data.n_sentences, int(data.sent_ptr[-1]), index.n_features, index.n_slots,
    )

    history: list[float] = []

    def fun(w):
        return _penalized(w, data, index, config.l2_sigma, threads)

    def on_iteration(intermediate_result):
        history.append(float(intermediate_result.fun))
        log.info("iter %d  objective %.6f", len(history), history[-1])

    w0 = np.zeros(index.n_slots)
    res = minimize(
        fun, w0, jac=True, method="L-BFGS-B", callback=on_iteration,
        options={"maxiter": config.max_iterations, "gtol": config.gradient_tolerance, "ftol": 0.0},
    )
    weights = np.ascontiguousarray(res.x)
    final, grad = fun(weights)
    meta = {
        "l2_sigma": config.l2_sigma,
        "max_iterations": config.max_iterations,
        "gradient_tolerance": config.gradient_tolerance,
        "feature_cutoff": config.feature_cutoff,
        "iterations": int(res.nit),
        "final_objective": final,
        "gradient_norm": float(np.max(np.abs(grad))),
        "converged": bool(np.max(np.abs(grad)) <= config.gradient_tolerance),
        "n_sentences": data.n_sentences,
        "corpus_sha256": corpus_fingerprint(grids),
        "backend": backend.active_name(),
        "objective_history": history,
    }
    return CrfModel(templates, index, weights, n_columns, alphabet, meta)
