"""Time the compiled CRF kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sentences 300] [--length 40] [--repeat 3]

Builds a synthetic corpus (random characters from a small alphabet, random
MMSEG and gold tags), indexes it with the exp4 templates and times one full
objective/gradient evaluation and Viterbi decoding of every sentence with
each available backend. The backends' objectives are also compared.
"""
import argparse
import time

import numpy as np

from jointseg.crf import backend
from jointseg.crf.model import LabelAlphabet, _compile, _penalized, build_index
from jointseg.crf import CrfModel, viterbi
from jointseg.template import TokenGrid, preset


def synthetic_grids(n, length, seed=0):
    rng = np.random.default_rng(seed)
    alphabet = [chr(0x4E00 + i) for i in range(800)]
    grids = []
    for _ in range(n):
        T = int(rng.integers(length // 2, length * 3 // 2))
        chars = tuple(rng.choice(alphabet, size=T))
        mm = tuple(rng.choice(list("BMES"), size=T))
        gold = tuple(rng.choice(list("BMES"), size=T))
        grids.append(TokenGrid((chars, mm), gold))
    return grids


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sentences", type=int, default=300)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    grids = synthetic_grids(args.sentences, args.length)
    templates = preset("exp4")
    index = build_index(grids, templates)
    data = _compile(grids, templates, index, LabelAlphabet())
    w = np.random.default_rng(1).normal(scale=0.1, size=index.n_slots)
    model = CrfModel(templates, index, w, 2)
    decode_grids = [TokenGrid(g.columns) for g in grids]
    n_pos = int(data.sent_ptr[-1])
    print(f"{len(grids)} sentences, {n_pos} positions, {index.n_features} features, {index.n_slots} weights")

    results = {}
    for name in backend.available():
        prev = backend.use_backend(name)
        try:
            t_obj, (obj, _) = best_of(lambda: _penalized(w, data, index, 1.0), args.repeat)
            t_vit, _ = best_of(lambda: [viterbi(model, g) for g in decode_grids], args.repeat)
        finally:
            backend.use_backend(prev)
        results[name] = (t_obj, t_vit, obj)
        print(f"{name:>7}: objective+gradient {t_obj * 1e3:9.2f} ms   viterbi (all) {t_vit * 1e3:9.2f} ms   obj={obj:.10f}")

    if {"cython", "python"} <= results.keys():
        c, p = results["cython"], results["python"]
        print(f"speedup: objective {p[0] / c[0]:.1f}x, viterbi {p[1] / c[1]:.1f}x, "
              f"|obj diff| = {abs(c[2] - p[2]):.2e}")


if __name__ == "__main__":
    main()
