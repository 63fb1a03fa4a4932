import numpy as np

from jointseg.crf import CrfModel, build_index
from jointseg.template import TokenGrid, parse_templates

SMALL_TEMPLATES = parse_templates(
    """\
U00:%x[-1,0]
U01:%x[0,0]
U02:%x[1,0]
U03:%x[0,0]/%x[0,1]
U04:%x[-1,1]/%x[0,1]
B
"""
)


def random_grid(rng, T, alphabet="abc"):
    chars = tuple(rng.choice(list(alphabet), size=T))
    mm = tuple(rng.choice(list("BMES"), size=T))
    gold = tuple(rng.choice(list("BMES"), size=T))
    return TokenGrid((chars, mm), gold)


def random_model(rng, grids, templates=SMALL_TEMPLATES, scale=1.0):
    index = build_index(grids, templates)
    w = rng.normal(scale=scale, size=index.n_slots)
    return CrfModel(templates, index, w, grids[0].n_columns)
