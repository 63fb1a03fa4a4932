"""Command-line interface.

Subcommands::

    jointseg make-training --corpus C --lexicon L [--lexicon L2 ...] --output train.data
    jointseg train (--input train.data | --corpus C --lexicon L) (--preset exp4 | --template F) --model M
    jointseg segment --model M --lexicon L --input raw.txt --output seg.txt
    jointseg mmseg --lexicon L --input raw.txt --output seg.txt
    jointseg eval --gold G --pred P [--output report.json]

Exit status: 0 success, 2 usage / validation / data error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from ._io import atomic_write_text, read_utf8_lines
from .corpus import read_segmented_corpus, read_segmented_lines
from .crf import TrainConfig, load_model, save_model, train
from .errors import JointSegError, NumericalError
from .evaluate import score
from .lexicon import Lexicon, load_lexicon
from .mmseg import load_freedom, mmseg_segment
from .pipeline import make_training_grids, read_training_file, segment_text, write_training_file
from .template import load_templates, preset

EXIT_OK = 0
EXIT_DATA = 2
EXIT_NUMERIC = 3

log = logging.getLogger("jointseg")


class UsageError(Exception):
    pass


def _require_file(path, what):
    if not Path(path).is_file():
        raise UsageError(f"{what} not found: {path}")


def _lexicon(paths, required=True):
    if not paths:
        if required:
            raise UsageError("at least one --lexicon is required")
        return Lexicon()
    for p in paths:
        _require_file(p, "lexicon")
    return load_lexicon(paths)


def _freedom(path):
    if path is None:
        return None
    _require_file(path, "freedom table")
    return load_freedom(path)


def _format(segs):
    return "".join(" ".join(words) + "\n" for words in segs)


def cmd_make_training(args):
    _require_file(args.corpus, "corpus")
    lex = _lexicon(args.lexicon)
    corpus = read_segmented_corpus(args.corpus)
    if not corpus:
        raise UsageError(f"empty corpus: {args.corpus}")
    grids = make_training_grids(corpus, lex, _freedom(args.freedom))
    write_training_file(grids, args.output)
    print(f"sentences: {len(grids)}  characters: {sum(map(len, grids))}")
    return EXIT_OK


def _templates(args):
    if args.template is not None:
        _require_file(args.template, "template file")
        return load_templates(args.template)
    return preset(args.preset or "exp4")


def cmd_train(args):
    templates = _templates(args)
    if args.input is not None:
        if args.corpus is not None:
            raise UsageError("give either --input (training file) or --corpus, not both")
        _require_file(args.input, "training file")
        grids = read_training_file(args.input)
    elif args.corpus is not None:
        _require_file(args.corpus, "corpus")
        corpus = read_segmented_corpus(args.corpus)
        if not corpus:
            raise UsageError(f"empty corpus: {args.corpus}")
        grids = make_training_grids(corpus, _lexicon(args.lexicon), _freedom(args.freedom))
    else:
        raise UsageError("train needs --input (training file) or --corpus with --lexicon")
    if not grids:
        raise UsageError("no training sentences")
    config = TrainConfig(
        l2_sigma=args.l2_sigma,
        max_iterations=args.max_iter,
        gradient_tolerance=args.tolerance,
        feature_cutoff=args.cutoff,
    )
    model = train(grids, templates, config, threads=args.threads)
    save_model(model, args.model)
    print(
        f"features: {model.index.n_features}  weights: {model.index.n_slots}  "
        f"iterations: {model.meta['iterations']}  objective: {model.meta['final_objective']:.6f}"
    )
    return EXIT_OK


def cmd_segment(args):
    _require_file(args.model, "model")
    _require_file(args.input, "input")
    model = load_model(args.model)
    lex = _lexicon(args.lexicon, required=False)
    lines = [line for _, line in read_utf8_lines(args.input)]
    segs = segment_text(model, lex, lines, _freedom(args.freedom))
    _emit(_format(segs), args.output)
    return EXIT_OK


def cmd_mmseg(args):
    _require_file(args.input, "input")
    lex = _lexicon(args.lexicon, required=False)
    freedom = _freedom(args.freedom)
    segs = []
    for _, line in read_utf8_lines(args.input):
        words = []
        for piece in line.split():
            words.extend(mmseg_segment(lex, piece, freedom))
        segs.append(words)
    _emit(_format(segs), args.output)
    return EXIT_OK


def cmd_eval(args):
    _require_file(args.gold, "gold file")
    _require_file(args.pred, "prediction file")
    report = score(read_segmented_lines(args.gold), read_segmented_lines(args.pred))
    print(report.format())
    if args.output is not None:
        atomic_write_text(args.output, json.dumps(report.as_dict(), indent=2) + "\n")
    return EXIT_OK


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(output, text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jointseg", description="MMSEG + CRF Chinese word segmentation")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log per-iteration progress")
    sub = parser.add_subparsers(dest="command", required=True)

    def lexicon_opts(p):
        p.add_argument("--lexicon", action="append", default=[], metavar="PATH",
                       help="lexicon file; repeat to merge several")
        p.add_argument("--freedom", metavar="PATH", help="optional char<TAB>score table for MMSEG rule 4")

    p = sub.add_parser("make-training", help="write a CRF++ training file with the MMSEG tag column")
    p.add_argument("--corpus", required=True, help="segmented corpus, words separated by spaces")
    lexicon_opts(p)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_make_training)

    p = sub.add_parser("train", help="train a CRF model")
    p.add_argument("--input", help="CRF++ training file (from make-training)")
    p.add_argument("--corpus", help="segmented corpus; built into a training file on the fly")
    lexicon_opts(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--preset", help="template preset: exp1..exp5 (default exp4)")
    g.add_argument("--template", help="CRF++ template file")
    p.add_argument("--model", required=True, help="output model path")
    p.add_argument("--l2-sigma", type=float, default=1.0)
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--tolerance", type=float, default=1e-4, help="gradient max-norm stopping threshold")
    p.add_argument("--cutoff", type=int, default=1, help="minimum feature occurrence count")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("segment", help="segment raw text with a trained model")
    p.add_argument("--model", required=True)
    lexicon_opts(p)
    p.add_argument("--input", required=True, help="raw text, one sequence per line")
    p.add_argument("--output", help="default: stdout")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("mmseg", help="segment raw text with MMSEG alone")
    lexicon_opts(p)
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="default: stdout")
    p.set_defaults(func=cmd_mmseg)

    p = sub.add_parser("eval", help="score a segmentation against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--output", help="also write the report as JSON here")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"jointseg: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, JointSegError, OSError) as exc:
        print(f"jointseg: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
