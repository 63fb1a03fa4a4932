"""Word-level precision / recall / F over codepoint spans (Bakeoff scoring)."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from .errors import AlignmentError, InvalidInputError


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f_score: float
    gold_words: int
    pred_words: int
    correct_words: int
    per_line_mismatch: tuple[int, ...] = field(default=())

    def as_dict(self) -> dict:
        d = asdict(self)
        d["per_line_mismatch"] = list(self.per_line_mismatch)
        return d

    def format(self) -> str:
        return (
            f"P: {percent(self.precision)} R: {percent(self.recall)} F: {percent(self.f_score)}\n"
            f"gold words: {self.gold_words}  predicted words: {self.pred_words}  "
            f"correct: {self.correct_words}  mismatched lines: {len(self.per_line_mismatch)}"
        )


def percent(ratio: float) -> str:
    """Ratio as a percentage with two decimals, rounding half up."""
    return str(Decimal(repr(ratio * 100)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def spans(seg: Sequence[str]) -> set[tuple[int, int]]:
    out = set()
    start = 0
    for word in seg:
        end = start + len(word)
        out.add((start, end))
        start = end
    return out


def f_score(p: float, r: float) -> float:
    if not (0.0 <= p <= 1.0 and 0.0 <= r <= 1.0):
        raise InvalidInputError(f"precision and recall must lie in [0, 1], got {p}, {r}")
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


def score(gold: Sequence[Sequence[str]], pred: Sequence[Sequence[str]]) -> EvalReport:
    if len(gold) != len(pred):
        raise AlignmentError(
            min(len(gold), len(pred)) + 1,
            f"gold has {len(gold)} lines, prediction has {len(pred)}",
        )
    n_gold = n_pred = correct = 0
    mismatched = []
    for lineno, (g, p) in enumerate(zip(gold, pred), 1):
        if "".join(g) != "".join(p):
            raise AlignmentError(lineno, "gold and predicted text differ")
        gs, ps = spans(g), spans(p)
        n_gold += len(gs)
        n_pred += len(ps)
        correct += len(gs & ps)
        if gs != ps:
            mismatched.append(lineno)
    precision = correct / n_pred if n_pred else 0.0
    recall = correct / n_gold if n_gold else 0.0
    return EvalReport(precision, recall, f_score(precision, recall), n_gold, n_pred, correct,
                      tuple(mismatched))
