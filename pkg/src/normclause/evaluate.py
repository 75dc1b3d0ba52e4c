"""Field-level precision/recall/F1 of predicted clause tables against gold.

Four fields are scored: Subject, Verb, Object and Modality.  Rows of one
sentence are aligned greedily by field overlap; blank fields count neither
as predicted nor as gold, so precision penalizes spurious filled fields
and recall penalizes missed ones.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .table import ClauseRow, ClauseTable

SCORED_FIELDS = ("subject", "verb", "object", "modality")


def f_score(precision: float, recall: float) -> float:
    """Harmonic mean; zero when both measures vanish."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _norm(row: ClauseRow, name: str) -> str:
    if name == "modality":
        return row.modality.value
    return re.sub(r"\s+", " ", getattr(row, name)).strip().lower()


def _pair_score(pred: ClauseRow, gold: ClauseRow) -> int:
    return sum(
        1
        for name in SCORED_FIELDS
        if _norm(pred, name) and _norm(pred, name) == _norm(gold, name)
    )


def align_rows(pred: Sequence[ClauseRow], gold: Sequence[ClauseRow]
               ) -> tuple[list[tuple[int, int]], list[int], list[int]]:
    """Greedy maximal matching of one sentence's rows.

    Pairs are taken highest field-overlap first, ties broken by lowest
    index pair; zero-score pairs still match while rows remain on both
    sides.  Returns (pairs, unmatched pred indices, unmatched gold indices).
    """
    candidates = sorted(
        ((i, j) for i in range(len(pred)) for j in range(len(gold))),
        key=lambda ij: (-_pair_score(pred[ij[0]], gold[ij[1]]), ij[0], ij[1]),
    )
    used_pred: set[int] = set()
    used_gold: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for i, j in candidates:
        if i in used_pred or j in used_gold:
            continue
        pairs.append((i, j))
        used_pred.add(i)
        used_gold.add(j)
    pairs.sort()
    return (pairs,
            [i for i in range(len(pred)) if i not in used_pred],
            [j for j in range(len(gold)) if j not in used_gold])


@dataclass
class Measure:
    matched: int = 0
    predicted: int = 0
    gold: int = 0

    @property
    def precision(self) -> float:
        return self.matched / self.predicted if self.predicted else 0.0

    @property
    def recall(self) -> float:
        return self.matched / self.gold if self.gold else 0.0

    @property
    def f1(self) -> float:
        return f_score(self.precision, self.recall)

    def add(self, other: "Measure") -> None:
        self.matched += other.matched
        self.predicted += other.predicted
        self.gold += other.gold

    def as_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1,
                "matched": self.matched, "predicted": self.predicted, "gold": self.gold}


@dataclass
class EvalReport:
    per_document: dict[str, Measure] = field(default_factory=dict)
    per_field: dict[str, Measure] = field(default_factory=dict)
    aggregate: Measure = field(default_factory=Measure)

    def as_dict(self) -> dict:
        return {
            "per_document": {k: v.as_dict() for k, v in self.per_document.items()},
            "per_field": {k: v.as_dict() for k, v in self.per_field.items()},
            "aggregate": self.aggregate.as_dict(),
        }

    def to_json(self) -> bytes:
        return (json.dumps(self.as_dict(), indent=2) + "\n").encode("utf-8")

    def to_text(self) -> str:
        lines = [f"{'':<12}{'P':>8}{'R':>8}{'F1':>8}"]

        def fmt(name: str, m: Measure) -> str:
            return f"{name:<12}{m.precision:>8.2f}{m.recall:>8.2f}{m.f1:>8.2f}"

        for doc_id, m in self.per_document.items():
            lines.append(fmt(doc_id or "(doc)", m))
        for name in SCORED_FIELDS:
            if name in self.per_field:
                lines.append(fmt(name.capitalize(), self.per_field[name]))
        lines.append(fmt("aggregate", self.aggregate))
        return "\n".join(lines)


def _group_rows(table: ClauseTable) -> dict[str, list[ClauseRow]]:
    groups: dict[str, list[ClauseRow]] = {}
    order: list[str] = []
    for row in table.rows:
        if row.sent_id not in groups:
            groups[row.sent_id] = []
            order.append(row.sent_id)
        elif order and order[-1] != row.sent_id:
            raise ValueError(f"duplicate sent_id {row.sent_id!r}: sentence groups must be contiguous")
        groups[row.sent_id].append(row)
    return groups


def score(pred: ClauseTable, gold: ClauseTable) -> EvalReport:
    """Score one predicted document against its gold table."""
    return score_many([(pred, gold)])


def score_many(pairs: Sequence[tuple[ClauseTable, ClauseTable]]) -> EvalReport:
    """Score several (pred, gold) document pairs into one report."""
    report = EvalReport(per_field={name: Measure() for name in SCORED_FIELDS})
    for pred, gold in pairs:
        doc_measure = Measure()
        pred_groups = _group_rows(pred)
        gold_groups = _group_rows(gold)
        for sent_id in sorted(set(pred_groups) | set(gold_groups), key=_sent_key):
            p_rows = pred_groups.get(sent_id, [])
            g_rows = gold_groups.get(sent_id, [])
            pairs_ij, _, _ = align_rows(p_rows, g_rows)
            for name in SCORED_FIELDS:
                m = Measure(
                    matched=sum(
                        1 for i, j in pairs_ij
                        if _norm(p_rows[i], name)
                        and _norm(p_rows[i], name) == _norm(g_rows[j], name)),
                    predicted=sum(1 for r in p_rows if _norm(r, name)),
                    gold=sum(1 for r in g_rows if _norm(r, name)),
                )
                report.per_field[name].add(m)
                doc_measure.add(m)
        doc_id = pred.doc_id or gold.doc_id
        if doc_id in report.per_document:
            raise ValueError(f"duplicate document id {doc_id!r}")
        report.per_document[doc_id] = doc_measure
        report.aggregate.add(doc_measure)
    return report


def _sent_key(sent_id: str):
    return (0, int(sent_id)) if sent_id.isdigit() else (1, sent_id)
