"""Assemble a clause table into a hierarchical contract model.

Each table row becomes one leaf box; consecutive rows of a sentence fold
left-to-right under refinement operators, nesting left-associatively when
operators are mixed and flattening runs of the same operator.  The JSON
export is deterministic: stable key order, stable ids, byte-identical on
re-export.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .table import ClauseRow, ClauseTable, Modality, Refinement


@dataclass
class CoBox:
    id: str
    modality: Modality
    agent: str
    action_verb: str
    action_object: str
    time_guards: list[str] = field(default_factory=list)
    conditions: list[str] = field(default_factory=list)
    annotations: list[str] = field(default_factory=list)


@dataclass
class CoRefinement:
    operator: Refinement
    children: list[Union["CoBox", "CoRefinement"]]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a refinement node needs at least two children")
        if self.operator is Refinement.NONE:
            raise ValueError("NONE is not a refinement operator")


CoNode = Union[CoBox, CoRefinement]


@dataclass
class CoModel:
    doc_id: str
    roots: list[CoNode] = field(default_factory=list)


def _leaf(row: ClauseRow, doc_id: str, sent_index: int, row_index: int) -> CoBox:
    return CoBox(
        id=f"{doc_id or 'doc'}:s{sent_index}:r{row_index}",
        modality=row.modality,
        agent=row.subject,
        action_verb=row.verb,
        action_object=row.object,
        time_guards=[str(p) for p in row.time],
        conditions=[str(p) for p in row.conditions],
        annotations=[str(p) for p in row.notes] + [str(p) for p in row.adverbials],
    )


def build_model(table: ClauseTable) -> CoModel:
    """Fold a validated table into one model root per sentence."""
    table.validate()
    model = CoModel(doc_id=table.doc_id)
    for sent_index, (_, rows) in enumerate(table.sentence_groups(), start=1):
        node: CoNode = _leaf(rows[0], table.doc_id, sent_index, 1)
        for row_index, row in enumerate(rows[1:], start=2):
            leaf = _leaf(row, table.doc_id, sent_index, row_index)
            op = row.refinement
            if isinstance(node, CoRefinement) and node.operator is op:
                node.children.append(leaf)
            else:
                node = CoRefinement(operator=op, children=[node, leaf])
        model.roots.append(node)
    return model


def _node_record(node: CoNode) -> dict:
    if isinstance(node, CoBox):
        return {
            "kind": "box",
            "id": node.id,
            "modality": node.modality.value,
            "agent": node.agent,
            "action_verb": node.action_verb,
            "action_object": node.action_object,
            "time_guards": node.time_guards,
            "conditions": node.conditions,
            "annotations": node.annotations,
        }
    return {
        "kind": "refinement",
        "operator": node.operator.value,
        "children": [_node_record(c) for c in node.children],
    }


def export_model(model: CoModel) -> bytes:
    """Deterministic JSON rendering of a model."""
    doc = {"doc_id": model.doc_id, "roots": [_node_record(n) for n in model.roots]}
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def count_leaves(model: CoModel) -> int:
    def walk(node: CoNode) -> int:
        if isinstance(node, CoBox):
            return 1
        return sum(walk(c) for c in node.children)

    return sum(walk(n) for n in model.roots)
