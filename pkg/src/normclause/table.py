"""The output row schema: one row per extracted clause, plus CSV/JSON I/O.

This is also the gold-annotation format for evaluation.  List-valued fields
serialize as ``|``-joined ``anchor: text`` items, so phrase texts must not
contain the ``|`` character.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional


class Modality(Enum):
    OBLIGATION = "O"
    PERMISSION = "P"
    PROHIBITION = "F"
    DECLARATION = "D"


class Refinement(Enum):
    NONE = "NONE"
    AND = "AND"
    OR = "OR"
    SEQ = "SEQ"


class TableError(ValueError):
    """Schema violation in a serialized clause table; names the row."""

    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(f"{message} (row {row})" if row is not None else message)
        self.row = row


ANCHORS = ("S", "V", "O")


@dataclass(frozen=True)
class AnnotatedPhrase:
    """A detached phrase, anchored to the core field it modifies."""

    anchor: str  # one of S, V, O
    text: str

    def __post_init__(self):
        if self.anchor not in ANCHORS:
            raise ValueError(f"anchor must be one of {ANCHORS}, got {self.anchor!r}")
        if not self.text:
            raise ValueError("phrase text must be non-empty")

    def __str__(self) -> str:
        return f"{self.anchor}: {self.text}"

    @classmethod
    def parse(cls, item: str) -> "AnnotatedPhrase":
        anchor, sep, text = item.partition(": ")
        if not sep or anchor not in ANCHORS:
            raise ValueError(f"malformed phrase item {item!r}, expected 'S|V|O: text'")
        return cls(anchor=anchor, text=text)


@dataclass(frozen=True)
class ClauseRow:
    """One extracted clause: a single box of the target contract model."""

    sent_id: str
    refinement: Refinement = Refinement.NONE
    modality: Modality = Modality.DECLARATION
    subject: str = ""
    verb: str = ""
    object: str = ""
    time: tuple[AnnotatedPhrase, ...] = ()
    adverbials: tuple[AnnotatedPhrase, ...] = ()
    conditions: tuple[AnnotatedPhrase, ...] = ()
    notes: tuple[AnnotatedPhrase, ...] = ()

    def __post_init__(self):
        for name in ("subject", "verb", "object"):
            value = getattr(self, name)
            if value != value.strip():
                raise ValueError(f"{name} has leading/trailing whitespace: {value!r}")
        for name in ("time", "adverbials", "conditions", "notes"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


HEADER = ["sent_id", "refinement", "modality", "subject", "verb", "object",
          "time", "adverbials", "conditions", "notes"]


@dataclass
class ClauseTable:
    """Ordered rows of one document; sentence groups are contiguous."""

    doc_id: str = ""
    rows: list[ClauseRow] = field(default_factory=list)

    def validate(self) -> "ClauseTable":
        seen_groups: list[str] = []
        for i, row in enumerate(self.rows, start=1):
            new_group = not seen_groups or seen_groups[-1] != row.sent_id
            if new_group:
                if row.sent_id in seen_groups:
                    raise TableError(f"sentence {row.sent_id!r} reappears after other sentences", row=i)
                if row.refinement is not Refinement.NONE:
                    raise TableError(
                        f"dangling refinement {row.refinement.value}: no preceding row for sentence {row.sent_id!r}",
                        row=i)
                seen_groups.append(row.sent_id)
            else:
                if row.refinement is Refinement.NONE:
                    raise TableError(
                        f"second NONE row within sentence {row.sent_id!r}; only the first row of a sentence carries NONE",
                        row=i)
        return self

    def sentence_groups(self) -> list[tuple[str, list[ClauseRow]]]:
        groups: list[tuple[str, list[ClauseRow]]] = []
        for row in self.rows:
            if groups and groups[-1][0] == row.sent_id:
                groups[-1][1].append(row)
            else:
                groups.append((row.sent_id, [row]))
        return groups


def _join_phrases(phrases: Iterable[AnnotatedPhrase]) -> str:
    return "|".join(str(p) for p in phrases)


def _split_phrases(cell: str, rownum: int) -> tuple[AnnotatedPhrase, ...]:
    if not cell:
        return ()
    try:
        return tuple(AnnotatedPhrase.parse(item) for item in cell.split("|"))
    except ValueError as exc:
        raise TableError(str(exc), row=rownum) from None


def _row_to_record(row: ClauseRow) -> dict:
    return {
        "sent_id": row.sent_id,
        "refinement": row.refinement.value,
        "modality": row.modality.value,
        "subject": row.subject,
        "verb": row.verb,
        "object": row.object,
        "time": [{"anchor": p.anchor, "text": p.text} for p in row.time],
        "adverbials": [{"anchor": p.anchor, "text": p.text} for p in row.adverbials],
        "conditions": [{"anchor": p.anchor, "text": p.text} for p in row.conditions],
        "notes": [{"anchor": p.anchor, "text": p.text} for p in row.notes],
    }


def _codes(enum_cls, cell: str, what: str, rownum: int):
    try:
        return enum_cls(cell)
    except ValueError:
        valid = "/".join(e.value for e in enum_cls)
        raise TableError(f"unknown {what} code {cell!r}, expected one of {valid}", row=rownum) from None


def serialize(table: ClauseTable, format: str = "csv") -> bytes:
    """Serialize a table to CSV or JSON bytes."""
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        for row in table.rows:
            writer.writerow([
                row.sent_id, row.refinement.value, row.modality.value,
                row.subject, row.verb, row.object,
                _join_phrases(row.time), _join_phrases(row.adverbials),
                _join_phrases(row.conditions), _join_phrases(row.notes),
            ])
        return buf.getvalue().encode("utf-8")
    if format == "json":
        doc = {"doc_id": table.doc_id, "rows": [_row_to_record(r) for r in table.rows]}
        return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {format!r}, expected 'csv' or 'json'")


def deserialize(data: bytes | str, format: str = "csv", doc_id: str = "") -> ClauseTable:
    """Read a table back from CSV or JSON, validating the schema.

    CSV carries no document id; callers may supply one.  JSON stores it.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if format == "csv":
        reader = csv.reader(io.StringIO(data))
        rows = list(reader)
        if not rows:
            return ClauseTable(doc_id=doc_id).validate()
        if rows[0] != HEADER:
            raise TableError(f"header mismatch: expected {','.join(HEADER)}, got {','.join(rows[0])}", row=1)
        out = []
        for i, cells in enumerate(rows[1:], start=2):
            if not cells:
                continue
            if len(cells) != len(HEADER):
                raise TableError(f"expected {len(HEADER)} columns, got {len(cells)}", row=i)
            try:
                out.append(ClauseRow(
                    sent_id=cells[0],
                    refinement=_codes(Refinement, cells[1], "refinement", i),
                    modality=_codes(Modality, cells[2], "modality", i),
                    subject=cells[3], verb=cells[4], object=cells[5],
                    time=_split_phrases(cells[6], i),
                    adverbials=_split_phrases(cells[7], i),
                    conditions=_split_phrases(cells[8], i),
                    notes=_split_phrases(cells[9], i),
                ))
            except ValueError as exc:
                if isinstance(exc, TableError):
                    raise
                raise TableError(str(exc), row=i) from None
        return ClauseTable(doc_id=doc_id, rows=out).validate()
    if format == "json":
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise TableError(f"invalid JSON: {exc}") from None
        rows = []
        for i, rec in enumerate(doc.get("rows", []), start=1):
            try:
                rows.append(ClauseRow(
                    sent_id=str(rec["sent_id"]),
                    refinement=_codes(Refinement, rec["refinement"], "refinement", i),
                    modality=_codes(Modality, rec["modality"], "modality", i),
                    subject=rec.get("subject", ""), verb=rec.get("verb", ""),
                    object=rec.get("object", ""),
                    time=tuple(AnnotatedPhrase(p["anchor"], p["text"]) for p in rec.get("time", [])),
                    adverbials=tuple(AnnotatedPhrase(p["anchor"], p["text"]) for p in rec.get("adverbials", [])),
                    conditions=tuple(AnnotatedPhrase(p["anchor"], p["text"]) for p in rec.get("conditions", [])),
                    notes=tuple(AnnotatedPhrase(p["anchor"], p["text"]) for p in rec.get("notes", [])),
                ))
            except KeyError as exc:
                raise TableError(f"missing field {exc}", row=i) from None
            except ValueError as exc:
                if isinstance(exc, TableError):
                    raise
                raise TableError(str(exc), row=i) from None
        return ClauseTable(doc_id=str(doc.get("doc_id", doc_id)), rows=rows).validate()
    raise ValueError(f"unknown format {format!r}, expected 'csv' or 'json'")
