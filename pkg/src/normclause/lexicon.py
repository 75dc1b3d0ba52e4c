"""Keyword lexicons driving the heuristic layer.

All heuristic decisions are lexicon-driven or gated on the lexicon being
non-empty, so an empty config degrades the engine to rules-only behavior.
A lexicon JSON file holds one array per keyword list plus an object for
``anaphora_map``; omitted keys fall back to the shipped defaults, and an
explicitly empty document (``{}``) selects rules-only mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields


@dataclass(frozen=True)
class LexiconConfig:
    permission_aux: frozenset[str] = frozenset()
    obligation_aux: frozenset[str] = frozenset()
    prohibition_markers: frozenset[str] = frozenset()
    obligation_predicates: frozenset[str] = frozenset()
    temporal_prepositions: frozenset[str] = frozenset()
    ambiguous_prepositions: frozenset[str] = frozenset()
    temporal_nouns: frozenset[str] = frozenset()
    temporal_markers: frozenset[str] = frozenset()
    condition_markers: frozenset[str] = frozenset()
    temporal_adverbs: frozenset[str] = frozenset()
    irrelevant_adverbs: frozenset[str] = frozenset()
    anaphora_map: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.permission_aux & self.obligation_aux:
            raise ValueError("permission_aux and obligation_aux overlap: "
                             f"{sorted(self.permission_aux & self.obligation_aux)}")
        for pron, tag in self.anaphora_map:
            if not (tag.startswith("<") and tag.endswith(">")):
                raise ValueError(f"anaphora tag for {pron!r} must be angle-bracketed, got {tag!r}")

    @property
    def anaphora(self) -> dict[str, str]:
        return dict(self.anaphora_map)

    def is_empty(self) -> bool:
        """True when every list and the anaphora map are empty (rules-only)."""
        return all(not getattr(self, f.name) for f in fields(self))


def default_lexicon() -> LexiconConfig:
    return LexiconConfig(
        permission_aux=frozenset({"may", "can", "could", "might"}),
        obligation_aux=frozenset({"must", "shall", "will", "should"}),
        prohibition_markers=frozenset({"prohibit", "forbid"}),
        obligation_predicates=frozenset({"responsible", "require", "oblige", "obligate", "liable"}),
        temporal_prepositions=frozenset({"after", "before", "during", "until", "since"}),
        ambiguous_prepositions=frozenset({"in", "within", "for", "at", "on", "over"}),
        temporal_nouns=frozenset({"day", "week", "month", "year", "hour", "minute",
                                  "time", "term", "period", "date", "deadline"}),
        temporal_markers=frozenset({"while", "when", "whenever", "until", "once"}),
        condition_markers=frozenset({"if"}),
        temporal_adverbs=frozenset({"always", "immediately", "before", "soon", "promptly", "now"}),
        irrelevant_adverbs=frozenset({"very", "however", "also", "moreover", "furthermore",
                                      "therefore", "thus", "really", "quite"}),
        anaphora_map=(
            ("we", "<we>"), ("our", "<we>"), ("us", "<we>"), ("ours", "<we>"),
            ("you", "<user>"), ("your", "<user>"), ("yours", "<user>"),
        ),
    )


def empty_lexicon() -> LexiconConfig:
    """The rules-only configuration: every heuristic disabled."""
    return LexiconConfig()


_LIST_KEYS = [f.name for f in fields(LexiconConfig) if f.name != "anaphora_map"]


def load_lexicon(data: bytes | str) -> LexiconConfig:
    """Parse a lexicon JSON document.

    Keys present override the defaults; keys absent keep them.  ``{}``
    yields the empty (rules-only) lexicon.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    doc = json.loads(data)
    if not isinstance(doc, dict):
        raise ValueError("lexicon file must hold a JSON object")
    if not doc:
        return empty_lexicon()
    base = default_lexicon()
    kwargs = {}
    for key in _LIST_KEYS:
        if key in doc:
            values = doc[key]
            if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
                raise ValueError(f"lexicon key {key!r} must be an array of strings")
            kwargs[key] = frozenset(v.lower() for v in values)
        else:
            kwargs[key] = getattr(base, key)
    if "anaphora_map" in doc:
        mapping = doc["anaphora_map"]
        if not isinstance(mapping, dict):
            raise ValueError("anaphora_map must be an object")
        kwargs["anaphora_map"] = tuple(sorted((k.lower(), v) for k, v in mapping.items()))
    else:
        kwargs["anaphora_map"] = base.anaphora_map
    unknown = set(doc) - set(_LIST_KEYS) - {"anaphora_map"}
    if unknown:
        raise ValueError(f"unknown lexicon keys: {sorted(unknown)}")
    return LexiconConfig(**kwargs)
