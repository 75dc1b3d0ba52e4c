"""Lexicon-driven refinements layered on top of the deterministic rules.

Covers: modality from extended keyword lists and the predicate lemma,
temporal/conditional routing of verb modifiers, repair of prepositional
phrases misattached to the object, filtering of irrelevant adverbs,
numeric attributes as conditions, promotion of a prepositional object
when no direct object exists, and pronoun normalization.

Every operation here is either driven by a :class:`~.lexicon.LexiconConfig`
list or gated on the config being non-empty, so the empty config yields
exactly the rules-only engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional

from .depgraph import DependencyGraph, LabelProfile, Role, Token
from .lexicon import LexiconConfig
from .table import Modality

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .rules import PredicateSite


class Kind(Enum):
    """Syntactic kind of a raw modifier record."""

    ADVMOD = "ADVMOD"
    PP = "PP"
    ADVCL = "ADVCL"
    NP_CLAUSE = "NP_CLAUSE"  # relative clause or verbal modifier on a noun head


class Destination(Enum):
    """Where a routed modifier record lands."""

    TIME = "TIME"
    ADVERBIALS = "ADVERBIALS"
    CONDITIONS = "CONDITIONS"
    NOTES = "NOTES"
    DROP = "DROP"


@dataclass(frozen=True)
class ModifierRecord:
    """One detached modifier before routing.

    ``span_root`` yields the phrase; ``marker`` holds the preposition for
    PP records and the clause marker for ADVCL records; ``head_lemma`` is
    the lemma of the inner noun-phrase head for PP records.  ``anchor``
    names the core field whose head governs the phrase.
    """

    kind: Kind
    span_root: int
    anchor: str  # S, V or O
    marker: str = ""
    head_lemma: str = ""
    np_head: int = 0
    excluded: tuple[int, ...] = ()


_PRECEDENCE = (Modality.PROHIBITION, Modality.OBLIGATION, Modality.PERMISSION)


def resolve_precedence(signals: set[Modality]) -> Modality:
    """Collapse a set of modality signals: F beats O beats P, default D."""
    for modality in _PRECEDENCE:
        if modality in signals:
            return modality
    return Modality.DECLARATION


def refine_modality(base: Modality, site: "PredicateSite", g: DependencyGraph,
                    cfg: LexiconConfig) -> Modality:
    """Re-classify modality using the extended keyword lists.

    Auxiliary lemmas are checked against the permission/obligation lists,
    the predicate lemma (verbal or copular) against the obligation and
    prohibition predicate lists.  Negation still forces prohibition, and
    the usual precedence applies over all collected signals.
    """
    signals: set[Modality] = set()
    if base is not Modality.DECLARATION:
        signals.add(base)
    for aux_id in site.aux_tokens:
        lemma = g.token(aux_id).lemma.lower()
        if lemma in cfg.permission_aux:
            signals.add(Modality.PERMISSION)
        if lemma in cfg.obligation_aux:
            signals.add(Modality.OBLIGATION)
        if lemma in cfg.prohibition_markers:
            signals.add(Modality.PROHIBITION)
    pred_lemma = g.token(site.predicate_head).lemma.lower()
    if pred_lemma in cfg.obligation_predicates:
        signals.add(Modality.OBLIGATION)
    if pred_lemma in cfg.prohibition_markers:
        signals.add(Modality.PROHIBITION)
    if site.negated:
        signals.add(Modality.PROHIBITION)
    return resolve_precedence(signals)


def route_pp(record: ModifierRecord, attachment: str, cfg: LexiconConfig) -> Destination:
    """Route one prepositional phrase.

    Reliable temporal prepositions go to Time.  Ambiguous prepositions go
    to Time only when the noun-phrase head is a time word.  Phrases
    attached to the object that carry either temporal indicator are
    repaired to the verb-level Time field; other object-attached phrases
    stay notes, and verb-attached ones default to Adverbials.
    """
    prep = record.marker.lower()
    temporal = prep in cfg.temporal_prepositions or (
        prep in cfg.ambiguous_prepositions and record.head_lemma.lower() in cfg.temporal_nouns)
    if temporal:
        return Destination.TIME
    if attachment == "OBJECT":
        return Destination.NOTES
    return Destination.ADVERBIALS


def route_advcl(record: ModifierRecord, cfg: LexiconConfig) -> Destination:
    """Route an adverbial clause by its marker (time, condition, default)."""
    marker = record.marker.lower()
    if marker in cfg.temporal_markers:
        return Destination.TIME
    if marker in cfg.condition_markers:
        return Destination.CONDITIONS
    return Destination.ADVERBIALS


def filter_adverb(record: ModifierRecord, cfg: LexiconConfig) -> Destination:
    """Route a simple adverb: temporal, dropped as irrelevant, or kept."""
    lemma = record.head_lemma.lower()
    if lemma in cfg.temporal_adverbs:
        return Destination.TIME
    if lemma in cfg.irrelevant_adverbs:
        return Destination.DROP
    return Destination.ADVERBIALS


def route(record: ModifierRecord, cfg: LexiconConfig) -> Destination:
    """Total routing: every record lands in exactly one destination."""
    if record.kind is Kind.ADVMOD:
        return filter_adverb(record, cfg)
    if record.kind is Kind.ADVCL:
        return route_advcl(record, cfg)
    if record.kind is Kind.NP_CLAUSE:
        return Destination.NOTES
    if record.anchor == "S":
        return Destination.NOTES
    attachment = "OBJECT" if record.anchor == "O" else "VERB"
    return route_pp(record, attachment, cfg)


def numeric_condition(np_head: int, g: DependencyGraph, profile: LabelProfile,
                      cfg: LexiconConfig) -> tuple[tuple[int, ...], list[tuple[int, str]]]:
    """Detach numeric modifiers of a subject/object head as conditions.

    Returns (token ids to exclude from the core phrase, list of
    (position, text) condition entries).  Disabled in rules-only mode.
    """
    if cfg.is_empty():
        return (), []
    excluded: list[int] = []
    conditions: list[tuple[int, str]] = []
    for num_id in g.dependents(np_head, Role.NUMERIC_MODIFIER, profile):
        span = [t for t in g.yield_span(num_id) if t.upos != "PUNCT"]
        if not span:
            continue
        excluded.append(num_id)
        conditions.append((num_id, " ".join(t.form for t in span)))
    return tuple(excluded), conditions


def prepositional_object_fallback(site: "PredicateSite", g: DependencyGraph,
                                  profile: LabelProfile, cfg: LexiconConfig,
                                  candidates: list[ModifierRecord]) -> Optional[ModifierRecord]:
    """Promote the first prepositional phrase of the verb to the Object.

    ``candidates`` are the site's PP records in surface order.  Applies
    only when the clause has no direct object and, for passives, no agent
    phrase (the caller guarantees both); the caller folds the preposition
    into the Verb field.  Disabled in rules-only mode.
    """
    if cfg.is_empty():
        return None
    for record in candidates:
        if record.span_root not in site.consumed_phrase_roots:
            return record
    return None


def normalize_pronoun(lemma: str, cfg: LexiconConfig) -> str:
    """Map a pronoun lemma to its canonical party tag, if configured.

    Unmapped strings come back unchanged, which also makes the function
    idempotent on its own output.
    """
    return cfg.anaphora.get(lemma.lower(), lemma)


def resolve_anaphora(token: Token, cfg: LexiconConfig) -> str:
    """Canonical rendering for a pronominal token (e.g. ``us`` to ``<we>``)."""
    mapped = cfg.anaphora.get(token.lemma.lower())
    if mapped is not None:
        return mapped
    return normalize_pronoun(token.lemma, cfg)
