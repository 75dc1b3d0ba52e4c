"""Deontic clause extraction from dependency-parsed normative text.

Turns parsed sentences of contracts, terms of service and regulations into
structured clause rows (subject, verb, object, modality, refinement, plus
detached time/adverbial/condition/note phrases), exports them as a
hierarchical contract model, and scores extractions against gold tables.
"""

from .codiagram import CoBox, CoModel, CoRefinement, build_model, count_leaves, export_model
from .depgraph import (
    ConlluError,
    DependencyGraph,
    LabelProfile,
    PrepPhrase,
    Role,
    Token,
    label_profile,
    parse_conllu,
    to_conllu,
)
from .evaluate import EvalReport, Measure, align_rows, f_score, score, score_many
from .extractor import ClauseExtractor
from .heuristics import (
    Destination,
    Kind,
    ModifierRecord,
    filter_adverb,
    normalize_pronoun,
    numeric_condition,
    prepositional_object_fallback,
    refine_modality,
    resolve_anaphora,
    route,
    route_advcl,
    route_pp,
)
from .lexicon import LexiconConfig, default_lexicon, empty_lexicon, load_lexicon
from .normalize import RenderStyle, render_modifier, render_np, render_verb
from .rules import (
    PredicateSite,
    Voice,
    classify_modality_core,
    detach_np_modifiers,
    detach_verb_modifiers,
    extract_sentence,
    find_predicates,
    passive_to_active,
)
from .table import (
    AnnotatedPhrase,
    ClauseRow,
    ClauseTable,
    Modality,
    Refinement,
    TableError,
    deserialize,
    serialize,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedPhrase", "ClauseExtractor", "ClauseRow", "ClauseTable", "CoBox",
    "CoModel", "CoRefinement", "ConlluError", "DependencyGraph", "Destination",
    "EvalReport", "Kind", "LabelProfile", "LexiconConfig", "Measure",
    "Modality", "ModifierRecord", "PredicateSite", "PrepPhrase", "Refinement",
    "RenderStyle", "Role", "TableError", "Token", "Voice", "align_rows",
    "build_model", "classify_modality_core", "count_leaves", "default_lexicon",
    "deserialize", "detach_np_modifiers", "detach_verb_modifiers",
    "empty_lexicon", "export_model", "extract_sentence", "f_score",
    "filter_adverb", "find_predicates", "label_profile", "load_lexicon",
    "normalize_pronoun", "numeric_condition", "parse_conllu",
    "passive_to_active", "prepositional_object_fallback", "refine_modality",
    "render_modifier", "render_np", "render_verb", "resolve_anaphora",
    "route", "route_advcl", "route_pp", "score", "score_many", "serialize",
    "to_conllu",
]
