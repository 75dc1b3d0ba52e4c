"""Surface normalization of field values.

Core fields (Subject, Verb, Object) render concise, lemmatised heads with
articles stripped and genitives converted where possible; modifier phrases
render near-verbatim with pronoun tags substituted.  Engine-inserted
material appears in brackets, and only as the literal ``[is]`` and ``[to]``.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Optional

from .depgraph import DependencyGraph, LabelProfile, Role, Token
from .heuristics import ModifierRecord
from .lexicon import LexiconConfig
from .table import AnnotatedPhrase

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .rules import PredicateSite


class RenderStyle(Enum):
    """Canonical keeps angle-bracket party tags; display prints them as
    capitalized names (``<user>`` vs ``User``)."""

    CANONICAL = "canonical"
    DISPLAY = "display"


#: Dependents never rendered inside a core field: loosely attached or
#: clearly extra-clausal material that would bloat the concise phrase.
LOOSE_DEPRELS = frozenset({
    "appos", "parataxis", "dep", "discourse", "list", "orphan",
    "reparandum", "vocative", "punct",
})

_ARTICLES = frozenset({"a", "an", "the"})


def _party(tag: str, style: RenderStyle) -> str:
    if style is RenderStyle.DISPLAY and tag.startswith("<") and tag.endswith(">"):
        name = tag[1:-1]
        return name[:1].upper() + name[1:]
    return tag


def _detok(words: Iterable[str]) -> str:
    text = " ".join(w for w in words if w)
    text = re.sub(r" (?=('s|n't|'ll|'re|'ve|'d|'m)\b)", "", text)
    text = re.sub(r"\s+", " ", text)
    return text.strip()


def _possessor_tag(poss: Token, cfg: LexiconConfig) -> Optional[str]:
    """The rendering of a possessor when genitive conversion applies.

    Conversion is possible for pronoun possessors with a configured party
    tag and for proper-noun possessors; anything else keeps the surface
    genitive.
    """
    if poss.upos == "PRON":
        return cfg.anaphora.get(poss.lemma.lower())
    if poss.upos == "PROPN":
        return poss.form
    return None


def render_np(head: int, g: DependencyGraph, excluded: Iterable[int],
              cfg: LexiconConfig, profile: LabelProfile,
              style: RenderStyle = RenderStyle.CANONICAL) -> str:
    """Render a concise core noun phrase for the Subject or Object field.

    The head token renders by lemma, dependents keep their surface form.
    Determiners of the head (and of a retained possessor), case markers,
    and loosely attached dependents are dropped; a convertible genitive
    ``X's Y`` becomes ``Y of X``.
    """
    exclude = set(excluded)
    head_tok = g.token(head)
    for c in g.dependents(head, Role.CASE, profile):
        exclude.add(c)
        exclude.update(g.dependents(c, Role.MULTIWORD, profile))
    exclude.update(g.dependents(head, Role.DETERMINER, profile))
    for c in g.children(head):
        if g.token(c).deprel.split(":", 1)[0] in LOOSE_DEPRELS:
            exclude.add(c)

    suffix = ""
    poss_ids = g.dependents(head, Role.POSSESSOR, profile)
    if poss_ids:
        poss = g.token(poss_ids[0])
        tag = _possessor_tag(poss, cfg)
        if tag is not None:
            exclude.add(poss.id)
            suffix = " of " + _party(tag, style)
        else:
            exclude.update(g.dependents(poss.id, Role.DETERMINER, profile))

    words = []
    for tok in g.yield_span(head, exclude):
        if tok.upos == "PUNCT":
            continue
        if tok.id == head:
            mapped = cfg.anaphora.get(tok.lemma.lower()) if tok.upos == "PRON" else None
            words.append(_party(mapped, style) if mapped else tok.lemma)
        elif tok.upos == "PRON" and tok.lemma.lower() in cfg.anaphora:
            words.append(_party(cfg.anaphora[tok.lemma.lower()], style))
        else:
            words.append(tok.form)
    while words and words[0].lower() in _ARTICLES:
        words = words[1:]
    return (_detok(words) + suffix).strip()


def render_verb(site: "PredicateSite", folded_preposition: Optional[str],
                g: DependencyGraph) -> str:
    """Render the Verb field for a finalized predicate site.

    Active verbal predicates are bare lemmas; promoted prepositional
    objects fold their preposition in verbatim; unconverted passives render
    as ``[is] participle`` with a to-marked object adding ``[to]``; copular
    predicates render as ``[is] predicate``.
    """
    from .rules import Voice  # local import to avoid a module cycle

    head = g.token(site.verb_head)
    if site.cop_head is not None:
        rendered = "[is] " + head.lemma
    elif site.voice is Voice.PASSIVE:
        rendered = "[is] " + head.form
    else:
        rendered = head.lemma
    if site.to_marked_object:
        rendered += " [to]"
    elif folded_preposition:
        if site.voice is Voice.PASSIVE and folded_preposition == "to":
            rendered += " [to]"
        else:
            rendered += " " + folded_preposition
    return rendered


def render_modifier(record: ModifierRecord, g: DependencyGraph, cfg: LexiconConfig,
                    profile: LabelProfile,
                    style: RenderStyle = RenderStyle.CANONICAL) -> AnnotatedPhrase:
    """Render a routed modifier as an anchored phrase.

    The phrase keeps surface order and inflection; pronoun party tags are
    substituted (possessives keep their genitive shape), and determiners of
    surface-genitive possessors are dropped.
    """
    exclude = set(record.excluded)
    for tok in g.yield_span(record.span_root, exclude):
        if profile.matches(tok.deprel, Role.POSSESSOR):
            exclude.update(g.dependents(tok.id, Role.DETERMINER, profile))
    words = []
    absorbed: set[int] = set()
    for tok in g.yield_span(record.span_root, exclude):
        if tok.upos == "PUNCT" or tok.id in absorbed:
            continue
        mapped = cfg.anaphora.get(tok.lemma.lower()) if tok.upos == "PRON" else None
        if mapped and profile.matches(tok.deprel, Role.POSSESSOR):
            words.append(_party(mapped, style) + "'s")
            absorbed.update(g.dependents(tok.id, Role.CASE, profile))
        elif mapped:
            words.append(_party(mapped, style))
        else:
            words.append(tok.form)
    return AnnotatedPhrase(anchor=record.anchor, text=_detok(words))
