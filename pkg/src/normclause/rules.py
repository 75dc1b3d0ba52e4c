"""Deterministic extraction rules over dependency graphs.

The rule layer locates predicate sites (expanding explicit and implicit
coordination of subjects, verbs, objects and main clauses into refinement
rows), classifies modality from core auxiliaries, converts agentful
passives to active voice, and detaches noun-phrase and verb modifiers.
The heuristic layer then routes modifiers and refines modality, and the
normalization layer renders the field strings.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .depgraph import DependencyGraph, LabelProfile, Role
from .heuristics import (
    Destination,
    Kind,
    ModifierRecord,
    numeric_condition,
    prepositional_object_fallback,
    refine_modality,
    resolve_precedence,
    route,
)
from .lexicon import LexiconConfig
from .normalize import RenderStyle, render_modifier, render_np, render_verb
from .table import AnnotatedPhrase, ClauseRow, Modality, Refinement


class Voice(Enum):
    ACTIVE = "ACTIVE"
    PASSIVE = "PASSIVE"


@dataclass
class PredicateSite:
    """One candidate clause: a predicate with its resolved participants.

    ``verb_head`` is the predicate head token (the nonverbal predicate for
    copular clauses).  ``shared_modifier_source`` carries, for conjunct
    sites, the coordination head and the surface position after which its
    modifiers count as shared across all conjuncts.
    """

    verb_head: int
    subject_head: Optional[int] = None
    object_head: Optional[int] = None
    voice: Voice = Voice.ACTIVE
    aux_tokens: tuple[int, ...] = ()
    negated: bool = False
    refinement_from_coordination: Refinement = Refinement.NONE
    neg_tokens: tuple[int, ...] = ()
    cop_head: Optional[int] = None
    notes_only: bool = False
    to_marked_object: bool = False
    converted_from_passive: bool = False
    extra_subject_heads: tuple[int, ...] = ()
    extra_object_heads: tuple[int, ...] = ()
    consumed_phrase_roots: frozenset[int] = frozenset()
    shared_modifier_source: Optional[tuple[int, int]] = None

    @property
    def predicate_head(self) -> int:
        return self.verb_head


def _is_predicate(tok, g: DependencyGraph, profile: LabelProfile) -> bool:
    if tok.upos in ("VERB", "AUX"):
        return True
    return bool(g.dependents(tok.id, Role.COPULA, profile))


def _coordinator(g: DependencyGraph, conj_id: int, head_id: int,
                 profile: LabelProfile) -> Refinement:
    """Refinement operator for one conjunct.

    Universal Dependencies attach the coordinator to the conjunct itself;
    classic Stanford dependencies attach it to the coordination head, so we
    fall back to the nearest coordinator preceding the conjunct.  A missing
    coordinator is implicit (comma) coordination, read conjunctively.
    """
    cc_ids = g.dependents(conj_id, Role.COORDINATION, profile)
    if not cc_ids:
        cc_ids = [c for c in g.dependents(head_id, Role.COORDINATION, profile) if c < conj_id]
        cc_ids = cc_ids[-1:]
    if not cc_ids:
        return Refinement.AND
    lemma = g.token(cc_ids[0]).lemma.lower()
    return Refinement.OR if lemma in ("or", "nor") else Refinement.AND


def _conjunct_expansion(head: Optional[int], g: DependencyGraph,
                        profile: LabelProfile) -> list[tuple[Optional[int], Refinement]]:
    """The head itself plus each of its conjuncts, with their operators."""
    if head is None:
        return [(None, Refinement.NONE)]
    variants: list[tuple[Optional[int], Refinement]] = [(head, Refinement.NONE)]
    for conj_id in g.dependents(head, Role.CONJUNCT, profile):
        variants.append((conj_id, _coordinator(g, conj_id, head, profile)))
    return variants


def find_predicates(g: DependencyGraph, profile: LabelProfile) -> list[PredicateSite]:
    """Locate every predicate candidate of one sentence, in sentence order.

    One site is produced for the root predicate, multiplied out over
    coordinated verbs, subjects and objects so that shared elements are
    copied to every row.  The first site carries refinement NONE; each
    later site carries the operator of the coordination that introduced it.
    A sentence without a verbal or copular root yields a single site
    flagged for the notes-only fallback.
    """
    root = g.root
    if not _is_predicate(root, g, profile):
        return [PredicateSite(verb_head=root.id, notes_only=True)]

    verb_variants: list[tuple[int, Refinement]] = [(root.id, Refinement.NONE)]
    for conj_id in g.dependents(root.id, Role.CONJUNCT, profile):
        conj = g.token(conj_id)
        is_pred = conj.upos in ("VERB", "AUX") or bool(g.dependents(conj_id, Role.COPULA, profile))
        if not is_pred and root.upos not in ("VERB", "AUX") and conj.upos in ("ADJ", "NOUN", "PROPN"):
            is_pred = True  # nominal conjunct of a copular predicate shares the copula
        if is_pred:
            verb_variants.append((conj_id, _coordinator(g, conj_id, root.id, profile)))
    last_conj_pos = max(v for v, _ in verb_variants)

    head_subject: Optional[int] = None
    head_aux: tuple[int, ...] = ()
    head_neg: tuple[int, ...] = ()
    head_voice = Voice.ACTIVE

    head_object: Optional[int] = None
    sites: list[tuple[tuple[int, int, int], Refinement, PredicateSite]] = []
    for v_idx, (verb_id, v_ref) in enumerate(verb_variants):
        subj_ids = g.dependents(verb_id, Role.SUBJECT, profile)
        if not subj_ids:
            subj_ids = g.dependents(verb_id, Role.PASSIVE_SUBJECT, profile)
        own_subject = subj_ids[0] if subj_ids else None
        extra_subjects = tuple(subj_ids[1:])
        aux = tuple(sorted(g.dependents(verb_id, Role.AUXILIARY, profile)
                           + g.dependents(verb_id, Role.PASSIVE_AUXILIARY, profile)))
        neg = tuple(g.dependents(verb_id, Role.NEGATION, profile))
        own_passive = (bool(g.dependents(verb_id, Role.PASSIVE_SUBJECT, profile))
                       or bool(g.dependents(verb_id, Role.PASSIVE_AUXILIARY, profile)))
        cop_ids = g.dependents(verb_id, Role.COPULA, profile)
        cop_head = cop_ids[0] if cop_ids else None
        if cop_head is None and v_idx > 0 and g.token(verb_id).upos in ("ADJ", "NOUN", "PROPN"):
            cop_head = sites[0][2].cop_head  # shared copula

        dobj_ids = g.dependents(verb_id, Role.DIRECT_OBJECT, profile)
        own_object = dobj_ids[0] if dobj_ids else None
        extra_objects = tuple(dobj_ids[1:])

        shared_source = None
        if v_idx == 0:
            head_subject, head_aux, head_neg = own_subject, aux, neg
            head_voice = Voice.PASSIVE if own_passive else Voice.ACTIVE
            head_object = own_object
            voice = head_voice
            subject = own_subject
            obj = own_object
        else:
            subject = own_subject if own_subject is not None else head_subject
            inherited_aux = not aux
            if inherited_aux:
                aux = head_aux
            if not neg and inherited_aux:
                neg = head_neg
            if own_passive:
                voice = Voice.PASSIVE
            elif own_subject is None and inherited_aux:
                voice = head_voice
            else:
                voice = Voice.ACTIVE
            obj = own_object
            if obj is None and head_object is not None and _leftmost(g, head_object) > last_conj_pos:
                obj = head_object  # object shared across the coordination
            shared_source = (root.id, last_conj_pos)

        subj_variants = _conjunct_expansion(subject, g, profile)
        obj_variants = _conjunct_expansion(obj, g, profile)

        for s_idx, (subj, s_ref) in enumerate(subj_variants):
            for o_idx, (obj, o_ref) in enumerate(obj_variants):
                site = PredicateSite(
                    verb_head=verb_id,
                    subject_head=subj,
                    object_head=obj,
                    voice=voice,
                    aux_tokens=aux,
                    negated=bool(neg),
                    neg_tokens=neg,
                    cop_head=cop_head,
                    extra_subject_heads=extra_subjects,
                    extra_object_heads=extra_objects,
                    shared_modifier_source=shared_source,
                )
                sites.append(((v_idx, s_idx, o_idx), _variant_ref(v_ref, s_ref, o_ref), site))

    ordered = []
    prev_coords: Optional[tuple[int, int, int]] = None
    for coords, refs, site in sites:
        if prev_coords is None:
            site.refinement_from_coordination = Refinement.NONE
        else:
            site.refinement_from_coordination = _changed_dimension_ref(prev_coords, coords, refs)
        prev_coords = coords
        ordered.append(site)
    return ordered


def _variant_ref(v_ref: Refinement, s_ref: Refinement, o_ref: Refinement) -> tuple[Refinement, ...]:
    return (v_ref, s_ref, o_ref)


def _changed_dimension_ref(prev: tuple[int, int, int], cur: tuple[int, int, int],
                           refs: tuple[Refinement, ...]) -> Refinement:
    for dim in range(3):
        if prev[dim] != cur[dim]:
            op = refs[dim]
            return op if op is not Refinement.NONE else Refinement.AND
    return Refinement.AND


def classify_modality_core(site: PredicateSite, g: DependencyGraph) -> Modality:
    """Base modality from core auxiliaries only.

    ``may`` signals permission and ``must`` obligation; any negation forces
    prohibition; the precedence F over O over P resolves combinations, and
    no signal at all yields a plain declaration.
    """
    signals: set[Modality] = set()
    for aux_id in site.aux_tokens:
        lemma = g.token(aux_id).lemma.lower()
        if lemma == "may":
            signals.add(Modality.PERMISSION)
        elif lemma == "must":
            signals.add(Modality.OBLIGATION)
    if site.negated:
        signals.add(Modality.PROHIBITION)
    return resolve_precedence(signals)


def passive_to_active(site: PredicateSite, g: DependencyGraph,
                      profile: LabelProfile) -> PredicateSite:
    """Convert an agentful passive to active voice.

    When a by-agent exists, the agent noun phrase becomes the subject and
    the original passive subject becomes the object.  Without an agent the
    site is returned unchanged; rendering keeps the passive brackets.
    """
    if site.voice is not Voice.PASSIVE:
        raise ValueError("passive_to_active requires a passive site")
    agent_np: Optional[int] = None
    consumed: Optional[int] = None
    agent_ids = g.dependents(site.verb_head, Role.AGENT, profile)
    if agent_ids:
        cand = g.token(agent_ids[0])
        if cand.upos == "ADP":
            comps = [k for k in g.children(cand.id)
                     if profile.matches(g.token(k).deprel, Role.PREP_COMPLEMENT)]
            if comps:
                agent_np, consumed = comps[0], cand.id
        else:
            agent_np, consumed = cand.id, cand.id
    if agent_np is None:
        for pp in _site_prep_phrases(site, g, profile):
            if pp.prep == "by":
                agent_np, consumed = pp.np_head, pp.span_root
                break
    if agent_np is None:
        return site
    return replace(
        site,
        voice=Voice.ACTIVE,
        subject_head=agent_np,
        object_head=site.subject_head,
        converted_from_passive=True,
        consumed_phrase_roots=site.consumed_phrase_roots | {consumed},
    )


def _leftmost(g: DependencyGraph, node: int) -> int:
    return min(g.subtree_ids(node))


def _site_prep_phrases(site: PredicateSite, g: DependencyGraph, profile: LabelProfile):
    """Prepositional phrases available to a site: its own, plus those of the
    coordination head that trail every conjunct (shared modifiers)."""
    phrases = list(g.prep_phrases(site.verb_head, profile))
    if site.shared_modifier_source is not None:
        head_id, cutoff = site.shared_modifier_source
        for pp in g.prep_phrases(head_id, profile):
            if _leftmost(g, pp.span_root) > cutoff:
                phrases.append(pp)
    phrases = [pp for pp in phrases if pp.span_root not in site.consumed_phrase_roots]
    phrases.sort(key=lambda pp: _leftmost(g, pp.span_root))
    return phrases


def detach_verb_modifiers(site: PredicateSite, g: DependencyGraph,
                          profile: LabelProfile) -> list[ModifierRecord]:
    """Raw modifier records for everything that modifies the main verb.

    Adverbial modifiers, prepositional phrases and adverbial clauses each
    become one record, in surface order; routing decides their destination.
    Tokens already consumed (auxiliaries, negation, agent phrases) are
    skipped, and conjunct sites additionally receive the coordination
    head's trailing (shared) modifiers.
    """
    consumed = set(site.aux_tokens) | set(site.neg_tokens)
    if site.cop_head is not None:
        consumed.add(site.cop_head)
    records: list[ModifierRecord] = []

    def scan(verb_id: int, only_after: Optional[int]) -> None:
        for adv_id in g.dependents(verb_id, Role.ADVERBIAL_MODIFIER, profile):
            if adv_id in consumed:
                continue
            if only_after is not None and _leftmost(g, adv_id) <= only_after:
                continue
            records.append(ModifierRecord(kind=Kind.ADVMOD, span_root=adv_id, anchor="V",
                                          head_lemma=g.token(adv_id).lemma))
        for pp in g.prep_phrases(verb_id, profile):
            if pp.span_root in site.consumed_phrase_roots:
                continue
            if only_after is not None and _leftmost(g, pp.span_root) <= only_after:
                continue
            records.append(ModifierRecord(kind=Kind.PP, span_root=pp.span_root, anchor="V",
                                          marker=pp.prep, head_lemma=g.token(pp.np_head).lemma,
                                          np_head=pp.np_head, excluded=()))
        for advcl_id in g.dependents(verb_id, Role.ADVERBIAL_CLAUSE, profile):
            if only_after is not None and _leftmost(g, advcl_id) <= only_after:
                continue
            marker_ids = g.dependents(advcl_id, Role.CLAUSE_MARKER, profile)
            marker = g.token(marker_ids[0]).lemma.lower() if marker_ids else ""
            records.append(ModifierRecord(kind=Kind.ADVCL, span_root=advcl_id, anchor="V",
                                          marker=marker))

    scan(site.verb_head, None)
    if site.shared_modifier_source is not None:
        head_id, cutoff = site.shared_modifier_source
        scan(head_id, cutoff)
    records.sort(key=lambda r: _leftmost(g, r.span_root))
    return records


def detach_np_modifiers(np_head: int, g: DependencyGraph, profile: LabelProfile,
                        anchor: str) -> tuple[tuple[int, ...], list[ModifierRecord]]:
    """Split a subject/object noun phrase into core tokens and note records.

    Relative clauses, verbal modifiers and prepositional modifiers of the
    head leave the core phrase; they come back as records anchored to the
    field, with prepositional ones still subject to temporal re-routing.
    Returns (excluded subtree roots, records).
    """
    excluded: list[int] = []
    records: list[ModifierRecord] = []
    for rel_id in g.dependents(np_head, Role.RELATIVE_CLAUSE, profile):
        excluded.append(rel_id)
        records.append(ModifierRecord(kind=Kind.NP_CLAUSE, span_root=rel_id, anchor=anchor))
    for vmod_id in g.dependents(np_head, Role.VERBAL_MODIFIER, profile):
        excluded.append(vmod_id)
        records.append(ModifierRecord(kind=Kind.NP_CLAUSE, span_root=vmod_id, anchor=anchor))
    for pp in g.prep_phrases(np_head, profile):
        excluded.append(pp.span_root)
        records.append(ModifierRecord(kind=Kind.PP, span_root=pp.span_root, anchor=anchor,
                                      marker=pp.prep, head_lemma=g.token(pp.np_head).lemma,
                                      np_head=pp.np_head))
    records.sort(key=lambda r: _leftmost(g, r.span_root))
    return tuple(excluded), records


def _np_render_exclusions(head: int, g: DependencyGraph, profile: LabelProfile) -> set[int]:
    """Conjunct subtrees and coordinators never render inside a core phrase;
    expanded conjuncts get their own rows."""
    exclude: set[int] = set()
    exclude.update(g.dependents(head, Role.CONJUNCT, profile))
    exclude.update(g.dependents(head, Role.COORDINATION, profile))
    return exclude


def _surface_text(g: DependencyGraph, node: int) -> str:
    return " ".join(t.form for t in g.yield_span(node) if t.upos != "PUNCT")


def extract_sentence(g: DependencyGraph, cfg: LexiconConfig, profile: LabelProfile,
                     style: RenderStyle = RenderStyle.CANONICAL) -> list[ClauseRow]:
    """Run the full per-sentence pipeline and return ordered clause rows.

    Never hard-fails on a valid graph: unfillable fields stay blank, and a
    sentence without a predicate yields one declaration row holding the
    sentence text as a note.
    """
    rows: list[ClauseRow] = []
    for site in find_predicates(g, profile):
        if site.notes_only:
            rows.append(ClauseRow(
                sent_id=g.sent_id,
                refinement=Refinement.NONE,
                modality=Modality.DECLARATION,
                notes=(AnnotatedPhrase("V", g.text),),
            ))
            continue

        base = classify_modality_core(site, g)
        if site.voice is Voice.PASSIVE:
            site = passive_to_active(site, g, profile)
        modality = refine_modality(base, site, g, cfg)

        records = detach_verb_modifiers(site, g, profile)

        folded_prep: Optional[str] = None
        late_object = False  # object resolved after coordination analysis
        if site.object_head is None:
            iobj_ids = g.dependents(site.verb_head, Role.INDIRECT_OBJECT, profile)
            if iobj_ids:
                site.object_head = iobj_ids[0]
                site.to_marked_object = True
                late_object = True
        if site.object_head is None:
            promo = prepositional_object_fallback(site, g, profile, cfg,
                                                  [r for r in records if r.kind is Kind.PP])
            if promo is not None:
                site.object_head = promo.np_head
                folded_prep = promo.marker or None
                records = [r for r in records if r.span_root != promo.span_root]
                late_object = True

        # An object found only now (indirect or promoted prepositional) was
        # invisible to the coordination expansion; expand its conjuncts here.
        object_variants: list[tuple[Optional[int], Refinement]] = [(site.object_head, site.refinement_from_coordination)]
        if late_object and site.object_head is not None:
            for conj_id in g.dependents(site.object_head, Role.CONJUNCT, profile):
                object_variants.append((conj_id, _coordinator(g, conj_id, site.object_head, profile)))

        def emit(record: ModifierRecord, sink: dict) -> None:
            dest = route(record, cfg)
            if dest is Destination.DROP:
                return
            if dest is Destination.TIME and record.anchor != "V":
                record = replace(record, anchor="V")  # attachment repair
            sink[dest].append(render_modifier(record, g, cfg, profile, style))

        def np_side(head: Optional[int], anchor: str, sink: dict) -> str:
            if head is None:
                return ""
            exclude = _np_render_exclusions(head, g, profile)
            detached, np_records = detach_np_modifiers(head, g, profile, anchor)
            exclude.update(detached)
            num_excluded, num_conds = numeric_condition(head, g, profile, cfg)
            exclude.update(num_excluded)
            for _, text in num_conds:
                sink[Destination.CONDITIONS].append(AnnotatedPhrase(anchor, text))
            for record in np_records:
                emit(record, sink)
            return render_np(head, g, exclude, cfg, profile, style)

        shared: dict = {d: [] for d in (Destination.TIME, Destination.ADVERBIALS,
                                        Destination.CONDITIONS, Destination.NOTES)}
        subject = np_side(site.subject_head, "S", shared)
        for extra in site.extra_subject_heads:
            shared[Destination.NOTES].append(AnnotatedPhrase("S", _surface_text(g, extra)))
        for record in records:
            emit(record, shared)
        for extra in site.extra_object_heads:
            shared[Destination.NOTES].append(AnnotatedPhrase("O", _surface_text(g, extra)))

        verb = render_verb(site, folded_prep, g)
        for obj_head, refinement in object_variants:
            sink = {d: list(v) for d, v in shared.items()}
            obj = np_side(obj_head, "O", sink)
            rows.append(ClauseRow(
                sent_id=g.sent_id,
                refinement=refinement,
                modality=modality,
                subject=subject,
                verb=verb,
                object=obj,
                time=tuple(sink[Destination.TIME]),
                adverbials=tuple(sink[Destination.ADVERBIALS]),
                conditions=tuple(sink[Destination.CONDITIONS]),
                notes=tuple(sink[Destination.NOTES]),
            ))
    return rows
