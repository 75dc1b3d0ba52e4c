import itertools

import pytest

from normclause import (
    Kind,
    Modality,
    Refinement,
    Voice,
    classify_modality_core,
    default_lexicon,
    detach_np_modifiers,
    detach_verb_modifiers,
    extract_sentence,
    find_predicates,
    label_profile,
    passive_to_active,
    refine_modality,
)
from normclause.normalize import RenderStyle

from conftest import build_graph

UD = label_profile("ud")
CFG = default_lexicon()


def verb_coordination_graph(n, coordinator="and"):
    """'You must act[, <cc> act]*' with n coordinated verbs."""
    rows = [
        ("You", "you", "PRON", 3, "nsubj"),
        ("must", "must", "AUX", 3, "aux"),
        ("act", "act", "VERB", 0, "root"),
    ]
    for k in range(n - 1):
        cc_id = len(rows) + 1
        verb_id = cc_id + 1
        rows.append((coordinator, coordinator, "CCONJ", verb_id, "cc"))
        rows.append((f"act{k + 2}", f"act{k + 2}", "VERB", 3, "conj"))
    return build_graph(rows)


def test_single_predicate_single_site():
    sites = find_predicates(verb_coordination_graph(1), UD)
    assert len(sites) == 1
    assert sites[0].refinement_from_coordination is Refinement.NONE
    assert not sites[0].notes_only


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("coordinator,op", [("and", Refinement.AND), ("or", Refinement.OR)])
def test_verb_coordination_expansion(n, coordinator, op):
    g = verb_coordination_graph(n, coordinator)
    rows = extract_sentence(g, CFG, UD)
    assert len(rows) == n
    assert rows[0].refinement is Refinement.NONE
    assert all(r.refinement is op for r in rows[1:])
    assert all(r.subject == "<user>" for r in rows)  # shared subject copied


def test_object_coordination_fixture(table1_graphs):
    s3 = table1_graphs[2]
    sites = find_predicates(s3, UD)
    assert len(sites) == 2
    assert sites[0].verb_head == sites[1].verb_head == s3.root_id
    assert [s.refinement_from_coordination for s in sites] == [Refinement.NONE, Refinement.OR]


def test_object_coordination_and_fixture(table1_graphs):
    s5 = table1_graphs[4]
    sites = find_predicates(s5, UD)
    assert len(sites) == 2
    assert [s.refinement_from_coordination for s in sites] == [Refinement.NONE, Refinement.AND]


def test_implicit_coordination_defaults_to_and():
    g = build_graph([
        ("You", "you", "PRON", 2, "nsubj"),
        ("review", "review", "VERB", 0, "root"),
        ("terms", "term", "NOUN", 2, "obj"),
        ("policies", "policy", "NOUN", 3, "conj"),  # comma-joined, no coordinator
    ])
    rows = extract_sentence(g, CFG, UD)
    assert [r.refinement for r in rows] == [Refinement.NONE, Refinement.AND]


def test_subject_coordination_expands():
    g = build_graph([
        ("renter", "renter", "NOUN", 4, "nsubj"),
        ("and", "and", "CCONJ", 3, "cc"),
        ("owner", "owner", "NOUN", 1, "conj"),
        ("sign", "sign", "VERB", 0, "root"),
        ("agreement", "agreement", "NOUN", 4, "obj"),
    ])
    rows = extract_sentence(g, CFG, UD)
    assert [(r.subject, r.object, r.refinement) for r in rows] == [
        ("renter", "agreement", Refinement.NONE),
        ("owner", "agreement", Refinement.AND),
    ]


def test_cartesian_expansion_subject_and_object():
    g = build_graph([
        ("renter", "renter", "NOUN", 4, "nsubj"),
        ("and", "and", "CCONJ", 3, "cc"),
        ("owner", "owner", "NOUN", 1, "conj"),
        ("sign", "sign", "VERB", 0, "root"),
        ("agreement", "agreement", "NOUN", 4, "obj"),
        ("or", "or", "CCONJ", 7, "cc"),
        ("waiver", "waiver", "NOUN", 5, "conj"),
    ])
    rows = extract_sentence(g, CFG, UD)
    assert [(r.subject, r.object, r.refinement) for r in rows] == [
        ("renter", "agreement", Refinement.NONE),
        ("renter", "waiver", Refinement.OR),
        ("owner", "agreement", Refinement.AND),
        ("owner", "waiver", Refinement.OR),
    ]


@pytest.mark.parametrize("aux,negated,expected", [
    (["must"], False, Modality.OBLIGATION),
    (["may"], True, Modality.PROHIBITION),  # F overrides P
    ([], False, Modality.DECLARATION),
    (["may"], False, Modality.PERMISSION),
    (["must", "may"], False, Modality.OBLIGATION),  # O overrides P
])
def test_classify_modality_core(aux, negated, expected):
    rows = [(a, a, "AUX", len(aux) + 1, "aux") for a in aux]
    rows.append(("comply", "comply", "VERB", 0, "root"))
    if negated:
        rows.append(("not", "not", "PART", len(aux) + 1, "advmod"))
    g = build_graph(rows)
    (site,) = find_predicates(g, UD)
    assert classify_modality_core(site, g) is expected


def test_sentence1_core_modality_is_prohibition(table1_graphs):
    (site,) = find_predicates(table1_graphs[0], UD)
    assert site.negated
    assert classify_modality_core(site, g=table1_graphs[0]) is Modality.PROHIBITION


SIGNALS = {
    "may": ("aux", Modality.PERMISSION, "core"),
    "can": ("aux", Modality.PERMISSION, "ext"),
    "must": ("aux", Modality.OBLIGATION, "core"),
    "shall": ("aux", Modality.OBLIGATION, "ext"),
    "will": ("aux", Modality.OBLIGATION, "ext"),
}


def test_modality_precedence_exhaustive():
    """F beats O beats P beats D over every signal combination:
    core/extended auxiliaries, predicate lemma, negation."""
    aux_pool = list(SIGNALS)
    count = 0
    for r in range(len(aux_pool) + 1):
        for combo in itertools.combinations(aux_pool, r):
            for negated in (False, True):
                for pred in ("comply", "require"):
                    rows = [(a, a, "AUX", len(combo) + 1, "aux") for a in combo]
                    rows.append((pred, pred, "VERB", 0, "root"))
                    if negated:
                        rows.append(("not", "not", "PART", len(combo) + 1, "advmod"))
                    g = build_graph(rows)
                    (site,) = find_predicates(g, UD)
                    got = refine_modality(classify_modality_core(site, g), site, g, CFG)
                    if negated:
                        expected = Modality.PROHIBITION
                    elif any(SIGNALS[a][1] is Modality.OBLIGATION for a in combo) or pred == "require":
                        expected = Modality.OBLIGATION
                    elif combo:
                        expected = Modality.PERMISSION
                    else:
                        expected = Modality.DECLARATION
                    assert got is expected, (combo, negated, pred)
                    count += 1
    assert count >= 24


def test_passive_to_active_with_agent(table1_graphs):
    s4 = table1_graphs[3]
    (site,) = find_predicates(s4, UD)
    assert site.voice is Voice.PASSIVE
    converted = passive_to_active(site, s4, UD)
    assert converted.voice is Voice.ACTIVE
    assert s4.token(converted.subject_head).form == "person"
    assert s4.token(converted.object_head).form == "login"
    # participant token multiset is preserved by the swap
    assert {converted.subject_head, converted.object_head} == {site.subject_head, 9}


def test_passive_without_agent_unchanged(table1_graphs):
    s6 = table1_graphs[5]
    site = find_predicates(s6, UD)[0]
    assert passive_to_active(site, s6, UD) is site


def test_passive_to_active_requires_passive_site(table1_graphs):
    (site,) = find_predicates(table1_graphs[0], UD)
    with pytest.raises(ValueError, match="passive"):
        passive_to_active(site, table1_graphs[0], UD)


def test_detach_np_modifiers_sheds_object_phrases(table1_graphs):
    s2 = table1_graphs[1]
    excluded, records = detach_np_modifiers(7, s2, UD, anchor="O")
    assert set(excluded) == {11, 14}
    assert [r.kind for r in records] == [Kind.PP, Kind.PP]
    assert [r.marker for r in records] == ["such as", "on"]


def test_detach_np_modifiers_bare_noun():
    g = build_graph([
        ("comply", "comply", "VERB", 0, "root"),
        ("rules", "rule", "NOUN", 1, "obj"),
    ])
    excluded, records = detach_np_modifiers(2, g, UD, anchor="O")
    assert excluded == () and records == []


def test_detach_np_modifiers_relative_clause():
    g = build_graph([
        ("users", "user", "NOUN", 0, "root"),
        ("who", "who", "PRON", 3, "nsubj"),
        ("register", "register", "VERB", 1, "acl:relcl"),
    ])
    excluded, records = detach_np_modifiers(1, g, UD, anchor="S")
    assert excluded == (3,)
    assert records[0].kind is Kind.NP_CLAUSE and records[0].anchor == "S"


def test_detach_verb_modifiers_sentence1(table1_graphs):
    s1 = table1_graphs[0]
    (site,) = find_predicates(s1, UD)
    records = detach_verb_modifiers(site, s1, UD)
    pps = [r for r in records if r.kind is Kind.PP]
    assert [r.marker for r in pps] == ["in", "in"]
    assert [s1.token(r.np_head).form for r in pps] == ["use", "jurisdiction"]
    # negation and auxiliaries are consumed, not modifiers
    assert all(r.span_root not in (2, 3) for r in records)


def test_detach_verb_modifiers_none():
    g = build_graph([("comply", "comply", "VERB", 0, "root")])
    (site,) = find_predicates(g, UD)
    assert detach_verb_modifiers(site, g, UD) == []


def test_detach_verb_modifiers_shared_trailing(table1_graphs):
    s6 = table1_graphs[5]
    site1, site2 = find_predicates(s6, UD)
    own = detach_verb_modifiers(site1, s6, UD)
    shared = detach_verb_modifiers(site2, s6, UD)
    assert [r.span_root for r in own] == [7, 16]       # to renter, at risk
    assert [r.span_root for r in shared] == [11, 16]   # to owner, shared at-risk


def test_extract_sentence3_matches_gold(table1_graphs, gold_display):
    rows = extract_sentence(table1_graphs[2], CFG, UD, RenderStyle.DISPLAY)
    assert rows == [r for r in gold_display.rows if r.sent_id == "3"]


def test_extract_sentence4_matches_gold(table1_graphs, gold_display):
    rows = extract_sentence(table1_graphs[3], CFG, UD, RenderStyle.DISPLAY)
    assert rows == [r for r in gold_display.rows if r.sent_id == "4"]


def test_verbless_sentence_yields_notes_row():
    g = build_graph(
        [("Termination", "termination", "NOUN", 0, "root"),
         ("policy", "policy", "NOUN", 1, "compound")],
        text="Termination policy")
    rows = extract_sentence(g, CFG, UD)
    assert len(rows) == 1
    row = rows[0]
    assert row.modality is Modality.DECLARATION
    assert row.subject == row.verb == row.object == ""
    assert [str(p) for p in row.notes] == ["V: Termination policy"]


def test_extraction_is_deterministic(table1_graphs):
    for g in table1_graphs:
        first = extract_sentence(g, CFG, UD)
        second = extract_sentence(g, CFG, UD)
        assert first == second


def test_no_double_consumption_observables(table1_graphs, gold_display):
    rows = extract_sentence(table1_graphs[5], CFG, UD, RenderStyle.DISPLAY)
    # the promoted phrase feeds the Object, so it must not reappear as an adverbial
    assert rows[0].object == "renter"
    assert all("to renter" not in str(p) for p in rows[0].adverbials)
    rows4 = extract_sentence(table1_graphs[3], CFG, UD, RenderStyle.DISPLAY)
    assert rows4[0].subject == "person"  # "one" moved to conditions
    assert [str(p) for p in rows4[0].conditions] == ["S: one"]
    rows2 = extract_sentence(table1_graphs[1], CFG, UD, RenderStyle.DISPLAY)
    assert "such as spam" not in rows2[0].object
