import pytest

from normclause import (
    ClauseRow,
    ClauseTable,
    Modality,
    Refinement,
    align_rows,
    f_score,
    score,
)


def _row(sent_id, modality, subject, verb, obj, refinement=Refinement.NONE):
    return ClauseRow(sent_id=sent_id, refinement=refinement,
                     modality=Modality(modality), subject=subject, verb=verb, object=obj)


# Published evaluation grid: (precision, recall, printed F1) per document and
# configuration.  The rental rules-and-heuristics triple is internally
# inconsistent: 2*0.71*0.66/(0.71+0.66) = 0.684, which is 0.006 away from the
# printed 0.69 (the source rounded precision and recall before printing).
F1_GRID = [
    (0.66, 0.73, 0.69),
    (0.75, 0.67, 0.71),
    (0.46, 0.53, 0.49),
    (0.43, 0.54, 0.48),
    (0.82, 0.90, 0.86),
    (0.48, 0.55, 0.51),
    (0.43, 0.57, 0.49),
]


@pytest.mark.parametrize("p,r,f1", F1_GRID)
def test_f1_reproduces_published_grid(p, r, f1):
    assert abs(f_score(p, r) - f1) <= 0.005


@pytest.mark.xfail(strict=True,
                   reason="printed triple 0.71/0.66/0.69 is inconsistent beyond "
                          "0.005; the harmonic mean of the printed values is 0.684")
def test_f1_rental_heuristics_row():
    assert abs(f_score(0.71, 0.66) - 0.69) <= 0.005


def test_f1_degenerate_cases():
    assert f_score(0.0, 0.0) == 0.0
    assert f_score(1.0, 1.0) == 1.0


def test_identity_scores_one(gold_display, gold_rules_only):
    for table in (gold_display, gold_rules_only):
        report = score(table, table)
        assert report.aggregate.precision == 1.0
        assert report.aggregate.recall == 1.0
        assert report.aggregate.f1 == 1.0


def test_identity_precision_equals_recall(gold_display):
    report = score(gold_display, gold_display)
    assert report.aggregate.precision == report.aggregate.recall


def _hand_counted_case():
    gold = ClauseTable(doc_id="d", rows=[
        _row("1", "O", "user", "pay", "fee"),
        _row("2", "F", "user", "share", "account"),
    ])
    pred = ClauseTable(doc_id="d", rows=[
        _row("1", "O", "user", "pay", "fee"),
        _row("1", "D", "nobody", "frob", "widget", refinement=Refinement.AND),  # spurious
        _row("2", "F", "user", "share", ""),  # object left blank
    ])
    return pred, gold


def test_hand_counted_precision_and_recall():
    pred, gold = _hand_counted_case()
    report = score(pred, gold)
    assert report.aggregate.matched == 7
    assert report.aggregate.predicted == 11
    assert report.aggregate.gold == 8
    assert report.aggregate.precision == pytest.approx(7 / 11)
    assert report.aggregate.recall == pytest.approx(7 / 8)


def test_spurious_refinement_hits_precision_only():
    gold = ClauseTable(doc_id="d", rows=[_row("1", "O", "a", "b", "c")])
    pred = ClauseTable(doc_id="d", rows=[
        _row("1", "O", "a", "b", "c"),
        _row("1", "O", "a", "b", "d", refinement=Refinement.AND),
    ])
    report = score(pred, gold)
    assert report.aggregate.recall == 1.0
    assert report.aggregate.precision == pytest.approx(4 / 8)


def test_missed_refinement_hits_recall_only():
    gold = ClauseTable(doc_id="d", rows=[
        _row("1", "O", "a", "b", "c"),
        _row("1", "O", "a", "b", "d", refinement=Refinement.AND),
    ])
    pred = ClauseTable(doc_id="d", rows=[_row("1", "O", "a", "b", "c")])
    report = score(pred, gold)
    assert report.aggregate.precision == 1.0
    assert report.aggregate.recall == pytest.approx(4 / 8)


def test_comparison_normalizes_case_and_whitespace():
    gold = ClauseTable(doc_id="d", rows=[_row("1", "O", "The User", "pay", "fee")])
    pred = ClauseTable(doc_id="d", rows=[_row("1", "O", "the  user", "Pay", "fee")])
    assert score(pred, gold).aggregate.precision == 1.0


def test_alignment_prefers_best_field_overlap():
    gold = [_row("1", "O", "a", "b", "c"), _row("1", "F", "x", "y", "z", Refinement.AND)]
    pred = [_row("1", "F", "x", "y", "z"), _row("1", "O", "a", "b", "c", Refinement.AND)]
    pairs, unmatched_pred, unmatched_gold = align_rows(pred, gold)
    assert sorted(pairs) == [(0, 1), (1, 0)]
    assert unmatched_pred == [] and unmatched_gold == []


def test_alignment_tie_break_is_lowest_index_pair():
    rows = [_row("1", "O", "a", "b", "c"), _row("1", "O", "a", "b", "c", Refinement.AND)]
    pairs, _, _ = align_rows(rows, rows)
    assert pairs == [(0, 0), (1, 1)]


def test_zero_score_rows_still_pair_up():
    gold = [_row("1", "O", "a", "b", "c")]
    pred = [_row("1", "D", "x", "y", "z")]
    pairs, unmatched_pred, unmatched_gold = align_rows(pred, gold)
    assert pairs == [(0, 0)]
    assert unmatched_pred == [] and unmatched_gold == []


def test_corrupting_a_matched_field_never_improves_scores(gold_display):
    base = score(gold_display, gold_display).aggregate
    for i in range(len(gold_display.rows)):
        for field_name in ("subject", "verb", "object"):
            rows = list(gold_display.rows)
            from dataclasses import replace

            rows[i] = replace(rows[i], **{field_name: "corrupted-value"})
            report = score(ClauseTable(doc_id="table1", rows=rows), gold_display)
            assert report.aggregate.precision <= base.precision
            assert report.aggregate.recall <= base.recall


def test_duplicate_sentence_groups_rejected():
    rows = [_row("1", "O", "a", "b", "c"), _row("2", "O", "a", "b", "c"),
            _row("1", "O", "a", "b", "c")]
    with pytest.raises(ValueError, match="contiguous"):
        score(ClauseTable(doc_id="d", rows=rows), ClauseTable(doc_id="d", rows=rows[:1]))


def test_report_serializations(gold_display):
    report = score(gold_display, gold_display)
    assert b"aggregate" in report.to_json()
    text = report.to_text()
    assert "aggregate" in text and "1.00" in text
    assert set(report.per_field) == {"subject", "verb", "object", "modality"}
