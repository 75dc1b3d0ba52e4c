import json

import pytest

from normclause import deserialize
from normclause.cli import main

from conftest import DATA

CONLLU = DATA / "table1_ud.conllu"
GOLD = DATA / "table1_gold_display.csv"
GOLD_RULES_ONLY = DATA / "table1_gold_rules_only.csv"


def test_extract_reproduces_gold(tmp_path, gold_display):
    out = tmp_path / "pred.csv"
    status = main(["extract", str(CONLLU), "--style", "display", "--out", str(out)])
    assert status == 0
    assert deserialize(out.read_bytes(), "csv", doc_id="table1") == gold_display
    assert out.read_bytes() == GOLD.read_bytes()  # byte-stable CSV rendering


def test_extract_rules_only_gold(tmp_path, gold_rules_only):
    out = tmp_path / "pred.csv"
    status = main(["extract", str(CONLLU), "--rules-only", "--out", str(out)])
    assert status == 0
    assert deserialize(out.read_bytes(), "csv", doc_id="table1") == gold_rules_only


def test_extract_empty_lexicon_file_is_rules_only(tmp_path):
    lexicon = tmp_path / "lex.json"
    lexicon.write_text("{}")
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(["extract", str(CONLLU), "--lexicon", str(lexicon), "--out", str(out_a)]) == 0
    assert main(["extract", str(CONLLU), "--rules-only", "--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_extract_empty_input(tmp_path):
    src = tmp_path / "empty.conllu"
    src.write_text("")
    out = tmp_path / "out.csv"
    assert main(["extract", str(src), "--out", str(out)]) == 0
    assert out.read_text().strip().startswith("sent_id,")
    assert len(out.read_text().strip().splitlines()) == 1


def test_extract_json_format_round_trips(tmp_path, gold_display):
    out = tmp_path / "pred.json"
    assert main(["extract", str(CONLLU), "--style", "display", "--format", "json",
                 "--doc-id", "table1", "--out", str(out)]) == 0
    assert deserialize(out.read_bytes(), "json") == gold_display


def test_extract_concatenates_inputs_in_order(tmp_path):
    out = tmp_path / "both.csv"
    assert main(["extract", str(CONLLU), str(DATA / "classic_sample.conllu"),
                 "--out", str(out)]) == 0
    table = deserialize(out.read_bytes(), "csv")
    assert [sid for sid, _ in table.sentence_groups()] == ["1", "2", "3", "4", "5", "6",
                                                           "c1", "c2", "c3", "c4"]


def test_extract_does_not_mutate_inputs(tmp_path):
    before = CONLLU.read_bytes()
    assert main(["extract", str(CONLLU), "--out", str(tmp_path / "x.csv")]) == 0
    assert CONLLU.read_bytes() == before


def test_extract_bad_conllu_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.conllu"
    bad.write_text("1\tYou\tyou\tPRON\t_\t_\t2\tnsubj\n")
    assert main(["extract", str(bad), "--out", str(tmp_path / "x.csv")]) == 2
    err = capsys.readouterr().err
    assert "bad.conllu:1" in err


def test_usage_error_exits_1():
    with pytest.raises(SystemExit) as exc:
        main(["extract"])  # missing input path
    assert exc.value.code == 1


def test_eval_identity_is_perfect(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    assert main(["eval", str(GOLD), str(GOLD), "--out", str(report_path)]) == 0
    out = capsys.readouterr().out
    assert "aggregate" in out
    report = json.loads(report_path.read_text())
    assert report["aggregate"]["precision"] == 1.0
    assert report["aggregate"]["recall"] == 1.0
    assert report["aggregate"]["f1"] == 1.0


def test_eval_full_beats_rules_only(tmp_path):
    full_report = tmp_path / "full.json"
    ro_report = tmp_path / "ro.json"
    assert main(["eval", str(GOLD), str(GOLD), "--out", str(full_report)]) == 0
    assert main(["eval", str(GOLD_RULES_ONLY), str(GOLD), "--out", str(ro_report)]) == 0
    full_f1 = json.loads(full_report.read_text())["aggregate"]["f1"]
    ro_f1 = json.loads(ro_report.read_text())["aggregate"]["f1"]
    assert full_f1 >= ro_f1
    assert ro_f1 < 1.0


def test_eval_mismatched_doc_ids_exit_2(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    main(["extract", str(CONLLU), "--format", "json", "--doc-id", "left", "--out", str(a)])
    main(["extract", str(CONLLU), "--format", "json", "--doc-id", "right", "--out", str(b)])
    assert main(["eval", str(a), str(b)]) == 2
    assert "document ids differ" in capsys.readouterr().err


def test_eval_schema_error_exit_2(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("nope\n")
    assert main(["eval", str(bad), str(GOLD)]) == 2


def test_export_structure(tmp_path):
    out = tmp_path / "model.json"
    assert main(["export", str(GOLD), str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["roots"]) == 6

    def leaves(node):
        if node["kind"] == "box":
            return 1
        return sum(leaves(c) for c in node["children"])

    assert sum(leaves(n) for n in doc["roots"]) == 9
    operators = [n["operator"] for n in doc["roots"] if n["kind"] == "refinement"]
    assert sorted(operators) == ["AND", "AND", "OR"]


def test_export_byte_identical_reruns(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["export", str(GOLD), str(a)]) == 0
    assert main(["export", str(GOLD), str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_export_empty_table(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("sent_id,refinement,modality,subject,verb,object,"
                     "time,adverbials,conditions,notes\n")
    out = tmp_path / "model.json"
    assert main(["export", str(empty), str(out)]) == 0
    assert json.loads(out.read_text())["roots"] == []


def test_export_contiguity_violation_exit_2(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("sent_id,refinement,modality,subject,verb,object,"
                   "time,adverbials,conditions,notes\n"
                   "1,AND,O,a,b,c,,,,\n")
    assert main(["export", str(bad), str(tmp_path / "m.json")]) == 2
