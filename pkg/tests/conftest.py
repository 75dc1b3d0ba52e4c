from pathlib import Path

import pytest

from normclause import DependencyGraph, Token, deserialize, parse_conllu

DATA = Path(__file__).parent / "data"


def build_graph(rows, sent_id="t", text=""):
    """Construct a graph from (form, lemma, upos, head, deprel) tuples."""
    tokens = [Token(id=i, form=f, lemma=l, upos=u, head=h, deprel=d)
              for i, (f, l, u, h, d) in enumerate(rows, start=1)]
    return DependencyGraph(sent_id=sent_id, text=text, tokens=tokens)


@pytest.fixture(scope="session")
def table1_graphs():
    return parse_conllu((DATA / "table1_ud.conllu").read_bytes())


@pytest.fixture(scope="session")
def classic_graphs():
    return parse_conllu((DATA / "classic_sample.conllu").read_bytes())


@pytest.fixture(scope="session")
def gold_display():
    return deserialize((DATA / "table1_gold_display.csv").read_bytes(), "csv", doc_id="table1")


@pytest.fixture(scope="session")
def gold_rules_only():
    return deserialize((DATA / "table1_gold_rules_only.csv").read_bytes(), "csv", doc_id="table1")
