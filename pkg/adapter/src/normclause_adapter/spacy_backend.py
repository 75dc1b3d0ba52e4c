"""Statistical backend on top of spaCy, when a model is installed.

The English spaCy models emit a ClearNLP-flavored label scheme; output is
mapped onto Universal Dependencies vocabulary, including restructuring
preposition-headed phrases (prep/pobj) into case-marked nominals so the
downstream "ud" profile applies.
"""

from __future__ import annotations

from .heuristic import Word

_RENAME = {
    "ROOT": "root",
    "dobj": "obj",
    "dative": "iobj",
    "nsubjpass": "nsubj:pass",
    "csubjpass": "csubj:pass",
    "auxpass": "aux:pass",
    "relcl": "acl:relcl",
    "poss": "nmod:poss",
    "possessive": "case",
    "neg": "advmod",
    "npadvmod": "obl",
    "attr": "obj",
    "oprd": "xcomp",
    "pcomp": "obl",
    "quantmod": "advmod",
    "num": "nummod",
}


def available(model: str = "en_core_web_sm") -> bool:
    try:
        import spacy  # noqa: F401
        import spacy.util

        return spacy.util.is_package(model)
    except Exception:
        return False


class SpacyBackend:
    name = "spacy"

    def __init__(self, model: str = "en_core_web_sm"):
        import spacy

        self.nlp = spacy.load(model, disable=["ner"])

    def parse_line(self, line: str) -> list[Word]:
        doc = self.nlp(line)
        words = []
        heads = []
        for tok in doc:
            deprel = _RENAME.get(tok.dep_, tok.dep_)
            words.append(Word(form=tok.text, lemma=tok.lemma_ or tok.text,
                              upos=tok.pos_, deprel=deprel))
            heads.append(tok.head.i if tok.dep_ != "ROOT" else -1)

        # prep/pobj pairs become case-marked nominals: the noun takes the
        # preposition's governor, the preposition lowers below the noun.
        for i, tok in enumerate(doc):
            if tok.dep_ not in ("prep", "agent"):
                continue
            complements = [c.i for c in tok.children if c.dep_ in ("pobj", "pcomp")]
            if not complements:
                words[i].deprel = "case"
                continue
            np = complements[0]
            heads[np] = heads[i]
            words[np].deprel = "obl:agent" if tok.dep_ == "agent" else (
                "nmod" if doc[tok.head.i].pos_ in ("NOUN", "PROPN", "PRON") else "obl")
            heads[i] = np
            words[i].deprel = "case"
            for extra in complements[1:]:
                heads[extra] = np
                words[extra].deprel = "conj"

        for word, head in zip(words, heads):
            word.head = 0 if head < 0 else head + 1
        return words
