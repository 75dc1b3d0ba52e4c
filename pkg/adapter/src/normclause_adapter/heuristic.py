"""Deterministic fallback parser: lexicon tagging plus head-attachment rules.

This backend exists so the pipeline runs end to end in environments where
no statistical parser can be installed.  It guarantees well-formed output
(single root, acyclic, resolvable heads) by construction and aims for
reasonable structure on the plain declarative style of normative text;
it does not aim for treebank accuracy.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import wordclasses as wc


@dataclass
class Word:
    form: str
    lemma: str = ""
    upos: str = "NOUN"
    head: int = 0  # 1-based id of the governor, 0 for the root
    deprel: str = "dep"


_TOKEN = re.compile(r"n't|'s|'[a-z]+|[A-Za-z0-9]+(?:-[A-Za-z0-9]+)*|[^\sA-Za-z0-9]")


def tokenize(line: str) -> list[str]:
    tokens = _TOKEN.findall(line)
    fixed: list[str] = []
    for tok in tokens:
        if tok == "'t" and fixed and fixed[-1].endswith("n"):
            fixed[-1] = fixed[-1][:-1]
            fixed.append("n't")
        else:
            fixed.append(tok)
    return fixed


def _verb_lemma(word: str) -> str | None:
    """Base form if the word is a known verb in any common inflection."""
    w = word.lower()
    if w in wc.IRREGULAR_PARTICIPLES:
        return wc.IRREGULAR_PARTICIPLES[w]
    if w in wc.VERB_LEXICON:
        return w
    candidates = []
    if w.endswith("ies"):
        candidates.append(w[:-3] + "y")
    if w.endswith("es"):
        candidates.append(w[:-2])
    if w.endswith("s"):
        candidates.append(w[:-1])
    if w.endswith("ied"):
        candidates.append(w[:-3] + "y")
    if w.endswith("ed"):
        candidates += [w[:-2], w[:-1]]          # posted -> post, used -> use
        if len(w) > 4 and w[-3] == w[-4]:
            candidates.append(w[:-3])           # permitted -> permit
    if w.endswith("ing"):
        candidates += [w[:-3], w[:-3] + "e"]    # paying -> pay, using -> use
        if len(w) > 5 and w[-4] == w[-5]:
            candidates.append(w[:-4])
    for c in candidates:
        if c in wc.VERB_LEXICON:
            return c
    return None


def _noun_lemma(word: str) -> str:
    w = word.lower()
    if w in wc.NOUN_IRREGULAR_PLURALS:
        return wc.NOUN_IRREGULAR_PLURALS[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if re.search(r"(ses|xes|zes|ches|shes)$", w):
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        return w[:-1]
    return w


_AUX_LEMMAS = {"is": "be", "are": "be", "was": "be", "were": "be", "been": "be",
               "being": "be", "am": "be", "has": "have", "had": "have",
               "does": "do", "did": "do"}


def _looks_adjectival(word: str) -> bool:
    w = word.lower()
    if w in wc.ADJECTIVES:
        return True
    if w.endswith(("ment", "ship", "tion", "sion", "ity", "ness")):
        return False  # derivational noun endings that overlap ADJ suffixes
    return w.endswith(wc.ADJ_SUFFIXES) and w not in wc.VERB_LEXICON


def tag(tokens: list[str]) -> list[Word]:
    words: list[Word] = []
    for i, tok in enumerate(tokens):
        low = tok.lower()
        if not any(ch.isalnum() for ch in tok):
            upos = "PUNCT"
        elif low == "'s":
            upos = "PART"
        elif low in ("not", "n't"):
            upos = "PART"
        elif low in wc.DETERMINERS:
            upos = "DET"
        elif low in wc.AUX_FORMS:
            upos = "AUX"
        elif low in wc.POSSESSIVE_PRONOUNS or low in wc.PRONOUNS:
            upos = "PRON"
        elif low in wc.COORDINATORS:
            upos = "CCONJ"
        elif low in wc.SUBORDINATORS:
            upos = "SCONJ"
        elif low in wc.NUMBER_WORDS or re.fullmatch(r"\d+(?:[.,]\d+)*", tok):
            upos = "NUM"
        elif low in wc.ADPOSITIONS:
            upos = "ADP"
        elif low in wc.ADVERBS:
            upos = "ADV"
        elif _verb_lemma(low):
            upos = "VERB"
        elif low.endswith("ly") and len(low) > 3:
            upos = "ADV"
        elif _looks_adjectival(low):
            upos = "ADJ"
        elif tok[:1].isupper() and i > 0:
            upos = "PROPN"
        else:
            upos = "NOUN"
        words.append(Word(form=tok, upos=upos))

    # Contextual demotion: a lexicon verb right after a determiner, number,
    # adjective or possessive is a noun use ("any change", "the use").
    for i, w in enumerate(words):
        if w.upos == "VERB" and i > 0:
            prev = words[i - 1]
            if prev.upos in ("DET", "NUM", "ADJ") or prev.form.lower() in wc.POSSESSIVE_PRONOUNS:
                w.upos = "NOUN"
    # Contextual promotion: the first content word after an auxiliary chain
    # acts as the verb ("shall be delivered", "may only be used").
    for i, w in enumerate(words):
        if w.upos != "AUX":
            continue
        j = i + 1
        while j < len(words) and words[j].upos in ("AUX", "ADV", "PART"):
            j += 1
        if j < len(words) and words[j].upos in ("NOUN", "PROPN"):
            words[j].upos = "VERB"
    # Infinitival "to"
    for i, w in enumerate(words):
        if w.form.lower() == "to" and i + 1 < len(words) and words[i + 1].upos == "VERB":
            w.upos = "PART"

    for w in words:
        low = w.form.lower()
        if w.upos == "AUX":
            w.lemma = _AUX_LEMMAS.get(low, low)
        elif w.upos == "VERB":
            w.lemma = _verb_lemma(low) or low
        elif w.upos == "NOUN":
            w.lemma = _noun_lemma(low)
        elif w.upos == "PROPN":
            w.lemma = w.form
        elif w.upos == "PART" and low == "n't":
            w.lemma = "not"
        else:
            w.lemma = low
    return words


@dataclass
class _ClauseState:
    verb: int | None = None
    passive: bool = False
    subject_seen: bool = False
    objects: dict[int, bool] = field(default_factory=dict)


def _next_content(words: list[Word], i: int) -> int | None:
    for j in range(i + 1, len(words)):
        if words[j].upos != "PUNCT":
            return j
    return None


class HeuristicBackend:
    """Rule-based dependency analysis over the lexicon tagger."""

    name = "heuristic"

    def parse_line(self, line: str) -> list[Word]:
        words = tag(tokenize(line))
        if not words:
            return words
        n = len(words)
        for w in words:
            w.head = -1  # unresolved marker, fixed up at the end

        # Segment an initial subordinate clause ("If ..., ...") so the main
        # predicate is searched outside it.
        sub_span = None
        main_start = 0
        if words[0].upos == "SCONJ":
            comma = next((i for i, w in enumerate(words) if w.form == ","), None)
            if comma is not None and comma + 1 < n:
                sub_span = (0, comma)
                main_start = comma + 1

        root = self._clause(words, main_start, n, governor=None)
        if sub_span is not None:
            sub_verb = self._clause(words, sub_span[0] + 1, sub_span[1], governor=None)
            anchor = sub_verb if sub_verb is not None else sub_span[0]
            if sub_verb is not None:
                words[sub_verb].head = root + 1
                words[sub_verb].deprel = "advcl"
            words[sub_span[0]].head = anchor + 1 if sub_verb is not None else root + 1
            words[sub_span[0]].deprel = "mark"

        # Everything unresolved leans on the root; punctuation likewise.
        for i, w in enumerate(words):
            if i == root:
                w.head = 0
                w.deprel = "root"
            elif w.head < 0:
                w.head = root + 1
                w.deprel = "punct" if w.upos == "PUNCT" else "dep"

        self._break_cycles(words, root)
        return words

    def _clause(self, words: list[Word], start: int, end: int, governor: int | None) -> int:
        """Attach tokens of one clause span; returns the predicate index."""
        state = _ClauseState()
        root = self._find_predicate(words, start, end)
        state.verb = root
        if words[root].upos in ("ADJ", "NOUN", "PROPN", "PRON"):
            # copular predicate: attach the auxiliary as copula
            for i in range(start, root):
                if words[i].upos == "AUX" and words[i].head < 0:
                    words[i].head = root + 1
                    words[i].deprel = "cop"
        else:
            state.passive = self._attach_auxiliaries(words, start, root)
        self._attach_nominals(words, start, end, root, state)
        return root

    def _find_predicate(self, words: list[Word], start: int, end: int) -> int:
        for i in range(start, end):
            if words[i].upos == "VERB":
                return i
        # copular fallback: predicate word after a be-auxiliary
        for i in range(start, end):
            if words[i].upos == "AUX" and words[i].form.lower() in wc.BE_FORMS:
                j = _next_content(words, i)
                while j is not None and j < end and words[j].upos in ("ADV", "PART", "DET"):
                    j = _next_content(words, j)
                if j is not None and j < end and words[j].upos in ("ADJ", "NOUN", "PROPN", "NUM"):
                    return j
        for i in range(start, end):
            if words[i].upos != "PUNCT":
                return i
        return start

    def _attach_auxiliaries(self, words: list[Word], start: int, verb: int) -> bool:
        passive = False
        form = words[verb].form.lower()
        participle = (form.endswith(("ed", "en")) or form in wc.IRREGULAR_PARTICIPLES)
        for i in range(start, verb):
            w = words[i]
            if w.upos == "AUX" and w.head < 0:
                if w.form.lower() in wc.BE_FORMS and participle:
                    w.deprel = "aux:pass"
                    passive = True
                else:
                    w.deprel = "aux"
                w.head = verb + 1
        return passive

    def _attach_nominals(self, words: list[Word], start: int, end: int,
                         root: int, state: _ClauseState) -> None:
        pending_case: int | None = None
        pending_cc: int | None = None
        pending_poss: int | None = None
        buffers: list[int] = []
        last_first_conjunct: int | None = None
        current_verb = root

        def attach(i: int, head: int, deprel: str) -> None:
            if words[i].head < 0 and head != i:
                words[i].head = head + 1
                words[i].deprel = deprel

        for i in range(start, end):
            w = words[i]
            if i == root or w.head >= 0:
                continue
            upos = w.upos
            low = w.form.lower()

            if upos == "PUNCT":
                continue
            if upos == "PART" and low in ("not", "n't"):
                attach(i, current_verb, "advmod")
            elif upos == "ADV":
                attach(i, current_verb, "advmod")
            elif upos == "AUX":
                attach(i, current_verb if i > current_verb else root, "aux")
            elif upos == "VERB":
                if i > start and words[i - 1].form.lower() == "to":
                    attach(i, current_verb, "advcl")
                    attach(i - 1, i, "mark")
                elif pending_cc is not None:
                    attach(i, root, "conj")
                    attach(pending_cc, i, "cc")
                    pending_cc = None
                else:
                    attach(i, current_verb, "dep")
                current_verb = i
            elif upos == "DET" or (upos == "ADJ") or upos == "NUM":
                buffers.append(i)
            elif upos == "ADP":
                pending_case = i
            elif upos == "CCONJ":
                pending_cc = i
            elif upos == "PART" and low == "'s":
                continue  # consumed when the possessor was registered
            elif upos in ("NOUN", "PROPN", "PRON"):
                if low in wc.POSSESSIVE_PRONOUNS:
                    pending_poss = i
                    continue
                nxt = _next_content(words, i)
                if nxt is not None and nxt < end and words[nxt].form.lower() == "'s":
                    # possessor noun: close its own buffers, defer attachment
                    for b in buffers:
                        attach(b, i, self._buffer_rel(words[b]))
                    buffers = []
                    attach(nxt, i, "case")
                    pending_poss = i
                    continue
                if (nxt is not None and nxt < end
                        and words[nxt].upos in ("NOUN", "PROPN")
                        and words[i].upos != "PRON"):
                    buffers.append(i)  # interior of a noun run: compound
                    continue
                # a noun-phrase head resolves here
                for b in buffers:
                    rel = "compound" if words[b].upos in ("NOUN", "PROPN") else self._buffer_rel(words[b])
                    attach(b, i, rel)
                buffers = []
                if pending_poss is not None:
                    attach(pending_poss, i, "nmod:poss")
                    pending_poss = None
                if pending_cc is not None and last_first_conjunct is not None and pending_case is None:
                    attach(i, last_first_conjunct, "conj")
                    attach(pending_cc, i, "cc")
                    pending_cc = None
                    continue
                if pending_case is not None:
                    attach(pending_case, i, "case")
                    if (state.passive and words[pending_case].form.lower() == "by"
                            and current_verb == root):
                        attach(i, current_verb, "obl:agent")
                    else:
                        attach(i, current_verb, "obl")
                    pending_case = None
                    last_first_conjunct = i
                elif not state.subject_seen and i < root:
                    attach(i, root, "nsubj:pass" if state.passive else "nsubj")
                    state.subject_seen = True
                    last_first_conjunct = i
                elif i > current_verb and not state.objects.get(current_verb):
                    attach(i, current_verb, "obj")
                    state.objects[current_verb] = True
                    last_first_conjunct = i
                else:
                    attach(i, current_verb, "obl")
                    last_first_conjunct = i
            else:
                attach(i, current_verb, "dep")

    @staticmethod
    def _buffer_rel(word: Word) -> str:
        if word.upos == "DET":
            return "det"
        if word.upos == "NUM":
            return "nummod"
        return "amod"

    @staticmethod
    def _break_cycles(words: list[Word], root: int) -> None:
        for i in range(len(words)):
            seen = {i}
            cur = i
            while words[cur].head != 0:
                cur = words[cur].head - 1
                if cur in seen:
                    words[i].head = root + 1
                    words[i].deprel = "dep"
                    break
                seen.add(cur)
