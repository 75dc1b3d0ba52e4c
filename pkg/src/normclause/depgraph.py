"""Dependency graphs over CoNLL-U sentences, plus label-scheme profiles.

A :class:`DependencyGraph` is an immutable rooted tree over the tokens of one
sentence.  The extraction engine never touches concrete dependency labels
directly; it asks for dependents by abstract :class:`Role`, and a
:class:`LabelProfile` maps each role to the label set of a concrete scheme
(classic Stanford typed dependencies or Universal Dependencies).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

# CoNLL-U column indices
ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)
N_COLUMNS = 10


class ConlluError(ValueError):
    """Malformed CoNLL-U input; message names the sentence and line."""

    def __init__(self, message: str, sent_id: Optional[str] = None, line: Optional[int] = None):
        where = []
        if sent_id is not None:
            where.append(f"sentence {sent_id!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.sent_id = sent_id
        self.line = line


class Role(Enum):
    """Abstract grammatical roles addressed by the extraction engine."""

    SUBJECT = "SUBJECT"
    PASSIVE_SUBJECT = "PASSIVE_SUBJECT"
    DIRECT_OBJECT = "DIRECT_OBJECT"
    INDIRECT_OBJECT = "INDIRECT_OBJECT"
    AUXILIARY = "AUXILIARY"
    PASSIVE_AUXILIARY = "PASSIVE_AUXILIARY"
    NEGATION = "NEGATION"
    RELATIVE_CLAUSE = "RELATIVE_CLAUSE"
    VERBAL_MODIFIER = "VERBAL_MODIFIER"
    PREPOSITIONAL_MODIFIER = "PREPOSITIONAL_MODIFIER"
    ADVERBIAL_MODIFIER = "ADVERBIAL_MODIFIER"
    ADVERBIAL_CLAUSE = "ADVERBIAL_CLAUSE"
    CLAUSE_MARKER = "CLAUSE_MARKER"
    COORDINATION = "COORDINATION"
    CONJUNCT = "CONJUNCT"
    AGENT = "AGENT"
    COPULA = "COPULA"
    CASE = "CASE"
    # Roles beyond the classic core, needed for normalization and the
    # preposition view.  They may map to empty sets in schemes that do not
    # use them.
    POSSESSOR = "POSSESSOR"
    PREP_COMPLEMENT = "PREP_COMPLEMENT"
    DETERMINER = "DETERMINER"
    NUMERIC_MODIFIER = "NUMERIC_MODIFIER"
    MULTIWORD = "MULTIWORD"


#: Roles that must be non-empty in every profile.
_CORE_ROLES = (
    Role.SUBJECT,
    Role.PASSIVE_SUBJECT,
    Role.DIRECT_OBJECT,
    Role.INDIRECT_OBJECT,
    Role.AUXILIARY,
    Role.NEGATION,
    Role.RELATIVE_CLAUSE,
    Role.VERBAL_MODIFIER,
    Role.PREPOSITIONAL_MODIFIER,
    Role.ADVERBIAL_MODIFIER,
    Role.ADVERBIAL_CLAUSE,
    Role.CLAUSE_MARKER,
    Role.COORDINATION,
    Role.CONJUNCT,
    Role.AGENT,
    Role.COPULA,
    Role.CASE,
)


@dataclass(frozen=True)
class LabelProfile:
    """Mapping from abstract roles to the labels of one concrete scheme.

    ``negation_lemmas`` restricts the NEGATION role to particular lemmas.
    This is required for Universal Dependencies, where negation shares the
    ``advmod`` label with ordinary adverbs; classic Stanford dependencies
    have a dedicated ``neg`` label and leave the lemma set empty.
    """

    name: str
    mapping: dict[Role, frozenset[str]]
    negation_lemmas: frozenset[str] = frozenset()

    def __post_init__(self):
        for role in _CORE_ROLES:
            if not self.mapping.get(role):
                raise ValueError(f"profile {self.name!r}: role {role.value} has no labels")
        # Labels that appear verbatim in some role own that exact form; a
        # subtyped label such as nmod:poss never leaks into the role holding
        # its bare base label.
        owners: dict[str, set[Role]] = {}
        for role, labels in self.mapping.items():
            for label in labels:
                owners.setdefault(label, set()).add(role)
        object.__setattr__(self, "_exact_owners", owners)

    def matches(self, deprel: str, role: Role) -> bool:
        """True when ``deprel`` realizes ``role`` under this profile."""
        labels = self.mapping.get(role, frozenset())
        if deprel in labels:
            return True
        base = deprel.split(":", 1)[0]
        if base != deprel and base in labels and deprel not in self._exact_owners:
            return True
        return False


def _m(**kwargs: Iterable[str]) -> dict[Role, frozenset[str]]:
    return {Role[name]: frozenset(labels) for name, labels in kwargs.items()}


STANFORD_CLASSIC = LabelProfile(
    name="stanford-classic",
    mapping=_m(
        SUBJECT=["nsubj", "csubj"],
        PASSIVE_SUBJECT=["nsubjpass", "csubjpass"],
        DIRECT_OBJECT=["dobj"],
        INDIRECT_OBJECT=["iobj"],
        AUXILIARY=["aux"],
        PASSIVE_AUXILIARY=["auxpass"],
        NEGATION=["neg"],
        RELATIVE_CLAUSE=["rcmod"],
        VERBAL_MODIFIER=["vmod", "partmod", "infmod"],
        PREPOSITIONAL_MODIFIER=["prep"],
        ADVERBIAL_MODIFIER=["advmod"],
        ADVERBIAL_CLAUSE=["advcl"],
        CLAUSE_MARKER=["mark"],
        COORDINATION=["cc"],
        CONJUNCT=["conj"],
        AGENT=["agent"],
        COPULA=["cop"],
        CASE=["possessive"],
        POSSESSOR=["poss"],
        PREP_COMPLEMENT=["pobj", "pcomp"],
        DETERMINER=["det", "predet"],
        NUMERIC_MODIFIER=["num", "nummod", "number"],
        MULTIWORD=["mwe", "fixed"],
    ),
)

UNIVERSAL = LabelProfile(
    name="ud",
    mapping=_m(
        SUBJECT=["nsubj", "csubj"],
        PASSIVE_SUBJECT=["nsubj:pass", "csubj:pass"],
        DIRECT_OBJECT=["obj"],
        INDIRECT_OBJECT=["iobj"],
        AUXILIARY=["aux"],
        PASSIVE_AUXILIARY=["aux:pass"],
        NEGATION=["advmod"],
        RELATIVE_CLAUSE=["acl:relcl"],
        VERBAL_MODIFIER=["acl"],
        PREPOSITIONAL_MODIFIER=["nmod", "obl"],
        ADVERBIAL_MODIFIER=["advmod"],
        ADVERBIAL_CLAUSE=["advcl"],
        CLAUSE_MARKER=["mark"],
        COORDINATION=["cc"],
        CONJUNCT=["conj"],
        AGENT=["obl:agent"],
        COPULA=["cop"],
        CASE=["case"],
        POSSESSOR=["nmod:poss"],
        PREP_COMPLEMENT=[],
        DETERMINER=["det", "det:predet"],
        NUMERIC_MODIFIER=["nummod"],
        MULTIWORD=["fixed", "flat"],
    ),
    negation_lemmas=frozenset({"not", "n't", "never", "no"}),
)

PROFILES = {p.name: p for p in (STANFORD_CLASSIC, UNIVERSAL)}


def label_profile(name: str) -> LabelProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown label profile {name!r}; choose from {sorted(PROFILES)}") from None


@dataclass(frozen=True)
class Token:
    """One token line of a parsed sentence.  ``head`` 0 marks the root."""

    id: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str
    misc: str = "_"

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"token id must be >= 1, got {self.id}")
        if self.head < 0 or self.head == self.id:
            raise ValueError(f"token {self.id}: bad head {self.head}")


@dataclass(frozen=True)
class PrepPhrase:
    """Profile-independent view of one prepositional phrase.

    ``span_root`` is the token whose subtree yields the whole phrase,
    ``np_head`` the head of the inner noun phrase, ``prep`` the (possibly
    multiword, possibly empty) preposition string, and ``prep_ids`` the
    preposition tokens themselves.
    """

    span_root: int
    np_head: int
    prep: str
    prep_ids: tuple[int, ...] = ()


class DependencyGraph:
    """A validated, immutable dependency tree over one sentence."""

    def __init__(self, sent_id: str, text: str, tokens: Sequence[Token]):
        self.sent_id = sent_id
        self.tokens = tuple(tokens)
        self._by_id = {t.id: t for t in self.tokens}
        if len(self._by_id) != len(self.tokens):
            raise ConlluError("duplicate token id", sent_id=sent_id)
        roots = [t.id for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise ConlluError(f"expected exactly one root, found {len(roots)}", sent_id=sent_id)
        self.root_id = roots[0]
        self._children: dict[int, list[int]] = {t.id: [] for t in self.tokens}
        for t in self.tokens:
            if t.head != 0:
                if t.head not in self._by_id:
                    raise ConlluError(f"token {t.id}: head {t.head} does not exist", sent_id=sent_id)
                self._children[t.head].append(t.id)
        for kids in self._children.values():
            kids.sort()
        # Reachability from the root doubles as the acyclicity check.
        seen = set()
        stack = [self.root_id]
        while stack:
            node = stack.pop()
            if node in seen:
                raise ConlluError("cycle in head relation", sent_id=sent_id)
            seen.add(node)
            stack.extend(self._children[node])
        if len(seen) != len(self.tokens):
            raise ConlluError("cycle in head relation: not all tokens reachable from root", sent_id=sent_id)
        self.text = text if text else " ".join(t.form for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __repr__(self) -> str:
        return f"DependencyGraph(sent_id={self.sent_id!r}, tokens={len(self.tokens)})"

    def token(self, node: int) -> Token:
        try:
            return self._by_id[node]
        except KeyError:
            raise KeyError(f"no token {node} in sentence {self.sent_id!r}") from None

    @property
    def root(self) -> Token:
        return self._by_id[self.root_id]

    def children(self, node: int) -> list[int]:
        """Direct dependents of ``node`` in surface order."""
        self.token(node)
        return list(self._children[node])

    def dependents(self, node: int, role: Role, profile: LabelProfile) -> list[int]:
        """Dependents of ``node`` realizing ``role``, in surface order.

        For the NEGATION role under profiles that overload a label, the
        profile's negation lemmas additionally filter the matches.
        """
        if not isinstance(role, Role):
            raise ValueError(f"unknown role {role!r}")
        out = []
        for child in self._children[self.token(node).id]:
            tok = self._by_id[child]
            if not profile.matches(tok.deprel, role):
                continue
            if role is Role.NEGATION and profile.negation_lemmas:
                if tok.lemma.lower() not in profile.negation_lemmas:
                    continue
            if role is Role.ADVERBIAL_MODIFIER and profile.negation_lemmas:
                # Tokens claimed by NEGATION are not ordinary adverbs.
                if tok.lemma.lower() in profile.negation_lemmas:
                    continue
            out.append(child)
        return out

    def subtree_ids(self, node: int) -> list[int]:
        """All ids in the transitive subtree of ``node``, in surface order."""
        self.token(node)
        acc = []
        stack = [node]
        while stack:
            cur = stack.pop()
            acc.append(cur)
            stack.extend(self._children[cur])
        return sorted(acc)

    def yield_span(self, node: int, excluded: Iterable[int] = ()) -> list[Token]:
        """Tokens of ``node``'s subtree minus excluded subtrees, surface order."""
        banned = set()
        for ex in excluded:
            banned.update(self.subtree_ids(ex))
        return [self._by_id[i] for i in self.subtree_ids(node) if i not in banned]

    def prep_phrases(self, node: int, profile: LabelProfile) -> list[PrepPhrase]:
        """Prepositional phrases directly governed by ``node``.

        Universal Dependencies attach the noun phrase head directly
        (nmod/obl) with the preposition below it as ``case``; classic
        Stanford dependencies attach the preposition (``prep``) with the
        noun phrase below it.  Both come out as the same view here.
        """
        phrases = []
        for child in self.dependents(node, Role.PREPOSITIONAL_MODIFIER, profile):
            tok = self._by_id[child]
            if tok.upos == "ADP":
                # preposition-headed shape: find the inner noun phrase
                complements = [
                    k for k in self._children[child]
                    if profile.matches(self._by_id[k].deprel, Role.PREP_COMPLEMENT)
                ]
                if not complements:
                    continue
                prep_ids = [child] + self.dependents(child, Role.MULTIWORD, profile)
                prep = " ".join(self._by_id[i].form.lower() for i in sorted(prep_ids))
                phrases.append(PrepPhrase(span_root=child, np_head=complements[0],
                                          prep=prep, prep_ids=tuple(sorted(prep_ids))))
            else:
                # noun-phrase-headed shape: collect its case marker, if any
                case_ids: list[int] = []
                for k in self.dependents(child, Role.CASE, profile):
                    case_ids.append(k)
                    case_ids.extend(self.dependents(k, Role.MULTIWORD, profile))
                case_ids.sort()
                prep = " ".join(self._by_id[i].form.lower() for i in case_ids)
                phrases.append(PrepPhrase(span_root=child, np_head=child,
                                          prep=prep, prep_ids=tuple(case_ids)))
        return phrases


def _split_comment(line: str) -> tuple[Optional[str], Optional[str]]:
    body = line[1:].strip()
    if "=" in body:
        key, value = body.split("=", 1)
        return key.strip(), value.strip()
    return None, None


def parse_conllu(data: bytes | str) -> list[DependencyGraph]:
    """Parse CoNLL-U text into validated dependency graphs.

    Multiword-token ranges (``1-2``) and empty nodes (``1.1``) are skipped.
    ``# sent_id`` and ``# text`` comments are honored; sentences without a
    ``sent_id`` are numbered by position, starting at 1.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    graphs: list[DependencyGraph] = []
    pending: list[tuple[int, list[str]]] = []
    sent_id: Optional[str] = None
    text: str = ""

    def flush(last_line: int):
        nonlocal pending, sent_id, text
        if not pending:
            sent_id, text = None, ""
            return
        sid = sent_id if sent_id is not None else str(len(graphs) + 1)
        tokens = []
        for lineno, cols in pending:
            try:
                tid = int(cols[ID])
            except ValueError:
                raise ConlluError(f"non-numeric token id {cols[ID]!r}", sent_id=sid, line=lineno) from None
            try:
                head = int(cols[HEAD])
            except ValueError:
                raise ConlluError(f"non-numeric head {cols[HEAD]!r}", sent_id=sid, line=lineno) from None
            try:
                tokens.append(Token(id=tid, form=cols[FORM], lemma=cols[LEMMA],
                                    upos=cols[UPOS], head=head, deprel=cols[DEPREL],
                                    misc=cols[MISC]))
            except ValueError as exc:
                raise ConlluError(str(exc), sent_id=sid, line=lineno) from None
        try:
            graphs.append(DependencyGraph(sent_id=sid, text=text, tokens=tokens))
        except ConlluError as exc:
            raise ConlluError(str(exc.args[0]).split(" (")[0], sent_id=sid, line=last_line) from None
        pending, sent_id, text = [], None, ""

    lineno = 0
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush(lineno)
            continue
        if line.startswith("#"):
            key, value = _split_comment(line)
            if key == "sent_id":
                sent_id = value
            elif key == "text":
                text = value or ""
            continue
        cols = line.split("\t")
        if len(cols) != N_COLUMNS:
            raise ConlluError(f"expected {N_COLUMNS} tab-separated columns, got {len(cols)}",
                              sent_id=sent_id, line=lineno)
        if "-" in cols[ID] or "." in cols[ID]:
            continue  # multiword-token range or empty node
        pending.append((lineno, cols))
    flush(lineno + 1)
    return graphs


def to_conllu(graphs: Iterable[DependencyGraph]) -> str:
    """Re-emit graphs as CoNLL-U.  Inverse of :func:`parse_conllu` on the
    fields the engine uses (id, form, lemma, upos, head, deprel, misc)."""
    blocks = []
    for g in graphs:
        lines = [f"# sent_id = {g.sent_id}", f"# text = {g.text}"]
        for t in g.tokens:
            lines.append("\t".join([
                str(t.id), t.form, t.lemma, t.upos, "_", "_",
                str(t.head), t.deprel, "_", t.misc or "_",
            ]))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
