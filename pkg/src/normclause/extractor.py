"""Estimator-style front door for the extraction pipeline.

``ClauseExtractor`` is a stateless scikit-learn transformer: ``fit``
validates parameters, ``transform`` maps a sequence of dependency graphs
to one list of clause rows per input sentence.  This keeps the engine
composable with sklearn pipelines while the plain functions remain
available for direct use.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from sklearn.base import BaseEstimator, TransformerMixin

from .depgraph import DependencyGraph, LabelProfile, label_profile
from .lexicon import LexiconConfig, default_lexicon, empty_lexicon
from .normalize import RenderStyle
from .rules import extract_sentence
from .table import ClauseRow, ClauseTable


def _check_graphs(X: Iterable) -> list[DependencyGraph]:
    graphs = list(X)
    for i, g in enumerate(graphs):
        if not isinstance(g, DependencyGraph):
            raise TypeError(f"X[{i}] is {type(g).__name__}, expected DependencyGraph")
    return graphs


class ClauseExtractor(BaseEstimator, TransformerMixin):
    """Extract deontic clause rows from dependency-parsed sentences.

    Parameters
    ----------
    lexicon : LexiconConfig, "default", "empty", or None
        Keyword lists driving the heuristic layer.  None or "default"
        selects the shipped lists, "empty" the rules-only configuration.
    profile : str or LabelProfile
        Dependency label scheme of the input ("ud" or "stanford-classic").
    style : str
        "canonical" renders party tags as ``<user>``; "display" renders
        them capitalized (``User``).
    """

    def __init__(self, lexicon: Union[LexiconConfig, str, None] = None,
                 profile: Union[str, LabelProfile] = "ud",
                 style: str = "canonical"):
        self.lexicon = lexicon
        self.profile = profile
        self.style = style

    def _resolve(self) -> tuple[LexiconConfig, LabelProfile, RenderStyle]:
        if self.lexicon is None or self.lexicon == "default":
            cfg = default_lexicon()
        elif self.lexicon == "empty":
            cfg = empty_lexicon()
        elif isinstance(self.lexicon, LexiconConfig):
            cfg = self.lexicon
        else:
            raise ValueError(f"lexicon must be a LexiconConfig, 'default', 'empty' or None, "
                             f"got {self.lexicon!r}")
        prof = self.profile if isinstance(self.profile, LabelProfile) else label_profile(self.profile)
        try:
            style = RenderStyle(self.style)
        except ValueError:
            raise ValueError(f"style must be 'canonical' or 'display', got {self.style!r}") from None
        return cfg, prof, style

    def fit(self, X: Optional[Iterable] = None, y=None) -> "ClauseExtractor":
        """Validate parameters; the transformer learns nothing from data."""
        cfg, prof, style = self._resolve()
        self.lexicon_ = cfg
        self.profile_ = prof
        self.style_ = style
        if X is not None:
            _check_graphs(X)
        return self

    def transform(self, X: Iterable[DependencyGraph]) -> list[list[ClauseRow]]:
        """One list of clause rows per input sentence, input order preserved."""
        cfg, prof, style = self._resolve()
        return [extract_sentence(g, cfg, prof, style) for g in _check_graphs(X)]

    def extract_table(self, X: Sequence[DependencyGraph], doc_id: str = "") -> ClauseTable:
        """Flatten per-sentence rows into a single validated document table."""
        rows = [row for sentence_rows in self.transform(X) for row in sentence_rows]
        return ClauseTable(doc_id=doc_id, rows=rows).validate()
