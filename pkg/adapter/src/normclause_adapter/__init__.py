"""Plain-text to CoNLL-U adapter feeding the clause extraction pipeline.

Input is one pre-selected sentence per line (document-structure analysis
and sentence selection happen upstream); output is CoNLL-U with Universal
Dependencies labels, consumable by the ``normclause`` tools.
"""

from .cli import adapt, main, pick_backend
from .heuristic import HeuristicBackend, Word, tag, tokenize

__version__ = "0.1.0"

__all__ = ["HeuristicBackend", "Word", "adapt", "main", "pick_backend",
           "tag", "tokenize"]
