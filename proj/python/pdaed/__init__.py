"""Edit distance between pushdown and regular languages."""

from ._core import (
    BudgetExceeded,
    Document,
    ParseError,
    PreconditionError,
    ValidationError,
    decompose,
    distance,
    ed_word_nfa,
    ed_words,
    fed,
    hat,
    inclusion,
    run_command,
    ted,
)


def load(path):
    """Read a document file."""
    return Document.read(str(path))


__all__ = [
    "BudgetExceeded",
    "Document",
    "ParseError",
    "PreconditionError",
    "ValidationError",
    "decompose",
    "distance",
    "ed_word_nfa",
    "ed_words",
    "fed",
    "hat",
    "inclusion",
    "load",
    "run_command",
    "ted",
]
