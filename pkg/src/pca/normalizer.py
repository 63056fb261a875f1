"""Normal form NF0: comments gone, variables renamed clause by clause."""

from __future__ import annotations

import string
from dataclasses import dataclass, field

from .ops import OpTable
from .reader import read_terms
from .terms import Term, canonical_vars
from .writer import write_program

_LETTERS = string.ascii_uppercase


@dataclass
class NormalizedProgram:
    terms: list[Term]
    ops: OpTable
    max_vars: int
    # Per-clause source variable names (ordinal -> name); None once they are dropped.
    var_names: list[tuple[str, ...]] | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.terms)


def var_name(ordinal: int) -> str:
    """Canonical name of the ``ordinal``-th variable of a clause.

    >>> [var_name(i) for i in (0, 25, 26, 35, 259, 260)]
    ['A', 'Z', 'A1', 'B1', 'Z9', 'V260']
    """
    if ordinal < 0:
        raise ValueError("variable ordinals are non-negative")
    if ordinal < 26:
        return _LETTERS[ordinal]
    if ordinal < 260:
        letter, digit = divmod(ordinal - 26, 9)
        return f"{_LETTERS[letter]}{digit + 1}"
    return f"V{ordinal}"


def _distinct_names(names: tuple[str, ...]) -> tuple[str, ...]:
    """Give every anonymous variable a fresh name that cannot clash with the others."""
    taken = set(names)
    out = []
    for i, name in enumerate(names):
        if name == "_":
            candidate = f"_{i}"
            while candidate in taken:
                candidate = "_" + candidate
            taken.add(candidate)
            name = candidate
        out.append(name)
    return tuple(out)


def normalize(terms, ops: OpTable, var_names=None) -> NormalizedProgram:
    """Fix canonical variable numbering and record the widest clause.

    ``var_names`` (as returned by :func:`pca.reader.read_terms`) is kept,
    with anonymous variables made distinct, for the name-preserving mode.
    """
    out = []
    max_vars = 0
    for term in terms:
        term, k = canonical_vars(term)
        out.append(term)
        max_vars = max(max_vars, k)
    names = None
    if var_names is not None:
        names = [_distinct_names(tuple(n)) for n in var_names]
    return NormalizedProgram(out, ops, max_vars, names)


def normalize_source(source: str) -> NormalizedProgram:
    terms, ops, names = read_terms(source)
    return normalize(terms, ops, names)


def nf0_text(program: NormalizedProgram, keep_names: bool = False) -> str:
    """Listing-style rendering: one clause per line, canonical variable names."""
    names = None
    if keep_names and program.var_names is not None:
        names = program.var_names
    return write_program(program.terms, OpTable.standard(), names)
