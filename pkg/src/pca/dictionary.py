"""The entity dictionary: one (text, arity, fixity) entry per lexical entity."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import IndexOutOfRange, MissingEntry, NameDecodeError, PrologSyntaxError
from .normalizer import NormalizedProgram, var_name
from .reader import CLOSE_CURLY, CLOSE_LIST, NAME, OPEN_CURLY, OPEN_LIST, QUOTED, tokenize
from .terms import Atom, Compound, Float, Int, Term, Var, iter_preorder
from .writer import format_atom, format_number

PCA0, PCA2 = 0, 2
MODES = {"pca0": PCA0, "pca2": PCA2}

_INT_TEXT = re.compile(r"-?[0-9]+\Z")
_FLOAT_TEXT = re.compile(r"-?[0-9]+\.[0-9]+(e-?[0-9]+)?\Z")


@dataclass(frozen=True)
class DictEntry:
    text: str
    arity: int
    fixity: int = 0

    @property
    def key(self) -> tuple[str, int]:
        return (self.text, self.arity)


@dataclass
class Dictionary:
    entries: list[DictEntry]
    nvar: int
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self._index:
            self._index = {e.key: i for i, e in enumerate(self.entries)}
            if len(self._index) != len(self.entries):
                raise ValueError("duplicate (text, arity) pair in dictionary")

    def __len__(self):
        return len(self.entries)

    @property
    def amax(self) -> int:
        return max((e.arity for e in self.entries), default=0)

    @property
    def has_postfix(self) -> bool:
        return any(e.fixity == 2 for e in self.entries)

    def index_of(self, entity) -> int:
        """Index of a variable ordinal (int) or a ``(text, arity)`` pair."""
        if isinstance(entity, int):
            if not 0 <= entity < self.nvar:
                raise MissingEntry(f"no variable entry for ordinal {entity}")
            return entity
        try:
            return self._index[tuple(entity)]
        except KeyError:
            raise MissingEntry(f"no dictionary entry for {entity!r}") from None

    def entry_at(self, index: int) -> DictEntry:
        if not 0 <= index < len(self.entries):
            raise IndexOutOfRange(f"index {index} outside dictionary of {len(self.entries)}")
        return self.entries[index]


def entity_key(term: Term) -> tuple[str, int]:
    """``(text, arity)`` for a non-variable node."""
    if isinstance(term, Compound):
        return format_atom(term.functor), len(term.args)
    if isinstance(term, Atom):
        return format_atom(term.name), 0
    if isinstance(term, (Int, Float)):
        return format_number(term), 0
    raise TypeError(f"variables have no entity key: {term!r}")


def parse_entry_text(text: str) -> Term:
    """Turn stored entry text back into an atom or number."""
    if _INT_TEXT.match(text):
        return Int(int(text))
    if _FLOAT_TEXT.match(text):
        return Float(float(text))
    try:
        tokens = tokenize(text)
    except PrologSyntaxError as exc:
        raise NameDecodeError(f"entry text {text!r} does not tokenize: {exc}") from None
    kinds = [t.kind for t in tokens]
    if kinds == [OPEN_LIST, CLOSE_LIST] and text == "[]":
        return Atom("[]")
    if kinds == [OPEN_CURLY, CLOSE_CURLY] and text == "{}":
        return Atom("{}")
    if len(tokens) == 1 and kinds[0] in (NAME, QUOTED) and format_atom(tokens[0].text) == text:
        return Atom(tokens[0].text)
    raise NameDecodeError(f"entry text {text!r} is not a single atom or number")


def clause_var_names(program: NormalizedProgram, mode: int):
    """Per-clause ordinal-to-entry-text tables for variables."""
    if mode == PCA0:
        return None
    if program.var_names is None:
        raise ValueError("name-preserving mode needs the source variable names")
    return program.var_names


def build(program: NormalizedProgram, mode: int = PCA0) -> Dictionary:
    """Variables first, then other entities by first pre-order occurrence."""
    names = clause_var_names(program, mode)
    entries: list[DictEntry] = []
    seen: set = set()
    if names is None:
        for i in range(program.max_vars):
            entries.append(DictEntry(var_name(i), 0, 0))
            seen.add((var_name(i), 0))
    else:
        for clause_names in names:
            for name in clause_names:
                if (name, 0) not in seen:
                    seen.add((name, 0))
                    entries.append(DictEntry(name, 0, 0))
    nvar = len(entries)
    ops = program.ops
    for term in program.terms:
        for node in iter_preorder(term):
            if isinstance(node, Var):
                continue
            key = entity_key(node)
            if key in seen:
                continue
            seen.add(key)
            name = node.functor if isinstance(node, Compound) else None
            fixity = ops.fixity(name, key[1]) if name is not None else 0
            entries.append(DictEntry(key[0], key[1], fixity))
    return Dictionary(entries, nvar)


def index_of(dictionary: Dictionary, entity) -> int:
    return dictionary.index_of(entity)


def entry_at(dictionary: Dictionary, index: int) -> DictEntry:
    return dictionary.entry_at(index)
