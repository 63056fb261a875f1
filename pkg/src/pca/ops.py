"""Operator definitions used by both the reader and the writer."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import BadOpDirective
from .terms import Atom, Compound, Int, Term

PREFIX_SPECS = ("fx", "fy")
INFIX_SPECS = ("xfx", "xfy", "yfx")
POSTFIX_SPECS = ("xf", "yf")
SPECS = PREFIX_SPECS + INFIX_SPECS + POSTFIX_SPECS

# Fixity codes as stored in the dictionary.
PREFIX, INFIX, POSTFIX = 0, 1, 2


@dataclass(frozen=True)
class OpDef:
    name: str
    priority: int
    specifier: str

    def __post_init__(self):
        if not 1 <= self.priority <= 1200:
            raise ValueError(f"operator priority {self.priority} outside 1..1200")
        if self.specifier not in SPECS:
            raise ValueError(f"unknown operator specifier {self.specifier!r}")

    @property
    def fixity(self) -> int:
        if self.specifier in PREFIX_SPECS:
            return PREFIX
        if self.specifier in INFIX_SPECS:
            return INFIX
        return POSTFIX

    def argument_priorities(self) -> tuple[int, ...]:
        """Maximum priority allowed for each operand, left to right."""
        p = self.priority
        return tuple(p if c == "y" else p - 1 for c in self.specifier if c != "f")


_STANDARD = [
    (1200, "xfx", [":-", "-->"]),
    (1200, "fx", [":-", "?-"]),
    (1150, "fx", ["dynamic", "discontiguous", "initialization", "meta_predicate",
                  "module_transparent", "multifile", "public", "thread_local", "table"]),
    (1100, "xfy", [";"]),
    (1050, "xfy", ["->", "*->"]),
    (1000, "xfy", [","]),
    (900, "fy", ["\\+"]),
    (700, "xfx", ["=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is",
                  "=:=", "=\\=", "<", ">", "=<", ">="]),
    (600, "xfy", [":"]),
    (500, "yfx", ["+", "-", "/\\", "\\/", "xor"]),
    (400, "yfx", ["*", "/", "//", "rem", "mod", "div", "<<", ">>"]),
    (200, "xfx", ["**"]),
    (200, "xfy", ["^"]),
    (200, "fy", ["-", "+", "\\"]),
]


class OpTable:
    """Mutable mapping from atom text to its prefix and infix-or-postfix definitions."""

    def __init__(self):
        self._prefix: dict[str, OpDef] = {}
        self._infix: dict[str, OpDef] = {}
        self._postfix: dict[str, OpDef] = {}

    @classmethod
    def standard(cls) -> "OpTable":
        table = cls()
        for priority, spec, names in _STANDARD:
            for name in names:
                table.add(priority, spec, name)
        return table

    def copy(self) -> "OpTable":
        other = OpTable()
        other._prefix = dict(self._prefix)
        other._infix = dict(self._infix)
        other._postfix = dict(self._postfix)
        return other

    def add(self, priority: int, specifier: str, name: str) -> None:
        """Define, redefine or (with priority 0) remove an operator."""
        if specifier not in SPECS:
            raise ValueError(f"unknown operator specifier {specifier!r}")
        if specifier in PREFIX_SPECS:
            if priority == 0:
                self._prefix.pop(name, None)
            else:
                self._prefix[name] = OpDef(name, priority, specifier)
            return
        # infix and postfix share one slot per name
        if priority == 0:
            table = self._infix if specifier in INFIX_SPECS else self._postfix
            table.pop(name, None)
            return
        self._infix.pop(name, None)
        self._postfix.pop(name, None)
        target = self._infix if specifier in INFIX_SPECS else self._postfix
        target[name] = OpDef(name, priority, specifier)

    def prefix(self, name: str) -> OpDef | None:
        return self._prefix.get(name)

    def infix(self, name: str) -> OpDef | None:
        return self._infix.get(name)

    def postfix(self, name: str) -> OpDef | None:
        return self._postfix.get(name)

    def is_op(self, name: str) -> bool:
        return name in self._prefix or name in self._infix or name in self._postfix

    def max_priority(self, name: str) -> int:
        defs = [d for d in (self.prefix(name), self.infix(name), self.postfix(name)) if d]
        return max((d.priority for d in defs), default=0)

    def fixity(self, name: str, arity: int) -> int:
        """Dictionary fixity code for an entity with this name and arity."""
        if arity == 2 and name in self._infix:
            return INFIX
        if arity == 1 and name in self._postfix:
            return POSTFIX
        return PREFIX

    def definitions(self) -> list[OpDef]:
        defs = [*self._prefix.values(), *self._infix.values(), *self._postfix.values()]
        return sorted(defs, key=lambda d: (d.name, d.specifier))

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return self.definitions() == other.definitions()

    def __repr__(self):
        return f"OpTable({len(self.definitions())} definitions)"


def _op_names(term: Term) -> list[str] | None:
    if isinstance(term, Atom):
        return [term.name]
    names = []
    while isinstance(term, Compound) and term.functor == "." and term.arity == 2:
        head, term = term.args
        if not isinstance(head, Atom):
            return None
        names.append(head.name)
    if term != Atom("[]"):
        return None
    return names


def apply_directive(term: Term, ops: OpTable) -> bool:
    """Update ``ops`` if ``term`` is a ``:- op(P, Spec, Names)`` directive.

    Returns True when the table changed. A malformed op directive leaves the
    table alone and emits a :class:`BadOpDirective` warning.
    """
    if not (isinstance(term, Compound) and term.functor == ":-" and term.arity == 1):
        return False
    body = term.args[0]
    if not (isinstance(body, Compound) and body.functor == "op" and body.arity == 3):
        return False
    priority, spec, names = body.args
    problem = None
    if not isinstance(priority, Int) or not 0 <= priority.value <= 1200:
        problem = "priority must be an integer in 0..1200"
    elif not isinstance(spec, Atom) or spec.name not in SPECS:
        problem = "unknown operator specifier"
    else:
        name_list = _op_names(names)
        if name_list is None:
            problem = "operator names must be an atom or a list of atoms"
        elif any(n in (",", "[]", "{}", "|") for n in name_list):
            problem = "cannot redefine a reserved operator"
    if problem:
        warnings.warn(BadOpDirective(f"ignored op/3 directive: {problem}"), stacklevel=2)
        return False
    for name in name_list:
        ops.add(priority.value, spec.name, name)
    return True
