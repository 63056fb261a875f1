"""Operator-aware Prolog term writer whose output the reader accepts back."""

from __future__ import annotations

import re

from .ops import OpTable, apply_directive
from .terms import Atom, Compound, Float, Int, Term, Var

_LETTER_ATOM = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
_SYMBOL_ATOM = re.compile(r"[+\-*/\\^<>=~:.?@#&$]+\Z")
_SOLO_ATOMS = frozenset(["[]", "{}", "!", ";"])
_SYMBOL_CHARS = frozenset("+-*/\\^<>=~:.?@#&$")
_QUOTE_ESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t", "\r": "\\r",
                  "\a": "\\a", "\b": "\\b", "\f": "\\f", "\v": "\\v", "\0": "\\0\\"}


def atom_needs_quotes(name: str) -> bool:
    if name in _SOLO_ATOMS or _LETTER_ATOM.match(name):
        return False
    if _SYMBOL_ATOM.match(name):
        return name == "." or name.startswith("/*")
    return True


def format_atom(name: str) -> str:
    """Atom text that reads back as exactly ``name``."""
    if not atom_needs_quotes(name):
        return name
    out = []
    for ch in name:
        if ch in _QUOTE_ESCAPES:
            out.append(_QUOTE_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\x{ord(ch):x}\\")
        else:
            out.append(ch)
    return "'" + "".join(out) + "'"


def format_float(value: float) -> str:
    """Shortest round-trip spelling that still reads back as a float."""
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"{value!r} has no Prolog source form")
    text = repr(value)
    if "e" in text:
        mantissa, exponent = text.split("e")
        if "." not in mantissa:
            mantissa += ".0"
        return f"{mantissa}e{int(exponent)}"
    return text


def format_functor(name: str) -> str:
    """Functor text for functional notation; ``[]`` and ``{}`` are not names there."""
    if name in ("[]", "{}"):
        return f"'{name}'"
    return format_atom(name)


def format_number(term: Int | Float) -> str:
    return str(term.value) if isinstance(term, Int) else format_float(term.value)


def default_var_name(ordinal: int) -> str:
    from .normalizer import var_name

    return var_name(ordinal)


def _glue(left: str, right: str) -> str:
    """Concatenate two fragments, adding a space where they would fuse into one token."""
    if not left or not right:
        return left + right
    a, b = left[-1], right[0]
    if (a.isalnum() or a == "_") and (b.isalnum() or b == "_"):
        return left + " " + right
    if a in _SYMBOL_CHARS and b in _SYMBOL_CHARS:
        return left + " " + right
    if a == b and a in "'\"`":
        return left + " " + right
    if a.isdigit() and b == "'":
        return left + " " + right
    return left + right


class _Writer:
    def __init__(self, ops: OpTable, var_names):
        self.ops = ops
        self.var_names = var_names

    def atom(self, name: str, max_prec: int, operand: bool) -> str:
        text = format_atom(name)
        if self.ops.is_op(name) and (operand or self.ops.max_priority(name) > max_prec):
            return "(" + text + ")"
        return text

    def is_op_atom(self, term: Term) -> bool:
        return isinstance(term, Atom) and self.ops.is_op(term.name)

    def write(self, term: Term, max_prec: int = 1200, operand: bool = False) -> str:
        if isinstance(term, Var):
            return self.var_names(term.ordinal)
        if isinstance(term, (Int, Float)):
            return format_number(term)
        if isinstance(term, Atom):
            return self.atom(term.name, max_prec, operand)
        name, args = term.functor, term.args
        if name == "." and len(args) == 2:
            return self.write_list(term)
        if name == "{}" and len(args) == 1:
            return "{" + self.write(args[0], 1200) + "}"
        if len(args) == 2 and (op := self.ops.infix(name)) is not None:
            lmax, rmax = op.argument_priorities()
            left = self.write(args[0], lmax, operand=True)
            right = self.write(args[1], rmax, operand=True)
            if name == ",":
                text = left + "," + right
            else:
                symbol = format_atom(name)
                if symbol[0].isalpha() or symbol[0] == "'":
                    text = f"{left} {symbol} {right}"
                else:
                    text = _glue(_glue(left, symbol), right)
            return self.bracket(text, op.priority, max_prec)
        if len(args) == 1 and (op := self.ops.prefix(name)) is not None \
                and not isinstance(args[0], (Int, Float)) and not self.is_op_atom(args[0]):
            (amax,) = op.argument_priorities()
            symbol = format_atom(name)
            arg = self.write(args[0], amax, operand=True)
            if name == ":-" or arg.startswith("(") or symbol[0] == "'" \
                    or (name in ("-", "+") and arg[0].isdigit()):
                text = symbol + " " + arg
            else:
                text = _glue(symbol, arg)
            return self.bracket(text, op.priority, max_prec)
        if len(args) == 1 and (op := self.ops.postfix(name)) is not None:
            (amax,) = op.argument_priorities()
            arg = self.write(args[0], amax, operand=True)
            symbol = format_atom(name)
            if symbol[0].isalpha() or symbol[0] == "'":
                text = f"{arg} {symbol}"
            else:
                text = _glue(arg, symbol)
            return self.bracket(text, op.priority, max_prec)
        parts = [self.write(a, 999) for a in args]
        return format_functor(name) + "(" + ",".join(parts) + ")"

    @staticmethod
    def bracket(text: str, priority: int, max_prec: int) -> str:
        return "(" + text + ")" if priority > max_prec else text

    def write_list(self, term: Compound) -> str:
        items = []
        while isinstance(term, Compound) and term.functor == "." and len(term.args) == 2:
            items.append(self.write(term.args[0], 999))
            term = term.args[1]
        text = "[" + ",".join(items)
        if term != Atom("[]"):
            text += "|" + self.write(term, 999)
        return text + "]"


def write_term(term: Term, ops: OpTable | None = None, var_names=None) -> str:
    """Render ``term`` as source text that reads back to the same structure.

    ``var_names`` maps a variable ordinal to its printed name; by default
    the canonical A..Z, A1..Z9 scheme is used.
    """
    ops = ops if ops is not None else OpTable.standard()
    return _Writer(ops, var_names or default_var_name).write(term)


def write_clause(term: Term, ops: OpTable, var_names=None) -> str:
    text = write_term(term, ops, var_names)
    return _glue(text, ".") + "\n"


def write_program(terms, initial_ops: OpTable | None = None, var_names=None) -> str:
    """Print clauses in order, one per line, tracking op/3 directives as it goes.

    ``var_names``, when given, is a sequence holding one ordinal-to-name
    function (or name sequence) per clause.
    """
    ops = initial_ops.copy() if initial_ops is not None else OpTable.standard()
    out = []
    for i, term in enumerate(terms):
        names = None
        if var_names is not None:
            names = var_names[i]
            if not callable(names):
                names = names.__getitem__
        out.append(write_clause(term, ops, names))
        apply_directive(term, ops)
    return "".join(out)
