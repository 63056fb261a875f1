"""Immutable Prolog term values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class Var:
    ordinal: int


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Int:
    value: int


@dataclass(frozen=True, slots=True)
class Float:
    value: float


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("compound terms need at least one argument; use Atom")

    @property
    def arity(self) -> int:
        return len(self.args)


Term = Union[Var, Atom, Int, Float, Compound]

NIL = Atom("[]")


def make_list(items, tail: Term = NIL) -> Term:
    result = tail
    for item in reversed(items):
        result = Compound(".", (item, result))
    return result


def iter_preorder(term: Term):
    """Yield every node of ``term`` depth-first, left to right, parents first."""
    stack = [term]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Compound):
            stack.extend(reversed(node.args))


def map_vars(term: Term, fn) -> Term:
    """Rebuild ``term`` with every variable replaced by ``fn(var)``.

    Variables are visited in first-occurrence order. Iterative, so long
    lists do not hit the recursion limit.
    """
    out: list = []
    stack: list = [(term, False)]
    while stack:
        node, built = stack.pop()
        if isinstance(node, Compound):
            if built:
                n = len(node.args)
                args = tuple(out[-n:])
                del out[-n:]
                out.append(Compound(node.functor, args))
            else:
                stack.append((node, True))
                stack.extend((a, False) for a in reversed(node.args))
        elif isinstance(node, Var):
            out.append(fn(node))
        else:
            out.append(node)
    return out[0]


def canonical_vars(term: Term) -> tuple[Term, int]:
    """Renumber variables by first occurrence.

    Returns the renumbered term and the number of distinct variables.
    """
    mapping: dict[int, int] = {}

    def renumber(v):
        if v.ordinal not in mapping:
            mapping[v.ordinal] = len(mapping)
        return Var(mapping[v.ordinal])

    return map_vars(term, renumber), len(mapping)


def count_vars(term: Term) -> int:
    return len({n.ordinal for n in iter_preorder(term) if isinstance(n, Var)})
