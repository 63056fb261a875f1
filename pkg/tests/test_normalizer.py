import pytest

from pca.normalizer import nf0_text, normalize, normalize_source, var_name
from pca.reader import read_program
from pca.terms import Atom, Compound, Var


@pytest.mark.parametrize("ordinal, name", [
    (0, "A"), (25, "Z"), (26, "A1"), (34, "A9"), (35, "B1"), (259, "Z9"), (260, "V260"),
])
def test_var_name(ordinal, name):
    assert var_name(ordinal) == name


def test_var_name_is_injective():
    names = [var_name(i) for i in range(2000)]
    assert len(set(names)) == len(names)
    with pytest.raises(ValueError):
        var_name(-1)


def test_first_occurrence_ordinals():
    prog = normalize_source("p(X, Y, X).")
    assert prog.terms == [Compound("p", (Var(0), Var(1), Var(0)))]
    assert prog.max_vars == 2


def test_max_vars_over_clauses():
    wide = ",".join(f"X{i}" for i in range(26))
    prog = normalize_source(f"p(A,B,C).\nq({wide}).\n")
    assert prog.max_vars == 26


def test_anonymous_variables_are_distinct():
    prog = normalize_source("p(_, _, X).")
    assert prog.terms == [Compound("p", (Var(0), Var(1), Var(2)))]
    assert prog.var_names == [("_0", "_1", "X")]


def test_anonymous_names_avoid_clashes():
    prog = normalize_source("p(_1, _).")
    assert prog.var_names == [("_1", "__1")]


def test_worked_example_text():
    prog = normalize_source("p(a,B,f(c,d,e)).")
    assert prog.terms[0].args[1] == Var(0)
    assert nf0_text(prog) == "p(a,A,f(c,d,e)).\n"


def test_empty_program():
    prog = normalize_source("")
    assert nf0_text(prog) == ""
    assert prog.max_vars == 0


def test_op_directive_fixed_point():
    src = ":- op(700,xfx,===).\nx(a===b).\n"
    first = nf0_text(normalize_source(src))
    assert first == ":- op(700,xfx,===).\nx(a===b).\n"
    assert nf0_text(normalize_source(first)) == first


def test_keep_names():
    prog = normalize_source("app([H|T], L, [H|R]) :- app(T, L, R).")
    assert nf0_text(prog) == "app([A|B],C,[A|D]):-app(B,C,D).\n"
    assert nf0_text(prog, keep_names=True) == "app([H|T],L,[H|R]):-app(T,L,R).\n"


def test_idempotent_on_corpus(corpus_files):
    for path in corpus_files:
        prog = normalize_source(path.read_text(encoding="utf-8"))
        text = nf0_text(prog)
        again = normalize_source(text)
        assert again == prog, path.name
        assert nf0_text(again) == text, path.name


def test_structure_preserved_up_to_renaming():
    src = "q(Foo, bar, [Foo|Baz]) :- r(Baz)."
    terms, _ = read_program(src)
    prog = normalize(terms, None)
    assert prog.terms == terms
    assert prog.terms[0].args[0].args[2] == Compound(".", (Var(0), Var(1)))
    assert isinstance(prog.terms[0].args[0].args[1], Atom)
