import pytest

from pca.errors import (
    BadOpDirective,
    InvalidCharacter,
    InvalidEscape,
    OperatorClash,
    PrologSyntaxError,
    UnbalancedDelimiter,
    UnexpectedToken,
    UnterminatedBlockComment,
    UnterminatedQuotedAtom,
)
from pca.ops import OpTable
from pca.reader import Parser, read_program, read_term, read_terms, tokenize
from pca.terms import Atom, Compound, Float, Int, Var, make_list


def kinds(source):
    return [(t.kind, t.text) for t in tokenize(source)]


def read1(source):
    terms, _ = read_program(source)
    assert len(terms) == 1
    return terms[0]


def test_tokenize_drops_comments():
    assert kinds("p(a). % hi") == [
        ("name", "p"), ("open_ct", "("), ("name", "a"), (")", ")"), ("end", "."),
    ]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_char_code():
    assert kinds("X = 0'a.") == [("var", "X"), ("name", "="), ("int", "97"), ("end", ".")]


@pytest.mark.parametrize("source, value", [
    ("0'\\n", 10), ("0''", 39), ("0'''", 39), ("0' ", 32), ("0x1F", 31), ("0o17", 15),
    ("0b101", 5), ("007", 7),
])
def test_integer_literals(source, value):
    assert kinds(source) == [("int", str(value))]


def test_float_literals():
    assert kinds("1.5e10 2.0E-3 3.25") == [("float", "1.5e10"), ("float", "2.0E-3"),
                                           ("float", "3.25")]


def test_block_comment_and_positions():
    toks = tokenize("/* a\n b */ foo\n  Bar")
    assert [(t.text, t.line, t.column) for t in toks] == [("foo", 2, 7), ("Bar", 3, 3)]


def test_end_token_needs_layout():
    assert kinds("a.b") == [("name", "a"), ("name", "."), ("name", "b")]
    assert kinds("a.%c") == [("name", "a"), ("end", ".")]
    assert kinds("X =.. Y.") == [("var", "X"), ("name", "=.."), ("var", "Y"), ("end", ".")]


def test_quoted_escapes():
    assert kinds(r"'it''s\n\x41\\101\'") == [("quoted", "it's\nA" + "A")]


@pytest.mark.parametrize("source, error", [
    ("'abc", UnterminatedQuotedAtom),
    ("/* never closed", UnterminatedBlockComment),
    ("'\\q'", InvalidEscape),
    ("a \x07 b", InvalidCharacter),
])
def test_tokenize_errors_carry_positions(source, error):
    with pytest.raises(error) as info:
        tokenize(source)
    assert info.value.line == 1
    assert 1 <= info.value.column <= len(source)


def test_list_desugaring():
    assert read1("[a,b].") == make_list([Atom("a"), Atom("b")])
    assert read1("[a|T].") == Compound(".", (Atom("a"), Var(0)))


def test_operator_priorities():
    assert read1("a+b*c.") == Compound("+", (Atom("a"), Compound("*", (Atom("b"), Atom("c")))))
    assert read1("a-b-c.") == Compound("-", (Compound("-", (Atom("a"), Atom("b"))), Atom("c")))
    assert read1("a^b^c.") == Compound("^", (Atom("a"), Compound("^", (Atom("b"), Atom("c")))))


def test_worked_example_term():
    t = read1("p(a,B,f(c,d,e)).")
    assert t == Compound("p", (Atom("a"), Var(0),
                               Compound("f", (Atom("c"), Atom("d"), Atom("e")))))


def test_curly_and_strings():
    assert read1("{a,b}.") == Compound("{}", (Compound(",", (Atom("a"), Atom("b"))),))
    assert read1('"hi".') == make_list([Int(104), Int(105)])


def test_variables_numbered_by_first_occurrence():
    t = read1("f(Y, X, _, Y, _).")
    assert t == Compound("f", (Var(0), Var(1), Var(2), Var(0), Var(3)))


@pytest.mark.parametrize("source, expected", [
    ("X = -1.", Int(-1)),
    ("X = - 1.", Compound("-", (Int(1),))),
    ("X = -(1).", Compound("-", (Int(1),))),
    ("X = -1.5.", Float(-1.5)),
])
def test_negative_numbers(source, expected):
    assert read1(source).args[1] == expected


def test_minus_after_operand_is_infix():
    assert read1("a -1.") == Compound("-", (Atom("a"), Int(1)))
    assert read1("a - -1.") == Compound("-", (Atom("a"), Int(-1)))


def test_prefix_operator_as_atom():
    assert read1("f(-, a).") == Compound("f", (Atom("-"), Atom("a")))
    assert read1("- = a.") == Compound("=", (Atom("-"), Atom("a")))
    assert read1("X = (:-).") == Compound("=", (Var(0), Atom(":-")))


def test_prefix_operator_with_parenthesised_operand():
    conj = Compound(",", (Atom("a"), Atom("b")))
    assert read1("\\+ (a, b).") == Compound("\\+", (conj,))
    assert read1("-(a, b).") == Compound("-", (Atom("a"), Atom("b")))


def test_directive_declarations():
    t = read1(":- dynamic foo/1, bar/2.")
    decl = t.args[0]
    assert decl.functor == "dynamic"
    assert decl.args[0].functor == ","


def test_bar_as_disjunction():
    assert read1("(a | b).") == Compound(";", (Atom("a"), Atom("b")))


def test_op_directive_takes_effect():
    terms, ops = read_program(":- op(700, xfx, ===). a === b.")
    assert terms[0] == Compound(":-", (Compound("op", (Int(700), Atom("xfx"), Atom("===")),),))
    assert terms[1] == Compound("===", (Atom("a"), Atom("b")))
    assert ops.infix("===").priority == 700


def test_op_directive_with_name_list_and_removal():
    _, ops = read_program(":- op(200, xfy, [aa, bb]). :- op(0, xfy, aa).")
    assert ops.infix("aa") is None
    assert ops.infix("bb").specifier == "xfy"


def test_bad_op_directive_is_kept_and_ignored():
    with pytest.warns(BadOpDirective):
        terms, ops = read_program(":- op(1300, xfx, foo). p.")
    assert len(terms) == 2
    assert ops == OpTable.standard()


def test_read_program_trivial_cases():
    assert read_program("p. q.")[0] == [Atom("p"), Atom("q")]
    assert read_program("% nothing\n/* here */\n")[0] == []


def test_read_term_advances_cursor():
    parser = Parser(tokenize("a. b(X)."))
    assert read_term(parser) == Atom("a")
    assert read_term(parser) == Compound("b", (Var(0),))
    assert parser.at_end()


def test_var_names_recorded():
    _, _, names = read_terms("p(Foo, _, Bar, Foo).")
    assert names == [("Foo", "_", "Bar")]


@pytest.mark.parametrize("source, error", [
    ("a = b = c.", OperatorClash),
    ("f(a.", UnbalancedDelimiter),
    ("[a, b.", UnbalancedDelimiter),
    ("a b.", UnexpectedToken),
    ("f(a)) .", UnbalancedDelimiter),
    ("p :- .", UnexpectedToken),
    ("foo", UnexpectedToken),
    ("q(b, ).", UnexpectedToken),
    ("[a|].", UnexpectedToken),
])
def test_parse_errors(source, error):
    with pytest.raises(error) as info:
        read_program(source)
    assert isinstance(info.value, PrologSyntaxError)
    assert info.value.line >= 1 and info.value.column >= 1


def test_error_positions_inside_source():
    source = "ok.\nfoo(bar,\n    baz qux).\n"
    with pytest.raises(PrologSyntaxError) as info:
        read_program(source)
    lines = source.split("\n")
    assert info.value.line == 3
    assert info.value.column <= len(lines[info.value.line - 1])


def test_determinism():
    src = "p(X) :- q(X, Y), \\+ r(Y). s([1,2|T], T)."
    assert tokenize(src) == tokenize(src)
    assert read_program(src)[0] == read_program(src)[0]
