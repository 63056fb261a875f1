import pytest

from pca.dictionary import PCA0, PCA2, DictEntry, Dictionary, build, entry_at, index_of, parse_entry_text
from pca.errors import IndexOutOfRange, MissingEntry, NameDecodeError
from pca.normalizer import normalize_source
from pca.terms import Atom, Float, Int


@pytest.fixture
def example():
    return build(normalize_source("p(a,B,f(c,d,e))."))


def test_example_entries(example):
    assert [(e.text, e.arity) for e in example.entries] == [
        ("A", 0), ("p", 3), ("a", 0), ("f", 3), ("c", 0), ("d", 0), ("e", 0)]
    assert len(example) == 7 and example.nvar == 1
    assert example.amax == 3 and not example.has_postfix


def test_index_of(example):
    assert index_of(example, 0) == 0
    assert index_of(example, ("p", 3)) == 1
    assert index_of(example, ("e", 0)) == 6
    with pytest.raises(MissingEntry):
        index_of(example, ("zz", 0))
    with pytest.raises(MissingEntry):
        index_of(example, 1)


def test_entry_at(example):
    assert entry_at(example, 0) == DictEntry("A", 0, 0)
    assert entry_at(example, 1) == DictEntry("p", 3, 0)
    with pytest.raises(IndexOutOfRange):
        entry_at(example, 7)
    with pytest.raises(IndexOutOfRange):
        entry_at(example, -1)


def test_entry_at_inverts_index_of(corpus_files):
    for path in corpus_files[:3]:
        d = build(normalize_source(path.read_text(encoding="utf-8")))
        for i, e in enumerate(d.entries):
            key = i if i < d.nvar else e.key
            assert d.entry_at(d.index_of(key)) == e


def test_empty_program():
    d = build(normalize_source(""))
    assert len(d) == 0 and d.nvar == 0 and d.amax == 0


def test_fixities():
    d = build(normalize_source(":- op(200, xf, ++).\na = b.\nx(1 ++).\ny(- a).\n"))
    by_key = {e.key: e.fixity for e in d.entries}
    assert by_key[("=", 2)] == 1
    assert by_key[("++", 1)] == 2
    assert by_key[("-", 1)] == 0
    assert by_key[(":-", 1)] == 0
    assert d.has_postfix


def test_one_entry_per_arity():
    d = build(normalize_source("f(f, f(x), f(x, y))."))
    assert [e.key for e in d.entries if e.text == "f"] == [("f", 3), ("f", 0), ("f", 1), ("f", 2)]


def test_quoted_atom_distinct_from_number():
    d = build(normalize_source("p('123', 123, 1.0, '1.0', 0x10, 16)."))
    keys = [e.key for e in d.entries]
    assert ("'123'", 0) in keys and ("123", 0) in keys
    assert ("1.0", 0) in keys and ("'1.0'", 0) in keys
    assert keys.count(("16", 0)) == 1


def test_pca2_keeps_source_names():
    prog = normalize_source("p(X, Y).\nq(Y, Z, _).\n")
    d = build(prog, PCA2)
    assert [e.text for e in d.entries[:d.nvar]] == ["X", "Y", "Z", "_2"]
    assert build(prog, PCA0).nvar == 3


def test_deterministic(corpus_files):
    src = corpus_files[0].read_text(encoding="utf-8")
    assert build(normalize_source(src)) == build(normalize_source(src))


def test_duplicate_keys_rejected():
    with pytest.raises(ValueError):
        Dictionary([DictEntry("a", 0), DictEntry("a", 0)], 0)


@pytest.mark.parametrize("text, term", [
    ("a", Atom("a")), ("[]", Atom("[]")), ("{}", Atom("{}")), ("'hello world'", Atom("hello world")),
    ("-12", Int(-12)), ("1.0e22", Float(1e22)), ("=..", Atom("=..")), ("'\\n'", Atom("\n")),
])
def test_parse_entry_text(text, term):
    assert parse_entry_text(text) == term


@pytest.mark.parametrize("text", ["a b", "'unterminated", "f(x)", "", "'a'b", "'a'"])
def test_parse_entry_text_rejects(text):
    with pytest.raises(NameDecodeError):
        parse_entry_text(text)
