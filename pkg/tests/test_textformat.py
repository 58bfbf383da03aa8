import pytest
from hypothesis import given, strategies as st

from dglapair import catalog as cat
from dglapair.cli import shipped_fixtures
from dglapair.textformat import ParseError, parse, serialize

FIXTURES = [str(p) for p in shipped_fixtures()]

HEAD = """\
dgla L
basis: a:0, b:1
bracket: [a,b] -> 1 b
"""


def read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def test_abelian_line_matches_catalog():
    path = next(p for p in FIXTURES if p.endswith("abelian-line.dgl"))
    doc = parse(read(path))
    P, E = doc.diagram, cat.load("abelian-line").diagram
    assert (P.L, P.M, P.N) == (E.L, E.M, E.N)
    assert P.h == E.h and P.g == E.g
    assert doc.expect["h_injective"] == "yes"


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.rsplit("/", 1)[-1])
def test_round_trip(path):
    text = read(path)
    doc = parse(text)
    assert serialize(doc) == text
    assert parse(serialize(doc)) == doc


def test_bracket_degree_error_names_entry():
    bad = HEAD + "bracket: [b,b] -> 1 b\n"
    with pytest.raises(ParseError) as err:
        parse(bad)
    msg = str(err.value)
    assert "[b,b]" in msg and "line 4" in msg and "column" in msg


def test_unknown_key_rejected():
    with pytest.raises(ParseError, match="line 4"):
        parse(HEAD + "colour: red\n")


def test_unknown_ring_key_rejected():
    with pytest.raises(ParseError):
        parse("ring: vars=e; order=2; flavour=x\n" + HEAD)


def test_unresolved_reference():
    with pytest.raises(ParseError, match="unresolved"):
        parse(HEAD + "\nmorphism f: L -> M\nmap: a -> 1 a\n")


def test_unknown_basis_in_vector():
    with pytest.raises(ParseError):
        parse(HEAD.replace("-> 1 b", "-> 1 z"))


def test_bad_rational():
    with pytest.raises(ParseError):
        parse(HEAD.replace("-> 1 b", "-> 1.5 b"))


def test_witness_needs_pair():
    with pytest.raises(ParseError, match="without a pair"):
        parse("ring: vars=e; order=2\n" + HEAD + "\nwitness w\nx: b*e -> 1\n")


def test_comments_and_blank_lines_are_ignored():
    doc = parse("# header\n\n" + HEAD.replace("basis: a:0, b:1", "basis: a:0, b:1   # two"))
    assert doc.dglas["L"].names == ("a", "b")


@given(st.sampled_from(cat.catalog_list()), st.integers(0, 3))
def test_generated_documents_round_trip(name, seed):
    doc = cat.fixture_document(name, seed)
    assert parse(serialize(doc)) == doc
