import copy
import pickle

import pytest
from hypothesis import given

import oracles
from generators import terms
from lcl.terms import (App, I, K, ParseError, S, Var, apply_all, fresh_vars,
                       free_vars, parse_term, spine, substitute, subterms)

x, y, z = Var("x"), Var("y"), Var("z")


def test_hash_consing_gives_identity():
    assert App(K, x) is App(K, Var("x"))
    assert parse_term("S K K") is App(App(S, K), K)


def test_terms_are_immutable():
    with pytest.raises(AttributeError):
        x.name = "y"


def test_pickle_and_copy_preserve_identity():
    m = parse_term("S (K x) (I y)")
    assert pickle.loads(pickle.dumps(m)) is m
    assert copy.deepcopy(m) is m


def test_free_vars():
    assert free_vars(S) == frozenset()
    assert free_vars(App(App(K, x), y)) == {"x", "y"}
    assert free_vars(App(x, x)) == {"x"}


def test_substitute():
    assert substitute(x, "x", K) is K
    assert substitute(App(x, y), "x", I) is App(I, y)
    assert substitute(K, "x", S) is K


def test_printing_is_left_associative():
    assert str(parse_term("((S K) K) x")) == "S K K x"
    assert str(parse_term("x (y z)")) == "x (y z)"


@pytest.mark.parametrize("bad", ["", "(", "S )", "x (y", "X", "S K ?"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_term(bad)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as e:
        parse_term("S K ?")
    assert e.value.pos == 4


def test_spine_and_apply_all():
    m = parse_term("S x (K y) z")
    head, args = spine(m)
    assert head is S and args == [x, parse_term("K y"), z]
    assert apply_all(head, args) is m


def test_subterms_distinct_preorder():
    m = parse_term("x x")
    assert list(subterms(m)) == [m, x]


def test_fresh_vars_avoid():
    assert fresh_vars({"v0", "v2"}, 3) == ["v1", "v3", "v4"]


@given(terms())
def test_print_parse_round_trip(m):
    assert parse_term(str(m)) is m


@given(terms())
def test_printing_agrees_with_oracle(m):
    assert oracles.show(oracles.parse(str(m))) == str(m)
    assert oracles.free_vars(oracles.parse(str(m))) == set(m.fv)


@given(terms(), terms())
def test_substitution_removes_variable(m, n):
    r = substitute(m, "x", n)
    if "x" not in n.fv:
        assert "x" not in r.fv
    assert r.fv <= (m.fv - {"x"}) | (n.fv if "x" in m.fv else frozenset())


@given(terms())
def test_size_counts_nodes(m):
    assert m.size == 1 + (m.fun.size + m.arg.size if isinstance(m, App) else 0)
