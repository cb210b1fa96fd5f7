import pytest
from hypothesis import given, strategies as st

from generators import types
from lcl.simpletypes import (Arrow, Basis, Clash, OccursFailure, TVar, apply_subst,
                             arrows, canonicalize, compose, match, parse_basis,
                             parse_type, unify, unify_all)
from lcl.terms import ParseError

a, b, c = TVar("a"), TVar("b"), TVar("c")


def test_printing_and_parsing():
    t = arrows(a, b, a)
    assert str(t) == "a -> (b -> a)"
    assert parse_type("a -> b -> a") is t
    assert parse_type("(a -> b) -> a") is Arrow(Arrow(a, b), a)
    assert str(Arrow(Arrow(a, b), a)) == "(a -> b) -> a"


@pytest.mark.parametrize("bad", ["", "a ->", "-> a", "(a", "a b", "A"])
def test_type_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_type(bad)


def test_basis_text():
    g = parse_basis("y : c, x : a -> b")
    assert list(g) == ["x", "y"]
    assert str(g) == "x : a -> b, y : c"
    assert parse_basis("") == Basis()
    with pytest.raises(ParseError):
        parse_basis("x : a, x : b")
    with pytest.raises(ParseError):
        parse_basis("x a")


def test_basis_restrict():
    g = parse_basis("x : a, y : b")
    assert g.restrict({"x"}) == parse_basis("x : a")
    assert Basis().restrict({"x"}) == Basis()
    assert parse_basis("x : a").restrict({"y"}) == Basis()


def test_basis_is_immutable_mapping():
    g = parse_basis("x : a")
    with pytest.raises(TypeError):
        g["y"] = a
    assert g.extended("y", b) == parse_basis("x : a, y : b")
    assert hash(g) == hash(parse_basis("x : a"))


def test_unify_examples():
    assert unify(a, Arrow(b, c)) == {"a": Arrow(b, c)}
    bb = Arrow(b, b)
    assert unify(Arrow(a, a), Arrow(bb, bb)) == {"a": bb}
    with pytest.raises(OccursFailure):
        unify(a, Arrow(a, b))
    with pytest.raises(Clash):
        unify(a, Arrow(b, c), rigid={"a"})


def test_rigid_variables_bind_only_flexible_side():
    assert unify(a, b, rigid={"a"}) == {"b": a}
    with pytest.raises(Clash):
        unify(a, b, rigid={"a", "b"})


def test_match_one_way():
    assert match(Arrow(a, a), Arrow(b, b)) == {"a": b}
    assert match(Arrow(a, a), Arrow(b, c)) is None
    assert match(Arrow(a, b), a) is None
    assert match(Arrow(a, b), Arrow(a, c), fixed={"a"}) == {"b": c}
    assert match(Arrow(a, b), Arrow(c, c), fixed={"a"}) is None


def test_canonicalize_first_use_order():
    t = parse_type("(q -> p) -> q")
    assert str(canonicalize(t)) == "(a -> b) -> a"
    assert str(canonicalize(parse_type("b -> z"), fixed={"a"})) == "b -> c"


@given(types(), types())
def test_unifier_unifies_and_is_idempotent(s, t):
    try:
        u = unify(s, t)
    except (Clash, OccursFailure):
        return
    assert apply_subst(u, s) is apply_subst(u, t)
    for v in u.values():
        assert apply_subst(u, v) is v


@given(types(), types(), types())
def test_unifier_is_most_general(s, t, w):
    theta = {"a": w}
    if apply_subst(theta, s) is not apply_subst(theta, t):
        return
    u = unify(s, t)
    # theta factors as rho . u: one match over all variables at once
    vs = sorted(s.tv | t.tv | {"a"})
    pattern = arrows(*(apply_subst(u, TVar(v)) for v in vs))
    target = arrows(*(apply_subst(theta, TVar(v)) for v in vs))
    assert match(pattern, target) is not None


@given(types(), types())
def test_match_agrees_with_apply(p, t):
    s = match(p, t)
    if s is not None:
        assert apply_subst(s, p) is t


@given(types(), st.dictionaries(st.sampled_from("abc"), types(3)))
def test_match_finds_every_instance(p, subst):
    t = apply_subst(subst, p)
    assert match(p, t) is not None


@given(types(), types())
def test_compose_applies_right_first(s, t):
    s1 = {"a": s}
    s2 = {"b": t}
    for ty in (a, b, Arrow(a, b)):
        assert apply_subst(compose(s2, s1), ty) is apply_subst(s2, apply_subst(s1, ty))


@given(types(6))
def test_type_round_trip(t):
    assert parse_type(str(t)) is t


@given(st.lists(st.tuples(types(), types()), max_size=3))
def test_unify_all_solves_every_pair(pairs):
    try:
        u = unify_all(pairs)
    except (Clash, OccursFailure):
        return
    for s, t in pairs:
        assert apply_subst(u, s) is apply_subst(u, t)
