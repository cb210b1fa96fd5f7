import random

import pytest
from hypothesis import given, strategies as st

import oracles
from generators import bases, rand_basis, rand_type, rand_typable, terms, types
from lcl.assignment import (Untypable, atom_in_cl, check_typing, check_typing_eq,
                            infer_type, restrict_basis, scheme, typing_basis,
                            typing_derivation, typing_eq_witness)
from lcl.reduction import find_redexes, reduce_step
from lcl.simpletypes import Arrow, Basis, TVar, apply_subst, parse_basis, parse_type
from lcl.terms import App, I, K, S, Var, parse_term

a, b = TVar("a"), TVar("b")
sigma, tau = parse_type("s"), parse_type("t")
KXY = parse_term("K x y")
OMEGA = parse_term("S I I (S I I)")


@pytest.mark.parametrize("text", ["S", "K", "I", "S K K", "S (K (S I)) K", "S K", "K I",
                                  "S (S K)", "S I", "K (K I)"])
def test_closed_principal_types_match_oracle(text):
    assert str(infer_type(Basis(), parse_term(text))) == oracles.principal_closed(oracles.parse(text))


def test_principal_types_of_combinators():
    assert str(infer_type(Basis(), K)) == "a -> (b -> a)"
    assert str(infer_type(Basis(), S)) == "(a -> (b -> c)) -> ((a -> b) -> (a -> c))"
    assert str(infer_type(Basis(), parse_term("S K K"))) == "a -> a"
    assert scheme("I") is Arrow(a, a)


def test_untypable_terms():
    with pytest.raises(Untypable):
        infer_type(Basis(), parse_term("S I I"))
    with pytest.raises(Untypable):
        infer_type(Basis(), Var("x"))


def test_basis_variables_are_rigid():
    g = parse_basis("x : a -> b")
    assert str(infer_type(g, parse_term("x"))) == "a -> b"
    assert str(infer_type(g, parse_term("K x"))) == "c -> (a -> b)"
    assert not check_typing(g, parse_term("x"), parse_type("a -> a"))


def test_check_typing_examples():
    assert check_typing(parse_basis("x : s"), Var("x"), sigma)
    assert check_typing(Basis(), I, parse_type("(a -> b) -> (a -> b)"))
    assert not check_typing(parse_basis("x : a"), KXY, a)


def test_atom_in_cl_examples():
    assert not atom_in_cl(parse_term("x x"), a)
    assert atom_in_cl(K, parse_type("a -> b -> a"))
    for t in ("a", "a -> b", "(a -> a) -> b"):
        assert atom_in_cl(Var("x"), parse_type(t))


def test_check_typing_eq_examples():
    assert check_typing_eq(parse_basis("x : s"), KXY, sigma).is_true
    assert check_typing_eq(parse_basis("x : s, y : t"), KXY, sigma).is_true
    assert check_typing_eq(Basis(), I, parse_type("a -> a")).is_true
    assert check_typing_eq(Basis(), OMEGA, a).is_unknown
    assert check_typing_eq(Basis(), Var("x"), a).is_false


def test_kxy_asymmetry():
    g = parse_basis("x : s")
    assert not check_typing(g, KXY, sigma)
    v, w = typing_eq_witness(g, KXY, sigma)
    assert v.is_true and w is Var("x")


def test_eq_rule_reaches_eta_witness():
    # S (K x) I =w,eta x but has no weak redex
    m = parse_term("S (K x) I")
    g = parse_basis("x : a -> b")
    assert check_typing(g, m, parse_type("a -> b"))
    g2 = parse_basis("x : s")
    assert not check_typing(g2, m, sigma)
    assert check_typing_eq(g2, m, sigma).is_true


def test_restrict_basis():
    g = parse_basis("x : a, y : b")
    assert restrict_basis(g, {"x"}) == parse_basis("x : a")
    assert restrict_basis(Basis(), {"x"}) == Basis()


def test_typing_basis_and_derivation():
    m = parse_term("x (K y)")
    g = typing_basis(m, a)
    assert check_typing(g, m, a)
    root = typing_derivation(g, m, a)
    assert root.type is a and root.term is m
    for n in root.nodes():
        if n.fun is not None:
            assert n.fun.type is Arrow(n.arg.type, n.type)
        elif isinstance(n.term, Var):
            assert n.type is g[n.term.name]
    with pytest.raises(Untypable):
        typing_basis(parse_term("x x"), a)


# --------------------------------------------------------------- properties

@given(bases(), terms(max_leaves=5), types(), bases())
def test_weakening(gamma, m, t, extra):
    if check_typing(gamma, m, t):
        bigger = Basis({**dict(extra), **dict(gamma)})
        assert check_typing(bigger, m, t)


@given(bases(), terms(max_leaves=5))
def test_free_variable_lemma(gamma, m):
    try:
        t = infer_type(gamma, m)
    except Untypable:
        return
    assert m.fv <= gamma.keys()
    assert check_typing(restrict_basis(gamma, m.fv), m, t)


@given(bases(), terms(max_leaves=6))
def test_subject_reduction(gamma, m):
    try:
        t = infer_type(gamma, m)
    except Untypable:
        return
    for site in find_redexes(m):
        assert check_typing(gamma, reduce_step(m, site), t)


@given(bases(), terms(max_leaves=5), types(), st.integers(0, 3), st.integers(1, 50))
def test_cl_eq_extends_cl(gamma, m, t, arity, fuel):
    if check_typing(gamma, m, t):
        assert check_typing_eq(gamma, m, t, fuel, arity).is_true


@given(bases(), terms(max_leaves=5))
def test_inferred_type_checks(gamma, m):
    try:
        t = infer_type(gamma, m)
    except Untypable:
        return
    assert check_typing(gamma, m, t)
    assert atom_in_cl(m, t)


def test_principality_on_random_terms():
    rng = random.Random(11)
    checked = 0
    while checked < 10:
        gamma = rand_basis(rng, depth=1)
        m = rand_typable(rng, gamma, 10)
        if m is None:
            continue
        p = infer_type(gamma, m)
        free = p.tv - gamma.type_vars
        for _ in range(100):
            t = apply_subst({v: rand_type(rng, 2) for v in free}, p)
            assert check_typing(gamma, m, t)
        pat = oracles.parse_type(str(p))
        misses = 0
        for _ in range(5000):
            t = rand_type(rng, 3)
            if oracles.instance_of(pat, oracles.parse_type(str(t)), fixed=gamma.type_vars):
                continue
            assert not check_typing(gamma, m, t)
            misses += 1
            if misses == 100:
                break
        assert misses == 100
        checked += 1
