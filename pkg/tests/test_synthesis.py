import random

import pytest
from hypothesis import given, strategies as st

import oracles
from generators import formulas_over
from lcl.formulas import And, Implies, Not, parse_formula, parse_statement
from lcl.hilbert import AxiomInstance, Hypothesis, check_proof
from lcl.propositional import truth_table_valid
from lcl.synthesis import NotEntailed, synthesize, synthesize_proof

XA, YB, ZC = (parse_statement(s) for s in ("x : a", "y : b", "z : c"))
POOL = [XA, YB, ZC]


def _only_logical_axioms(p):
    return all(l.just.axiom in (6, 7, 8) for l in p.lines if isinstance(l.just, AxiomInstance))


@pytest.mark.parametrize("goal", [
    Implies(Not(Not(XA)), XA),
    Implies(XA, XA),
    Implies(XA, Not(Not(XA))),
    Implies(Not(XA), Implies(XA, YB)),
    Implies(Implies(Not(XA), XA), XA),
    Implies(Implies(XA, YB), Implies(Not(YB), Not(XA))),
])
def test_classical_theorems(goal):
    p = synthesize_proof([], goal)
    assert check_proof(p).accepted and p.conclusion is goal
    assert _only_logical_axioms(p)


def test_contradiction_is_not_provable():
    with pytest.raises(NotEntailed) as e:
        synthesize_proof([], And(XA, Not(XA)))
    assert not e.value.countervaluation


def test_proof_from_theory():
    p = synthesize_proof([XA, Implies(XA, YB)], YB)
    assert check_proof(p).accepted
    assert len(p) == 3


def test_goal_in_theory_is_one_line():
    p = synthesize_proof([XA], XA)
    assert len(p) == 1 and isinstance(p.lines[0].just, Hypothesis)


def test_extra_axiom_premises_are_emitted():
    ax = parse_formula("(S K K x : a) => (x : a)")
    p = synthesize([parse_statement("S K K x : a")], XA,
                   axioms=[(5, (("M", ax.ante.subject), ("N", XA.subject), ("sigma", XA.predicate)))])
    assert check_proof(p).accepted
    assert any(isinstance(l.just, AxiomInstance) and l.just.axiom == 5 for l in p.lines)


def test_not_entailed_from_theory():
    with pytest.raises(NotEntailed) as e:
        synthesize_proof([XA], YB)
    assert e.value.countervaluation.valuation == {XA: True, YB: False}


@given(st.lists(formulas_over(POOL, 4), max_size=3), formulas_over(POOL, 5))
def test_synthesis_matches_truth_tables(theory, goal):
    if truth_table_valid(theory, goal):
        p = synthesize_proof(theory, goal)
        assert check_proof(p).accepted and p.conclusion is goal
        assert _only_logical_axioms(p)
    else:
        with pytest.raises(NotEntailed):
            synthesize_proof(theory, goal)


def test_sampled_enumeration_totality():
    # the full enumeration runs in the acceptance suite; sample it here
    fs = oracles.enumerate_formulas(("p", "q", "r"), 4)
    rng = random.Random(3)
    letters = {"p": XA, "q": YB, "r": ZC}

    def build(f):
        if f[0] == "atom":
            return letters[f[1]]
        if f[0] == "not":
            return Not(build(f[1]))
        return Implies(build(f[1]), build(f[2]))

    for f in rng.sample(fs, 400):
        g = build(f)
        if oracles.tautology(f):
            assert check_proof(synthesize_proof([], g)).accepted
        else:
            with pytest.raises(NotEntailed):
                synthesize_proof([], g)
