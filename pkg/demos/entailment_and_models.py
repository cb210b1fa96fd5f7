"""Bounded proof search against term-model evaluation."""
from lcl.formulas import parse_formula
from lcl.hilbert import check_proof, format_proof
from lcl.search import Proved, consistent, entails
from lcl.semantics import Environment, satisfies, term_model
from lcl.simpletypes import parse_basis
from lcl.verdict import Bounds

theory = [parse_formula("x : s")]
goal = parse_formula("K x y : s")
r = entails(theory, goal)
print("x : s  |-  K x y : s ?", type(r).__name__)
if isinstance(r, Proved):
    print(format_proof(r.proof))
    print("checker:", check_proof(r.proof))

print("x : a  |-  y : a ?", type(entails([parse_formula("x : a")], parse_formula("y : a"))).__name__)
print("same goal with a one-step budget:",
      entails([], parse_formula("S K K x : a"), Bounds(fuel=1)))

print("\n-- the term model over x : s")
model = term_model(parse_basis("x : s"))
for text in ["(x : s) => (K x y : s)", "x : s -> s", "I : a -> a"]:
    v = satisfies(model, Environment.rho_star(), parse_formula(text))
    print(f"{text:>24}  {v.value}")

print("\nconsistent{x : a, ~(x : a)} =", consistent([parse_formula("x : a"), parse_formula("~(x : a)")]))
