"""Checking, transforming and synthesizing Hilbert proofs."""
from pathlib import Path

from lcl.formulas import parse_formula
from lcl.hilbert import check_proof, deduction_transform, format_proof, parse_proof
from lcl.synthesis import NotEntailed, synthesize_proof

golden = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden.proof"
proof = parse_proof(golden.read_text())
print(format_proof(proof))
print("checker:", check_proof(proof))

broken = parse_proof(golden.read_text().replace("MP 4 2", "MP 2 4"))
print("with swapped MP premises:", check_proof(broken))

print("\n-- discharging the second hypothesis")
alpha = proof.theory[1]
moved = deduction_transform(proof, alpha)
print(f"{len(proof.lines)} lines became {len(moved.lines)}; conclusion {moved.conclusion}")
print("checker:", check_proof(moved))

print("\n-- synthesis from truth tables")
law = parse_formula("((x : a) => (y : b)) => (~(y : b) => ~(x : a))")
p = synthesize_proof((), law)
print(f"contraposition: {len(p.lines)} lines, {check_proof(p)}")
try:
    synthesize_proof((), parse_formula("(x : a) => (y : b)"))
except NotEntailed as e:
    print("not a tautology:", e)
