"""Weak reduction, principal types, and why typing is not closed under equality."""
from lcl.assignment import check_typing, check_typing_eq, infer_type
from lcl.reduction import ext_equal, normalize
from lcl.simpletypes import Basis, parse_basis, parse_type
from lcl.terms import parse_term

print("-- reduction")
for text in ["S K K x", "S (K x) I y", "S I I (S I I)"]:
    r = normalize(parse_term(text), fuel=50)
    print(f"{text:>16}  ->  {r.term} ({r.steps} steps{'' if r.normal else ', out of fuel'})")

print("\n-- principal types")
for text in ["S", "K", "I", "S K K", "S (K S) K"]:
    print(f"{text:>10} : {infer_type(Basis(), parse_term(text))}")

print("\n-- S K K and I are different terms with the same behaviour")
print("ext_equal(S K K, I) =", ext_equal(parse_term("S K K"), parse_term("I")))
print("ext_equal(K, S)     =", ext_equal(parse_term("K"), parse_term("S"), fuel=20))

print("\n-- K x y reduces to x, but y must be typed to type K x y")
gamma = parse_basis("x : s")
kxy, s = parse_term("K x y"), parse_type("s")
print("x : s |-CL  K x y : s  ", check_typing(gamma, kxy, s))
print("x : s |-CL= K x y : s  ", check_typing_eq(gamma, kxy, s))
