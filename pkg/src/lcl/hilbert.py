"""Hilbert-style proofs in LCL: axiom schemes Ax1-Ax8 and modus ponens.

Proof file format (line oriented, ``#`` starts a comment)::

    goal: S K y : a -> a
    T1. S K : (a -> b) -> (a -> a)
    T2. y : a -> b
    1. S K : (a -> b) -> (a -> a) ; hyp 1
    2. y : a -> b ; hyp 2
    3. (S K : (a -> b) -> (a -> a)) => ((y : a -> b) => (S K y : a -> a)) ; Ax4[M := S K; N := y; sigma := a -> b; tau := a -> a]
    4. (y : a -> b) => (S K y : a -> a) ; MP 3 1
    5. S K y : a -> a ; MP 4 2

``MP i j`` takes the implication from line ``i`` and its antecedent from
line ``j``. Numbers in files are 1-based; in memory they are 0-based.
Axiom instantiations are optional and never trusted: the checker matches
the line against the scheme and compares.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .assignment import atom_in_cl
from .formulas import (
    Atom, Formula, IllFormedFormula, Implies, Not, parse_formula, wf_formula,
)
from .reduction import ext_equal
from .simpletypes import Arrow, SimpleType, TVar, apply_subst, match, parse_type
from .assignment import scheme
from .terms import App, Comb, ParseError, Term, parse_term
from .verdict import FALSE, TRUE, Bounds, TriBool

__all__ = [
    "AX_PARAMS", "Hypothesis", "AxiomInstance", "ModusPonens", "Justification",
    "ProofLine", "HilbertProof", "SideConditionReport", "AxiomMatch",
    "instantiate", "match_scheme", "match_axiom", "LineReport", "ProofReport",
    "check_proof", "theorem_identity", "deduction_transform",
    "format_proof", "parse_proof", "ProofBuilder",
]

AX_PARAMS: dict[int, tuple[str, ...]] = {
    1: ("sigma", "tau", "rho"),
    2: ("sigma", "tau"),
    3: ("sigma",),
    4: ("M", "N", "sigma", "tau"),
    5: ("M", "N", "sigma"),
    6: ("alpha", "beta"),
    7: ("alpha", "beta", "gamma"),
    8: ("alpha", "beta"),
}
_COMB_OF = {1: "S", 2: "K", 3: "I"}
_SCHEME_VARS = ("a", "b", "c")

Instantiation = tuple[tuple[str, Union[Term, SimpleType, Formula]], ...]


@dataclass(frozen=True)
class Hypothesis:
    index: int

    def __str__(self) -> str:
        return f"hyp {self.index + 1}"


@dataclass(frozen=True)
class AxiomInstance:
    axiom: int
    inst: Instantiation | None = None

    def __post_init__(self):
        if self.axiom not in AX_PARAMS:
            raise ValueError(f"no axiom Ax{self.axiom}")

    def __str__(self) -> str:
        if self.inst is None:
            return f"Ax{self.axiom}"
        body = "; ".join(f"{k} := {v}" for k, v in self.inst)
        return f"Ax{self.axiom}[{body}]"


@dataclass(frozen=True)
class ModusPonens:
    major: int
    minor: int

    def __str__(self) -> str:
        return f"MP {self.major + 1} {self.minor + 1}"


Justification = Union[Hypothesis, AxiomInstance, ModusPonens]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class HilbertProof:
    theory: tuple[Formula, ...]
    lines: tuple[ProofLine, ...]
    goal: Formula | None = None

    def __post_init__(self):
        object.__setattr__(self, "theory", tuple(self.theory))
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None

    def __len__(self) -> int:
        return len(self.lines)

    def __str__(self) -> str:
        return format_proof(self)


# ------------------------------------------------------------ axiom schemes

def instantiate(axiom: int, inst: Instantiation | dict) -> Formula:
    """Build the instance of ``Ax<axiom>`` for the given bindings."""
    b = dict(inst)
    missing = [p for p in AX_PARAMS[axiom] if p not in b]
    if missing or len(b) != len(AX_PARAMS[axiom]):
        raise ValueError(f"Ax{axiom} needs exactly {', '.join(AX_PARAMS[axiom])}")
    if axiom in _COMB_OF:
        s = {v: b[p] for v, p in zip(_SCHEME_VARS, AX_PARAMS[axiom])}
        return Atom(Comb(_COMB_OF[axiom]), apply_subst(s, scheme(_COMB_OF[axiom])))
    if axiom == 4:
        m, n, sg, tu = b["M"], b["N"], b["sigma"], b["tau"]
        return Implies(Atom(m, Arrow(sg, tu)), Implies(Atom(n, sg), Atom(App(m, n), tu)))
    if axiom == 5:
        return Implies(Atom(b["M"], b["sigma"]), Atom(b["N"], b["sigma"]))
    a, be = b["alpha"], b["beta"]
    if axiom == 6:
        return Implies(a, Implies(be, a))
    if axiom == 7:
        g = b["gamma"]
        return Implies(Implies(a, Implies(be, g)),
                       Implies(Implies(a, be), Implies(a, g)))
    return Implies(Implies(Not(a), Not(be)), Implies(Implies(Not(a), be), a))


@dataclass(frozen=True)
class SideConditionReport:
    """Side-condition verdicts of one axiom instance."""
    checks: tuple[tuple[str, TriBool], ...] = ()
    bounds: Bounds | None = None

    @property
    def verdict(self) -> TriBool:
        out = TRUE
        for _, v in self.checks:
            out = out & v
        return out

    def to_json(self) -> dict:
        d = {"verdict": self.verdict.to_json(),
             "checks": [{"condition": c, **v.to_json()} for c, v in self.checks]}
        if self.bounds is not None:
            d["bounds"] = {"fuel": self.bounds.fuel, "arity": self.bounds.arity}
        return d


@dataclass(frozen=True)
class AxiomMatch:
    axiom: int
    inst: Instantiation
    side: SideConditionReport = field(default_factory=SideConditionReport)

    @property
    def verdict(self) -> TriBool:
        return self.side.verdict


def _inst(axiom: int, *values) -> Instantiation:
    return tuple(zip(AX_PARAMS[axiom], values))


def match_scheme(f: Formula, axiom: int, bounds: Bounds | None = None) -> AxiomMatch | None:
    """Match ``f`` against one scheme; None when the shape does not fit.

    A shape match whose side condition fails or is undecided is still
    returned; inspect ``.verdict``.
    """
    bounds = bounds or Bounds()
    if axiom in _COMB_OF:
        if not (isinstance(f, Atom) and f.subject is Comb(_COMB_OF[axiom])):
            return None
        s = match(scheme(_COMB_OF[axiom]), f.predicate)
        if s is None:
            return None
        return AxiomMatch(axiom, _inst(axiom, *(s[v] for v in _SCHEME_VARS[:len(AX_PARAMS[axiom])])))
    if axiom == 4:
        match f:
            case Implies(Atom(m, Arrow(sg, tu)), Implies(Atom(n, sg2), Atom(App(m2, n2), tu2))) \
                    if m is m2 and n is n2 and sg is sg2 and tu is tu2:
                checks = (
                    (f"{m} : {Arrow(sg, tu)} in CL->", TriBool.of(atom_in_cl(m, Arrow(sg, tu)))),
                    (f"{n} : {sg} in CL->", TriBool.of(atom_in_cl(n, sg))),
                    (f"{App(m, n)} : {tu} in CL->", TriBool.of(atom_in_cl(App(m, n), tu))),
                )
                return AxiomMatch(4, _inst(4, m, n, sg, tu), SideConditionReport(checks))
        return None
    if axiom == 5:
        match f:
            case Implies(Atom(m, sg), Atom(n, sg2)) if sg is sg2:
                checks = (
                    (f"{m} : {sg} in CL->", TriBool.of(atom_in_cl(m, sg))),
                    (f"{n} : {sg} in CL->", TriBool.of(atom_in_cl(n, sg))),
                )
                if all(v.is_true for _, v in checks):
                    checks += ((f"{m} =w,eta {n}", ext_equal(m, n, bounds.fuel, bounds.arity)),)
                return AxiomMatch(5, _inst(5, m, n, sg), SideConditionReport(checks, bounds))
        return None
    if axiom == 6:
        match f:
            case Implies(a, Implies(b, a2)) if a is a2:
                return AxiomMatch(6, _inst(6, a, b))
        return None
    if axiom == 7:
        match f:
            case Implies(Implies(a, Implies(b, g)), Implies(Implies(a2, b2), Implies(a3, g2))) \
                    if a is a2 is a3 and b is b2 and g is g2:
                return AxiomMatch(7, _inst(7, a, b, g))
        return None
    match f:
        case Implies(Implies(Not(a), Not(b)), Implies(Implies(Not(a2), b2), a3)) \
                if a is a2 is a3 and b is b2:
            return AxiomMatch(8, _inst(8, a, b))
    return None


def match_axiom(f: Formula, bounds: Bounds | None = None) -> AxiomMatch | None:
    """The first scheme ``f`` instantiates with a True side condition.

    Falls back to a match whose side condition is Unknown; None when no
    scheme applies.
    """
    pending = None
    for ax in AX_PARAMS:
        m = match_scheme(f, ax, bounds)
        if m is None:
            continue
        v = m.verdict
        if v.is_true:
            return m
        if v.is_unknown and pending is None:
            pending = m
    return pending


# ------------------------------------------------------------------ checker

@dataclass(frozen=True)
class LineReport:
    index: int
    formula: Formula
    just: Justification
    status: str  # "ok" | "rejected" | "inconclusive"
    reason: str = ""
    side: SideConditionReport | None = None

    def to_json(self) -> dict:
        d = {"line": self.index + 1, "formula": str(self.formula),
             "justification": str(self.just), "status": self.status}
        if self.reason:
            d["reason"] = self.reason
        if self.side is not None:
            d["side_conditions"] = self.side.to_json()
        return d


@dataclass(frozen=True)
class ProofReport:
    status: str  # "Accepted" | "Rejected" | "Inconclusive"
    line: int | None = None
    reason: str = ""
    lines: tuple[LineReport, ...] = ()

    @property
    def accepted(self) -> bool:
        return self.status == "Accepted"

    def __str__(self) -> str:
        if self.line is None:
            return self.status if not self.reason else f"{self.status}: {self.reason}"
        return f"{self.status} at line {self.line + 1}: {self.reason}"

    def to_json(self) -> dict:
        return {"status": self.status,
                "line": None if self.line is None else self.line + 1,
                "reason": self.reason,
                "lines": [r.to_json() for r in self.lines]}


def _check_line(proof: HilbertProof, i: int, bounds: Bounds) -> LineReport:
    line = proof.lines[i]
    f, j = line.formula, line.just
    try:
        wf_formula(f)
    except IllFormedFormula as e:
        return LineReport(i, f, j, "rejected", str(e))
    if isinstance(j, Hypothesis):
        if not 0 <= j.index < len(proof.theory):
            return LineReport(i, f, j, "rejected", f"no theory formula {j.index + 1}")
        if proof.theory[j.index] is not f:
            return LineReport(i, f, j, "rejected", f"line differs from theory formula {j.index + 1}")
        return LineReport(i, f, j, "ok")
    if isinstance(j, ModusPonens):
        for k in (j.major, j.minor):
            if not 0 <= k < i:
                return LineReport(i, f, j, "rejected", f"MP cites line {k + 1}, which is not earlier")
        major = proof.lines[j.major].formula
        minor = proof.lines[j.minor].formula
        if not isinstance(major, Implies):
            return LineReport(i, f, j, "rejected", f"line {j.major + 1} is not an implication")
        if major.ante is not minor:
            return LineReport(i, f, j, "rejected",
                              f"line {j.minor + 1} is not the antecedent of line {j.major + 1}")
        if major.cons is not f:
            return LineReport(i, f, j, "rejected",
                              f"line is not the consequent of line {j.major + 1}")
        return LineReport(i, f, j, "ok")
    m = match_scheme(f, j.axiom, bounds)
    if m is None:
        return LineReport(i, f, j, "rejected", f"not an instance of Ax{j.axiom}")
    if j.inst is not None and tuple(j.inst) != m.inst:
        return LineReport(i, f, j, "rejected",
                          f"instantiation does not produce this line (expected {AxiomInstance(m.axiom, m.inst)})",
                          m.side)
    v = m.verdict
    if v.is_false:
        failed = next(c for c, r in m.side.checks if r.is_false)
        return LineReport(i, f, j, "rejected", f"side condition fails: {failed}", m.side)
    if v.is_unknown:
        undecided = next(c for c, r in m.side.checks if r.is_unknown)
        return LineReport(i, f, j, "inconclusive",
                          f"side condition undecided: {undecided} ({v.reason})", m.side)
    return LineReport(i, f, j, "ok", "", m.side if m.side.checks else None)


def check_proof(proof: HilbertProof, bounds: Bounds | None = None) -> ProofReport:
    """Check every line; the first rejected line decides the verdict."""
    bounds = bounds or Bounds()
    for k, t in enumerate(proof.theory):
        try:
            wf_formula(t)
        except IllFormedFormula as e:
            return ProofReport("Rejected", None, f"theory formula {k + 1}: {e}")
    if not proof.lines:
        return ProofReport("Rejected", None, "empty proof")
    reports = tuple(_check_line(proof, i, bounds) for i in range(len(proof.lines)))
    for r in reports:
        if r.status == "rejected":
            return ProofReport("Rejected", r.index, r.reason, reports)
    if proof.goal is not None and proof.goal is not proof.conclusion:
        last = len(proof.lines) - 1
        return ProofReport("Rejected", last, f"last line does not match goal {proof.goal}", reports)
    for r in reports:
        if r.status == "inconclusive":
            return ProofReport("Inconclusive", r.index, r.reason, reports)
    return ProofReport("Accepted", None, "", reports)


# ------------------------------------------------------------- construction

class ProofBuilder:
    """Append-only proof assembly with formula-level deduplication."""

    def __init__(self, theory: Iterable[Formula] = ()):
        self.theory = list(theory)
        self.lines: list[ProofLine] = []
        self._where: dict[Formula, int] = {}

    def _add(self, f: Formula, j: Justification) -> int:
        k = self._where.get(f)
        if k is None:
            k = self._where[f] = len(self.lines)
            self.lines.append(ProofLine(f, j))
        return k

    def hyp(self, f: Formula) -> int:
        if f in self._where:
            return self._where[f]
        try:
            idx = self.theory.index(f)
        except ValueError:
            idx = len(self.theory)
            self.theory.append(f)
        return self._add(f, Hypothesis(idx))

    def axiom(self, axiom: int, **inst) -> int:
        inst_t = tuple((p, inst[p]) for p in AX_PARAMS[axiom])
        return self._add(instantiate(axiom, inst_t), AxiomInstance(axiom, inst_t))

    def mp(self, major: int, minor: int) -> int:
        imp = self.lines[major].formula
        if not (isinstance(imp, Implies) and imp.ante is self.lines[minor].formula):
            raise ValueError("modus ponens does not apply")
        return self._add(imp.cons, ModusPonens(major, minor))

    def formula(self, k: int) -> Formula:
        return self.lines[k].formula

    def index_of(self, f: Formula) -> int | None:
        return self._where.get(f)

    def proof(self, goal: Formula | None = None) -> HilbertProof:
        return HilbertProof(tuple(self.theory), tuple(self.lines), goal)


def _identity_lines(alpha: Formula, emit) -> int:
    aa = Implies(alpha, alpha)
    l1 = emit(instantiate(6, _inst(6, alpha, aa)), AxiomInstance(6, _inst(6, alpha, aa)))
    l2 = emit(instantiate(7, _inst(7, alpha, aa, alpha)), AxiomInstance(7, _inst(7, alpha, aa, alpha)))
    l3 = emit(Implies(Implies(alpha, aa), aa), ModusPonens(l2, l1))
    l4 = emit(instantiate(6, _inst(6, alpha, alpha)), AxiomInstance(6, _inst(6, alpha, alpha)))
    return emit(aa, ModusPonens(l3, l4))


def theorem_identity(alpha: Formula) -> HilbertProof:
    """The five-line closed proof of ``alpha => alpha`` from Ax6, Ax7, MP."""
    wf_formula(alpha)
    lines: list[ProofLine] = []

    def emit(f, j):
        lines.append(ProofLine(f, j))
        return len(lines) - 1

    _identity_lines(alpha, emit)
    return HilbertProof((), tuple(lines), Implies(alpha, alpha))


def deduction_transform(proof: HilbertProof, alpha: Formula,
                        bounds: Bounds | None = None) -> HilbertProof:
    """Turn a proof of ``T, alpha |- beta`` into one of ``T |- alpha => beta``.

    Hypothesis and axiom lines ``b`` become ``b``, ``b => (alpha => b)``
    (Ax6) and ``alpha => b``; a line equal to ``alpha`` becomes the identity
    proof; an MP line becomes an Ax7 instance and two MPs. The result has at
    most ``5n`` lines. A proof that never cites ``alpha`` is kept as is and
    its conclusion weakened with one Ax6 instance. Raises ValueError unless
    ``proof`` is Accepted.
    """
    report = check_proof(proof, bounds)
    if not report.accepted:
        raise ValueError(f"input proof is not accepted: {report}")
    theory = tuple(t for t in proof.theory if t is not alpha)
    new_index = {t: k for k, t in reversed(list(enumerate(theory)))}
    lines: list[ProofLine] = []

    def emit(f, j):
        lines.append(ProofLine(f, j))
        return len(lines) - 1

    beta = proof.conclusion
    if not any(isinstance(l.just, Hypothesis) and l.formula is alpha for l in proof.lines):
        for l in proof.lines:
            j = Hypothesis(new_index[l.formula]) if isinstance(l.just, Hypothesis) else l.just
            emit(l.formula, j)
        inst = _inst(6, beta, alpha)
        k6 = emit(instantiate(6, inst), AxiomInstance(6, inst))
        emit(Implies(alpha, beta), ModusPonens(k6, len(proof.lines) - 1))
        return HilbertProof(theory, tuple(lines), Implies(alpha, beta))

    out: list[int] = []
    for line in proof.lines:
        b, j = line.formula, line.just
        if isinstance(j, Hypothesis) and b is alpha:
            out.append(_identity_lines(alpha, emit))
        elif isinstance(j, (Hypothesis, AxiomInstance)):
            k = emit(b, Hypothesis(new_index[b]) if isinstance(j, Hypothesis) else j)
            inst = _inst(6, b, alpha)
            k6 = emit(instantiate(6, inst), AxiomInstance(6, inst))
            out.append(emit(Implies(alpha, b), ModusPonens(k6, k)))
        else:
            a1 = proof.lines[j.minor].formula
            inst = _inst(7, alpha, a1, b)
            k7 = emit(instantiate(7, inst), AxiomInstance(7, inst))
            k4 = emit(Implies(Implies(alpha, a1), Implies(alpha, b)),
                      ModusPonens(k7, out[j.major]))
            out.append(emit(Implies(alpha, b), ModusPonens(k4, out[j.minor])))
    return HilbertProof(theory, tuple(lines), Implies(alpha, proof.conclusion))


# ---------------------------------------------------------------- file I/O

def format_proof(proof: HilbertProof) -> str:
    out = []
    if proof.goal is not None:
        out.append(f"goal: {proof.goal}")
    for k, t in enumerate(proof.theory):
        out.append(f"T{k + 1}. {t}")
    for k, line in enumerate(proof.lines):
        out.append(f"{k + 1}. {line.formula} ; {line.just}")
    return "\n".join(out) + "\n"


_LINE = re.compile(r"\s*(\d+)\.\s*(.*)$")
_THEORY = re.compile(r"\s*T(\d+)\.\s*(.*)$")
_HYP = re.compile(r"hyp\s+(\d+)$")
_MP = re.compile(r"MP\s+(\d+)\s+(\d+)$")
_AX = re.compile(r"Ax([1-8])(?:\s*\[(.*)\])?$")


def _parse_binding(axiom: int, name: str, value: str):
    if name in ("M", "N"):
        return parse_term(value)
    if name in ("sigma", "tau", "rho"):
        return parse_type(value)
    return parse_formula(value)


def _parse_just(text: str, lineno: int, src: str) -> Justification:
    text = text.strip()
    if m := _HYP.match(text):
        return Hypothesis(int(m.group(1)) - 1)
    if m := _MP.match(text):
        return ModusPonens(int(m.group(1)) - 1, int(m.group(2)) - 1)
    if m := _AX.match(text):
        axiom = int(m.group(1))
        if m.group(2) is None:
            return AxiomInstance(axiom)
        binds = {}
        for part in m.group(2).split(";"):
            name, sep, value = part.partition(":=")
            name = name.strip()
            if not sep or name not in AX_PARAMS[axiom] or name in binds:
                raise ParseError(f"line {lineno}: bad binding {part.strip()!r} for Ax{axiom}", src)
            binds[name] = _parse_binding(axiom, name, value)
        if set(binds) != set(AX_PARAMS[axiom]):
            raise ParseError(f"line {lineno}: Ax{axiom} needs {', '.join(AX_PARAMS[axiom])}", src)
        return AxiomInstance(axiom, tuple((p, binds[p]) for p in AX_PARAMS[axiom]))
    raise ParseError(f"line {lineno}: unknown justification {text!r}", src)


def parse_proof(text: str) -> HilbertProof:
    """Parse the proof file format. Raises :class:`ParseError`."""
    goal = None
    theory: list[Formula] = []
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        src = raw.split("#", 1)[0].strip()
        if not src:
            continue
        try:
            if src.startswith("goal:"):
                if goal is not None:
                    raise ParseError(f"line {lineno}: second goal", raw)
                goal = parse_formula(src[5:])
            elif m := _THEORY.match(src):
                if int(m.group(1)) != len(theory) + 1:
                    raise ParseError(f"line {lineno}: theory formulas must be numbered T1, T2, ...", raw)
                theory.append(parse_formula(m.group(2)))
            elif m := _LINE.match(src):
                if int(m.group(1)) != len(lines) + 1:
                    raise ParseError(f"line {lineno}: proof lines must be numbered 1, 2, ...", raw)
                body, sep, just = m.group(2).partition(";")
                if not sep:
                    raise ParseError(f"line {lineno}: missing '; justification'", raw)
                lines.append(ProofLine(parse_formula(body), _parse_just(just, lineno, raw)))
            else:
                raise ParseError(f"line {lineno}: unrecognized line", raw)
        except ParseError as e:
            if str(e).startswith(f"line {lineno}:"):
                raise
            raise ParseError(f"line {lineno}: {e}", raw) from None
    return HilbertProof(tuple(theory), tuple(lines), goal)
