"""Command-line front end: ``lcl <command> ...``.

Exit codes: 0 positive verdict, 1 definitive negative, 2 undecided within
bounds, 3 input error. Bounds come from ``--fuel/--arity/--depth`` or the
LCL_FUEL / LCL_ARITY / LCL_DEPTH environment variables (flags win);
``--format`` falls back to LCL_FORMAT.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .assignment import Untypable, infer_type
from .formulas import IllFormedFormula, parse_formula, wf_formula
from .hilbert import check_proof, format_proof, parse_proof
from .reduction import normalize
from .search import Proved, Refuted, consistent, entails
from .semantics import Environment, parse_model, satisfies
from .simpletypes import parse_basis
from .terms import ParseError, parse_term
from .verdict import DEFAULT_ARITY, DEFAULT_DEPTH, DEFAULT_FUEL, Bounds, TriBool

__all__ = ["main", "Config", "read_theory"]

OK, NEGATIVE, UNDECIDED, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    fuel: int = DEFAULT_FUEL
    arity: int = DEFAULT_ARITY
    depth: int = DEFAULT_DEPTH
    format: str = "text"

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.fuel, self.arity, self.depth)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None
    return value


def _config(ns: argparse.Namespace) -> Config:
    fuel = getattr(ns, "fuel", None)
    arity = getattr(ns, "arity", None)
    depth = getattr(ns, "depth", None)
    fmt = getattr(ns, "format", None)
    cfg = Config(
        fuel=fuel if fuel is not None else _env_int("LCL_FUEL", DEFAULT_FUEL),
        arity=arity if arity is not None else _env_int("LCL_ARITY", DEFAULT_ARITY),
        depth=depth if depth is not None else _env_int("LCL_DEPTH", DEFAULT_DEPTH),
        format=fmt if fmt is not None else os.environ.get("LCL_FORMAT", "text"),
    )
    for name in ("fuel", "arity", "depth"):
        if getattr(cfg, name) < 0:
            raise InputError(f"{name} must be nonnegative")
    if cfg.format not in ("text", "json"):
        raise InputError(f"format must be text or json, got {cfg.format!r}")
    return cfg


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def read_theory(text: str) -> list:
    """One formula per line; ``#`` comments and blank lines are ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            try:
                out.append(parse_formula(line))
            except ParseError as e:
                raise ParseError(f"line {lineno}: {e}", raw) from None
    return out


def _wf(*formulas) -> None:
    for f in formulas:
        try:
            wf_formula(f)
        except IllFormedFormula as e:
            raise InputError(str(e)) from None


def _emit(cfg: Config, payload: dict, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _tri_code(v: TriBool) -> int:
    return OK if v.is_true else NEGATIVE if v.is_false else UNDECIDED


# ---------------------------------------------------------------- commands

def cmd_normalize(ns, cfg: Config) -> int:
    r = normalize(parse_term(ns.term), cfg.fuel)
    if r.normal:
        _emit(cfg, {"status": "normal", "term": str(r.term), "steps": r.steps},
              f"{r.term} ({r.steps} steps)")
        return OK
    _emit(cfg, {"status": "fuel_exhausted", "term": str(r.term), "steps": r.steps},
          f"FuelExhausted after {r.steps} steps: {r.term}")
    return UNDECIDED


def cmd_infer(ns, cfg: Config) -> int:
    gamma = parse_basis(ns.basis)
    m = parse_term(ns.term)
    try:
        t = infer_type(gamma, m)
    except Untypable as e:
        _emit(cfg, {"status": "untypable", "reason": str(e)}, f"Untypable: {e}")
        return NEGATIVE
    _emit(cfg, {"status": "typed", "type": str(t)}, str(t))
    return OK


def cmd_check_proof(ns, cfg: Config) -> int:
    proof = parse_proof(_read(ns.file))
    rep = check_proof(proof, cfg.bounds)
    lines = [str(rep)]
    for r in rep.lines:
        tail = f" -- {r.reason}" if r.reason else ""
        lines.append(f"  {r.index + 1}. {r.status}{tail}")
    _emit(cfg, rep.to_json(), "\n".join(lines))
    return {"Accepted": OK, "Rejected": NEGATIVE}.get(rep.status, UNDECIDED)


def cmd_entail(ns, cfg: Config) -> int:
    theory = read_theory(_read(ns.theory))
    goal = parse_formula(ns.goal)
    _wf(*theory, goal)
    r = entails(theory, goal, cfg.bounds)
    if isinstance(r, Proved):
        text = format_proof(r.proof)
        if ns.proof_out:
            try:
                with open(ns.proof_out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as e:
                raise InputError(f"cannot write {ns.proof_out}: {e.strerror}") from None
            shown = f"Proved (proof written to {ns.proof_out})"
        else:
            shown = "Proved\n" + text.rstrip("\n")
        _emit(cfg, {"status": "Proved", "proof": text}, shown)
        return OK
    if isinstance(r, Refuted):
        cv = r.countervaluation
        _emit(cfg, {"status": "Refuted", "countervaluation": cv.to_json()},
              f"Refuted\n{cv}")
        return NEGATIVE
    _emit(cfg, {"status": "Unknown", "reason": r.reason}, str(r))
    return UNDECIDED


def cmd_model_sat(ns, cfg: Config) -> int:
    model = parse_model(_read(ns.model), cfg.bounds)
    f = parse_formula(ns.formula)
    _wf(f)
    v = satisfies(model, Environment.rho_star(), f)
    text = [str(v.value)] + [f"  {a}: {t}" for a, t in v.trace]
    _emit(cfg, v.to_json(), "\n".join(text))
    return _tri_code(v.value)


def cmd_consistent(ns, cfg: Config) -> int:
    theory = read_theory(_read(ns.theory))
    _wf(*theory)
    v = consistent(theory, cfg.bounds)
    _emit(cfg, v.to_json(), str(v))
    return _tri_code(v)


# ------------------------------------------------------------------ parser

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=argparse.SUPPRESS,
                        help=f"reduction step budget (default {DEFAULT_FUEL})")
    common.add_argument("--arity", type=int, default=argparse.SUPPRESS,
                        help=f"fresh-argument bound for extensional checks (default {DEFAULT_ARITY})")
    common.add_argument("--depth", type=int, default=argparse.SUPPRESS,
                        help=f"axiom saturation rounds (default {DEFAULT_DEPTH})")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="lcl", parents=[common],
                                description="Logic of combinatory logic toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="weak normal form of a term")
    s.add_argument("term")
    s.set_defaults(run=cmd_normalize)

    s = sub.add_parser("infer", parents=[common], help="principal type under a basis")
    s.add_argument("basis", help='e.g. "x : a -> b, y : a" ("" for the empty basis)')
    s.add_argument("term")
    s.set_defaults(run=cmd_infer)

    s = sub.add_parser("check-proof", parents=[common], help="check a proof file")
    s.add_argument("file")
    s.set_defaults(run=cmd_check_proof)

    s = sub.add_parser("entail", parents=[common], help="search for a proof of GOAL from a theory file")
    s.add_argument("theory")
    s.add_argument("goal")
    s.add_argument("--proof-out", metavar="FILE")
    s.set_defaults(run=cmd_entail)

    s = sub.add_parser("model-sat", parents=[common], help="evaluate a formula in a term model")
    s.add_argument("model")
    s.add_argument("formula")
    s.set_defaults(run=cmd_model_sat)

    s = sub.add_parser("consistent", parents=[common], help="bounded consistency of a theory file")
    s.add_argument("theory")
    s.set_defaults(run=cmd_consistent)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        cfg = _config(ns)
        return ns.run(ns, cfg)
    except (InputError, ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
