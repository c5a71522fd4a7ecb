"""Command line entry point.

Exit codes: 0 when a check holds (or a command succeeds), 1 when it fails,
2 on parse, type or model errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import circuit as C
from . import cr
from . import tape as T
from .hypergraph import to_dot, to_hypergraph
from .matrix import MatrixError, Mode, pretty, to_json, to_matrix
from .order import tape_equiv, tape_leq
from .rel import ModelError, eval_circuit, eval_tape, interpretation_from_json
from .signature import MonSignature, RigSignature, SignatureError, parse_signature, reduce_rig_signature
from .syntax import ParseError, parse_circuit, parse_tape

OK, FAILS, ERROR = 0, 1, 2

_ERRORS = (
    SignatureError,
    ParseError,
    cr.CrSyntaxError,
    ModelError,
    MatrixError,
    T.TapeTypeError,
    C.CircuitTypeError,
    OSError,
)


class UsageError(ValueError):
    pass


def _seed(text: str) -> int:
    n = int(text)
    if not 0 <= n < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit natural number")
    return n


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", help="signature file")
    common.add_argument("--mode", choices=[m.value for m in Mode], help="multiset, set or cb")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--budget", type=int, default=1 << 16, help="interpretations tried per carrier size")
    common.add_argument("--json", action="store_true", help="machine readable output")
    kind = common.add_mutually_exclusive_group()
    kind.add_argument("--tape", action="store_true", help="terms are tapes")
    kind.add_argument("--circuit", action="store_true", help="terms are circuits")

    p = argparse.ArgumentParser(prog="tapediag", description="Tape diagrams and the positive calculus of relations.")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("parse", parents=[common], help="echo a typed term")
    sp.add_argument("term")
    sp = sub.add_parser("normalize", parents=[common], help="print the matrix normal form")
    sp.add_argument("term")
    sp = sub.add_parser("decide", parents=[common], help="decide E1 <= E2, E1 == E2 or E1 >= E2")
    sp.add_argument("lhs")
    sp.add_argument("op", choices=["<=", "==", ">="])
    sp.add_argument("rhs")
    sp = sub.add_parser("eval", parents=[common], help="evaluate against a finite model")
    sp.add_argument("term")
    sp.add_argument("--model", required=True, help="interpretation JSON (file path or inline)")
    sp = sub.add_parser("render", parents=[common], help="DOT for a circuit's hypergraph")
    sp.add_argument("term")
    sp.add_argument("--dot", help="write the DOT text here instead of standard output")
    sp = sub.add_parser("selftest", parents=[common], help="run the seeded property suites")
    sp.add_argument("--scale", type=float, default=0.25, help="fraction of the default case counts")
    return p


# -- helpers ------------------------------------------------------------------------


def _load_sig(path: str | None) -> MonSignature | None:
    if path is None:
        return None
    sig = parse_signature(Path(path).read_text(encoding="utf-8"))
    if isinstance(sig, RigSignature):
        sig, _ = reduce_rig_signature(sig)
    return sig


def _cr_sig(sig: MonSignature | None) -> MonSignature | None:
    if sig is not None and sig.sorts != (cr.SORT,):
        raise UsageError(f"relation expressions need a signature with the single sort {cr.SORT}")
    return sig


def _mode(args, default: Mode) -> Mode:
    return Mode.parse(args.mode) if args.mode else default


def _read_model(text: str) -> str:
    p = Path(text)
    return p.read_text(encoding="utf-8") if not text.lstrip().startswith("{") and p.exists() else text


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    return x


# -- commands -------------------------------------------------------------------------


def _cmd_parse(args, sig, out):
    if args.circuit:
        c = parse_circuit(args.term, sig)
        u, v = C.circuit_type(c)
        out(f"{C.show(c)} : {' '.join(u) or '1'} -> {' '.join(v) or '1'}")
    elif args.tape:
        t = parse_tape(args.term, sig)
        out(f"{T.show(t)} : {T.describe_type(t)}")
    else:
        e = cr.parse_cr(args.term, _cr_sig(sig))
        out(f"{cr.show(e)} : A -> A")
        out(repr(e))
    return OK


def _cmd_normalize(args, sig, out):
    if args.circuit:
        raise UsageError("normalize works on tapes and relation expressions")
    if args.tape:
        m = to_matrix(parse_tape(args.term, sig), _mode(args, Mode.MULTISET))
    else:
        m = to_matrix(cr.encode(cr.parse_cr(args.term, _cr_sig(sig))), _mode(args, Mode.CB))
    out(to_json(m) if args.json else pretty(m))
    return OK


def _cmd_decide(args, sig, out):
    lhs, op, rhs = args.lhs, args.op, args.rhs
    if op == ">=":
        lhs, rhs, op = rhs, lhs, "<="
    if args.circuit:
        c, d = parse_circuit(lhs, sig), parse_circuit(rhs, sig)
        frob = sig is None or sig.frobenius_enabled or C.uses_frobenius(c) or C.uses_frobenius(d)
        if op == "<=":
            holds = C.cb_leq(c, d)
        else:
            holds = C.circuits_equal(c, d, frobenius=frob)
    elif args.tape:
        t, s = parse_tape(lhs, sig), parse_tape(rhs, sig)
        mode = _mode(args, Mode.MULTISET)
        if op == "<=":
            if mode is Mode.MULTISET:
                raise UsageError("inclusion needs --mode set or --mode cb")
            holds = tape_leq(t, s, mode)
        else:
            holds = tape_equiv(t, s, mode)
    else:
        if _mode(args, Mode.CB) is not Mode.CB:
            raise UsageError("relation expressions are decided in cb mode")
        e1, e2 = cr.parse_cr(lhs, _cr_sig(sig)), cr.parse_cr(rhs, _cr_sig(sig))
        verdict = (cr.decide_leq if op == "<=" else cr.decide_equiv)(e1, e2, args.budget, args.seed)
        holds = verdict.holds
        if verdict.counterexample is not None:
            out("counterexample: " + verdict.counterexample.to_json())
    out("holds" if holds else "fails")
    return OK if holds else FAILS


def _cmd_eval(args, sig, out):
    text = _read_model(args.model)
    if args.circuit:
        c = parse_circuit(args.term, sig)
        interp = interpretation_from_json(text, sorted(C.generators_of(c), key=lambda g: g.name))
        out(json.dumps(_plain(sorted(eval_circuit(c, interp)))))
    elif args.tape:
        t = parse_tape(args.term, sig)
        interp = interpretation_from_json(text, sorted(T.generators_of_tape(t), key=lambda g: g.name))
        out(json.dumps(_plain(eval_tape(t, interp).sorted_pairs())))
    else:
        e = cr.parse_cr(args.term, _cr_sig(sig))
        gens = cr.cr_signature(cr.symbols(e)).generators
        interp = interpretation_from_json(text, gens)
        pairs = sorted((x, y) for (_, (x,)), (_, (y,)) in cr.eval_cr(e, interp).pairs)
        out(json.dumps([list(p) for p in pairs]))
    return OK


def _cmd_render(args, sig, out):
    if args.tape:
        raise UsageError("render draws circuits")
    if args.circuit:
        c = parse_circuit(args.term, sig)
    else:
        e = cr.parse_cr(args.term, _cr_sig(sig))
        entry = to_matrix(cr.encode(e), Mode.CB).entries[0][0]
        if len(entry) != 1:
            raise UsageError("the expression normalises to a union; render one disjunct with --circuit")
        (c,) = entry
    dot = to_dot(to_hypergraph(c))
    if args.dot:
        Path(args.dot).write_text(dot + "\n", encoding="utf-8")
    else:
        out(dot)
    return OK


def _cmd_selftest(args, sig, out):
    from .selftest import run_all

    return OK if run_all(args.seed, args.scale, out) else FAILS


_COMMANDS = {
    "parse": _cmd_parse,
    "normalize": _cmd_normalize,
    "decide": _cmd_decide,
    "eval": _cmd_eval,
    "render": _cmd_render,
    "selftest": _cmd_selftest,
}


def run(argv: list[str] | None = None, out=print) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else ERROR
    try:
        sig = _load_sig(args.sig)
        return _COMMANDS[args.command](args, sig, out)
    except (*_ERRORS, UsageError) as exc:
        print(f"tapediag {args.command}: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
