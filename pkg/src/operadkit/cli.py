"""Command-line interface.

Exit status: 0 on success/pass, 1 on a mathematical failure (non-member,
failed axiom or relation), 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import OperadError
from .free import OperadElement
from .linalg import format_rational
from .presets import preset, preset_names
from .quotient import DEFAULT_MAX_ARITY, ideal_slice, is_member, normal_form
from .trees import Generator, Mode, Signature, enumerate_trees, gamma, graft

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _InputError(Exception):
    pass


def parse_generators(text: str, mode: Mode) -> Signature:
    """``g:2,h:3`` or, with colors, ``f:2:a.b>c`` (input colors a, b; output c)."""
    gens = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        parts = item.split(":")
        if len(parts) not in (2, 3):
            raise _InputError(f"--generators: cannot parse {item!r} (expected name:arity)")
        name, arity = parts[0], parts[1]
        try:
            arity = int(arity)
        except ValueError:
            raise _InputError(f"--generators: arity of {name!r} must be an integer") from None
        if len(parts) == 3:
            ins, _, out = parts[2].partition(">")
            in_colors = tuple(ins.split(".")) if ins else None
            gens.append(Generator(name, arity, in_colors, out or "*"))
        else:
            gens.append(Generator(name, arity))
    if not gens:
        raise _InputError("--generators: no generators given")
    return Signature(tuple(gens), mode)


def _emit(args, text: str, doc: dict) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(text)


def _fmt_rows(rows) -> str:
    return "\n".join(" ".join(format_rational(x) for x in r) for r in rows)


def cmd_compose(args) -> int:
    from .expr import parse_tree

    sig = parse_generators(args.generators, Mode(args.mode))
    outer = parse_tree(args.outer, sig)
    inner = [parse_tree(x, sig) for x in args.inner]
    if args.at is not None:
        if len(inner) != 1:
            raise _InputError("--at takes exactly one --inner tree")
        result = graft(outer, args.at, inner[0])
    else:
        result = gamma(outer, inner)
    _emit(args, result.key, {"tree": result.key, "arity": result.arity})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    sig = parse_generators(args.generators, Mode(args.mode))
    trees = enumerate_trees(sig, args.arity, args.color, args.max_nodes)
    _emit(args, "\n".join(t.key for t in trees),
          {"arity": args.arity, "mode": args.mode, "count": len(trees), "trees": [t.key for t in trees]})
    return EXIT_OK


def cmd_dim(args) -> int:
    p = preset(args.preset)
    sl = ideal_slice(p, args.arity, max_arity=args.max_arity)
    d = sl.dim - sl.rank
    _emit(args, str(d), {"preset": args.preset, "arity": args.arity, "dim": d,
                         "free_dim": sl.dim, "ideal_rank": sl.rank})
    return EXIT_OK


def _element(args) -> tuple:
    p = preset(args.preset)
    e = OperadElement.parse(args.expr, p.sig)
    return p, e


def cmd_member(args) -> int:
    p, e = _element(args)
    ok = is_member(e, p, max_arity=args.max_arity)
    _emit(args, "true" if ok else "false", {"preset": args.preset, "expr": str(e), "member": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_nf(args) -> int:
    p, e = _element(args)
    nf = normal_form(e, p, max_arity=args.max_arity)
    _emit(args, str(nf), {"preset": args.preset, "expr": str(e), "normal_form": nf.to_json()})
    return EXIT_OK


def cmd_check_algebra(args) -> int:
    from .representation import check_algebra, load_interpretation

    p = preset(args.preset)
    rho = load_interpretation(args.rep, p.sig)
    report = check_algebra(p, rho)
    lines = []
    for c in report.checks:
        status = "pass" if c.vanishes else "FAIL"
        line = f"relator {c.index}: {c.relator}: {status}"
        if c.witness is not None:
            out, inp, val = c.witness
            line += f" (witness out={list(out)} in={list(inp)} value={format_rational(val)})"
        lines.append(line)
    lines.append("PASS" if report.passed else "FAIL")
    _emit(args, "\n".join(lines), {"preset": args.preset, **report.to_json()})
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_frobenius_check(args) -> int:
    from .tqft import load_frobenius

    d = load_frobenius(args.frobenius)
    report = d.report
    lines = []
    for a in report.axioms:
        line = f"{a.axiom}: {'pass' if a.passed else 'FAIL'}"
        if a.witness is not None:
            line += f" (witness {list(a.witness)})"
        lines.append(line)
    lines.append("PASS" if report.passed else "FAIL")
    _emit(args, "\n".join(lines), report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_tqft_eval(args) -> int:
    from .errors import FrobeniusAxiomFailure
    from .tqft import CobordismWord, evaluate, load_frobenius, normalize_cobordism

    d = load_frobenius(args.frobenius)
    word = CobordismWord.parse(args.word)
    nf = normalize_cobordism(word)
    try:
        value = evaluate(nf, d)
    except FrobeniusAxiomFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rows = value.to_rows()
    _emit(args, _fmt_rows(rows), {
        "word": str(word),
        "normal_form": nf.to_json(),
        "inputs": value.n_in,
        "outputs": value.n_out,
        "matrix": [[format_rational(x) for x in r] for r in rows],
    })
    return EXIT_OK


def cmd_linf_check(args) -> int:
    from .linfinity import check_linf, load_brackets

    b = load_brackets(args.data)
    report = check_linf(b, args.up_to)
    if report.passed:
        text = f"PASS: relations 1..{args.up_to} hold on {report.checked} basis tuples"
    else:
        n, inputs, defect = report.failure
        names = ", ".join(b.space.names[i] for i in inputs)
        text = (f"FAIL: relation {n} on ({names}) has defect "
                f"[{' '.join(format_rational(Fraction(x)) for x in defect)}]")
    _emit(args, text, report.to_json(b.space))
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="operadkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        p.set_defaults(func=fn)
        return p

    modes = [m.value for m in Mode]

    p = add("compose", cmd_compose, "compose trees (full composition, or grafting with --at)")
    p.add_argument("--generators", required=True)
    p.add_argument("--mode", choices=modes, default="planar")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", nargs="+", required=True)
    p.add_argument("--at", type=int)

    p = add("enumerate", cmd_enumerate, "list the tree basis of a free operad in one arity")
    p.add_argument("--generators", required=True)
    p.add_argument("--mode", choices=modes, default="planar")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--color")
    p.add_argument("--max-nodes", type=int)

    for name, fn, help_ in [("dim", cmd_dim, "dimension of a presented operad in one arity"),
                            ("member", cmd_member, "ideal membership of a combination of trees"),
                            ("nf", cmd_nf, "normal form modulo the ideal")]:
        p = add(name, fn, help_)
        p.add_argument("--preset", choices=preset_names(), required=True)
        p.add_argument("--max-arity", type=int, default=DEFAULT_MAX_ARITY)
        if name == "dim":
            p.add_argument("--arity", type=int, required=True)
        else:
            p.add_argument("--expr", required=True)

    p = add("check-algebra", cmd_check_algebra, "certify an algebra over a preset operad")
    p.add_argument("--preset", choices=preset_names(), required=True)
    p.add_argument("--rep", required=True)

    p = add("frobenius-check", cmd_frobenius_check, "check the Frobenius algebra axioms")
    p.add_argument("--frobenius", required=True)

    p = add("tqft-eval", cmd_tqft_eval, "evaluate a cobordism word in the TQFT of a Frobenius algebra")
    p.add_argument("--frobenius", required=True)
    p.add_argument("--word", required=True)

    p = add("linf-check", cmd_linf_check, "check L-infinity relations up to an arity")
    p.add_argument("--data", required=True)
    p.add_argument("--up-to", type=int, required=True)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (_InputError, OperadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
