"""Command-line front end.

Words use the letters C, I, P with optional signed exponents, separated by
spaces or '*', e.g. "P C P I^-1".  Maps are JSON objects
{"degree": d, "components": [poly, poly, poly]} and forms are JSON objects
{"A": poly, "B": poly} standing for (A/B)·ω₀ with ω₀ = dx∧dy/(xy); a poly is
a list of {"exponents": [a, b, c], "num": "...", "den": "..."} records.
JSON payloads may be given inline, as @path, or as '-' for stdin.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import CremonaError, DegreeCapExceeded, InternalCheckError, WordSyntaxError
from .forms import OMEGA0, RationalTwoForm, classify_normal_cubic, pushforward
from .geometry import base_points, noether_sums
from .maps import (
    GENERATOR_TABLE,
    IDENTITY,
    QUADRATIC_TABLE,
    BirationalMap,
    point_name,
    quadratic_map,
)
from .reduce import ENV_DEGREE_CAP, default_degree_cap, reduce
from .words import eval_word, parse, relators

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3
EXIT_CAP = 4


class PayloadError(ValueError):
    pass


def _load_json(text):
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PayloadError(f"invalid JSON: {exc}") from exc


def _map_payload(args):
    """(map, inverse or None, label) from a word or a --map JSON payload."""
    if args.map:
        try:
            f = BirationalMap.from_json(_load_json(args.payload))
        except (KeyError, TypeError, IndexError) as exc:
            raise PayloadError(f"malformed map: {exc}") from exc
        return f, None, "map"
    w = parse(args.payload)
    return eval_word(w), eval_word(w.inverse()), str(w) or "1"


def _form_payload(text):
    if text.strip().lower() in ("omega0", "ω₀", "w0"):
        return OMEGA0
    try:
        return RationalTwoForm.from_json(_load_json(text))
    except (KeyError, TypeError) as exc:
        raise PayloadError(f"malformed form: {exc}") from exc


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _fmt_map(f):
    return "(" + " : ".join(str(c) for c in f.components) + ")"


# -- subcommands ----------------------------------------------------------------------


def cmd_eval(args):
    f, _, label = _map_payload(args)
    data = {"word": label, **f.to_json()}
    _emit(args, data, f"degree {f.degree}\n{_fmt_map(f)}")
    return EXIT_OK


def cmd_reduce(args):
    w = parse(args.payload)
    red = reduce(w, degree_cap=args.degree_cap, trace=args.trace, merge=not args.no_merge)
    data = red.to_json()
    if not args.trace:
        data.pop("trace")
    lines = [str(red.word) or "1"]
    if red.flagged:
        lines.append(f"(value has degree {red.degree} > 2; factors are fully reduced but not a normal form)")
    if args.trace:
        for s in red.trace:
            lines.append(f"step {s['step']}: D={s['D']} n={s['n']} r={s['r']} {s['action']} | {' . '.join(s['factors'])}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_is_identity(args):
    from .reduce import is_identity

    w = parse(args.payload)
    ok = is_identity(w, degree_cap=args.degree_cap)
    _emit(args, {"word": str(w), "identity": ok}, "identity" if ok else "not the identity")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_symplectic(args):
    f, inv, label = _map_payload(args)
    form = pushforward(f, OMEGA0, inv)
    mu = form.scalar()
    data = {
        "symplectic": form == OMEGA0,
        "divisor-preserving": mu is not None,
        "mu": None if mu is None else str(mu),
        "pushforward": form.to_json(),
    }
    text = (
        f"symplectic: {data['symplectic']}\n"
        f"divisor-preserving: {data['divisor-preserving']}\n"
        f"mu: {data['mu']}\n"
        f"f_*(omega0) = ({form.A}) / ({form.B}) * omega0"
    )
    _emit(args, data, text)
    return EXIT_OK


def cmd_classify_form(args):
    form = _form_payload(args.payload)
    cls = classify_normal_cubic(form)
    lines = [f"kind: {cls.kind} {cls.label}"]
    if cls.components:
        lines.append("components: " + ", ".join(str(c) for c in cls.components))
    if cls.nodes:
        lines.append("nodes: " + ", ".join(str(p) for p in cls.nodes))
    if cls.reason:
        lines.append(f"reason: {cls.reason}")
    _emit(args, cls.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_base_points(args):
    f, _, label = _map_payload(args)
    pts = base_points(f)
    mults = [m for _, m in pts]
    s, s2 = noether_sums(mults)
    audit = {
        "sum_m": s,
        "sum_m2": s2,
        "expected_sum_m": 3 * (f.degree - 1),
        "expected_sum_m2": f.degree * f.degree - 1,
    }
    audit["holds"] = audit["sum_m"] == audit["expected_sum_m"] and audit["sum_m2"] == audit["expected_sum_m2"]
    data = {
        "degree": f.degree,
        "base_points": [{"point": p.to_json(), "name": point_name(p), "multiplicity": m} for p, m in pts],
        "noether": audit,
    }
    lines = [f"degree {f.degree}"]
    for p, m in pts:
        name = point_name(p)
        lines.append(f"  {name:<12} m={m}" + ("" if name == str(p) else f"   {p}"))
    lines.append(
        f"Noether: sum m = {s} (expected {audit['expected_sum_m']}), "
        f"sum m^2 = {s2} (expected {audit['expected_sum_m2']}) -> {'ok' if audit['holds'] else 'FAILED'}"
    )
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if audit["holds"] else EXIT_FALSE


PARAMETRIZED = {
    "S_lambda": ("(P^2 C)^-1 rho_-lambda P^2 C", "(-lambda X(X+Y+Z) : Y(X+Y-lambda Z) : Z(-lambda X+Y-lambda Z))", "(0:lambda:1), q2, q3"),
    "T_lambda": ("P^2 rho_-lambda C P^2", "(XY : (Y+Z)(lambda Z-Y) : -lambda XZ)", "p1, q1, (0:lambda:1)"),
}


def cmd_catalog(args):
    rows = []
    for i, (word, formula, pts) in QUADRATIC_TABLE.items():
        f = quadratic_map(i)
        rows.append({"name": f"Q{i}", "word": word, "formula": list(formula), "base_points": list(pts), "map": f.to_json()})
    gens = [{"name": k, "formula": list(v[0]), "base_points": list(v[1])} for k, v in GENERATOR_TABLE.items()]
    params = [{"name": k, "definition": v[0], "formula": v[1], "base_points": v[2], "lambda": "rational, not 0 or -1", "note": "the formula equals the definition up to a diagonal factor"} for k, v in PARAMETRIZED.items()]
    data = {"quadratic": rows, "generators": gens, "parametrized": params}
    lines = ["Quadratic maps Q1..Q12:"]
    for r in rows:
        lines.append(f"  {r['name']:<4} = {r['word']:<9} ({' : '.join(r['formula'])})   base points {', '.join(r['base_points'])}")
    lines.append("Generators:")
    for g in gens:
        lines.append(f"  {g['name']:<4} ({' : '.join(g['formula'])})   base points {', '.join(g['base_points'])}")
    lines.append("Parametrized (lambda rational, not 0 or -1; formulas agree with the definitions up to a diagonal factor):")
    for p in params:
        lines.append(f"  {p['name']} = {p['definition']}: {p['formula']}   base points {p['base_points']}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_verify_relations(args):
    results = []
    for name, w in relators().items():
        by_eval = eval_word(w) == IDENTITY
        by_reduce = reduce(w, degree_cap=args.degree_cap).is_empty
        results.append({"relation": name, "eval": by_eval, "reduce": by_reduce})
    ok = all(r["eval"] and r["reduce"] for r in results)
    lines = [f"{r['relation']:<10} eval={'ok' if r['eval'] else 'FAIL'} reduce={'ok' if r['reduce'] else 'FAIL'}" for r in results]
    lines.append("all relations hold" if ok else "SOME RELATIONS FAILED")
    _emit(args, {"relations": results, "ok": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FALSE


# -- parser ------------------------------------------------------------------------------


def _cap(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("degree cap must be at least 2")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS lets the flags appear before or after the subcommand
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--trace", action="store_true", default=argparse.SUPPRESS, help="show the reduction trace")
    common.add_argument(
        "--degree-cap",
        type=_cap,
        default=argparse.SUPPRESS,
        help=f"largest intermediate degree allowed (default from ${ENV_DEGREE_CAP} or 1024)",
    )
    p = argparse.ArgumentParser(
        prog="cremona",
        description="Exact computations with plane Cremona maps preserving dx^dy/(xy) and the word problem in <I, C, P>.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[common],
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_, payload=None, map_flag=False):
        sp = sub.add_parser(name, help=help_, description=help_, parents=[common])
        if payload:
            sp.add_argument("payload", help=payload)
        if map_flag:
            sp.add_argument("--map", action="store_true", help="read the payload as a map in JSON")
        sp.set_defaults(func=func)
        return sp

    add("eval", cmd_eval, "evaluate a word to its polynomial triple", "word (or map JSON with --map)", True)
    r = add("reduce", cmd_reduce, "reduce a word to a linear or quadratic word", "word")
    r.add_argument("--no-merge", action="store_true", help="skip the initial greedy packing")
    add("is-identity", cmd_is_identity, "exit 0 if the word is trivial, 1 otherwise", "word")
    add("symplectic", cmd_symplectic, "push omega0 forward and report mu", "word (or map JSON with --map)", True)
    add("classify-form", cmd_classify_form, "classify -div of (A/B)·omega0 as a normal cubic", "form JSON {A, B} or 'omega0'")
    add("base-points", cmd_base_points, "base points with multiplicities and the Noether audit", "word (or map JSON with --map)", True)
    add("catalog", cmd_catalog, "dump the catalog of generators and quadratic maps")
    add("verify-relations", cmd_verify_relations, "check every relator of R by evaluation and reduction")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.trace = getattr(args, "trace", False)
    args.degree_cap = getattr(args, "degree_cap", None)
    if args.degree_cap is None:
        try:
            args.degree_cap = default_degree_cap()
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args)
    except (WordSyntaxError, PayloadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalCheckError as exc:
        report = {"error": str(exc), "state": exc.state}
        print(json.dumps(report, indent=2, sort_keys=True, default=str), file=sys.stderr)
        return EXIT_INTERNAL
    except DegreeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CremonaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
