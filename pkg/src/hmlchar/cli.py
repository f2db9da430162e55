"""Command-line front end.

Exit codes: 0 the property holds (or synthesis succeeded), 1 it fails,
2 usage or parse error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import charform, oracle, primality
from .formula import (Fragment, FormulaError, actions_in, dnf_count, es_expand, format_formula,
                      format_system, formula_size, metrics, modal_depth, parse_formula,
                      parse_system, smallest_fragment, to_dnf)
from .lts import ProcessError, actions_of, as_node, read_process, show
from .modelcheck import satisfies
from .preorders import kernel_equiv, preorder
from .satisfiability import FragmentViolation, sat, valid

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
_ZERO = re.compile(r"(?<![A-Za-z0-9_])0(?![A-Za-z0-9_])")


@dataclass
class QueryResult:
    query: str
    inputs: list
    verdict: object
    witness: str | None = None
    confidence: str = primality.EXACT
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "QueryResult":
        return cls(**json.loads(text))


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input


def _text(arg: str) -> str:
    """An argument is a file path when such a file exists, inline text otherwise."""
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _looks_like_system(text: str) -> bool:
    return any("=" in line.split("#", 1)[0] for line in text.splitlines())


def _raw_actions(text: str) -> set:
    """Actions mentioned in formula text, read without expanding 0."""
    if _looks_like_system(text):
        es = parse_system(_strip_zero(text))
        return {a for _, rhs in es.equations for a in actions_in(rhs)}
    return set(actions_in(parse_formula(_strip_zero(text))))


def _strip_zero(text: str) -> str:
    return _ZERO.sub("tt", text)


def _alphabet(args, formula_texts=(), process_texts=()):
    if getattr(args, "alphabet", None):
        return tuple(sorted({a.strip() for a in args.alphabet.split(",") if a.strip()}))
    acts: set = set()
    for t in formula_texts:
        if _mentions_zero(t):
            raise UsageError("a formula using 0 needs an explicit --alphabet")
        acts |= _raw_actions(t)
    for t in process_texts:
        acts |= actions_of(as_node(read_process(t)))
    return tuple(sorted(acts)) or ("a",)


def _mentions_zero(text: str) -> bool:
    return _strip_zero(text) != text


def _formula(text: str, alpha):
    if _looks_like_system(text):
        return es_expand(parse_system(text, alpha))
    return parse_formula(text, alpha)


def _process(text: str):
    return as_node(read_process(text))


def _fragment(args, f, alpha) -> Fragment:
    if args.fragment:
        return Fragment.parse(args.fragment)
    X = smallest_fragment(f, alpha)
    if X is None:
        raise UsageError("formula is outside every fragment; pass --fragment")
    return X


# ---------------------------------------------------------------- commands


def cmd_mc(args):
    ptext, ftext = _text(args.process), _text(args.formula)
    alpha = _alphabet(args, [ftext], [ptext])
    ok = satisfies(_process(ptext), _formula(ftext, alpha))
    return QueryResult("mc", [args.process, args.formula], ok)


def cmd_sat(args, validity=False):
    ftext = _text(args.formula)
    alpha = _alphabet(args, [ftext])
    f = _formula(ftext, alpha)
    X = _fragment(args, f, alpha)
    ok = (valid if validity else sat)(X, f, alpha)
    return QueryResult("valid" if validity else "sat", [args.formula], ok, extra={"fragment": X.value})


def cmd_prime(args):
    ftext = _text(args.formula)
    alpha = _alphabet(args, [ftext])
    f = _formula(ftext, alpha)
    X = _fragment(args, f, alpha)
    dots: list | None = [] if args.dot else None
    v = primality.decide_prime(X, f, alpha, dot=dots, **_budget_opts(args))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write("".join(dots))
    return QueryResult("prime", [args.formula], v.prime, _show(v.witness), v.confidence,
                       extra={"fragment": X.value, "method": v.method})


def cmd_char(args):
    ftext = _text(args.formula)
    alpha = _alphabet(args, [ftext])
    f = _formula(ftext, alpha)
    X = _fragment(args, f, alpha)
    v = charform.decide_characteristic(X, f, alpha, **_budget_opts(args))
    return QueryResult("char", [args.formula], v.is_characteristic, _show(v.witness), v.confidence,
                       extra={"fragment": X.value, "note": v.note})


def cmd_kernel(args):
    ftext = _text(args.formula)
    alpha = _alphabet(args, [ftext])
    f = _formula(ftext, alpha)
    v = charform.char_mod_kernel_bounded(args.kind, f, alpha, depth_budget=args.depth_budget,
                                         width_budget=args.width_budget or 2)
    return QueryResult("kernel", [args.formula], v.is_characteristic, _show(v.witness),
                       v.confidence, extra={"kind": args.kind, "note": v.note})


def cmd_synth(args):
    ptext = _text(args.process)
    alpha = _alphabet(args, [], [ptext])
    es = charform.chi(args.kind, _process(ptext), alpha)
    if args.form == "explicit":
        out = format_formula(charform.chi_formula(args.kind, _process(ptext), alpha,
                                                  size_cap=args.size_cap))
    else:
        out = format_system(es)
    m = metrics(es)
    return QueryResult("synth", [args.process], True, out.rstrip("\n"),
                       extra={"kind": args.kind, "form": args.form, "decl": m.decl_size,
                              "eqlen": m.eq_length, "size": m.explicit_size})


def cmd_preorder(args):
    p, q = _text(args.p), _text(args.q)
    fn = kernel_equiv if args.equiv else preorder
    ok = fn(args.kind, _process(p), _process(q))
    return QueryResult("preorder", [args.p, args.q], ok, extra={"kind": args.kind, "equiv": args.equiv})


def cmd_dnf(args):
    ftext = _text(args.formula)
    alpha = _alphabet(args, [ftext])
    f = _formula(ftext, alpha)
    if dnf_count(f) > args.size_cap:
        raise oracle.BudgetExceeded(f"DNF has {dnf_count(f)} disjuncts, cap is {args.size_cap}")
    return QueryResult("dnf", [args.formula], format_formula(to_dnf(f)),
                       extra={"disjuncts": dnf_count(f)})


def cmd_metrics(args):
    ftext = _text(args.formula)
    alpha = _alphabet(args, [ftext])
    obj = parse_system(ftext, alpha) if _looks_like_system(ftext) else parse_formula(ftext, alpha)
    m = metrics(obj)
    return QueryResult("metrics", [args.formula], asdict(m))


def _oracle_job(job):
    X, f_text, alpha, depth, width = job
    f = parse_formula(f_text, alpha)
    s = sat(X, f, alpha)
    disagreements = []
    if s != oracle.brute_sat(f):
        disagreements.append("sat")
    if X in ("S", "CS", "RS"):
        u = oracle.Universe(alpha, depth, width)
        v = charform.decide_characteristic(X, f, alpha)
        if bool(v) != (oracle.brute_characteristic(X, f, u) is not None):
            disagreements.append("char")
    return f_text, disagreements


def cmd_oracle(args):
    X = Fragment.parse(args.fragment or "S")
    alpha = _alphabet(args) if args.alphabet else ("a", "b")
    depth = args.depth_budget or 3
    width = args.width_budget or 2
    fs = oracle.random_instances(args.seed, X, args.size, args.count, alpha)
    md_ok = [f for f in fs if modal_depth(f) < depth]
    jobs = [(X.value, format_formula(f), alpha, depth, width) for f in md_ok]
    bad = []
    for f_text, dis in _map(_oracle_job, jobs, args.jobs):
        if dis:
            bad.append({"formula": f_text, "disagree": dis})
    return QueryResult("oracle", [X.value], not bad, extra={"checked": len(jobs), "disagreements": bad})


def cmd_gen(args):
    if args.cnf:
        n_vars, n_clauses = args.cnf
        cnf = oracle.random_cnf(args.seed, n_vars, n_clauses)
        f = oracle.encode_cnf(args.fragment or "RS", cnf)
        return QueryResult("gen", [], format_formula(f), extra={"cnf": cnf})
    X = Fragment.parse(args.fragment or "S")
    alpha = _alphabet(args) if args.alphabet else ("a", "b")
    fs = oracle.random_instances(args.seed, X, args.size, args.count, alpha)
    return QueryResult("gen", [], [format_formula(f) for f in fs])


def _bench_job(job):
    X, f_text, alpha = job
    f = parse_formula(f_text, alpha)
    t = time.perf_counter()
    v = charform.decide_characteristic(X, f, alpha)
    return formula_size(f), time.perf_counter() - t, bool(v)


def cmd_bench(args):
    X = Fragment.parse(args.fragment or "S")
    alpha = _alphabet(args) if args.alphabet else ("a", "b")
    rows = []
    for size in range(4, args.size + 1, 4):
        fs = oracle.random_instances(args.seed + size, X, size, args.count, alpha)
        jobs = [(X.value, format_formula(f), alpha) for f in fs]
        res = list(_map(_bench_job, jobs, args.jobs))
        total = sum(r[1] for r in res)
        rows.append({"max_size": size, "count": len(res), "mean_ms": 1000 * total / max(1, len(res)),
                     "characteristic": sum(r[2] for r in res)})
    return QueryResult("bench", [X.value], True, extra={"rows": rows})


def _map(fn, jobs, n_jobs):
    if n_jobs and n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            yield from ex.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * n_jobs)))
    else:
        yield from map(fn, jobs)


def _budget_opts(args) -> dict:
    out = {}
    if getattr(args, "depth_budget", None):
        out["depth"] = args.depth_budget
    if getattr(args, "width_budget", None):
        out["width"] = args.width_budget
    return out


def _show(node):
    return None if node is None else show(node)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hmlchar",
                                 description="Characteristic formulae and primality for HML fragments.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", help="comma-separated actions")
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--depth-budget", type=int)
    common.add_argument("--width-budget", type=int)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("mc", cmd_mc, "model check a process against a formula")
    p.add_argument("process")
    p.add_argument("formula")
    for name, fn in (("sat", cmd_sat), ("valid", lambda a: cmd_sat(a, True))):
        p = add(name, fn, f"decide {name}isfiability" if name == "sat" else "decide validity")
        p.add_argument("--fragment")
        p.add_argument("formula")
    p = add("prime", cmd_prime, "decide primality")
    p.add_argument("--fragment")
    p.add_argument("--dot", help="write the alternating graphs as DOT to this path")
    p.add_argument("formula")
    p = add("char", cmd_char, "decide whether a formula is characteristic")
    p.add_argument("--fragment")
    p.add_argument("formula")
    p = add("kernel", cmd_kernel, "bounded check: characteristic modulo the kernel")
    p.add_argument("--kind", default="CS")
    p.add_argument("formula")
    p = add("synth", cmd_synth, "characteristic formula of a process")
    p.add_argument("--kind", default="S")
    p.add_argument("--form", choices=("decl", "explicit"), default="decl")
    p.add_argument("--size-cap", type=int, default=charform.EXPLICIT_SIZE_CAP)
    p.add_argument("process")
    p = add("preorder", cmd_preorder, "check p below q")
    p.add_argument("--kind", default="S")
    p.add_argument("--equiv", action="store_true", help="check the kernel equivalence instead")
    p.add_argument("p")
    p.add_argument("q")
    p = add("dnf", cmd_dnf, "disjunctive normal form")
    p.add_argument("--size-cap", type=int, default=10_000)
    p.add_argument("formula")
    p = add("metrics", cmd_metrics, "size, decl, eqlen and modal depth")
    p.add_argument("formula")
    p = add("oracle", cmd_oracle, "compare deciders with brute force on random formulae")
    p.add_argument("--fragment")
    p.add_argument("--size", type=int, default=12)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p = add("gen", cmd_gen, "random formulae or encoded 3-CNFs")
    p.add_argument("--fragment")
    p.add_argument("--size", type=int, default=12)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--cnf", type=int, nargs=2, metavar=("VARS", "CLAUSES"))
    p = add("bench", cmd_bench, "time decide_characteristic by formula size")
    p.add_argument("--fragment")
    p.add_argument("--size", type=int, default=16)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    return ap


def _render(res: QueryResult) -> str:
    if res.query == "metrics":
        m = res.verdict
        return (f"size {m['explicit_size']}\ndecl {m['decl_size']}\neqlen {m['eq_length']}\n"
                f"depth {m['modal_depth']}")
    if res.query in ("synth", "dnf"):
        return res.witness if res.query == "synth" else res.verdict
    if res.query == "gen":
        v = res.verdict
        return "\n".join(v) if isinstance(v, list) else v
    if res.query == "bench":
        lines = ["max_size count mean_ms characteristic"]
        lines += [f"{r['max_size']:8} {r['count']:5} {r['mean_ms']:7.2f} {r['characteristic']:14}"
                  for r in res.extra["rows"]]
        return "\n".join(lines)
    if res.query == "oracle":
        lines = [f"checked {res.extra['checked']} disagreements {len(res.extra['disagreements'])}"]
        lines += [f"  {d['formula']}: {','.join(d['disagree'])}" for d in res.extra["disagreements"]]
        return "\n".join(lines)
    line = "true" if res.verdict else "false"
    if res.confidence != primality.EXACT:
        line += f" ({res.confidence})"
    if res.witness is not None:
        line += f"\nwitness {res.witness}"
    return line


def _exit_code(res: QueryResult) -> int:
    if res.query in ("synth", "dnf", "metrics", "gen", "bench"):
        return EXIT_HOLDS
    return EXIT_HOLDS if res.verdict else EXIT_FAILS


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_HOLDS
    try:
        t = time.perf_counter()
        res = args.fn(args)
        res.seconds = round(time.perf_counter() - t, 6)
    except oracle.BudgetExceeded as exc:
        print(f"hmlchar: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, FormulaError, ProcessError, FragmentViolation, ValueError) as exc:
        print(f"hmlchar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(res.to_json() if args.json else _render(res))
    return _exit_code(res)


if __name__ == "__main__":
    sys.exit(main())
