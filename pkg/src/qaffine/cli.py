"""Command line front end.

Exit codes: 0 success, 1 malformed input or failed self-test, 2 when the -1
hypothesis needed by the quotient theorem does not hold.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from .bicharacter import QMatrix, validate_q, sqrt_bicharacter
from .feasibility import bichar_feasibility
from .graded_twist import ambient_analysis, pullback_bicharacter
from .problem import ProblemError, load_problem
from .quotient_map import psi_generators
from .report import analyze
from .scalars import HypothesisError
from .strata import fiber_explanation, make_stratum, stratum_of_point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_point(text, n):
    try:
        vals = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemError(f"bad point {text!r}: {exc}") from exc
    if len(vals) != n:
        raise ProblemError(f"point {text!r} needs {n} coordinates")
    return vals


def _parse_w(text, n):
    if not text:
        return ()
    try:
        w = tuple(sorted({int(x) - 1 for x in text.split(",")}))
    except ValueError as exc:
        raise ProblemError(f"bad subset {text!r}") from exc
    if any(not 0 <= i < n for i in w):
        raise ProblemError(f"subset {text!r} must lie in 1..{n}")
    return w


def _emit(args, payload, text):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
    else:
        sys.stdout.write(text)


def _with_char2(problem, args):
    if args.char2 and problem.q is not None:
        group = replace(problem.q.group, char2=True)
        problem.q = QMatrix(problem.q.n, group, tuple(
            tuple(replace(g, group=group) for g in row) for row in problem.q.entries
        ))
    return problem


def _quantum_matrix(problem):
    if problem.q is not None:
        return problem.q
    return pullback_bicharacter(problem.graded).q


def cmd_analyze(args):
    prob = _with_char2(load_problem(args.file), args)
    report = analyze(_quantum_matrix(prob), prob.declared_char)
    report.source = prob.raw
    _emit(args, report.to_dict(), report.to_text())
    return 0


def cmd_psi(args):
    prob = _with_char2(load_problem(args.file), args)
    q = _quantum_matrix(prob)
    b = validate_q(q)
    c = sqrt_bicharacter(b)
    if args.lam in (None, "symbolic"):
        lam = None
        w = _parse_w(args.w, q.n)
    else:
        lam = _parse_point(args.lam, q.n)
        w = stratum_of_point(lam)
    pres = psi_generators(c, make_stratum(b, w), lam)
    affine = pres.as_form("affine-saturation")
    payload = {
        "w": [i + 1 for i in w],
        "lambda": None if lam is None else [str(x) for x in lam],
        "monomial_generators": [i + 1 for i in pres.monomial_generators],
        "localized": pres.render(),
        "ordered": pres.render(ordered=True, cocycle=c),
        "affine_saturation": affine.render(),
        "annotation": affine.annotation,
    }
    text = (
        f"w = {payload['w']}\n"
        f"localized: {payload['localized']}\n"
        f"ordered:   {payload['ordered']}\n"
        f"affine:    {payload['affine_saturation']}  [{affine.annotation}]\n"
    )
    _emit(args, payload, text)
    return 0


def cmd_fiber(args):
    prob = _with_char2(load_problem(args.file), args)
    q = _quantum_matrix(prob)
    if args.lam is None or args.mu is None:
        raise ProblemError("fiber needs --lambda and --mu")
    lam, mu = _parse_point(args.lam, q.n), _parse_point(args.mu, q.n)
    info = fiber_explanation(q, lam, mu)
    lines = [f"same fiber: {'yes' if info['equivalent'] else 'no'} ({info['reason']})"]
    for row in info.get("characters", []):
        lines.append(f"  alpha = {row['alpha']}: lambda^alpha = {row['lambda']}, mu^alpha = {row['mu']}")
    _emit(args, info, "\n".join(lines) + "\n")
    return 0


def cmd_feasibility(args):
    if args.minus_one:
        if args.n is None:
            raise ProblemError("--minus-one needs --n")
        q = QMatrix.uniparameter(args.n, 2)
    elif args.file:
        q = _quantum_matrix(load_problem(args.file))
    else:
        raise ProblemError("give a problem file or --minus-one --n N")
    res = bichar_feasibility(validate_q(q), k=args.k)
    payload = {
        "n": res.n,
        "k": res.k,
        "feasible": res.feasible,
        "summary": res.summary(),
        "fragments": [
            {"fragment": v.fragment, "feasible": v.feasible, "method": v.method, "candidates": v.candidates}
            for v in res.verdicts
        ],
        "witness": None
        if res.witness is None
        else {
            "fragment": res.witness.fragment,
            "matrix": [list(r) for r in res.witness.matrix],
            "f": [{"parity": list(v), "exponent": e} for v, e in res.witness.f_table],
        },
    }
    lines = [f"n = {res.n}, values in 2^{res.k}-th roots of unity: {res.summary()}"]
    for v in res.verdicts:
        extra = f", {v.candidates} candidates" if v.candidates is not None else ""
        lines.append(f"  {v.fragment}: {'feasible' if v.feasible else 'infeasible'} ({v.method}{extra})")
    if res.witness is not None:
        lines.append(f"  exponent matrix C: {[list(r) for r in res.witness.matrix]}")
        if res.witness.f_table:
            lines.append(f"  f on Gamma/2Gamma: {[(list(v), e) for v, e in res.witness.f_table]}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_twist(args):
    prob = load_problem(args.file)
    if prob.graded is None:
        raise ProblemError("twist needs a problem with a graded block")
    if args.char2:
        g = replace(prob.graded.group, char2=True)
        coc = replace(prob.graded.cocycle, group=g)
        prob.graded = replace(prob.graded, cocycle=coc)
    report = ambient_analysis(prob.graded)
    report.source = prob.raw
    _emit(args, report.to_dict(), report.to_text())
    return 0


def cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest()
    payload = [{"check": name, "ok": ok} for name, ok in results]
    text = "".join(f"{'PASS' if ok else 'FAIL'}  {name}\n" for name, ok in results)
    _emit(args, payload, text)
    return 0 if all(ok for _, ok in results) else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--char2", action="store_true", help="the base field has characteristic 2")

    p = _Parser(prog="qaffine", description="Stratified spectra of quantum affine spaces")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="full stratified analysis")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("psi", parents=[common], help="generators of psi(lambda)")
    s.add_argument("file")
    s.add_argument("--lambda", dest="lam", help="comma-separated rationals, or 'symbolic'")
    s.add_argument("--w", help="stratum for symbolic lambda, e.g. 1,3 (default: empty)")
    s.set_defaults(func=cmd_psi)

    f = sub.add_parser("fiber", parents=[common], help="are two points in the same fiber")
    f.add_argument("file")
    f.add_argument("--lambda", dest="lam")
    f.add_argument("--mu")
    f.set_defaults(func=cmd_fiber)

    e = sub.add_parser("feasibility", parents=[common], help="cocycle search for q = -1")
    e.add_argument("file", nargs="?")
    e.add_argument("--minus-one", action="store_true")
    e.add_argument("--n", type=int)
    e.add_argument("--k", type=int, default=2, help="values in 2^k-th roots of unity")
    e.set_defaults(func=cmd_feasibility)

    t = sub.add_parser("twist", parents=[common], help="analysis of a graded twist")
    t.add_argument("file")
    t.set_defaults(func=cmd_twist)

    st = sub.add_parser("selftest", parents=[common], help="run the oracle suite")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 2
    except ProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
