"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from typing import List, Optional, Sequence, Tuple

from .arith import ParameterError, check_odd_prime, format_rational
from .bases import BasisError, alpha_basis, s_numbers
from .conner_floyd import (
    ActionDataError,
    SimpleActionData,
    WeightList,
    component,
    congruent_mod_p_omega,
    gamma_p,
    realize_class,
)
from .expr import ExpressionError, evaluate_text
from .fgl import alpha_coeff, cp_class, k_series, milnor_hypersurface, universal_fgl
from .graded import GradedElement, render, terms_to_json
from .obstruction import ObstructionError, classify
from .series import DEFAULT_TRUNC, MAX_TRUNC, SeriesError, render_series
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _element_json(x: GradedElement) -> dict:
    return {"degree": x.degree, "element": render(x), "terms": terms_to_json(x)}


def _need_trunc(T: int, degree: int, what: str):
    if degree >= T:
        raise UsageError(f"{what} in degree {degree} needs --trunc > {degree} (got {T})")


def _weights(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--weights must be a comma-separated list of integers, got {text!r}")


# -- commands -----------------------------------------------------------------

def cmd_kseries(args):
    s = k_series(args.k, args.trunc)
    data = {
        "k": args.k,
        "trunc": args.trunc,
        "coefficients": [
            {"power": j, "degree": c.degree, "element": render(c)}
            for j, c in enumerate(s.coefficients()) if not c.is_zero()
        ],
    }
    return EXIT_OK, data, f"[u]_{args.k} = {render_series(s)}"


def cmd_alpha(args):
    T = max(args.trunc, args.n + 1)
    x = alpha_coeff(args.k, args.n, T)
    data = {"k": args.k, "n": args.n, **_element_json(x)}
    return EXIT_OK, data, render(x)


def cmd_fgl(args):
    F = universal_fgl(args.trunc)
    rows = [{"i": i, "j": j, "element": render(c)} for (i, j), c in F.items()]
    text = "\n".join(f"a[{r['i']},{r['j']}] = {r['element']}" for r in rows)
    return EXIT_OK, {"trunc": args.trunc, "coefficients": rows}, text


def cmd_cp(args):
    x = cp_class(args.n)
    return EXIT_OK, {"n": args.n, **_element_json(x)}, render(x)


def cmd_milnor(args):
    x = milnor_hypersurface(args.m, args.n, max(args.trunc, args.m + args.n))
    return EXIT_OK, {"m": args.m, "n": args.n, **_element_json(x)}, render(x)


def cmd_basis(args):
    check_odd_prime(args.p)
    T = max(args.trunc, args.n + 1)
    basis = alpha_basis(args.p, args.n, T)
    rows = []
    for i in range(1, args.n + 1):
        g = basis.generator(i)
        row = {
            "degree": i,
            "provenance": basis.provenance[i],
            "element": render(g),
            "leading_b_coefficient": format_rational(g.leading_b_coefficient()),
        }
        if i in basis.filler_sources:
            row["source"] = basis.filler_sources[i]
        rows.append(row)
    lines = [f"p = {args.p}, prime primitive root p1 = {basis.p1}"]
    for r in rows:
        src = f" ({r['source']})" if "source" in r else ""
        lines.append(f"g[{r['degree']}]  {r['provenance']}{src}: {r['element']}")
    return EXIT_OK, rows, "\n".join(lines)


def cmd_snumbers(args):
    x = evaluate_text(args.expr, args.trunc)
    if x.degree > 0:
        _need_trunc(args.trunc, x.degree, "s-numbers")
    s = s_numbers(x, args.trunc)
    rows = [{"partition": w.to_json(), "value": format_rational(v)} for w, v in s.items()]
    text = "\n".join(f"s{r['partition']} = {r['value']}" for r in rows)
    return EXIT_OK, {"expression": args.expr, "degree": x.degree, "s_numbers": rows}, text


def cmd_classify(args):
    check_odd_prime(args.p)
    x = evaluate_text(args.expr, args.trunc)
    _need_trunc(args.trunc, x.degree, "classify")
    report = classify(x, args.p, args.trunc)
    data = report.to_json()
    lines = [f"{args.expr}: degree {report.degree}, p = {report.p}: {report.classification.value}"]
    for w in report.omega_witnesses:
        lines.append(f"  coefficient of alpha{list(w.partition)} = {format_rational(w.value)} (v_p = {w.valuation})")
    for w in report.witnesses:
        lines.append(f"  s{list(w.partition)} = {format_rational(w.value)} = {w.residue} mod {args.p}")
    return EXIT_OK, data, "\n".join(lines)


def cmd_gamma(args):
    w = WeightList.of(args.p, _weights(args.weights))
    _need_trunc(args.trunc, len(w), "gamma")
    x = gamma_p(w, args.trunc)
    data = {"p": args.p, "weights": list(w.weights), "degree": x.degree, "element": render(x)}
    return EXIT_OK, data, render(x)


def load_fixed_data(obj: dict, p: Optional[int], T: int) -> Tuple[SimpleActionData, Optional[GradedElement]]:
    """Parse the fixed-point JSON schema into action data and an optional expected class."""
    if not isinstance(obj, dict):
        raise ActionDataError("fixed-point data must be a JSON object")
    file_p = obj.get("p", p)
    if p is not None and file_p != p:
        raise ActionDataError(f"--p {p} disagrees with p = {file_p} in the data file")
    if "dimension" not in obj or "components" not in obj:
        raise ActionDataError("fixed-point data needs 'dimension' and 'components'")
    comps = []
    for j, c in enumerate(obj["components"]):
        cls = c.get("class", 1)
        cls = evaluate_text(str(cls), T)
        comps.append(component(file_p, cls, c.get("weights", [])))
    data = SimpleActionData(file_p, obj["dimension"], tuple(comps))
    expected = obj.get("expected_class")
    return data, (evaluate_text(str(expected), T) if expected is not None else None)


def cmd_realize(args):
    check_odd_prime(args.p)
    try:
        with open(args.fixed_data) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read fixed-point data: {exc}")
    data, expected = load_fixed_data(obj, args.p, args.trunc)
    _need_trunc(args.trunc, data.dimension, "realize")
    x = realize_class(data, args.trunc)
    out = {"p": data.p, "dimension": data.dimension, "class": render(x), "terms": terms_to_json(x),
           "modulo": f"{data.p}*Omega_U(p)"}
    lines = [f"[M] = {render(x)}  (mod {data.p})"]
    status = EXIT_OK
    if args.check:
        report = classify(x, data.p, args.trunc)
        out["report"] = report.to_json()
        lines.append(f"classification: {report.classification.value}")
        if expected is not None:
            ok = congruent_mod_p_omega(x, expected, data.p, args.trunc)
            out["expected_class"] = render(expected)
            out["congruent_to_expected"] = ok
            lines.append(f"congruent to {render(expected)} mod {data.p}: {ok}")
            if not ok:
                status = EXIT_FAILED
    return status, out, "\n".join(lines)


def cmd_verify(args):
    result = run_suite(args.suite, args.p, args.trunc, args.seed)
    data = result.to_json()
    verdict = "PASS" if result.passed else "FAIL"
    lines = [f"{verdict} {args.suite} (p={args.p}, trunc={result.trunc}, seed={args.seed}): {result.cases} cases, {len(result.failures)} failures"]
    lines += [f"  note: {n}" for n in result.notes]
    lines += [f"  FAILED {f['case']}: expected {f['expected']}, got {f['actual']}" for f in result.failures]
    if not result.passed:
        # failures are always reported in machine-readable form
        return EXIT_FAILED, data, "\n".join(lines) + "\n" + json.dumps(data, indent=2)
    return EXIT_OK, data, "\n".join(lines)


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNC, help="series truncation (default %(default)s)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised suites")

    parser = _Parser(prog="zpcob", description="Formal group law calculus for simple Z/p-actions.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("kseries", cmd_kseries, "the k-series [u]_k")
    sp.add_argument("--k", type=int, required=True)
    sp = add("alpha", cmd_alpha, "coefficient alpha_n^(k) of [u]_k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    add("fgl", cmd_fgl, "coefficients a_ij of the universal group law")
    sp = add("cp", cmd_cp, "the class [CP^n]")
    sp.add_argument("--n", type=int, required=True)
    sp = add("milnor", cmd_milnor, "the Milnor hypersurface H(m,n)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("basis", cmd_basis, "p-local generators up to degree n")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("snumbers", cmd_snumbers, "characteristic numbers of a class")
    sp.add_argument("--expr", required=True)
    sp = add("classify", cmd_classify, "does a class contain a manifold with a simple Z/p-action")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--expr", required=True)
    sp = add("gamma", cmd_gamma, "gamma_p of a weight list")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--weights", required=True)
    sp = add("realize", cmd_realize, "mod-p class of a manifold from its fixed-point data")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--fixed-data", required=True)
    sp.add_argument("--check", action="store_true")
    sp = add("verify", cmd_verify, "run a built-in verification suite")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--suite", choices=SUITES, required=True)
    return parser


def run_command(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one command; returns (exit status, output text)."""
    parser = build_parser()
    captured = io.StringIO()
    try:
        with contextlib.redirect_stdout(captured):
            args = parser.parse_args(list(argv))
    except UsageError as exc:
        return EXIT_USAGE, str(exc)
    except SystemExit as exc:  # --help
        return (exc.code or 0), captured.getvalue().rstrip("\n")
    if args.command is None:
        return EXIT_USAGE, parser.format_usage().rstrip("\n")
    if not 1 <= args.trunc <= MAX_TRUNC:
        return EXIT_USAGE, f"--trunc must be between 1 and {MAX_TRUNC}"
    try:
        status, data, text = args.func(args)
    except UsageError as exc:
        return EXIT_USAGE, str(exc)
    except (ExpressionError, ParameterError, SeriesError, ActionDataError, BasisError, ObstructionError) as exc:
        return EXIT_USAGE, f"error: {exc}"
    if args.json:
        return status, json.dumps(data, indent=2)
    return status, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, text = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if status == EXIT_USAGE else sys.stdout
    if text:
        print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
