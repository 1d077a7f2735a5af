"""Command-line frontend.

stdout carries machine-readable results (text, JSON, or DOT); progress
and diagnostics go to stderr.  Exit codes: 0 success, 2 precondition
violations (bad input, infeasible request), 3 verification failures.
"""

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import wraps

import click

from . import construct as construct_mod
from . import divgraph, golden, lucas
from .apparition import index_divisible, regularity
from .eds import EdsContext
from .errors import FactorizationFailure, PreconditionError, VerificationError
from .literals import format_curve, format_point, parse_curve, parse_point
from .numutil import factorize


def _exit_codes(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PreconditionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except VerificationError as exc:
            click.echo(f"verification failure: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _context(curve_text, point_text, allow_singular=False):
    curve = parse_curve(curve_text, allow_singular=allow_singular)
    point = parse_point(point_text)
    return EdsContext(curve, point, check_nontorsion=not allow_singular)


curve_opt = click.option("--curve", required=True, help="curve literal [a1,a2,a3,a4,a6]")
point_opt = click.option("--point", required=True, help="point literal (x,y) or O")
bound_opt = click.option("--bound", type=int, default=100, show_default=True)
format_opt = click.option(
    "--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text"
)


@click.group()
def main():
    """Elliptic divisibility sequences and their index-divisibility graphs."""


@main.command()
@curve_opt
@point_opt
@format_opt
@click.option("--singular", is_flag=True, help="allow a singular cubic model")
@_exit_codes
def info(curve, point, fmt, singular):
    """Curve invariants, reduction types, and the regularity report."""
    ctx = _context(curve, point, allow_singular=singular)
    E = ctx.curve
    data = {
        "curve": format_curve(E),
        "point": format_point(ctx.point),
        "disc": E.disc,
        "b_invariants": [E.b2, E.b4, E.b6, E.b8],
        "c_invariants": [E.c4, E.c6],
        "singular": E.is_singular,
        "minimality": E.minimality_heuristic() if not E.is_singular else None,
    }
    try:
        bad = {} if E.is_singular else {
            p: E.reduction_kind(p) for p, _ in factorize(abs(E.disc)) }
        data["bad_primes"] = bad
    except FactorizationFailure:
        data["bad_primes"] = None
    if not E.is_singular:
        try:
            rep = regularity(ctx)
            data["regularity"] = {
                "ir_flags": list(rep.ir_flags),
                "two_regular": rep.two_regular,
                "nonsingular_at_bad": rep.nonsingular_at_bad,
                "regular": rep.regular,
            }
        except FactorizationFailure:
            data["regularity"] = None
    if fmt == "json":
        click.echo(json.dumps(data))
        return
    for key, value in data.items():
        click.echo(f"{key}: {value}")


@main.command()
@curve_opt
@point_opt
@bound_opt
@click.option("--mod", "modulus", type=int, default=None,
              help="print residues of D_n instead of exact terms")
@click.option("--singular", is_flag=True)
@_exit_codes
def eds(curve, point, bound, modulus, singular):
    """Sequence terms, one 'n<TAB>D_n' per line."""
    ctx = _context(curve, point, allow_singular=singular)
    for n in range(1, bound + 1):
        value = ctx.term(n)
        if modulus is not None:
            value %= modulus
        click.echo(f"{n}\t{value}")


def _divset_chunk(args):
    coeffs, coords, lo, hi, method = args
    from .curves import Point, WeierstrassCurve

    ctx = EdsContext(WeierstrassCurve(*coeffs), Point(*coords))
    return [n for n in range(lo, hi) if index_divisible(ctx, n, method)]


@main.command()
@curve_opt
@point_opt
@bound_opt
@format_opt
@click.option("--method", type=click.Choice(["auto", "fast", "exact"]), default="auto")
@click.option("--jobs", type=int, default=1, show_default=True)
@_exit_codes
def divset(curve, point, bound, fmt, method, jobs):
    """The index-divisibility set S(D) up to the bound."""
    ctx = _context(curve, point)
    if jobs > 1:
        coeffs = ctx.curve.coefficients()
        coords = (ctx.point.x, ctx.point.y)
        step = max(1, (bound + jobs - 1) // jobs)
        chunks = [(coeffs, coords, lo, min(lo + step, bound + 1), method)
                  for lo in range(1, bound + 1, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_divset_chunk, chunks))
        elements = sorted(n for part in parts for n in part)
    else:
        elements = divgraph.enumerate_set(ctx, bound, method).elements
    if fmt == "json":
        click.echo(json.dumps({"bound": bound, "elements": elements}))
    else:
        click.echo(" ".join(str(n) for n in elements))


@main.command()
@curve_opt
@point_opt
@bound_opt
@format_opt
@click.option("--generalized", is_flag=True)
@_exit_codes
def arrows(curve, point, bound, fmt, generalized):
    """The arrow graph on S(D) up to the bound, with classifications."""
    ctx = _context(curve, point)
    if fmt == "dot":
        divset_obj = divgraph.enumerate_set(ctx, bound)
        click.echo(divgraph.to_dot(divset_obj, divgraph.arrows(divset_obj)), nl=False)
        return
    report = divgraph.graph_report(ctx, bound, generalized=generalized)
    if fmt == "json":
        click.echo(json.dumps(report))
        return
    for a in report["arrows"]:
        extra = ""
        if a["kind"] == "nonstandard":
            lhs = a["lhs"]
            extra = f" t={a['t']} p0={a['p0']} lhs={lhs[0]}/{lhs[1]}"
        click.echo(f"{a['from']} -> {a['to']} w={a['weight']} {a['kind']}{extra}")


@main.command()
@curve_opt
@point_opt
@bound_opt
@format_opt
@click.option("--generalized", is_flag=True)
@click.option("--singular", is_flag=True)
@_exit_codes
def aliquot(curve, point, bound, fmt, generalized, singular):
    """Aliquot cycles under p -> r_p from primes up to the bound."""
    ctx = _context(curve, point, allow_singular=singular)
    cycles = divgraph.aliquot_cycles(ctx, bound, generalized=generalized)
    if fmt == "json":
        click.echo(json.dumps({"cycles": [c.primes for c in cycles]}))
        return
    for c in cycles:
        click.echo("(" + ",".join(str(p) for p in c.primes) + ")")


@main.command()
@curve_opt
@bound_opt
@format_opt
@_exit_codes
def anomalous(curve, bound, fmt):
    """Anomalous primes of the curve up to the bound."""
    E = parse_curve(curve)
    primes = divgraph.anomalous_primes(E, bound)
    if fmt == "json":
        click.echo(json.dumps({"anomalous": primes}))
    else:
        click.echo(" ".join(str(p) for p in primes))


@main.command()
@curve_opt
@point_opt
@click.argument("source", type=int)
@click.argument("target", type=int)
@format_opt
@_exit_codes
def classify(curve, point, source, target, fmt):
    """Classify the arrow SOURCE -> TARGET."""
    ctx = _context(curve, point)
    if target % source != 0 or target <= source:
        raise PreconditionError("target must be a proper multiple of source")
    cls = divgraph.classify_arrow(ctx, divgraph.Arrow(source, target))
    data = {"from": source, "to": target, "weight": target // source,
            "kind": cls.kind}
    if cls.kind == "nonstandard":
        data.update({"t": cls.t, "p0": cls.p0,
                     "lhs": [cls.lhs.numerator, cls.lhs.denominator],
                     "bound_ok": cls.bound_ok})
    if fmt == "json":
        click.echo(json.dumps(data))
    else:
        click.echo(" ".join(f"{k}={v}" for k, v in data.items()))


@main.command("lucas")
@click.option("-a", "coeff_a", type=int, required=True)
@click.option("-b", "coeff_b", type=int, required=True)
@bound_opt
@format_opt
@click.option("--what", type=click.Choice(["terms", "divset", "arrows", "compare"]),
              default="divset", show_default=True)
@_exit_codes
def lucas_cmd(coeff_a, coeff_b, bound, fmt, what):
    """Lucas sequence terms, divisibility set, and arrow comparison."""
    a, b = coeff_a, coeff_b
    if what == "terms":
        for n, t in enumerate(lucas.lucas_terms(a, b, bound), start=1):
            click.echo(f"{n}\t{t}")
        return
    if what == "divset":
        elements = lucas.lucas_divset(a, b, bound)
        if fmt == "json":
            click.echo(json.dumps({"bound": bound, "elements": elements}))
        else:
            click.echo(" ".join(str(n) for n in elements))
        return
    if what == "arrows":
        for n in lucas.lucas_divset(a, b, bound):
            pred = lucas.smyth_arrows(a, b, n, bound)
            for m in pred.targets:
                click.echo(f"{n} -> {m} w={m // n}")
        return
    diffs = lucas.compare_smyth(a, b, bound)
    if fmt == "json":
        click.echo(json.dumps({"diffs": diffs}))
    else:
        click.echo("empty diff" if not diffs else json.dumps(diffs))
    if diffs:
        sys.exit(3)


@main.command()
@click.argument("presc_file", type=click.File("r"), default="-")
@click.option("--symmetric", is_flag=True,
              help="center CRT coefficients around 0")
@format_opt
@_exit_codes
def construct(presc_file, symmetric, fmt):
    """Build a curve with prescribed ranks from lines 'p n k'."""
    data = construct_mod.parse_prescriptions(presc_file.read())
    click.echo(f"searching {len(data)} prescriptions...", err=True)
    result = construct_mod.crt_curve(data, symmetric=symmetric)
    report = construct_mod.verify_construction(result)
    payload = {
        "curve": format_curve(result.curve),
        "point": format_point(result.point),
        "records": result.records,
        "verification": report,
    }
    if fmt == "json":
        click.echo(json.dumps(payload))
    else:
        click.echo(payload["curve"])
        click.echo(payload["point"])
        click.echo(json.dumps(report))
    if not report["ok"]:
        sys.exit(3)


@main.command("verify-paper")
@click.option("--filter", "name_filter", default=None,
              help="substring filter on check names")
@_exit_codes
def verify_paper(name_filter):
    """Re-run the published-value reference checks."""
    results = golden.run_checks(name_filter)
    if not results:
        click.echo(f"no checks match filter {name_filter!r}", err=True)
        sys.exit(2)
    failed = 0
    for name, ok, detail in results:
        click.echo(f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok else f": {detail}"))
        failed += 0 if ok else 1
    click.echo(f"{len(results) - failed}/{len(results)} checks passed", err=True)
    if failed:
        sys.exit(3)


if __name__ == "__main__":
    main()
