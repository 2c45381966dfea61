"""Command line front end: ``betamatch <command> --field F ...``.

Exit codes: 0 success, 1 domain error (error class name on stderr),
2 usage error.  An alpha outside [0, 1] counts as a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import dynamics, multinacci, paramsweep, quadratic, stats, transitions, verify
from .errors import AlphaOutOfRange, BetaMatchError, UsageError
from .fields import NAMES, resolve_field
from .numberfield import parse_rational


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range(text):
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N0:N1, got {text!r}") from None


def _interval(text):
    try:
        lo, hi = text.split(":")
        return parse_rational(lo), parse_rational(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _word(text):
    try:
        return [int(c) for c in text.replace(",", "")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected digits, got {text!r}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


# --------------------------------------------------------------------------
# commands

def cmd_orbit(args, f):
    plus, minus = dynamics.critical_orbits(f, args.alpha, args.steps)
    if args.out:
        _write(args.out, _dump({"alpha": str(args.alpha), "plus": plus.to_json(), "minus": minus.to_json()}))
    print("n\tT^n(0+)\tdigit\tT^n(0-)\tdigit")
    for n in range(args.steps + 1):
        dp = plus.digits[n] if n < args.steps else ""
        dm = minus.digits[n] if n < args.steps else ""
        print(f"{n}\t{plus.points[n].value.to_decimal(args.digits)}\t{dp}\t"
              f"{minus.points[n].value.to_decimal(args.digits)}\t{dm}")


def cmd_match(args, f):
    res = dynamics.matching_index(f, args.alpha, args.bound,
                                  discontinuity="either" if args.either_side else "limit")
    print(res)
    if args.trace and res.difference_trace:
        for n, d in enumerate(res.difference_trace):
            print(f"D_{n} = {d.to_decimal(args.digits)}")


def cmd_markov(args, f):
    res = dynamics.markov_test(f, args.alpha, args.bound)
    print(res)
    if res.finite:
        print(f"shared cycle: {res.shared_cycle}")


def cmd_density(args, f):
    h = dynamics.density(f, args.alpha, args.truncation, start=args.start)
    lines = ["lo\thi\tvalue"]
    for i, v in enumerate(h.values):
        lines.append(f"{h.breakpoints[i].to_decimal(args.digits)}\t"
                     f"{h.breakpoints[i + 1].to_decimal(args.digits)}\t{v.to_decimal(args.digits)}")
    _write(args.out, "\n".join(lines) + "\n")
    if h.flags:
        print("flags: " + ", ".join(h.flags), file=sys.stderr)


def _progress(args):
    if not args.verbose:
        return None

    def report(n, matched, live):
        print(f"depth {n}: {matched} matched, {live} live", file=sys.stderr)
    return report


def _run_sweep(args, f):
    return paramsweep.sweep(f, args.depth, region=args.region, jobs=args.jobs,
                            progress=_progress(args))


def cmd_sweep(args, f):
    res = _run_sweep(args, f)
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    text = _dump(paramsweep.to_json(res)) if fmt == "json" else paramsweep.to_csv(res)
    if args.out:
        _write(args.out, text)
    print(f"{len(res.matched)} matching intervals, {len(res.unresolved)} unresolved pieces, "
          f"matched measure {res.matched_measure().to_decimal(args.digits)}")


def _base(text):
    if text is None or text == "beta":
        return None
    return parse_rational(text) if "/" in text or text.isdigit() else text


def cmd_stats(args, f):
    res = _run_sweep(args, f)
    hist = stats.size_histogram(res, _base(args.base))
    est = None
    try:
        est = stats.box_dimension_estimate(res, hist=hist, fit_range=args.fit)
    except BetaMatchError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
    print("exact sizes: " + " ".join(str(c) for c in hist.exact_counts[:args.show]))
    print("a_n: " + " ".join(f"{n}:{c}" for n, c in hist.log_bins))
    if args.reference:
        counts = hist.exact_counts if args.reference == "totient" else hist.log_counts
        print(stats.reference_compare(counts, args.reference))
    if est is not None:
        print(est.summary())
    form = stats.quadratic_form(f)
    if form is not None:
        try:
            print(f"log d / log beta = {stats.quadratic_dimension_formula(f)}")
        except BetaMatchError:
            pass
    if args.out:
        _write(args.out, _dump(stats.stats_json(hist, est)))
    if args.plot:
        _write(args.plot, stats.plot_tsv(hist))


def cmd_graph(args, f):
    if args.grid:
        alphas = dynamics.rational_grid(Fraction(0), Fraction(1), args.grid, closed=False)
        g = transitions.build_graph(f, alphas, depth=args.depth, collapse_prematch=not args.no_collapse)
    else:
        g = transitions.build_graph(f, _run_sweep(args, f), collapse_prematch=not args.no_collapse)
    dot = transitions.export_dot(g)
    if args.out:
        _write(args.out, dot)
    if args.json:
        _write(args.json, transitions.to_json_text(g) + "\n")
    rep = transitions.finiteness_check(g, f)
    print(f"{len(g.nodes)} difference nodes, {len(g.edges)} edges; {rep}")
    if not args.out:
        sys.stdout.write(dot)


def cmd_quadratic(args, f):
    case = quadratic.quadratic_case(f)
    print(f"case {case.label}: k={case.k}, d={case.d}, gamma={case.gamma.to_decimal(args.digits)}, "
          f"circle length {case.circle_length.to_decimal(args.digits)}")
    if args.alpha is None:
        return
    pm = quadratic.plateau_map(f, case, args.alpha)
    print(f"{len(pm.plateaus)} plateaus, slope {pm.slope.to_decimal(args.digits)} off plateaus")
    if args.out:
        _write(args.out, quadratic.plateau_json(pm) + "\n")
    x = f(args.alpha) if args.x is None else args.x
    esc = quadratic.escape_depth(f, case, args.alpha, x, args.bound)
    print(f"escape from x={f(x).to_decimal(args.digits)}: {esc}")
    if args.word:
        comps = quadratic.cylinder_components(f, case, args.alpha, args.word)
        L = case.circle_length
        for c in comps:
            print(f"[{c.start.to_decimal(args.digits)}, {c.end(L).to_decimal(args.digits)})"
                  + (" wraps" if c.wraps(L) else ""))


def cmd_predict(args, f):
    print(multinacci.predict_matching(f, args.alpha))
    if args.trace:
        _write(args.out, multinacci.fiber_trace_json(f, args.alpha, args.bound) + "\n")


def cmd_verify(args, f=None):
    results = verify.run_all(only=set(args.only) if args.only else None)
    sys.stdout.write(verify.format_table(results))
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "orbit": cmd_orbit, "match": cmd_match, "markov": cmd_markov, "density": cmd_density,
    "sweep": cmd_sweep, "stats": cmd_stats, "graph": cmd_graph, "quadratic": cmd_quadratic,
    "predict": cmd_predict, "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="betamatch", description="Matching for x -> beta*x + alpha (mod 1).")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_, alpha=True, field=True, digits=True):
        sp = sub.add_parser(name, help=help_)
        if field:
            sp.add_argument("--field", required=True,
                            help=f"field JSON file or bundled name ({', '.join(NAMES)})")
        if alpha:
            sp.add_argument("--alpha", type=_rational, required=alpha == "required" or alpha is True,
                            help="rational shift p/q in [0, 1]")
        if digits:
            sp.add_argument("--digits", type=int, default=12, help="decimal digits in output")
        return sp

    def add_sweep_opts(sp, depth_default=None):
        sp.add_argument("--depth", type=int, required=depth_default is None, default=depth_default)
        sp.add_argument("--region", type=_interval, default=None, help="alpha range LO:HI")
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--verbose", action="store_true")

    sp = add("orbit", "critical orbits of 0+ and 0-")
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--out", help="orbit dump (JSON)")

    sp = add("match", "matching index")
    sp.add_argument("--bound", type=int, default=50)
    sp.add_argument("--trace", action="store_true", help="print the difference trace")
    sp.add_argument("--either-side", action="store_true",
                    help="let an orbit hitting the discontinuity continue from either side")

    sp = add("markov", "finite critical orbits")
    sp.add_argument("--bound", type=int, default=50)

    sp = add("density", "truncated invariant density (TSV)")
    sp.add_argument("--truncation", type=int, default=30)
    sp.add_argument("--start", type=int, choices=(0, 1), default=0)
    sp.add_argument("--out")

    sp = add("sweep", "matching intervals up to a depth", alpha=False)
    add_sweep_opts(sp)
    sp.add_argument("--out", help="CSV or JSON (by extension or --format)")
    sp.add_argument("--format", choices=("csv", "json"))

    sp = add("stats", "interval size statistics and dimension estimate", alpha=False)
    add_sweep_opts(sp)
    sp.add_argument("--base", default=None, help="log base for binning (default beta)")
    sp.add_argument("--fit", type=_range, default=None, help="fit range N0:N1")
    sp.add_argument("--reference", choices=("totient", "A038199"))
    sp.add_argument("--show", type=int, default=15)
    sp.add_argument("--out", help="statistics (JSON)")
    sp.add_argument("--plot", help="plot data n, log_b a_n (TSV)")

    sp = add("graph", "difference transition graph (DOT)", alpha=False)
    add_sweep_opts(sp)
    sp.add_argument("--grid", type=int, default=None, help="sample this many alphas instead of sweeping")
    sp.add_argument("--no-collapse", action="store_true", help="keep states one step before matching")
    sp.add_argument("--out", help="DOT file")
    sp.add_argument("--json", help="graph (JSON)")

    sp = add("quadratic", "plateau map, escape depth and cylinders", alpha="optional")
    sp.add_argument("--x", type=_rational, default=None, help="start point (default alpha = T(0+))")
    sp.add_argument("--bound", type=int, default=50)
    sp.add_argument("--word", type=_word, default=None, help="cylinder word, e.g. 012")
    sp.add_argument("--out", help="plateau map (JSON)")

    sp = add("predict", "closed-form prediction for multinacci slopes")
    sp.add_argument("--trace", action="store_true", help="write the fiber-state trace (JSON)")
    sp.add_argument("--bound", type=int, default=30)
    sp.add_argument("--out")

    sp = add("verify", "run the reproduction suite", alpha=False, field=False, digits=False)
    sp.add_argument("--only", type=lambda s: [int(x) for x in s.split(",")], default=None,
                    help="comma separated criterion numbers")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a command is required")
        if args.command == "verify":
            return cmd_verify(args)
        try:
            f = resolve_field(args.field)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        rc = COMMANDS[args.command](args, f)
        return 0 if rc is None else rc
    except (UsageError, AlphaOutOfRange) as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 2
    except BetaMatchError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
