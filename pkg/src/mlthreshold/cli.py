"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 infeasible or inconsistent
parameters, 3 verification mismatch.
"""

import argparse
import csv
from dataclasses import asdict
import io
import json
import logging
import math
import re
import sys
from fractions import Fraction

from . import asymptotic, channel_sim, confusability, gaussian, hamming_space, mds, threshold
from .exactmath import ball_volume, format_float, ratio_to_str, to_decimal
from .threshold import ExactCurvePoint

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3

# above this length the exact threshold run takes minutes to hours
LONG_RUN_LENGTH = 512

CURVE_FIELDS = ("t", "p", "value_exact", "value_float")


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_q(text):
    """Alphabet size as an integer or b^e (also b**e), optionally +/- an offset."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:(?:\^|\*\*)\s*(\d+)\s*)?(?:([+-])\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse alphabet size {text!r}")
    base, exp, sign, off = m.groups()
    q = int(base) ** int(exp) if exp else int(base)
    if off:
        q = q + int(off) if sign == "+" else q - int(off)
    if q < 2:
        raise argparse.ArgumentTypeError("alphabet size must be >= 2")
    return q


def _fmt_float(x):
    return format_float(x) if math.isfinite(x) else str(x)


def curve_rows(points):
    for pt in points:
        yield {
            "t": pt.t,
            "p": ratio_to_str(pt.p),
            "value_exact": "" if pt.value is None else ratio_to_str(pt.value),
            "value_float": _fmt_float(pt.value_float),
        }


def emit_curve(points, fmt="csv"):
    """Serialise curve points; rationals become exact 'num/den' strings."""
    rows = list(curve_rows(points))
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, CURVE_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def report_to_json(rep):
    out = {
        "q": to_decimal(rep.q), "n": rep.n, "k": rep.k, "d": rep.d,
        "search": rep.search,
        "bracket_low": ratio_to_str(rep.bracket_low),
        "bracket_high": ratio_to_str(rep.bracket_high),
        "bracket_float": [float(rep.bracket_low), float(rep.bracket_high)],
        "t_cross": rep.t_cross,
        "slope": _fmt_float(rep.slope),
        "stated_slope_formula": _fmt_float(gaussian.stated_threshold_slope(rep.d, float(rep.bracket_high))),
        "monotone": rep.monotone,
        "violations": rep.violations,
        "fallback": rep.fallback,
        "points": list(curve_rows(rep.points)),
    }
    return json.dumps(out, indent=1) + "\n"


def _params(args):
    return mds.validate(args.q, args.n, args.k, getattr(args, "d", None))


def _needs_confirmation(args, n):
    if n > LONG_RUN_LENGTH and not args.confirm_long_run:
        raise UsageError(f"n={n} is a long exact run; pass --confirm-long-run "
                         f"(and ideally --checkpoint FILE)")


def cmd_ball(args):
    return to_decimal(ball_volume(args.q, args.n, args.t)) + "\n"


def cmd_wenum(args):
    dist = mds.weight_distribution(_params(args))
    if args.format == "json":
        return json.dumps([{"l": l, "A_l": to_decimal(a)} for l, a in enumerate(dist)], indent=1) + "\n"
    return "l,A_l\n" + "".join(f"{l},{to_decimal(a)}\n" for l, a in enumerate(dist))


def cmd_nu(args):
    if not 0 <= args.w <= args.n or not 0 <= args.t <= args.n:
        raise ValueError("need 0 <= w, t <= n")
    value = confusability.nu(args.q, args.n, args.w, args.t)
    if args.brute:
        brute = confusability.nu_bruteforce(args.q, args.n, args.w, args.t)
        if brute != value:
            raise Mismatch(f"closed form {value} != enumeration {brute}")
    return to_decimal(value) + "\n"


def _checkpoint(args, params):
    return threshold.Checkpoint(args.checkpoint, params) if args.checkpoint else None


def cmd_g(args):
    params = _params(args)
    _needs_confirmation(args, params.n)
    t_min = 0 if args.t_min is None else args.t_min
    t_max = params.n if args.t_max is None else args.t_max
    if not 0 <= t_min <= t_max <= params.n:
        raise ValueError(f"bad radius range [{t_min}, {t_max}]")
    pts = threshold.curve(params, t_min, t_max, jobs=args.jobs, checkpoint=_checkpoint(args, params))
    return emit_curve(pts, args.format)


def cmd_threshold(args):
    params = _params(args)
    _needs_confirmation(args, params.n)
    rep = threshold.find_threshold(
        params, search=args.search, t_min=args.t_min, t_max=args.t_max, jobs=args.jobs,
        checkpoint=_checkpoint(args, params),
        progress=lambda t, done, total: logging.debug("t=%d: %d/%d terms", t, done, total))
    return report_to_json(rep)


def cmd_bound(args):
    orientation = gaussian.INCREASING_SET if args.theorem == 1 else gaussian.ERROR_PROBABILITY
    spec = gaussian.BoundCurveSpec(args.gap, args.pivot, orientation)
    pts = [ExactCurvePoint(i, Fraction(i, args.steps), None, min(max(v, 0.0), 1.0))
           for i, (_, v) in enumerate(gaussian.bound_curve(spec, args.steps), 1)]
    return emit_curve(pts, args.format)


def _iota_str(v):
    return "-inf" if v == asymptotic.NEG_INF else ratio_to_str(v)


def cmd_asymptotic(args):
    params = _params(args)
    est = asymptotic.asymptotic_threshold(params)
    curve = asymptotic.asymptotic_curve(params)
    out = {
        "delta": ratio_to_str(params.delta),
        "threshold_estimate": ratio_to_str(est),
        "threshold_estimate_float": float(est),
        "curve": [[pt.t, _iota_str(pt.iota)] for pt in curve],
    }
    return json.dumps(out, indent=1) + "\n"


def cmd_simulate(args):
    code = channel_sim.rs_build(args.q, args.n, args.k)
    rep = channel_sim.estimate_pe(code, args.p, args.trials, args.seed, jobs=args.jobs)
    return json.dumps(asdict(rep), indent=1) + "\n"


def cmd_verify(args):
    what = args.what
    lines = []
    if what == "margulis":
        bad = hamming_space.check_margulis_russo(args.trials, args.seed)
        lines.append(f"margulis-russo: {args.trials - len(bad)}/{args.trials} residuals identically zero")
        if bad:
            raise Mismatch("\n".join(lines))
    elif what == "pe":
        code = channel_sim.rs_build(args.q, args.n, args.k)
        rep = channel_sim.theorem2_bracketing(code)
        lines.append(f"p_c={rep.p_c:.12g} d={rep.d} slack_below={rep.min_slack_below:.3g} "
                     f"slack_above={rep.min_slack_above:.3g}")
        if not rep.holds:
            raise Mismatch("\n".join(lines))
    elif what == "wenum":
        params = _params(args)
        code = channel_sim.rs_build(args.q, args.n, args.k)
        formula = mds.weight_distribution(params)
        brute = channel_sim.codebook_weight_distribution(code)
        lines.append(f"formula={formula} enumeration={brute}")
        if formula != brute:
            raise Mismatch("\n".join(lines))
    elif what == "nu":
        bad = []
        for w in range(args.n + 1):
            row = confusability.nu_bruteforce_row(args.q, args.n, w)
            bad += [(w, t) for t in range(args.n + 1) if confusability.nu(args.q, args.n, w, t) != row[t]]
        lines.append(f"nu: {(args.n + 1) ** 2 - len(bad)}/{(args.n + 1) ** 2} (w, t) pairs agree")
        if bad:
            raise Mismatch("\n".join(lines + [f"mismatch at {bad}"]))
    return "\n".join(lines) + "\n"


def build_parser():
    ap = _Parser(prog="mlthreshold", description="Exact ML decoding threshold estimates for MDS codes.")
    ap.add_argument("--out", help="write output here instead of stdout")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def code_args(p, k=True):
        p.add_argument("--q", type=parse_q, required=True)
        p.add_argument("--n", type=int, required=True)
        if k:
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--d", type=int)

    def fmt(p, default="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default)

    p = sub.add_parser("ball", help="Hamming ball volume")
    code_args(p, k=False)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("wenum", help="MDS weight distribution")
    code_args(p)
    fmt(p)
    p.set_defaults(func=cmd_wenum)

    p = sub.add_parser("nu", help="confusability count nu_t(w)")
    code_args(p, k=False)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="cross-check by enumeration")
    p.set_defaults(func=cmd_nu)

    for name, func in (("g", cmd_g), ("threshold", cmd_threshold)):
        p = sub.add_parser(name, help="error-ratio curve" if name == "g" else "1/2-crossing of the error ratio")
        code_args(p)
        p.add_argument("--t-min", type=int)
        p.add_argument("--t-max", type=int)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--checkpoint", help="resumable file of finished terms")
        p.add_argument("--confirm-long-run", action="store_true")
        if name == "g":
            fmt(p)
        else:
            p.add_argument("--search", choices=("linear", "bisect", "bisection"), default="bisection")
        p.set_defaults(func=func)

    p = sub.add_parser("bound", help="sharp-threshold bound curve")
    p.add_argument("--theorem", type=int, choices=(1, 2), default=2)
    p.add_argument("--gap", "--d", type=float, required=True, help="d (theorem 2) or Delta (theorem 1)")
    p.add_argument("--pivot", "--pc", type=float, required=True, help="p_c (theorem 2) or theta (theorem 1)")
    p.add_argument("--steps", type=int, default=100)
    fmt(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("asymptotic", help="large-q exponent and threshold estimate")
    code_args(p)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("simulate", help="Monte-Carlo ML error rate on a small RS code")
    code_args(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="oracle cross-checks")
    p.add_argument("what", choices=("margulis", "pe", "wenum", "nu"))
    p.add_argument("--q", type=parse_q)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify" and args.what != "margulis":
            needed = ("q", "n") + (("k",) if args.what != "nu" else ())
            missing = [f"--{a}" for a in needed if getattr(args, a) is None]
            if missing:
                raise UsageError(f"verify {args.what} needs {' '.join(missing)}")
    except UsageError as exc:
        print(f"mlthreshold: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text = args.func(args)
        code = EXIT_OK
    except UsageError as exc:
        print(f"mlthreshold: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Mismatch as exc:
        text, code = str(exc) + "\n", EXIT_MISMATCH
        print("mlthreshold: verification mismatch", file=sys.stderr)
    except ValueError as exc:
        print(f"mlthreshold: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())
