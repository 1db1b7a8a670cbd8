"""Command-line interface.

    fibtools fib {n|sum|table|identity|general|tribonacci} ...
    fibtools zeck {encode|decode|code} ...
    fibtools nt {gcd|euclid|factor|theorem6|theorem7|primitive|divides} ...
    fibtools golden {constants|section|rect|spiral|pyramid} ...
    fibtools ta {retrace|targets|zones|box|alternation|zigzag|pivots} ...

Every leaf command accepts ``--format {text,json,plot}``, ``--precision N``
and ``--plot PATH``.  Exit status: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from dataclasses import asdict
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from . import golden, numtheory, sequence, ta, zeckendorf
from .datafiles import RetracementGrid, TimeZoneSet, emit_plot_data, parse_ohlc_csv
from .errors import FibError

PRICE_PLACES = 3
RATIO_PLACES = 6


class UsageError(Exception):
    pass


def _json_default(obj):
    if isinstance(obj, Decimal):
        return int(obj) if obj == obj.to_integral_value() and obj.as_tuple().exponent >= 0 else float(obj)
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, (dt.date,)):
        return obj.isoformat()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default, ensure_ascii=False)


class Result:
    """What a command produced: text lines, a JSON record, and optional plot data."""

    def __init__(self, text: str, record=None, plot=None):
        self.text = text
        self.record = record if record is not None else text
        self.plot = plot


def _precision(args, default: int) -> int:
    return default if args.precision is None else args.precision


def _date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def _point(text: str) -> ta.PricePoint:
    try:
        return ta.PricePoint.parse(text)
    except FibError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _decimal(text: str) -> Decimal:
    try:
        return Decimal(text)
    except ArithmeticError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _pair(text: str) -> tuple[Decimal, Decimal]:
    try:
        a, b = text.split(":")
        return Decimal(a), Decimal(b)
    except (ValueError, ArithmeticError):
        raise argparse.ArgumentTypeError(f"expected MOVE:REACTION, got {text!r}") from None


# fib ----------------------------------------------------------------------

def cmd_fib_n(args) -> Result:
    fn = {"iterative": sequence.fib, "fast": sequence.fib_fast, "binet": sequence.binet_nearest}
    values = [(n, fn[args.method](n)) for n in args.n]
    if len(values) == 1:
        return Result(str(values[0][1]), {"n": values[0][0], "value": values[0][1]})
    return Result(
        "\n".join(f"{n} : {v}" for n, v in values),
        [{"n": n, "value": v} for n, v in values],
    )


def cmd_fib_sum(args) -> Result:
    v = sequence.sum_first(args.n)
    return Result(str(v), {"n": args.n, "sum": v})


def cmd_fib_table(args) -> Result:
    places = _precision(args, RATIO_PLACES)
    rows = [(s.n, s.exact.numerator, s.ratio) for s in sequence.ratio_table(args.n_max, places)]
    text = "\n".join(f"{n}\t{u}\t{r}" for n, u, r in rows)
    return Result(text, [{"n": n, "value": u, "ratio": r} for n, u, r in rows])


def cmd_fib_identity(args) -> Result:
    residual = sequence.verify_identity(args.identity, *args.params)
    return Result(str(residual), {"identity": args.identity, "params": args.params, "residual": residual})


def cmd_fib_general(args) -> Result:
    spec = sequence.GeneralizedSpec(args.alpha, args.beta)
    term = sequence.generalized_term(spec, args.n)
    total = sequence.generalized_sum(spec, args.n)
    return Result(f"b{args.n} = {term}\nsum = {total}", {"n": args.n, "term": term, "sum": total})


def cmd_fib_tribonacci(args) -> Result:
    v = sequence.tribonacci(tuple(args.seeds), args.n)
    return Result(str(v), {"n": args.n, "value": v})


# zeck ---------------------------------------------------------------------

def cmd_zeck_encode(args) -> Result:
    r = zeckendorf.zeck_encode(args.value)
    return Result(r.render(), {"value": args.value, "indices": list(r.indices)})


def cmd_zeck_decode(args) -> Result:
    v = zeckendorf.zeck_decode(args.indices)
    return Result(str(v), {"indices": args.indices, "value": v})


def cmd_zeck_code(args) -> Result:
    if args.decode:
        v = zeckendorf.fib_code_decode(args.item)
        return Result(str(v), {"codeword": args.item, "value": v})
    try:
        n = int(args.item)
    except ValueError:
        raise UsageError(f"expected an integer, got {args.item!r}") from None
    bits = zeckendorf.fib_code(n)
    return Result(bits, {"value": n, "codeword": bits})


# nt -----------------------------------------------------------------------

def cmd_nt_gcd(args) -> Result:
    d, v = numtheory.fib_gcd(args.m, args.n)
    return Result(f"u{d} = {v}", {"m": args.m, "n": args.n, "d": d, "value": v})


def cmd_nt_euclid(args) -> Result:
    trace = numtheory.euclid_trace(args.a, args.b)
    lines = [f"{a} = {q} * {b} + {r}" for a, b, q, r in trace.steps]
    lines.append(f"steps = {trace.count}, gcd = {trace.gcd}")
    return Result(
        "\n".join(lines),
        {
            "steps": [dict(zip(("dividend", "divisor", "quotient", "remainder"), s)) for s in trace.steps],
            "count": trace.count,
            "gcd": trace.gcd,
        },
    )


def cmd_nt_factor(args) -> Result:
    facts = [(n, numtheory.factorize_fib(n)) for n in args.n]
    text = "\n".join(f.render(n, superscript=args.superscript) for n, f in facts)
    record = [
        {"n": n, "value": f.subject, "factors": [[p, e] for p, e in f.factors]} for n, f in facts
    ]
    return Result(text, record[0] if len(record) == 1 else record)


def cmd_nt_theorem6(args) -> Result:
    w = numtheory.theorem6_witness(args.p)
    return Result(
        f"{w.p} | u{w.index} = {w.divided_value} ({w.side.value})",
        {"p": w.p, "side": w.side.value, "index": w.index, "divided_value": w.divided_value},
    )


def cmd_nt_theorem7(args) -> Result:
    ok = numtheory.theorem7_check(args.p)
    q = 2 * args.p - 1
    return Result(f"{q} | u{args.p}: {str(ok).lower()}", {"p": args.p, "divisor": q, "holds": ok})


def cmd_nt_primitive(args) -> Result:
    primes = sorted(numtheory.primitive_divisors(args.n))
    return Result(" ".join(map(str, primes)) or "(none)", {"n": args.n, "primes": primes})


def cmd_nt_divides(args) -> Result:
    value_div, index_div = numtheory.divides_iff(args.m, args.n)
    return Result(
        f"u{args.m} | u{args.n}: {str(value_div).lower()}\n{args.m} | {args.n}: {str(index_div).lower()}",
        {"m": args.m, "n": args.n, "value_divides": value_div, "index_divides": index_div},
    )


# golden -------------------------------------------------------------------

def cmd_golden_constants(args) -> Result:
    c = asdict(golden.golden_constants())
    return Result("\n".join(f"{k}: {v}" for k, v in c.items()), c)


def cmd_golden_section(args) -> Result:
    c = golden.golden_section_point(args.a, args.b)
    return Result(repr(c), {"a": args.a, "b": args.b, "point": c})


def cmd_golden_rect(args) -> Result:
    rect = golden.Rect(args.width, args.height)
    steps = []
    for _ in range(args.steps):
        square, rect = golden.rect_subdivide(rect)
        steps.append({"square": square.width, "rest": [rect.width, rect.height], "ratio": rect.ratio})
    text = "\n".join(
        f"square {s['square']!r}  rest {s['rest'][0]!r} x {s['rest'][1]!r}  ratio {s['ratio']!r}" for s in steps
    )
    return Result(text, steps)


def cmd_golden_spiral(args) -> Result:
    p = golden.golden_spiral_params(args.k)
    record = {"k": p.k, "c": p.c, "tangent_angle_deg": p.tangent_angle_deg}
    if args.theta is not None:
        record["theta"] = args.theta
        record["radius"] = golden.spiral_radius(p, args.theta)
    return Result("\n".join(f"{k}: {v!r}" for k, v in record.items()), record)


def cmd_golden_pyramid(args) -> Result:
    if args.dims:
        dims = golden.PyramidDims(*args.dims)
    elif args.keops:
        dims = golden.KEOPS
    else:
        dims = golden.UNIT_PYRAMID
    report = golden.pyramid_metrics(dims)
    return Result(report.render(), report.as_dict())


# ta -----------------------------------------------------------------------

def _ratio_set(args) -> ta.RatioSet:
    if args.ratios:
        return ta.RatioSet(retrace=tuple(args.ratios))
    return ta.RatioSet()


def cmd_ta_retrace(args) -> Result:
    swing = ta.Swing(args.start, args.end)
    places = _precision(args, PRICE_PLACES)
    levels = ta.retracement_levels(swing, _ratio_set(args))
    if args.extensions:
        levels += ta.extension_levels(swing)
    text = "\n".join(f"{lv.ratio}\t{ta.quantize(lv.price, places)}" for lv in levels)
    return Result(
        text,
        [lv.as_dict(places) for lv in levels],
        RetracementGrid(swing, tuple(levels)),
    )


_WAVE_FIELDS = ("wave1_len", "wave1_top", "wave1_base", "wave2_base", "wave3_top", "wave4_base", "a_len", "a_base", "prev_len")


def cmd_ta_targets(args) -> Result:
    waves = {f: getattr(args, f) for f in _WAVE_FIELDS if getattr(args, f) is not None}
    target = ta.elliott_target(args.rule, waves, args.factor)
    if isinstance(target, tuple):
        return Result(f"{target[0]}\t{target[1]}", {"rule": args.rule, "min": target[0], "max": target[1]})
    return Result(str(target), {"rule": args.rule, "target": target})


def cmd_ta_zones(args) -> Result:
    dates = ta.time_zones(args.pivot, args.count, args.paper_list)
    return Result(
        "\n".join(d.isoformat() for d in dates),
        {"pivot": args.pivot.isoformat(), "dates": [d.isoformat() for d in dates]},
        TimeZoneSet(args.pivot, tuple(dates)),
    )


def cmd_ta_box(args) -> Result:
    box = ta.fib_box(ta.Swing(args.start, args.end), _ratio_set(args))
    places = _precision(args, PRICE_PLACES)
    record = box.as_dict(places)
    lines = [f"DT = {record['duration_days']}", f"DP = {record['delta_price']}"]
    lines += [f"{k} = {v}" for k, v in record["time_targets"].items()]
    lines += [f"{k} = {v}" for k, v in record["price_targets"].items()]
    lines += [
        f"trend {t['start_date']} {t['start_price']} -> {t['end_date']} {t['end_price']}" for t in record["trendlines"]
    ]
    return Result("\n".join(lines), record, box)


def cmd_ta_alternation(args) -> Result:
    report = ta.alternation_analysis(args.pairs)
    lines = [f"{e.reaction} / {e.move} = {e.ratio} ({e.label})" for e in report.entries]
    lines.append(f"pattern: {report.pattern}")
    return Result("\n".join(lines), report.as_dict())


def cmd_ta_zigzag(args) -> Result:
    cands = ta.zigzag_candidates(args.w, args.x, args.y)
    best = ta.zigzag_time_relation(args.w, args.x, args.y)

    def rec(c):
        return {"relation": c.relation, "predicted": c.predicted, "actual": c.actual,
                "residual": c.residual, "relative_residual": ta.quantize(c.relative_residual, 6)}

    text = f"{best.relation}: {best.predicted} vs {best.actual} (residual {best.residual})"
    return Result(text, {"best": rec(best), "candidates": [rec(c) for c in cands]})


def cmd_ta_pivots(args) -> Result:
    with open(args.csv, "rb") as fh:
        series = parse_ohlc_csv(fh)
    pivots = ta.detect_pivots(series, args.k)
    return Result(
        "\n".join(f"{p.date.isoformat()}\t{p.price}\t{p.kind}" for p in pivots),
        [{"date": p.date.isoformat(), "price": p.price, "kind": p.kind} for p in pivots],
        series,
    )


# parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "plot"), default="text")
    common.add_argument("--precision", type=int, default=None)
    common.add_argument("--plot", type=Path, default=None, metavar="PATH")

    parser = argparse.ArgumentParser(prog="fibtools", description="Fibonacci and golden-ratio toolkit")
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("fib").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "n", cmd_fib_n, help="u_n for one or more indices")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--method", choices=("iterative", "fast", "binet"), default="fast")
    leaf(g, "sum", cmd_fib_sum).add_argument("n", type=int)
    leaf(g, "table", cmd_fib_table).add_argument("n_max", type=int)
    p = leaf(g, "identity", cmd_fib_identity)
    p.add_argument("identity", choices=[i.value for i in sequence.IdentityId])
    p.add_argument("params", type=int, nargs="+")
    p = leaf(g, "general", cmd_fib_general)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("n", type=int)
    p = leaf(g, "tribonacci", cmd_fib_tribonacci)
    p.add_argument("--seeds", type=int, nargs=3, default=[0, 0, 1])
    p.add_argument("n", type=int)

    z = groups.add_parser("zeck").add_subparsers(dest="cmd", required=True)
    leaf(z, "encode", cmd_zeck_encode).add_argument("value", type=int)
    leaf(z, "decode", cmd_zeck_decode).add_argument("indices", type=int, nargs="+")
    p = leaf(z, "code", cmd_zeck_code)
    p.add_argument("item")
    p.add_argument("--decode", action="store_true")

    n = groups.add_parser("nt").add_subparsers(dest="cmd", required=True)
    p = leaf(n, "gcd", cmd_nt_gcd)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p = leaf(n, "euclid", cmd_nt_euclid)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p = leaf(n, "factor", cmd_nt_factor)
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--superscript", action="store_true", help="print exponents as superscripts")
    leaf(n, "theorem6", cmd_nt_theorem6).add_argument("p", type=int)
    leaf(n, "theorem7", cmd_nt_theorem7).add_argument("p", type=int)
    leaf(n, "primitive", cmd_nt_primitive).add_argument("n", type=int)
    p = leaf(n, "divides", cmd_nt_divides)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)

    gg = groups.add_parser("golden").add_subparsers(dest="cmd", required=True)
    leaf(gg, "constants", cmd_golden_constants)
    p = leaf(gg, "section", cmd_golden_section)
    p.add_argument("a", type=float)
    p.add_argument("b", type=float)
    p = leaf(gg, "rect", cmd_golden_rect)
    p.add_argument("width", type=float)
    p.add_argument("height", type=float)
    p.add_argument("--steps", type=int, default=1)
    p = leaf(gg, "spiral", cmd_golden_spiral)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=None)
    p = leaf(gg, "pyramid", cmd_golden_pyramid)
    p.add_argument("--keops", action="store_true")
    p.add_argument("--dims", type=float, nargs=3, metavar=("HEIGHT", "HALF_BASE", "APOTHEM"))

    t = groups.add_parser("ta").add_subparsers(dest="cmd", required=True)
    for name, func in (("retrace", cmd_ta_retrace), ("box", cmd_ta_box)):
        p = leaf(t, name, func)
        p.add_argument("--start", type=_point, required=True, metavar="DATE:PRICE")
        p.add_argument("--end", type=_point, required=True, metavar="DATE:PRICE")
        p.add_argument("--ratios", type=_decimal, nargs="+")
        if name == "retrace":
            p.add_argument("--extensions", action="store_true")
    p = leaf(t, "targets", cmd_ta_targets)
    p.add_argument("--rule", type=int, required=True, choices=range(1, 9))
    for f in _WAVE_FIELDS:
        p.add_argument("--" + f.replace("_", "-"), dest=f, type=_decimal)
    p.add_argument("--factor", type=_decimal, default=ta.GOLDEN_INV)
    p = leaf(t, "zones", cmd_ta_zones)
    p.add_argument("--pivot", type=_date, required=True)
    p.add_argument("--count", type=int, default=11)
    p.add_argument("--paper-list", action="store_true", help="omit 8 as in the published list")
    leaf(t, "alternation", cmd_ta_alternation).add_argument("pairs", type=_pair, nargs="+", metavar="MOVE:REACTION",
        help="price distances as magnitudes, e.g. 1.453:0.857")
    p = leaf(t, "zigzag", cmd_ta_zigzag)
    for f in ("w", "x", "y"):
        p.add_argument(f, type=_decimal)
    p = leaf(t, "pivots", cmd_ta_pivots)
    p.add_argument("--csv", required=True)
    p.add_argument("--k", type=int, default=2)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Execute a command; returns ``(exit_status, stdout, stderr)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), "", ""
    try:
        result = args.func(args)
        if args.format == "plot" and result.plot is None:
            raise UsageError("--format plot applies only to grid and series commands")
        if args.plot is not None:
            if result.plot is None:
                raise UsageError("--plot applies only to grid and series commands")
            args.plot.write_text(emit_plot_data(result.plot, _precision(args, PRICE_PLACES)))
    except UsageError as exc:
        return 2, "", f"fibtools: usage error: {exc}\n"
    except (FibError, OSError) as exc:
        return 1, "", f"fibtools: error: {exc}\n"

    if args.format == "json":
        out = render_json(result.record)
    elif args.format == "plot":
        out = emit_plot_data(result.plot, _precision(args, PRICE_PLACES)).rstrip("\n")
    else:
        out = result.text
    return 0, out + "\n", ""


def main(argv: list[str] | None = None) -> int:
    status, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
