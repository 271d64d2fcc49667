"""Command-line front end.

Subcommands: ``eval``, ``table``, ``sweep``, ``simulate``, ``solve``, ``bounds``.
Output is one JSON object per line, or CSV with ``--format csv``.  Exact
values are written as ``"num/den"`` next to a 12-significant-digit decimal
rendering.  Exit codes: 0 success, 1 bad arguments, 2 outside a formula's
domain or regime, 3 infeasible target.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import asymptotics as asym
from .bounds import bounds_width, p_disc_db_bounds
from .errors import DomainError, InfeasibleTargetError, InvalidParameterError, RegimeError
from .exact import MetricKind, exact_metric, metric_name, parse_metric
from .montecarlo import make_config, run
from .params import PhysicalParams, SystemParams, parse_rational
from .solvers import QualityTarget, min_nodes
from .varying import asym_metric_vn, exact_metric_vn, q_segmentation_vn

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_INFEASIBLE = 3

SWEEP_DENOMINATOR = 10**6


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def rational_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q) -> str:
    """12 significant digits; exact for rationals up to that precision."""
    if isinstance(q, Fraction):
        with localcontext() as ctx:
            ctx.prec = 12
            d = Decimal(q.numerator) / Decimal(q.denominator)
        return format(d, "g") if d else "0"
    return format(float(q), ".12g")


def _exact_fields(q: Fraction, prefix: str = "value") -> dict:
    return {prefix: rational_str(q), f"{prefix}_decimal": decimal_str(q)}


def _csv_list(text, conv):
    try:
        return [conv(part) for part in text.split(",") if part.strip()]
    except (ValueError, InvalidParameterError) as exc:
        raise _UsageError(f"bad list {text!r}: {exc}") from None


def _grid(text, conv=float, geometric=False):
    """``a,b,c`` or ``start:stop:step`` (``step`` is a factor when ``geometric``)."""
    if ":" not in text:
        return _csv_list(text, conv)
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise _UsageError(f"bad grid {text!r}") from None
    out = []
    if geometric:
        if step <= 1 or start <= 0:
            raise _UsageError("geometric grid needs start > 0 and factor > 1")
        v = start
        while v <= stop * (1 + 1e-12):
            out.append(conv(round(v)) if conv is int else conv(v))
            v *= step
    else:
        if step <= 0:
            raise _UsageError("grid step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        out = [conv(round(start + i * step, 12)) for i in range(count)]
    return out


def _system(args) -> SystemParams:
    if args.n is None:
        raise _UsageError("--n is required")
    if args.rho is not None:
        if args.r is not None or args.l is not None:
            raise _UsageError("give either --rho or --r/--l, not both")
        return SystemParams(args.n, parse_rational(args.rho))
    if args.r is None or args.l is None:
        raise _UsageError("give --rho or both --r and --l")
    return SystemParams(args.n, PhysicalParams(args.r, args.l).rho)


def _add_system_flags(p, require_n=True):
    p.add_argument("--n", type=int, required=require_n, help="node count")
    p.add_argument("--rho", help="normalized range r/l (e.g. 3/100 or 0.03)")
    p.add_argument("--r", help="radio range")
    p.add_argument("--l", help="system length")


def _asym_value(kind, k, params=None, eta=None, nu=None, p_on=None):
    if kind is MetricKind.COVEREDNESS:
        if eta is not None or nu is not None:
            raise RegimeError("coveredness needs --n/--rho so that eta can be taken at doubled range")
        doubled = SystemParams(params.n, 2 * params.rho)
        return asym.asym_metric(MetricKind.CONNECTEDNESS, asym.Eta(asym.eta_from_params(doubled)))
    if kind.intensive:
        if eta is not None:
            raise RegimeError(f"{kind.value} is intensive; give --nu, not --eta")
        if nu is None:
            nu = asym.nu_from_params(params)
        if p_on is not None:
            return asym_metric_vn(kind, nu, float(p_on))
        return asym.asym_metric(kind, asym.Nu(nu))
    if nu is not None:
        raise RegimeError(f"{kind.value} is not intensive; give --eta, not --nu")
    if p_on is not None:
        raise DomainError(f"no varying-node limit for the non-intensive {kind.value}")
    if eta is None:
        eta = asym.eta_from_params(params)
    return asym.asym_metric(kind, asym.Eta(eta), k)


def cmd_eval(args):
    kind, k = parse_metric(args.metric)
    p_on = None if args.p_on is None else parse_rational(args.p_on)
    rec = {"command": "eval", "metric": metric_name(kind, k), "mode": args.mode}
    if args.mode == "exact":
        if args.eta is not None or args.nu is not None:
            raise _UsageError("--eta/--nu only apply to --mode asym")
        params = _system(args)
        rec.update(n=params.n, rho=rational_str(params.rho))
        if p_on is None:
            value = exact_metric(kind, params, k)
        elif args.convention == "formula" and kind is MetricKind.SEGMENTATION:
            value = q_segmentation_vn(params, p_on)
        else:
            value = exact_metric_vn(kind, params, p_on, args.convention, k)
        if p_on is not None:
            rec.update(p_on=rational_str(p_on), convention=args.convention)
        rec.update(_exact_fields(value))
        rec["provenance"] = "exact"
    else:
        params = None
        if args.eta is None and args.nu is None:
            params = _system(args)
            rec.update(n=params.n, rho=rational_str(params.rho))
        elif args.n is not None or args.rho is not None:
            raise _UsageError("give either --eta/--nu or --n/--rho in asym mode")
        if args.eta is not None:
            rec["eta"] = args.eta
        if args.nu is not None:
            rec["nu"] = args.nu
        if p_on is not None:
            rec["p_on"] = rational_str(p_on)
        value = _asym_value(kind, k, params, args.eta, args.nu, p_on)
        rec.update(value=value, value_decimal=decimal_str(value), provenance="asymptotic")
    return [rec]


def _target_for(kind: MetricKind, quality: Fraction) -> QualityTarget:
    # table quality levels read as "at least q" or "at most 1 - q"
    if kind in (MetricKind.SEGMENTATION, MetricKind.VULNERABILITY):
        return QualityTarget(kind, float(1 - quality))
    return QualityTarget(kind, float(quality))


TABLE_ORDER = (
    MetricKind.CONNECTEDNESS,
    MetricKind.COVERAGE,
    MetricKind.SEGMENTATION,
    MetricKind.VULNERABILITY,
    MetricKind.REACHABILITY,
)


def design_table(l="1000", radios=("30", "10"), targets=("0.9", "0.99")):
    """Minimum node counts for each quality level, metric and radio range."""
    rows = []
    l = parse_rational(l)
    for q in (parse_rational(t) for t in targets):
        for kind in TABLE_ORDER:
            target = _target_for(kind, q)
            for r in (parse_rational(x) for x in radios):
                res = min_nodes(target, PhysicalParams(r, l))
                rows.append({
                    "command": "table",
                    "metric": kind.value,
                    "direction": target.direction.value,
                    "threshold": target.threshold,
                    "r": rational_str(r),
                    "l": rational_str(l),
                    "n_min": res.n_min,
                    "auxiliary": res.auxiliary,
                    "achieved": res.achieved,
                    "provenance": "asymptotic",
                })
    return rows


def cmd_table(args):
    return design_table(args.l, _csv_list(args.r, str), _csv_list(args.targets, str))


def _sweep_rho(n: int, x: float, axis: str) -> Fraction:
    value = x / n if axis == "nrho" else (math.log(n) + x) / n
    rho = Fraction(round(value * SWEEP_DENOMINATOR), SWEEP_DENOMINATOR)
    if rho <= 0:
        raise DomainError(f"grid point n={n}, {axis}={x} gives a non-positive range")
    return rho


def cmd_sweep(args):
    kind, k = parse_metric(args.metric)
    ns = _grid(args.n_grid, int, geometric=True)
    xs = _grid(args.x_grid, float)
    rows = []
    for n in ns:
        for x in xs:
            params = SystemParams(n, _sweep_rho(n, x, args.x_axis))
            exact = exact_metric(kind, params, k)
            row = {
                "n": n,
                "x": x,
                "rho": rational_str(params.rho),
                "exact": float(exact),
            }
            if args.compare_asym:
                a = _asym_value(kind, k, params)
                err = abs(float(exact) - a)
                row.update(asymptotic=a, abs_error=err,
                           rel_error=err / float(exact) if exact else None)
            rows.append(row)
    return rows


def cmd_simulate(args):
    params = _system(args)
    config = make_config(params.n, params.rho, args.boundary, args.trials, args.seed,
                         args.p_on, coverage_clip=args.coverage_clip, max_k=args.max_k)
    est = run(config)
    echo = {
        "command": "simulate",
        "n": params.n,
        "rho": rational_str(params.rho),
        "boundary": config.boundary.value,
    }
    if config.on_probability is not None:
        echo["p_on"] = rational_str(config.on_probability)
    return [{**echo, **e.to_record(name), "provenance": "monte-carlo"} for name, e in est.items()]


def cmd_solve(args):
    kind, _ = parse_metric(args.metric)
    try:
        threshold = float(parse_rational(args.target))
    except InvalidParameterError as exc:
        raise _UsageError(str(exc)) from None
    target = QualityTarget(kind, threshold, args.direction)
    phys = PhysicalParams(args.r, args.l)
    res = min_nodes(target, phys)
    return [{
        "command": "solve",
        "metric": kind.value,
        "direction": target.direction.value,
        "threshold": threshold,
        "r": rational_str(phys.r),
        "l": rational_str(phys.l),
        "n_min": res.n_min,
        "auxiliary": res.auxiliary,
        "achieved": res.achieved,
        "provenance": "asymptotic",
    }]


def cmd_bounds(args):
    params = _system(args)
    b = p_disc_db_bounds(params, args.k)
    rec = {"command": "bounds", "n": params.n, "rho": rational_str(params.rho), "k": args.k}
    rec.update(_exact_fields(b.lower, "lower"))
    rec.update(_exact_fields(b.upper, "upper"))
    rec.update(_exact_fields(bounds_width(params), "width"))
    rec["provenance"] = "bounds"
    return [rec]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="manetq", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one metric exactly or asymptotically")
    p.add_argument("--metric", required=True)
    _add_system_flags(p, require_n=False)
    p.add_argument("--mode", choices=("exact", "asym"), default="exact")
    p.add_argument("--eta", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--p-on", help="on-probability for the varying-node model")
    p.add_argument("--convention", choices=("simulation", "formula"), default="simulation")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="minimum node counts for quality targets")
    p.add_argument("--l", default="1000")
    p.add_argument("--r", default="30,10", help="comma-separated radio ranges")
    p.add_argument("--targets", default="0.9,0.99", help="comma-separated quality levels")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="exact vs asymptotic values over a grid")
    p.add_argument("--metric", required=True)
    p.add_argument("--n-grid", required=True, help="n list or start:stop:factor")
    p.add_argument("--x-axis", choices=("nrho", "eta"), default="nrho")
    p.add_argument("--x-grid", required=True, help="x list or start:stop:step")
    p.add_argument("--compare-asym", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo estimates of every metric")
    _add_system_flags(p)
    p.add_argument("--boundary", choices=("periodic", "disconnected"), default="periodic")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-on")
    p.add_argument("--coverage-clip", action="store_true")
    p.add_argument("--max-k", type=int, default=3)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("solve", help="minimum node count for one target")
    p.add_argument("--metric", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--direction", choices=("at_least", "at_most"))
    p.add_argument("--r", required=True)
    p.add_argument("--l", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="bounds for the plain-interval model")
    _add_system_flags(p)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_bounds)
    return parser


def render(records, fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    fields = []
    for r in records:
        fields.extend(key for key in r if key not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow({key: "" if v is None else repr(v) if isinstance(v, float) else v
                         for key, v in r.items()})
    return buf.getvalue()


_VALUE_FLAGS = ("--x-grid", "--n-grid", "--eta", "--nu", "--target")


def _glue_values(argv):
    # let values such as "-2:4:1" follow their flag without "="
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_values(argv))
        records = args.func(args)
    except _UsageError as exc:
        print(f"manetq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidParameterError as exc:
        print(f"manetq: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleTargetError as exc:
        print(f"manetq: infeasible: {exc} (max attainable: {exc.max_value})", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DomainError, RegimeError) as exc:
        print(f"manetq: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(render(records, args.format))
    return 0
