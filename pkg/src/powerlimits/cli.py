"""Command line front end.

Exit codes: 0 success, 1 an asserted bound failed, 2 bad input,
3 a capability cap was hit (nucleolus size).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import families
from .core import as_decimal_string, weight_stats
from .counting import banzhaf, shapley_shubik
from .gamedoc import GameDocumentError, game_to_document, load, parse_number
from .nucleolus import GameTooLarge, nucleolus

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

INDEX_FUNCS = {"banzhaf": banzhaf, "ssi": shapley_shubik, "nucleolus": nucleolus}

CSV_HEADER = ["q", "quota", "f_frac", "f_dec", "cand_cubic", "cand_entropy", "g"]


class InputError(Exception):
    pass


def workers_from_env() -> int:
    raw = os.environ.get("POWERLIMITS_WORKERS")
    if not raw:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"POWERLIMITS_WORKERS must be an integer, got {raw!r}")


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _dec(x, digits: int) -> str:
    if isinstance(x, Fraction):
        return as_decimal_string(x, digits)
    import mpmath

    return mpmath.nstr(x, digits)


def _first_per_class(game, values):
    out, i = [], 0
    for _, c in game.classes:
        out.append(values[i])
        i += c
    return out


def compute_report(game, index: str, digits: int) -> dict:
    names = list(INDEX_FUNCS) if index == "all" else [index]
    rel = game.relative_weights()
    stats = weight_stats(rel)
    w_class = _first_per_class(game, rel.entries)
    report = {
        "game": game_to_document(game),
        "n": game.n,
        "relative_quota": _frac(game.relative_quota),
        "weight_stats": {
            "delta": _frac(stats.delta),
            "span": _frac(stats.span),
            "laakso_taagepera": _frac(stats.laakso),
            "laakso_taagepera_dec": _dec(stats.laakso, digits),
        },
        "indices": {},
    }
    for name in names:
        pv = INDEX_FUNCS[name](game)
        x_class = _first_per_class(game, pv.values)
        l1, linf = families.class_distances(game, x_class, w_class)
        report["indices"][name] = {
            "classes": [
                {
                    "weight": str(w),
                    "count": c,
                    "relative_weight": _frac(wr),
                    "value": _frac(x),
                    "value_dec": _dec(x, digits),
                }
                for (w, c), wr, x in zip(game.classes, w_class, x_class)
            ],
            "l1": _frac(l1),
            "l1_dec": _dec(l1, digits),
            "linf": _frac(linf),
            "linf_dec": _dec(linf, digits),
        }
    return report


def _emit_compute(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["index", "class", "weight", "count", "value_frac", "value_dec", "l1", "linf"])
        for name, data in report["indices"].items():
            for k, row in enumerate(data["classes"]):
                wr.writerow([name, k, row["weight"], row["count"], row["value"], row["value_dec"], data["l1"], data["linf"]])
        return buf.getvalue()
    lines = [
        f"game: quota {report['game']['quota']}, {report['n']} players, relative quota {report['relative_quota']}",
        "delta {delta}  span {span}  L(w) {laakso_taagepera} (~{laakso_taagepera_dec})".format(**report["weight_stats"]),
    ]
    for name, data in report["indices"].items():
        lines.append(f"{name}:")
        for row in data["classes"]:
            lines.append(
                f"  weight {row['weight']} x{row['count']}: {row['value']} (~{row['value_dec']})"
            )
        lines.append(f"  l1 {data['l1']} (~{data['l1_dec']})  linf {data['linf']} (~{data['linf_dec']})")
    return "\n".join(lines) + "\n"


def cmd_compute(args) -> int:
    game = load(args.game)
    try:
        report = compute_report(game, args.index, args.precision)
    except GameTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(_emit_compute(report, args.format))
    return EXIT_OK


def _parse_q(text: str) -> Fraction:
    q = parse_number(text)
    if not 0 <= q <= 1:
        raise InputError(f"q must lie in [0, 1], got {text}")
    return q


def cmd_family(args) -> int:
    if args.n < (1 if args.family == "vnq" else 2):
        raise InputError(f"invalid n={args.n}")
    digits = args.precision
    if args.family == "vnq":
        if args.q is None:
            raise InputError("vnq needs --q")
        q = _parse_q(args.q)
        inst, point = families.vnq_instance(args.n, q)
        printed = families.vnq_eta_printed(args.n, q)
        print(f"vnq n={args.n} q={q}: game [{point.quota}; 2 x {args.n}, 1 x {args.n}]")
        print(f"f_n(q) = {_frac(point.f)} (~{_dec(point.f, digits)})")
        print(f"bzi heavy {_frac(inst.bzi_per_class[0])}  light {_frac(inst.bzi_per_class[1])}")
        print(f"swings (engine)  heavy {printed.dp_heavy}  light {printed.dp_light}")
        print(f"swings (printed) heavy {printed.printed_heavy}  light {printed.printed_light}")
        return EXIT_OK
    if args.q is not None:
        raise InputError("--q only applies to vnq")
    inst = families.prop1_instance(args.n) if args.family == "prop1" else families.prop2_instance(args.n)
    print(f"{args.family} n={args.n}: {inst.game.n} players, quota {inst.game.quota}")
    print(f"l1 = {_dec(inst.l1, digits)}  linf = {_dec(inst.linf, digits)}")
    for b in inst.bounds:
        verdict = ("PASS" if b.holds else "FAIL") if b.asserted else ("holds" if b.holds else "fails") + " (not asserted)"
        print(f"{b.name:38s} value {_dec(b.value, digits):>20s}  bound {_dec(b.bound, digits):>20s}  {verdict}")
    return EXIT_OK if inst.all_asserted_hold else EXIT_VIOLATION


def parse_grid(text: str) -> list[Fraction]:
    try:
        start, stop, step = (parse_number(p) for p in text.split(":"))
    except (ValueError, GameDocumentError):
        raise InputError(f"grid must be start:stop:step, got {text!r}")
    if step <= 0 or start > stop or start < 0 or stop > 1:
        raise InputError(f"grid {text!r} must satisfy 0 <= start <= stop <= 1 and step > 0")
    out, q = [], start
    while q <= stop:
        out.append(q)
        q += step
    return out


def fcurve_csv(report, digits: int) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_HEADER)
    for p, c in zip(report.points, report.candidates):
        wr.writerow([
            _frac(p.q), p.quota, _frac(p.f), _dec(p.f, digits),
            _dec(c.cand_cubic, digits), _dec(c.cand_entropy, digits), _dec(c.g, digits),
        ])
    return buf.getvalue()


def cmd_fcurve(args) -> int:
    if args.n < 1:
        raise InputError("n must be positive")
    grid = parse_grid(args.grid)
    report = families.f_curve(args.n, grid)
    text = fcurve_csv(report, args.precision)
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(
        f"n={args.n}: {len(report.points)} points; nondecreasing on [1/2,1]: {report.nondecreasing_upper_half}; "
        f"strictly increasing: {report.strictly_increasing_upper_half}; duality Q <-> 3n+1-Q: {report.duality_holds}; "
        f"max |cubic - f| {_dec(report.max_error_cubic, 6)}, max |entropy - f| {_dec(report.max_error_entropy, 6)}",
        file=sys.stderr,
    )
    return EXIT_OK


def scan_report_json(report: families.ScanReport) -> dict:
    worst = report.worst
    cfg = report.config
    return {
        "kind": report.kind,
        "seed": cfg.seed,
        "config": {
            "samples": cfg.samples,
            "n_min": cfg.n_min,
            "n_max": cfg.n_max,
            "max_weight": cfg.max_weight,
            "q_grid": [str(q) for q in cfg.q_grid] if report.kind == "ssi" else ["1/2"],
            "family_n": cfg.family_n if cfg.include_families else None,
        },
        "rows": [
            {
                "label": r.label,
                "seed": r.seed,
                "n": r.game.n,
                "q": str(r.q),
                "distance": str(r.lhs),
                "bound" if report.kind == "ssi" else "delta_times_span": str(r.bound),
                "ratio": str(r.ratio),
                "ratio_dec": as_decimal_string(r.ratio, 12),
                **({"violated": r.violated} if report.kind == "ssi" else {}),
            }
            for r in report.rows
        ],
        "max_ratio": str(worst.ratio),
        "max_ratio_dec": as_decimal_string(worst.ratio, 12),
        "argmax": {"label": worst.label, "q": str(worst.q), "game": game_to_document(worst.game)},
        "violations": [
            {"label": r.label, "q": str(r.q), "game": game_to_document(r.game)}
            for r in report.violations
        ]
        if report.kind == "ssi"
        else None,
    }


def cmd_scan(args) -> int:
    if args.samples < 0 or args.nmax < args.nmin or args.nmin < 1:
        raise InputError("need samples >= 0 and 1 <= nmin <= nmax")
    cfg = families.ScanConfig(
        n_min=args.nmin,
        n_max=args.nmax,
        samples=args.samples,
        seed=args.seed,
        max_weight=args.max_weight,
        include_families=not args.no_families,
    )
    workers = workers_from_env()
    scan = families.conjecture_ssi_scan if args.kind == "ssi" else families.conjecture_bzi_scan
    report = scan(cfg, workers=workers)
    sys.stdout.write(json.dumps(scan_report_json(report), indent=2) + "\n")
    if args.kind == "ssi" and report.violations:
        return EXIT_VIOLATION
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="powerlimits", description="Exact power indices of weighted games.")
    parser.add_argument("--precision", type=int, default=12, help="digits in decimal renderings")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="indices for a game document")
    p.add_argument("game")
    p.add_argument("--index", choices=["banzhaf", "ssi", "nucleolus", "all"], default="all")
    p.add_argument("--format", choices=["json", "csv", "plain"], default="plain")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("family", help="check a parametric family")
    p.add_argument("family", choices=["prop1", "prop2", "vnq"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("fcurve", help="finite-n f curve as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", default="0.5:1.0:0.05")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fcurve)

    p = sub.add_parser("scan", help="empirical scan for one of the two conjectures")
    p.add_argument("kind", choices=["bzi", "ssi"])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--max-weight", type=int, default=9)
    p.add_argument("--no-families", action="store_true")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.precision < 1:
            parser.error("--precision must be positive")
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (InputError, GameDocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
