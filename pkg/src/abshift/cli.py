"""Command line interface: one entry point wiring every module.

Exit codes: 0 success, 1 domain error (bad parameters, inadmissible
words, mode violations) or a failed surgery-check run, 2 usage error.
All JSON output is canonical: fixed key order, floats rounded to 12
significant digits, rationals as "p/q" strings.
"""

from __future__ import annotations

import argparse
import enum
import hashlib
import json
import sys
import time
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import __version__
from . import criterion as _criterion
from . import expansion as _expansion
from . import graph as _graph
from . import language as _language
from . import surgery as _surgery
from . import thermo as _thermo
from .errors import DomainError
from .expansion import Params


def _canon(obj):
    if isinstance(obj, Fraction):
        return _expansion.format_rational(obj)
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, enum.Enum):
        return obj.value
    if is_dataclass(obj) and not isinstance(obj, type):
        return _canon(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_canon(obj), indent=2)


def _parse_word(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise DomainError(f"malformed word {text!r}: digits must be integers") from exc


def _format_word(w) -> str:
    return ",".join(str(d) for d in w)


def _load_potential(p: Params, path: str | None) -> _thermo.Potential:
    if path is None:
        return _thermo.Potential.zero(p)
    with open(path) as fh:
        obj = json.load(fh)
    return _thermo.Potential.from_json(p, obj)


def _require_main_mode_cli(p: Params, what: str) -> None:
    if not p.main_mode:
        raise DomainError(
            f"{what} requires the main mode: beta > 3 and alpha*beta = 1 "
            f"(got alpha={p.alpha}, beta={p.beta})"
        )


def _cmd_expand(args, p: Params) -> tuple[str, int]:
    n = args.digits
    if n < 0:
        raise DomainError("--digits must be nonnegative")
    if args.which == "point":
        if args.point is None:
            raise DomainError("--which point requires --point X")
        x = _expansion.parse_rational(args.point)
        digits = _expansion.itinerary(p, x, n)
    elif args.which == "zero":
        digits = _expansion.expansion_of_zero(p, n)
    else:
        digits = _expansion.expansion_of_one(p, n)
    if args.json:
        x = _expansion.parse_rational(args.point) if args.which == "point" else None
        orbit = _expansion.orbit_points(p, args.which, n, x)
        payload = {
            "alpha": _expansion.format_rational(p.alpha),
            "beta": _expansion.format_rational(p.beta),
            "digits": list(digits),
            "orbit": [_expansion.format_rational(q) for q in orbit],
        }
        return canonical_json(payload) + "\n", 0
    return _format_word(digits) + "\n", 0


def _cmd_lang(args, p: Params) -> tuple[str, int]:
    if args.action == "check":
        if args.word is None:
            raise DomainError("lang check requires --word")
        w = _parse_word(args.word)
        ok = _language.is_admissible(p, w)
        if args.json:
            return canonical_json({"word": list(w), "admissible": ok}) + "\n", 0
        return ("true" if ok else "false") + "\n", 0
    if args.length is None:
        raise DomainError(f"lang {args.action} requires --length")
    n = args.length
    if args.action == "count":
        c = _language.count_words(p, n)
        if args.json:
            return canonical_json({"length": n, "count": c}) + "\n", 0
        if args.csv:
            return f"n,count\n{n},{c}\n", 0
        return f"{c}\n", 0
    words = list(_language.enumerate_words(p, n))
    if args.json:
        payload = {"length": n, "count": len(words), "words": [list(w) for w in words]}
        return canonical_json(payload) + "\n", 0
    if args.csv:
        lines = ["word"] + ['"' + _format_word(w) + '"' for w in words]
        return "\n".join(lines) + "\n", 0
    return "\n".join(_format_word(w) for w in words) + "\n", 0


def _cmd_graph(args, p: Params) -> tuple[str, int]:
    if args.depth < 0:
        raise DomainError("--depth must be nonnegative")
    g = _graph.build(p, args.depth)
    dot = _graph.export_dot(g)
    chunks = []
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(dot)
    if args.stats:
        chunks.append(canonical_json(_graph.stats(g)) + "\n")
    if not args.dot and not args.stats:
        chunks.append(dot)
    return "".join(chunks), 0


def _cmd_surgery(args, p: Params) -> tuple[str, int]:
    _require_main_mode_cli(p, "surgery")
    if args.action == "check":
        report = _surgery.surgery_report(p, args.max_n, workers=args.workers)
        return canonical_json(report) + "\n", 0 if report["all_ok"] else 1
    if args.word is None:
        raise DomainError(f"surgery {args.action} requires --word")
    w = _parse_word(args.word)
    if args.action == "hat":
        res = _surgery.hat(p, w)
    elif args.action == "tilde":
        res = _surgery.tilde(p, w)
    else:
        res = _surgery.g_letter(p, w)
    if args.json:
        body = list(res) if isinstance(res, tuple) else res
        payload = {"word": list(w), "op": args.action, "result": body}
        return canonical_json(payload) + "\n", 0
    text = _format_word(res) if isinstance(res, tuple) else str(res)
    return text + "\n", 0


def _cmd_criterion(args, p: Params) -> tuple[str, int]:
    if args.horizon < 1:
        raise DomainError("--horizon must be >= 1")
    series = _criterion.zbar_series(p, args.horizon)
    quart = series.last_quartile_max()
    if args.csv:
        rows = ["n,zbar,ratio_num,ratio_den"]
        for i in range(series.horizon):
            r = series.ratios[i]
            rows.append(f"{i + 1},{series.zbar[i]},{r.numerator},{r.denominator}")
        with open(args.csv, "w") as fh:
            fh.write("\n".join(rows) + "\n")
    if args.json:
        payload = {
            "horizon": series.horizon,
            "zbar": list(series.zbar),
            "ratios": [_expansion.format_rational(r) for r in series.ratios],
            "last_quartile_max_ratio": _expansion.format_rational(quart),
        }
        return canonical_json(payload) + "\n", 0
    lines = [
        f"n={i + 1} zbar={series.zbar[i]} "
        f"ratio={_expansion.format_rational(series.ratios[i])}"
        for i in range(series.horizon)
    ]
    lines.append(
        f"last quartile max ratio: {_expansion.format_rational(quart)}"
    )
    return "\n".join(lines) + "\n", 0


def _pressure_payload(p: Params, report: _thermo.PressureReport, phi) -> dict:
    return {
        "alpha": _expansion.format_rational(p.alpha),
        "beta": _expansion.format_rational(p.beta),
        "method": report.method.value,
        "n_or_m": report.n_or_m,
        "value": report.value,
        "term_count": report.term_count,
        "potential_range": phi.range,
        "norm_delta": phi.norm_delta,
    }


def _cmd_pressure(args, p: Params) -> tuple[str, int]:
    _require_main_mode_cli(p, "pressure")
    phi = _load_potential(p, args.phi)
    if args.restricted:
        if args.m is None:
            raise DomainError("--restricted requires --m")
        report = _thermo.restricted_pressure_estimate(
            p, phi, args.m, max_range=args.max_range
        )
        payload = _pressure_payload(p, report, phi)
        if args.epsilon is not None:
            if args.epsilon <= 0:
                raise DomainError("--epsilon must be positive")
            import math

            m = args.m
            full = _thermo._log_window_sum(p, phi, m) / m
            ratio = math.exp(m * (full - report.value))
            payload["bracket"] = {
                "pressure_full_same_m": full,
                "epsilon": args.epsilon,
                "ratio": ratio,
                "within": math.exp(-m * args.epsilon)
                <= ratio
                <= math.exp(m * args.epsilon),
                "note": "finite-m surrogate: the full-window pressure at the "
                "same m stands in for the limit value",
            }
            if args.assume_threshold is None:
                print(
                    "note: the sandwich threshold in m is non-constructive; "
                    "pass --assume-threshold to silence",
                    file=sys.stderr,
                )
        if args.assume_threshold is not None and args.m < args.assume_threshold:
            print(
                f"warning: m={args.m} is below the assumed threshold "
                f"{args.assume_threshold}; bounds are not guaranteed there",
                file=sys.stderr,
            )
        return canonical_json(payload) + "\n", 0
    if args.n is None:
        raise DomainError("pressure requires --n (or --restricted with --m)")
    report = _thermo.pressure_estimate(p, phi, args.n, max_range=args.max_range)
    return canonical_json(_pressure_payload(p, report, phi)) + "\n", 0


def _cmd_gibbs(args, p: Params) -> tuple[str, int]:
    _require_main_mode_cli(p, "gibbs")
    if args.word is None:
        raise DomainError("gibbs requires --word")
    w = _parse_word(args.word)
    phi = _load_potential(p, args.phi)
    report = _thermo.gibbs_diagnostic(p, phi, w, args.n, args.epsilon)
    if args.assume_threshold is not None and report.m < args.assume_threshold:
        print(
            f"warning: m={report.m} is below the assumed threshold "
            f"{args.assume_threshold}; bounds are not guaranteed there",
            file=sys.stderr,
        )
    payload = {
        "alpha": _expansion.format_rational(p.alpha),
        "beta": _expansion.format_rational(p.beta),
        "word": list(report.word),
        "m": report.m,
        "n": report.n,
        "nu_hat": report.nu_hat,
        "birkhoff": report.birkhoff,
        "pressure_used": report.pressure_used,
        "K_minus": report.K_minus,
        "K_plus": report.K_plus,
        "epsilon": report.epsilon,
        "within_bounds": report.within_bounds,
    }
    return canonical_json(payload) + "\n", 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", required=True, help='rational, e.g. "2/7"')
    common.add_argument("--beta", required=True, help='rational, e.g. "7/2"')
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--workers", type=int, default=1, help="worker processes")
    common.add_argument(
        "--seed", type=int, default=None, help="reserved for randomized suites"
    )
    common.add_argument(
        "--manifest", default=None, help="write a reproducibility manifest here"
    )

    top = argparse.ArgumentParser(
        prog="abshift",
        description="Shift-space toolkit: expansions, language, graph, "
        "surgery, criterion series, pressure and cylinder estimates.",
    )
    top.add_argument("--version", action="version", version=f"abshift {__version__}")
    sub = top.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("expand", parents=[common], help="boundary/point expansions")
    sp.add_argument("--which", choices=("zero", "one", "point"), required=True)
    sp.add_argument("--point", default=None, help='rational start, with --which point')
    sp.add_argument("--digits", type=int, required=True)

    sp = sub.add_parser("lang", parents=[common], help="admissibility and enumeration")
    sp.add_argument("action", choices=("check", "enum", "count"))
    sp.add_argument("--word", default=None, help="comma-separated digits")
    sp.add_argument("--length", type=int, default=None)
    sp.add_argument("--csv", action="store_true", help="CSV output")

    sp = sub.add_parser("graph", parents=[common], help="build/export the graph")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--dot", default=None, help="write DOT to this path")
    sp.add_argument("--stats", action="store_true")

    sp = sub.add_parser("surgery", parents=[common], help="hat/tilde/g and checks")
    sp.add_argument("action", choices=("hat", "tilde", "g", "check"))
    sp.add_argument("--word", default=None)
    sp.add_argument("--max-n", type=int, default=8, dest="max_n")

    sp = sub.add_parser("criterion", parents=[common], help="zbar ratio series")
    sp.add_argument("--horizon", type=int, required=True)
    sp.add_argument("--csv", default=None, help="write the series CSV here")

    sp = sub.add_parser("pressure", parents=[common], help="pressure estimates")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--phi", default=None, help="potential JSON path")
    sp.add_argument("--restricted", action="store_true")
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--max-range", type=int, default=4, dest="max_range")
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument(
        "--assume-threshold", type=int, default=None, dest="assume_threshold"
    )

    sp = sub.add_parser("gibbs", parents=[common], help="weak-Gibbs diagnostic")
    sp.add_argument("--word", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--phi", default=None)
    sp.add_argument(
        "--assume-threshold", type=int, default=None, dest="assume_threshold"
    )

    return top


_HANDLERS = {
    "expand": _cmd_expand,
    "lang": _cmd_lang,
    "graph": _cmd_graph,
    "surgery": _cmd_surgery,
    "criterion": _cmd_criterion,
    "pressure": _cmd_pressure,
    "gibbs": _cmd_gibbs,
}


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        p = Params.make(args.alpha, args.beta)
        text, rc = _HANDLERS[args.cmd](args, p)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    if args.manifest:
        manifest = {
            "tool_version": __version__,
            "alpha": args.alpha,
            "beta": args.beta,
            "subcommand": args.cmd,
            "wall_time_s": float(f"{time.perf_counter() - t0:.12g}"),
            "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        }
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    return rc


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
