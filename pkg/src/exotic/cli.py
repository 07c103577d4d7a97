"""Command line front end.

Subcommands: growth, threshold, pair, norm, okayasu, witness, hulanicki,
scan, selftest.  Human-readable tables go to stdout by default; ``--json``
switches to a single JSON document whose bytes are reproducible for a fixed
seed regardless of worker count (execution metadata such as wall time and
worker count lives in the optional ``--manifest`` file, not in the output
document).  Exit codes: 0 success, 2 not-found (witness searches), 1 errors,
64 usage.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from . import __version__, certify, growth, opnorm
from .algebra import GroupFunction, parse_function
from .errors import ExoticError
from .posdef import make_haagerup_function
from .words import Presentation

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_FOUND = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, float):
        if obj == math.inf:
            return "inf"
        if obj == -math.inf:
            return "-inf"
        return obj
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):  # numpy scalar
        return _jsonify(obj.item())
    return obj


def _parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(text)


def parse_tgrid(text: str) -> list[float]:
    """``a:b:step`` inclusive of both ends (within half a step)."""
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError as exc:
        raise ExoticError(f"bad --tgrid {text!r}; expected a:b:step") from exc
    if step <= 0 or b < a:
        raise ExoticError(f"bad --tgrid {text!r}; need a <= b and step > 0")
    out = []
    i = 0
    while True:
        v = a + i * step
        if v > b + step / 2:
            break
        out.append(v)
        i += 1
    return out


def _emit(args, command: str, group: str, params: dict, result: dict,
          table_rows=None, table_header=None, started: float | None = None):
    doc = {"schema_version": certify.SCHEMA_VERSION, "command": command,
           "group": group, "params": _jsonify(params), "result": _jsonify(result)}
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif table_rows is not None:
        widths = [max(len(str(r[i])) for r in ([table_header] + table_rows))
                  for i in range(len(table_header))]
        for row in [table_header] + table_rows:
            print("  ".join(str(c).rjust(w) for c, w in zip(row, widths)))
    else:
        print(json.dumps(doc["result"], sort_keys=True, indent=2))
    if getattr(args, "csv", None) and table_rows is not None:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(table_header)
            writer.writerows(table_rows)
    if getattr(args, "manifest", None):
        manifest = {"argv": sys.argv[1:], "output": doc,
                    "wall_time_s": None if started is None else time.perf_counter() - started,
                    "workers": getattr(args, "workers", 1),
                    "versions": _versions()}
        with open(args.manifest, "w") as fh:
            json.dump(_jsonify(manifest), fh, sort_keys=True, indent=2)


def _versions() -> dict:
    import numpy
    from ._backend import BACKEND_NAME
    versions = {"exotic": __version__, "python": sys.version.split()[0],
                "numpy": numpy.__version__, "backend": BACKEND_NAME}
    try:
        import numba
        versions["numba"] = numba.__version__
    except ImportError:
        pass
    return versions


def _add_common(sp, *, f_flag=False, budgets=False, workers=False):
    sp.add_argument("--group", required=True, help="free:<d> or cyclic:<m>:<d>")
    if f_flag:
        sp.add_argument("--f", required=True,
                        help="delta:<word> | sphere:<k> | ball:<k> | radial:<c0,c1,...>")
    if budgets:
        sp.add_argument("--radius", type=int, default=opnorm.DEFAULT_RADIUS)
        sp.add_argument("--iters", type=int, default=opnorm.DEFAULT_ITERS)
        sp.add_argument("--seed", type=int, default=opnorm.DEFAULT_SEED)
    if workers:
        sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--csv", default=None, help="write the table to this CSV path")
    sp.add_argument("--manifest", default=None,
                    help="write a run manifest (includes wall time) to this path")


def build_parser() -> _Parser:
    ap = _Parser(prog="exotic",
                 description="Certified norm brackets and separation certificates "
                             "for free-group and free-product group algebras.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("growth", help="sphere/ball counts and growth ratio")
    _add_common(sp)
    sp.add_argument("--kmax", type=int, default=8)
    sp.add_argument("--enumerate", action="store_true",
                    help="cross-check counts by BFS enumeration (subject to --max-enum)")
    sp.add_argument("--max-enum", type=int, default=None)

    sp = sub.add_parser("threshold", help="growth rate C and ell^p threshold p*")
    _add_common(sp)
    sp.add_argument("--t", type=float, required=True)

    sp = sub.add_parser("pair", help="dual pairing <f, phi_t> with membership report")
    _add_common(sp, f_flag=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--p", type=_parse_p, required=True)

    sp = sub.add_parser("norm", help="norm estimates for f")
    _add_common(sp, f_flag=True, budgets=True, workers=True)
    sp.add_argument("--target", choices=["lambda", "pf", "pf-upper", "reduced-upper"],
                    default="pf")
    sp.add_argument("--p", type=_parse_p, required=True)

    sp = sub.add_parser("okayasu", help="convolution-power norm sequence")
    _add_common(sp, f_flag=True, workers=True)
    sp.add_argument("--p", type=_parse_p, required=True)
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--max-support", type=int, default=None)

    sp = sub.add_parser("witness", help="distinctness certificate search")
    _add_common(sp, workers=True)
    sp.add_argument("--p", type=_parse_p, required=True)
    sp.add_argument("--pprime", type=_parse_p, required=True)
    sp.add_argument("--tgrid", default="0.25:0.35:0.01", help="a:b:step")
    sp.add_argument("--kmin", type=int, default=1)
    sp.add_argument("--kmax", type=int, default=24)

    sp = sub.add_parser("hulanicki", help="failure-of-amenability certificate")
    _add_common(sp, workers=True)
    sp.add_argument("--p", type=_parse_p, required=True)

    sp = sub.add_parser("scan", help="certified bracket over a p grid")
    _add_common(sp, f_flag=True, budgets=True, workers=True)
    sp.add_argument("--pgrid", default="2,4,8,inf", help="comma-separated exponents")

    sp = sub.add_parser("selftest", help="run the quick invariant suite")
    sp.add_argument("--json", action="store_true")
    return ap


def _cmd_growth(args) -> int:
    pres = Presentation.parse(args.group)
    levels = None
    if args.enumerate:
        levels = growth.spheres_up_to(pres, args.kmax, cap=args.max_enum)
    rows = []
    ball = 0
    for k in range(args.kmax + 1):
        s = len(levels[k]) if levels is not None else growth.sphere_size(pres, k)
        if levels is not None and s != growth.sphere_size(pres, k):
            raise ExoticError(f"BFS sphere count {s} disagrees with the closed "
                              f"form {growth.sphere_size(pres, k)} at k={k}")
        ball += s
        ratio = (s / growth.sphere_size(pres, k - 1)) if k >= 1 else float("nan")
        rows.append([k, s, ball, f"{ratio:.6g}" if k >= 1 else "-"])
    params = {"kmax": args.kmax, "enumerate": bool(args.enumerate)}
    result = {"rows": [{"k": r[0], "sphere": r[1], "ball": r[2],
                        "ratio": None if r[0] == 0 else float(r[3])} for r in rows],
              "growth_rate": growth.growth_rate(pres), "source":
              "enumerated" if args.enumerate else "closed_form"}
    _emit(args, "growth", pres.descriptor(), params, result,
          table_rows=rows, table_header=["k", "|S_k|", "|B_k|", "ratio"])
    return EXIT_OK


def _cmd_threshold(args) -> int:
    pres = Presentation.parse(args.group)
    result = {"C": growth.growth_rate(pres),
              "p_star": growth.lp_membership_threshold(pres, args.t)}
    _emit(args, "threshold", pres.descriptor(), {"t": args.t}, result)
    return EXIT_OK


def _cmd_pair(args) -> int:
    pres = Presentation.parse(args.group)
    f = parse_function(pres, args.f)
    phi = make_haagerup_function(pres, args.t)
    from .algebra import pair as dual_pair
    value = dual_pair(f, phi)
    p_star = growth.lp_membership_threshold(pres, args.t)
    result = {"value": value, "p_star": p_star, "certified": args.p > p_star,
              "t": args.t, "p": args.p}
    _emit(args, "pair", pres.descriptor(), {"f": args.f, "t": args.t, "p": args.p},
          result)
    return EXIT_OK


def _cmd_norm(args) -> int:
    started = time.perf_counter()
    pres = Presentation.parse(args.group)
    f = parse_function(pres, args.f)
    if args.target == "lambda":
        est = opnorm.lambda_p_lower(f, args.p, args.radius, args.iters, args.seed)
    elif args.target == "pf":
        est = opnorm.pf_star_lower(f, args.p, args.radius, args.iters, args.seed)
    elif args.target == "pf-upper":
        est = opnorm.pf_star_upper_interp(f, args.p, opnorm.best_reduced_upper(f))
    else:
        est = opnorm.best_reduced_upper(f)
    params = {"f": args.f, "target": args.target, "p": args.p,
              "radius": args.radius, "iters": args.iters, "seed": args.seed}
    _emit(args, "norm", pres.descriptor(), params, est.to_json(), started=started)
    return EXIT_OK


def _cmd_okayasu(args) -> int:
    started = time.perf_counter()
    pres = Presentation.parse(args.group)
    f = parse_function(pres, args.f)
    seq = opnorm.okayasu_upper_seq(f, args.p, args.nmax, cap=args.max_support)
    rows = [[n, f"{v:.12g}"] for n, v in seq.terms]
    params = {"f": args.f, "p": args.p, "nmax": args.nmax,
              "max_support": args.max_support}
    _emit(args, "okayasu", pres.descriptor(), params, seq.to_json(),
          table_rows=rows, table_header=["n", "value"], started=started)
    return EXIT_OK


def _cmd_witness(args) -> int:
    started = time.perf_counter()
    pres = Presentation.parse(args.group)
    tgrid = parse_tgrid(args.tgrid)
    out = certify.distinctness_witness(pres, args.p, args.pprime, tgrid,
                                       range(args.kmin, args.kmax + 1),
                                       workers=args.workers)
    params = {"p": args.p, "pprime": args.pprime, "tgrid": args.tgrid,
              "kmin": args.kmin, "kmax": args.kmax}
    _emit(args, "witness", pres.descriptor(), params, out.to_json(), started=started)
    return EXIT_OK if isinstance(out, certify.Certificate) else EXIT_NOT_FOUND


def _cmd_hulanicki(args) -> int:
    started = time.perf_counter()
    pres = Presentation.parse(args.group)
    out = certify.hulanicki_witness(pres, args.p, workers=args.workers)
    _emit(args, "hulanicki", pres.descriptor(), {"p": args.p}, out.to_json(),
          started=started)
    return EXIT_OK if isinstance(out, certify.Certificate) else EXIT_NOT_FOUND


def _cmd_scan(args) -> int:
    started = time.perf_counter()
    pres = Presentation.parse(args.group)
    f = parse_function(pres, args.f)
    grid = [_parse_p(tok) for tok in args.pgrid.split(",")]
    report = certify.scan_report(pres, f, grid, f_descriptor=args.f,
                                 radius=args.radius, iters=args.iters,
                                 seed=args.seed, workers=args.workers)
    rows = [[r.p, f"{r.lower:.10g}", f"{r.upper:.10g}", f"{r.gap:.4g}",
             ",".join(r.flags) or "-"] for r in report.rows]
    params = {"f": args.f, "pgrid": args.pgrid, "radius": args.radius,
              "iters": args.iters, "seed": args.seed}
    _emit(args, "scan", pres.descriptor(), params, report.to_json(),
          table_rows=rows, table_header=["p", "lower", "upper", "gap", "flags"],
          started=started)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from . import selftest
    ok = selftest.run(verbose=not args.json)
    if args.json:
        print(json.dumps({"selftest": "pass" if ok else "fail"}))
    return EXIT_OK if ok else EXIT_ERROR


_COMMANDS = {"growth": _cmd_growth, "threshold": _cmd_threshold, "pair": _cmd_pair,
             "norm": _cmd_norm, "okayasu": _cmd_okayasu, "witness": _cmd_witness,
             "hulanicki": _cmd_hulanicki, "scan": _cmd_scan,
             "selftest": _cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.cmd](args)
    except SystemExit:
        raise
    except ExoticError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
