"""Command-line front end.

Exit codes: 0 pass/info, 1 verification failure, 2 usage error.  Reports are
single JSON documents; ``page profile`` writes CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from .config import ConfigError, load_metric_config
from .curvature import ricci_scalar_decompose, riemann_frame, page_k01
from .frames import DEFAULT_KAPPA, CalibrationError, calibrate_convention, make_convention
from .invariants import (
    NoSignChange,
    QuadratureError,
    bolt_geodesy_check,
    char_numbers,
    einstein_report,
    inequality_predicates,
    k_range_scan,
    sign_change_scan,
)
from .metrics import (
    MetricValidationError,
    custom_metric,
    fubini_study_metric,
    page_metric_r,
    page_metric_x,
    round_sphere_metric,
    solve_page_constant,
)

DEFAULT_SEED = 0

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: Any
    status: str = INFO

    def to_json(self) -> str:
        return json.dumps(_plain(asdict(self)), indent=2)


def _plain(obj):
    # numpy scalars/arrays and tuples -> JSON-native; floats keep repr round-trip
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        return obj.item()
    if hasattr(obj, "__dataclass_fields__"):
        return _plain(asdict(obj))
    return obj


def _metric(which: str, kappa: float):
    conv = make_convention(kappa)
    if which == "page":
        return page_metric_r(conv=conv)
    if which == "s4":
        return round_sphere_metric(conv)
    if which == "fs":
        return fubini_study_metric(conv)
    return custom_metric(load_metric_config(which))


def _emit(text: str, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


# -- subcommands -------------------------------------------------------------


def cmd_solve_a(args) -> RunReport:
    pc = solve_page_constant()
    ok = pc.residual < 1e-13 and 0.0 < pc.a < 1.0 and pc.unique
    res = asdict(pc)
    res["unique"] = pc.unique
    return RunReport("solve-a", {}, res, PASS if ok else FAIL)


def cmd_calibrate(args) -> RunReport:
    cands = args.candidates
    try:
        rep = calibrate_convention(cands)
    except CalibrationError as exc:
        return RunReport("calibrate", {"candidates": cands}, {"error": str(exc)}, FAIL)
    res = {
        "kappa": rep.kappa,
        "residuals": [{"kappa": k, "residual": r} for k, r in rep.residuals.items()],
        "literal_fibre_residuals": [{"kappa": k, "residual": r} for k, r in rep.literal_fibre_residuals.items()],
        "tolerance": rep.tolerance,
    }
    return RunReport("calibrate", {"candidates": cands}, res, PASS)


def cmd_page_profile(args) -> str:
    conv = make_convention(args.kappa)
    m = page_metric_r(conv=conv) if args.coord == "r" else page_metric_x(conv=conv)
    t0, t1 = m.domain
    ts = t0 + (t1 - t0) * np.arange(1, args.samples + 1) / (args.samples + 1)
    cols = ["t", "A", "B", "C", "D", "K01", "K02", "K03", "K12", "s"]
    rows = []
    for t in ts:
        Rc = riemann_frame(m, float(t))
        _, dec = ricci_scalar_decompose(Rc)
        R = Rc.R
        rows.append(
            [float(t), *m.values(float(t)).tolist(), R[0, 1, 0, 1], R[0, 2, 0, 2], R[0, 3, 0, 3], R[1, 2, 1, 2], dec.s]
        )
    if args.format == "json":
        return RunReport(
            "page profile",
            {"samples": args.samples, "coord": args.coord, "kappa": args.kappa},
            [dict(zip(cols, r)) for r in rows],
        ).to_json()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([repr(float(v)) for v in r])
    return buf.getvalue()


def cmd_page_verify(args) -> RunReport:
    m = page_metric_r(conv=make_convention(args.kappa))
    rep = einstein_report(m, args.samples)
    ok = rep.max_residual <= args.tol and rep.scalar_spread <= args.tol
    return RunReport(
        "page verify-einstein", {"samples": args.samples, "tol": args.tol, "kappa": args.kappa}, rep, PASS if ok else FAIL
    )


def cmd_page_sign_change(args) -> RunReport:
    pc = solve_page_constant()
    conv = make_convention(args.kappa)
    res = sign_change_scan(lambda x: page_k01(pc, conv, x), (-1.0, 1.0), args.n)
    found = not isinstance(res, NoSignChange)
    payload = asdict(res)
    payload["kind"] = "certificate" if found else "no-sign-change"
    return RunReport("page sign-change", {"n": args.n}, payload, PASS if found else FAIL)


def cmd_page_bolt(args) -> RunReport:
    m = page_metric_r(conv=make_convention(args.kappa))
    checks = [bolt_geodesy_check(m, end) for end in ("lower", "upper")]
    ok = all(c.passed(args.tol) for c in checks)
    res = {"ends": checks, "disjoint": m.domain[0] < m.domain[1], "tol": args.tol}
    return RunReport("page bolt-check", {"tol": args.tol}, res, PASS if ok else FAIL)


def cmd_char_numbers(args) -> RunReport:
    m = _metric(args.metric, args.kappa)
    inputs = {"metric": args.metric, "order": args.order}
    try:
        cn = char_numbers(m, args.order)
    except QuadratureError as exc:
        return RunReport("char-numbers", inputs, {"error": str(exc)}, FAIL)
    ineq = inequality_predicates(cn.chi, cn.tau)
    return RunReport("char-numbers", inputs, {"char_numbers": cn, "inequalities": ineq}, PASS)


def cmd_k_range(args) -> RunReport:
    m = _metric(args.metric, args.kappa)
    kr = k_range_scan(m, args.points, args.planes, seed=args.seed)
    return RunReport(
        "k-range", {"metric": args.metric, "points": args.points, "planes": args.planes, "seed": args.seed}, kr
    )


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")
    common.add_argument("--kappa", type=float, default=DEFAULT_KAPPA, help="structure constant of the σ-coframe")

    p = argparse.ArgumentParser(prog="pagelab", description="Curvature checks for cohomogeneity-one 4-metrics.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    page = sub.add_parser("page", help="Page metric checks")
    psub = page.add_subparsers(dest="page_command", required=True)
    pr = psub.add_parser("profile", parents=[common], help="profile curves and frame curvatures")
    pr.add_argument("--samples", type=int, default=200)
    pr.add_argument("--coord", choices=("r", "x"), default="r")
    pr.add_argument("--format", choices=("csv", "json"), default="csv")
    pr.set_defaults(func=cmd_page_profile)
    pv = psub.add_parser("verify-einstein", parents=[common])
    pv.add_argument("--samples", type=int, default=200)
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.set_defaults(func=cmd_page_verify)
    ps = psub.add_parser("sign-change", parents=[common])
    ps.add_argument("--n", type=int, default=1000)
    ps.set_defaults(func=cmd_page_sign_change)
    pb = psub.add_parser("bolt-check", parents=[common])
    pb.add_argument("--tol", type=float, default=1e-6)
    pb.set_defaults(func=cmd_page_bolt)

    cn = sub.add_parser("char-numbers", parents=[common], help="Euler characteristic and signature")
    cn.add_argument("--metric", default="page", help="page | s4 | fs | path to a metric config")
    cn.add_argument("--order", type=int, default=128)
    cn.set_defaults(func=cmd_char_numbers)

    kr = sub.add_parser("k-range", parents=[common], help="sectional curvature range")
    kr.add_argument("--metric", default="page")
    kr.add_argument("--points", type=int, default=32)
    kr.add_argument("--planes", type=int, default=64)
    kr.set_defaults(func=cmd_k_range)

    sa = sub.add_parser("solve-a", parents=[common], help="the Page quartic constant")
    sa.set_defaults(func=cmd_solve_a)

    ca = sub.add_parser("calibrate", parents=[common], help="choose the σ-coframe structure constant")
    ca.add_argument("--candidates", type=float, nargs="+", default=[1.0, 2.0])
    ca.set_defaults(func=cmd_calibrate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (ConfigError, MetricValidationError, OSError, ValueError) as exc:
        print(f"pagelab: error: {exc}", file=sys.stderr)
        return 1
    if isinstance(out, str):
        _emit(out, args.out)
        return 0
    _emit(out.to_json(), args.out)
    return 1 if out.status == FAIL else 0


if __name__ == "__main__":
    sys.exit(main())
