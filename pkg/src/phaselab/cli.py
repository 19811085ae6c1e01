"""Batch command-line front end.

Plot-oriented results are CSV (gnuplot-friendly, '#' comment header),
structured results are JSON.  Every output carries the 64-bit FNV-1a hash
of the canonical flag string, so identical configurations produce
byte-identical files.  Files are written atomically (temp file + rename);
rejected configurations produce no output files.  Long scans report
progress on stderr only.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
import tempfile

import numpy as np

from .discrim import fourier_measurement_success, overlap_closed_form
from .errors import CertificateConstructionError, DomainError, ResourceError, SolverError
from .farkas import (
    TrigPoly,
    adaptive_lower_bound,
    build_certificate,
    build_system,
    positivity_check,
    scan_min_applications,
    verify_certificate,
    witness_factors,
    witness_value,
)
from .phases import DyadicPhase
from .pesim import pe_simulate
from .strategy import adaptive_protocol, nonadaptive_strategy

log = logging.getLogger("phaselab")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_SOLVER = 2
EXIT_USAGE = 64


def fnv1a64(text: str) -> str:
    """64-bit FNV-1a hash of a string, as 16 hex digits."""
    value = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        value ^= byte
        value = (value * 0x100000001B3) % (1 << 64)
    return f"{value:016x}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _canonical(command: str, params: dict) -> str:
    parts = [command]
    for key in sorted(params):
        value = params[key]
        if value is not None:
            parts.append(f"--{key} {value}")
    return " ".join(parts)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".phaselab-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: str, columns: list[str], rows) -> str:
    out = io.StringIO()
    out.write(f"# {header}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")
    return out.getvalue()


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _json_text(config: dict, payload: dict) -> str:
    return json.dumps({"config": config, **payload}, indent=2, sort_keys=True) + "\n"


def _config(command: str, params: dict) -> tuple[str, dict]:
    canonical = _canonical(command, params)
    digest = fnv1a64(canonical)
    return f"phaselab {canonical} config={digest}", {"args": canonical, "hash": digest}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    params = {"k": args.k, "n": args.n, "seed": args.seed}
    header, _ = _config("simulate", params)
    phi = DyadicPhase(args.n, args.k)
    dist = pe_simulate(args.k, phi)
    rows = [(m, p) for m, p in enumerate(dist.probabilities)]
    _write_text(args.out, _csv_text(header, ["m", "probability"], rows))
    return EXIT_OK


def _cmd_nonadaptive(args) -> int:
    params = {"k": args.k, "ell": args.ell, "seed": args.seed}
    _, config = _config("nonadaptive", params)
    strategy = nonadaptive_strategy(args.k, args.ell)
    result = fourier_measurement_success(args.k, args.ell)
    overlaps = [overlap_closed_form(args.k, args.ell, r) for r in range(1 << args.ell)]
    payload = {
        "k": args.k,
        "ell": args.ell,
        "N": strategy.profile.n_applications,
        "total_cost": strategy.total_cost,
        "worst_case_success": result.worst_case,
        "overlaps": [[z.real, z.imag] for z in overlaps],
    }
    _write_text(args.out, _json_text(config, payload))
    return EXIT_OK


def _cmd_adaptive(args) -> int:
    params = {"k": args.k, "ell": args.ell, "seed": args.seed}
    _, config = _config("adaptive", params)
    strategy = adaptive_protocol(args.k, args.ell)
    payload = {
        "k": args.k,
        "ell": args.ell,
        "stage1_cost": strategy.stage1_cost,
        "stage2_costs": list(strategy.stage2_costs),
        "worst_case_cost": strategy.worst_case_cost,
        "error_prob": strategy.error_prob,
    }
    _write_text(args.out, _json_text(config, payload))
    return EXIT_OK


def _cmd_certify(args) -> int:
    params = {
        "k": args.k,
        "ell": args.ell,
        "n": args.n,
        "kappa": args.kappa,
        "grid": args.grid,
        "seed": args.seed,
    }
    _, config = _config("certify", params)
    eps_bound = 2 * math.sqrt(args.kappa)
    certificate = build_certificate(args.k, args.ell, args.n, eps_bound)
    system = build_system(args.k, args.ell, args.n, eps_bound)
    report = verify_certificate(certificate, system)
    payload = {
        "k": args.k,
        "ell": args.ell,
        "N": args.n,
        "eps_bound": eps_bound,
        "y": list(certificate.y),
        "margin_primal": report.margin_primal,
        "margin_dual": report.margin_dual,
        "valid": report.valid,
    }
    if args.grid is not None:
        check = positivity_check(
            TrigPoly.from_y_vector(certificate.y), args.n / (1 << args.k), args.grid
        )
        payload["continuum_positivity"] = check.status.value
        payload["continuum_min_value"] = check.min_value
    _write_text(args.out, _json_text(config, payload))
    return EXIT_OK


def _cmd_scan(args) -> int:
    params = {
        "k": args.k,
        "ell": args.ell,
        "kappa": args.kappa,
        "workers": args.workers,
        "seed": args.seed,
    }
    header, _ = _config("scan", params)
    result = scan_min_applications(args.k, args.ell, args.kappa, workers=args.workers)
    rows = [
        (args.k, args.ell, n, feasible, n / (1 << args.k))
        for n, feasible in result.evaluations
    ]
    _write_text(args.out, _csv_text(header, ["k", "ell", "N", "feasible", "ratio"], rows))
    return EXIT_OK


def _cmd_fl_plot(args) -> int:
    params = {"ell": args.ell, "samples": args.samples, "seed": args.seed}
    header, _ = _config("fl-plot", params)
    xs = np.linspace(0.0, 1.0, args.samples)
    factors = witness_factors(args.ell)
    columns = ["x", "f"] + [name for name, _ in factors]
    values = [fn(xs) for _, fn in factors]
    f_vals = witness_value(args.ell, xs)
    rows = [
        tuple([xs[i], f_vals[i]] + [v[i] for v in values]) for i in range(len(xs))
    ]
    _write_text(args.out, _csv_text(header, columns, rows))
    return EXIT_OK


def _cmd_report(args) -> int:
    params = {"k": args.k, "ell": args.ell, "kappa": args.kappa, "seed": args.seed}
    _, config = _config("report", params)
    adaptive = adaptive_protocol(args.k, args.ell)
    nonadaptive = nonadaptive_strategy(args.k, args.ell)
    fourier = fourier_measurement_success(args.k, args.ell)
    eps_bound = 2 * math.sqrt(args.kappa)
    overlaps_ok = all(
        abs(overlap_closed_form(args.k, args.ell, r)) <= eps_bound
        for r in range(1 << args.ell)
    )
    certified_n = None
    threshold = (1 << args.ell) / ((1 << args.ell) + 1)
    target = int((threshold - 0.02) * (1 << args.k))
    try:
        build_certificate(args.k, args.ell, target, eps_bound)
        certified_n = target
    except CertificateConstructionError as err:
        if err.largest_provable_n is not None and err.largest_provable_n > 0:
            certified_n = err.largest_provable_n
    except DomainError:
        pass
    payload = {
        "k": args.k,
        "ell": args.ell,
        "adaptive_cost": adaptive.worst_case_cost,
        "nonadaptive_cost": nonadaptive.total_cost,
        "ratio": nonadaptive.total_cost / adaptive.worst_case_cost,
        "error_probs": {
            "adaptive": adaptive.error_prob,
            "nonadaptive": 1.0 - fourier.worst_case,
        },
        "bounds": {
            "adaptive_lower": adaptive_lower_bound(2.0 ** (-args.k), args.kappa),
            "nonadaptive_feasible_n": nonadaptive.profile.n_applications if overlaps_ok else None,
            "nonadaptive_certified_infeasible_n": certified_n,
        },
    }
    _write_text(args.out, _json_text(config, payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="phaselab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, k=False, ell=False, n=False, kappa=None, samples=False, grid=False):
        if k:
            p.add_argument("--k", type=int, required=True, help="precision bits")
        if ell:
            p.add_argument("--ell", type=int, required=True, help="pair-structure parameter")
        if n:
            p.add_argument("--n", type=int, required=True, help="application budget N")
        if kappa is not None:
            p.add_argument("--kappa", type=float, default=kappa, help="target error probability")
        if samples:
            p.add_argument("--samples", type=int, default=1000, help="number of sample points")
        if grid:
            p.add_argument("--grid", type=int, default=None, help="positivity-check grid intervals")
        p.add_argument("--out", type=str, default=None, help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=0, help="reserved; recorded in the config hash")
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                       help="worker pool size for scans")

    p = sub.add_parser("simulate", help="exact PE circuit outcome distribution")
    common(p, k=True)
    p.add_argument("--n", type=int, required=True, help="phase numerator; phi = n / 2^k")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("nonadaptive", help="comb strategy overlaps and success")
    common(p, k=True, ell=True)
    p.set_defaults(fn=_cmd_nonadaptive)

    p = sub.add_parser("adaptive", help="two-stage adaptive protocol costs")
    common(p, k=True, ell=True)
    p.set_defaults(fn=_cmd_adaptive)

    p = sub.add_parser("certify", help="explicit Farkas certificate for a budget")
    common(p, k=True, ell=True, n=True, kappa=1e-4, grid=True)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("scan", help="bracket the minimum feasible budget")
    common(p, k=True, ell=True, kappa=1e-4)
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("fl-plot", help="sample the witness polynomial and its factors")
    common(p, ell=True, samples=True)
    p.set_defaults(fn=_cmd_fl_plot)

    p = sub.add_parser("report", help="adaptive vs non-adaptive cost report")
    common(p, k=True, ell=True, kappa=1e-4)
    p.set_defaults(fn=_cmd_report)

    return parser


def run_command(argv: list[str]) -> int:
    """Dispatch a CLI invocation; returns the process exit code."""
    level = os.environ.get("PHASELAB_LOG", "WARNING").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.WARNING))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except DomainError as err:
        log.error("domain error: %s", err)
        sys.stderr.write(f"domain error: {err}\n")
        return EXIT_DOMAIN
    except (ResourceError, SolverError) as err:
        log.error("solver/resource error: %s", err)
        sys.stderr.write(f"solver/resource error: {err}\n")
        return EXIT_SOLVER


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
