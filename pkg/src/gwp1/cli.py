"""Command-line interface for the exact and numeric pipelines.

Canonical output is JSON with sorted keys (byte-identical across runs for the
same configuration); csv and text are projections of the same data.  Exit
codes: 0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp

from .epslaurent import EpsLaurent
from . import charlier as ch
from .invariants import free_energy, invariant_by_genus, n_point_invariant
from .miwa import MiwaPolynomial
from .selftest import run_selftest
from .waves import solve_formal_wave, stirling_g_oracle
from .zmodel import stabilization_check, zmodel_expansion

DEFAULT_PREC = 128
PREC_ENV_VAR = "GWP1_PREC"


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: one command plus its options and output policy."""

    command: str
    options: dict = field(default_factory=dict)
    fmt: str = "json"
    output: str | None = None
    prec: int = DEFAULT_PREC


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Serialization helpers
# ---------------------------------------------------------------------------

def _flat_eps(v: EpsLaurent):
    """Constant values render as a bare "p/q"; otherwise {exponent: "p/q"}."""
    j = v.to_json()
    if list(j) in ([], ["0"]):
        return j.get("0", "0")
    return j


def _series_json(h) -> dict:
    return {str(d): _flat_eps(h.coeff(d)) for d in sorted(h.c)}


def _emit(doc, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _to_csv(doc)
    else:
        text = _to_text(doc)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_of(doc):
    if isinstance(doc, list):
        return doc
    if isinstance(doc, dict) and isinstance(doc.get("rows"), list):
        return doc["rows"]
    return None


def _flatten(prefix: str, v, out: dict) -> None:
    if isinstance(v, dict):
        for k in sorted(v):
            _flatten(f"{prefix}.{k}" if prefix else str(k), v[k], out)
    else:
        out[prefix] = v


def _to_csv(doc) -> str:
    rows = _rows_of(doc)
    if rows is None:
        flat: dict = {}
        _flatten("", doc, flat)
        rows = [{"key": k, "value": v} for k, v in flat.items()]
    else:
        flat_rows = []
        for r in rows:
            fr: dict = {}
            _flatten("", r, fr)
            flat_rows.append(fr)
        rows = flat_rows
    headers = sorted({k for r in rows for k in r})
    lines = [",".join(headers)]
    for r in rows:
        lines.append(",".join(str(r.get(h, "")) for h in headers))
    return "\n".join(lines) + "\n"


def _to_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        parts = []
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)):
                parts.append(f"{pad}{k}:\n{_to_text(v, indent + 1)}")
            else:
                parts.append(f"{pad}{k}: {v}\n")
        return "".join(parts)
    if isinstance(doc, list):
        return "".join(_to_text(v, indent) for v in doc)
    return f"{pad}{doc}\n"


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r} ({exc})")


def _parse_ks(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"malformed ks list: {text!r}")
    if not ks or any(k < 0 for k in ks):
        raise UsageError("ks must be a nonempty comma-separated list of k >= 0")
    return ks


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_wave(cfg: RunConfig):
    which = cfg.options["which"]
    order = cfg.options["order"]
    if order < 0:
        raise UsageError("order must be >= 0")
    sigma = +1 if which == "f" else -1
    h = solve_formal_wave(sigma, max(order, 1)).h.truncate(max(order, 1))
    doc = {str(-d): _flat_eps(h.coeff(-d)) for d in range(order + 1) if h.coeff(-d)}
    return doc


def cmd_wave_oracle(cfg: RunConfig):
    order = cfg.options["order"]
    if order < 1:
        raise UsageError("order must be >= 1")
    h = stirling_g_oracle(order).h
    return {str(-d): _flat_eps(h.coeff(-d)) for d in range(order + 1) if h.coeff(-d)}


def cmd_invariant(cfg: RunConfig):
    ks = _parse_ks(cfg.options["ks"])
    if cfg.options.get("by_genus"):
        table = invariant_by_genus(ks)
        d_shift = sum(ks) // 2 + 1
        return {f"{g},{d_shift - g}": str(v) for g, v in sorted(table.items())}
    rec = n_point_invariant(ks, check_stability=not cfg.options.get("no_stability"))
    return rec.value.to_json()


def cmd_free_energy(cfg: RunConfig):
    w = cfg.options["max_weight"]
    if w < 1:
        raise UsageError("max weight must be >= 1")
    fe = free_energy(w)
    return {",".join(map(str, ks)): v.to_json() for ks, v in sorted(fe.items())}


def _miwa_json(p: MiwaPolynomial) -> dict:
    return {
        ",".join(map(str, ks)): _flat_eps(v) for ks, v in sorted(p.coeffs.items())
    }


def cmd_zmodel(cfg: RunConfig):
    n = cfg.options["n"]
    degree = cfg.options["degree"]
    if n < 1 or degree < 1:
        raise UsageError("n and degree must be >= 1")
    if cfg.options.get("check_stabilization"):
        return {"degree": degree, "n": [n, n + 1],
                "stable": stabilization_check(degree, n, n + 1)}
    exp = zmodel_expansion(n, degree)
    if cfg.options.get("miwa"):
        return _miwa_json(exp.log_in_times)
    q = exp.quotient
    coeffs = [
        {"exp": list(t), "val": _flat_eps(v)}
        for t, v in sorted(q.c.items())
        if v and sum(t) >= -degree
    ]
    return {"vars": n, "degree": degree, "coeffs": coeffs}


def cmd_charlier(cfg: RunConfig):
    check = cfg.options["check"]
    prec = cfg.prec
    eps = _parse_rat(cfg.options.get("eps") or "1")
    if check == "orthogonality":
        a = _parse_rat(cfg.options.get("a") or "1")
        tol = mp.mpf(10) ** -20
        rows = []
        for l in range(5):
            for lp in range(l, 5):
                val, target = ch.charlier_orthogonality_sum(l, lp, a, tol, prec)
                rows.append({
                    "input": {"l": l, "lp": lp, "a": str(a)},
                    "value": mp.nstr(val, 17),
                    "target": mp.nstr(target, 17),
                    "abs_error": mp.nstr(abs(val - target), 6),
                })
        return {"rows": rows}
    if check == "limit":
        ls = cfg.options.get("L") or [20, 40, 80]
        rep = ch.charlier_scaling_limit_check(0, 0, eps, ls, prec)
        rows = [
            {
                "input": {"L": L, "zeta": "0", "ell": 0, "eps": str(eps)},
                "value": mp.nstr(v, 17),
                "target": mp.nstr(rep.target, 17),
                "abs_error": mp.nstr(e, 6),
            }
            for (L, v, e) in rep.rows
        ]
        return {"rows": rows, "monotone_decreasing": rep.monotone_decreasing}
    if check == "charpoly":
        a = _parse_rat(cfg.options.get("a") or "1")
        rows = []
        for L in (1, 2):
            for us in ((mp.mpf(3),), (mp.mpf(3), mp.mpf("4.5"))):
                val = ch.char_poly_expectation(L, a, us, prec)
                ref = ch.brute_force_expectation(L, a, us, 60, prec)
                rows.append({
                    "input": {"L": L, "us": [float(u) for u in us], "a": str(a)},
                    "value": mp.nstr(val, 17),
                    "target": mp.nstr(ref, 17),
                    "abs_error": mp.nstr(abs(val - ref), 6),
                })
        return {"rows": rows}
    if check == "asymptotics":
        rows = []
        for z in (20, 40):
            rep = ch.asymptotic_match_check(z, eps, 3, prec)
            rows.append(rep.to_json())
        return {"rows": rows}
    raise UsageError(f"unknown charlier check {check!r}")


def cmd_selftest(cfg: RunConfig):
    results = run_selftest(cfg.options.get("only"))
    doc = {"rows": [r.to_json() for r in results],
           "passed": all(r.passed for r in results)}
    return doc


COMMANDS = {
    "wave": cmd_wave,
    "wave-oracle": cmd_wave_oracle,
    "invariant": cmd_invariant,
    "free-energy": cmd_free_energy,
    "zmodel": cmd_zmodel,
    "charlier": cmd_charlier,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    grp = common.add_argument_group("output options")
    # SUPPRESS keeps a subcommand parse from clobbering values given before it
    grp.add_argument("--config", default=argparse.SUPPRESS,
                     help="JSON file with default option values")
    grp.add_argument("--format", choices=("json", "csv", "text"),
                     default=argparse.SUPPRESS)
    grp.add_argument("--output", default=argparse.SUPPRESS,
                     help="write output to this path instead of stdout")
    grp.add_argument("--prec", type=int, default=argparse.SUPPRESS,
                     help=f"precision in bits (default from ${PREC_ENV_VAR} or "
                          f"{DEFAULT_PREC})")

    parser = argparse.ArgumentParser(
        prog="gwp1",
        parents=[common],
        description="Exact and numeric pipelines for stationary descendent "
        "invariants of the sphere",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("wave", parents=[common],
                       help="formal wave-series coefficients")
    p.add_argument("--which", choices=("f", "g"), required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("wave-oracle", parents=[common],
                       help="independent Stirling-series oracle for g")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("invariant", parents=[common],
                       help="stationary descendent invariant")
    p.add_argument("--ks", required=True, help="comma-separated insertion indices")
    p.add_argument("--by-genus", action="store_true", dest="by_genus")
    p.add_argument("--no-stability", action="store_true", dest="no_stability",
                   help="skip the doubled-order stability recomputation")

    p = sub.add_parser("free-energy", parents=[common],
                       help="generating-function coefficients")
    p.add_argument("--max-weight", type=int, required=True, dest="max_weight")

    p = sub.add_parser("zmodel", parents=[common],
                       help="determinantal-model expansion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--miwa", action="store_true",
                   help="report the logarithm in the time variables")
    p.add_argument("--check-stabilization", action="store_true",
                   dest="check_stabilization")

    p = sub.add_parser("charlier", parents=[common],
                       help="arbitrary-precision numeric checks")
    p.add_argument("--check", required=True,
                   choices=("orthogonality", "limit", "charpoly", "asymptotics"))
    p.add_argument("--eps", help='rational "p/q" (default 1)')
    p.add_argument("--a", help='measure parameter "p/q" (default 1)')
    p.add_argument("--L", type=int, nargs="+", help="sizes for the limit check")

    p = sub.add_parser("selftest", parents=[common],
                       help="run the verification suite")
    p.add_argument("--only", help="run a single named check")
    p.add_argument("--json", action="store_true",
                   help="alias for --format json (the default)")
    return parser


def _load_config_defaults(argv, parser):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    ns, _ = pre.parse_known_args(argv)
    if ns.config:
        try:
            with open(ns.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}")
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        parser.set_defaults(**{k.replace("-", "_"): v for k, v in data.items()})


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        _load_config_defaults(argv, parser)
        ns = parser.parse_args(argv)
        if not ns.command:
            parser.print_usage(sys.stderr)
            return 2
        prec = getattr(ns, "prec", None)
        if prec is None:
            prec = int(os.environ.get(PREC_ENV_VAR, DEFAULT_PREC))
        if prec < 8:
            raise UsageError("precision must be at least 8 bits")
        options = {
            k: v
            for k, v in vars(ns).items()
            if k not in ("command", "config", "format", "output", "prec")
        }
        fmt = "json" if options.pop("json", False) else getattr(ns, "format", "json")
        cfg = RunConfig(ns.command, options, fmt, getattr(ns, "output", None), prec)
        doc = COMMANDS[cfg.command](cfg)
        _emit(doc, cfg)
        if cfg.command == "selftest" and not doc["passed"]:
            return 1
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
