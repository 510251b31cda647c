"""Command-line interface: ``polyannulus {bound,annulus,spread,roots,bench}``.

Exit codes: 0 success, 2 input error, 3 zero constant term left after
deflation, 4 some root did not converge (results are still printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
from pathlib import Path
import sys
from xml.sax.saxutils import escape

import numpy as np

from . import bench
from .balance import DEFAULT_ITERATIONS
from .bounds import (
    DEFAULT_KS,
    annulus,
    bound_table,
    deflate_zero_roots,
    spread_bounds,
)
from .companion import Form
from .errors import PolyAnnulusError, ZeroConstantTerm
from .oracle import AberthConfig, aberth_roots
from .poly import Polynomial, make_poly, monicize
from .powers import ALL_NORMS, Norm

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ZERO_CONST = 3
EXIT_UNCONVERGED = 4


class InputError(Exception):
    pass


# -- polynomial files ---------------------------------------------------------------


def read_poly(path, order: str = "asc") -> Polynomial:
    """Read a JSON or CSV polynomial file (see README for both layouts)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            doc = json.loads(text)
            raw = doc["coeffs"]
            coeffs = [complex(*c) if isinstance(c, (list, tuple)) else complex(c) for c in raw]
        else:
            coeffs = []
            for row in csv.reader(io.StringIO(text)):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                vals = [float(v) for v in row]
                if len(vals) == 1:
                    vals.append(0.0)
                if len(vals) != 2:
                    raise ValueError(f"expected 're,im', got {row!r}")
                coeffs.append(complex(vals[0], vals[1]))
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed polynomial file {path}: {exc}") from exc
    if order == "desc":
        coeffs = coeffs[::-1]
    try:
        return make_poly(coeffs)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def write_poly_json(p: Polynomial, path) -> None:
    doc = {"coeffs": [[c.real, c.imag] for c in p.coeffs.tolist()], "monic": bool(p.is_monic)}
    Path(path).write_text(json.dumps(doc))


# -- formatting ---------------------------------------------------------------------


def _num(x):
    """Full precision in scientific notation; JSON has no inf, so use strings there."""
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.17e}")


def _sig4(x) -> str:
    return f"{float(x):.4g}"


def _emit(doc: dict, output: str, table_rows=None, table_cols=None) -> str:
    if output == "json":
        return json.dumps(doc, indent=2)
    rows = table_rows or []
    cols = table_cols or (list(rows[0]) if rows else [])
    if output == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: (repr(r[c]) if isinstance(r[c], float) else r[c]) for c in cols})
        return buf.getvalue().rstrip("\n")
    lines = []
    if rows:
        cells = [[_sig4(r[c]) if isinstance(r[c], float) else str(r[c]) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    for w in doc.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines)


# -- shared argument handling ---------------------------------------------------------


def _parse_ks(text: str) -> list[int]:
    try:
        ks = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}")
    if not ks or min(ks) < 1:
        raise argparse.ArgumentTypeError("k values must be integers >= 1")
    return ks


def _parse_norms(text: str) -> tuple:
    try:
        return tuple(Norm.parse(t.strip()) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad norm list {text!r}; use one,inf,fro")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _add_bound_flags(sp, need_poly=True):
    if need_poly:
        sp.add_argument("--poly", required=True, help="JSON or CSV polynomial file")
        sp.add_argument("--order", choices=("asc", "desc"), default="asc")
    sp.add_argument("--k", type=_parse_ks, default=list(DEFAULT_KS))
    sp.add_argument("--norms", type=_parse_norms, default=ALL_NORMS)
    sp.add_argument("--balance-iters", type=_nonneg, default=DEFAULT_ITERATIONS)
    sp.add_argument("--form", choices=("frobenius-transpose", "frobenius"), default="frobenius-transpose")
    sp.add_argument("--output", choices=("json", "csv", "table"), default="table")


def _prepare(args):
    """Read, monicize and deflate; returns (polynomial, multiplicity, warnings)."""
    p = read_poly(args.poly, args.order)
    warnings = []
    if not p.is_monic:
        p = monicize(p)
    rec = deflate_zero_roots(p)
    if rec.deflated.degree == 0:
        raise ZeroConstantTerm(f"every root is zero (x**{rec.zero_root_multiplicity}); no annulus to bound")
    if rec.zero_root_multiplicity:
        warnings.append(
            f"0 is a root of multiplicity {rec.zero_root_multiplicity}; "
            "bounds describe the remaining roots"
        )
    return rec.deflated, rec.zero_root_multiplicity, warnings


def _table_rows(table):
    return [dict(r, value=float(r["value"])) for r in table.rows()]


# -- commands ---------------------------------------------------------------------------


def cmd_bound(args) -> tuple[dict, int, str]:
    p, m, warnings = _prepare(args)
    table = bound_table(p, args.k, args.norms, args.balance_iters, Form(args.form))
    rows = _table_rows(table)
    doc = {
        "table": [dict(r, value=_num(r["value"])) for r in rows],
        "warnings": warnings,
        "zero_roots": m,
    }
    return doc, EXIT_OK, _emit(doc, args.output, rows, ["matrix", "k", "norm", "balanced", "value"])


def _annulus_doc(a) -> dict:
    return {
        "r_lo": _num(a.r_lo),
        "r_hi": _num(a.r_hi),
        "k1": a.k1,
        "k2": a.k2,
        "norms": list(a.norms),
        "balance_iters": a.balance_iters,
    }


def _k_pair(args):
    k1 = args.k1 if getattr(args, "k1", None) else max(args.k)
    k2 = args.k2 if getattr(args, "k2", None) else k1
    return k1, k2


def render_svg(r_lo: float, r_hi: float, roots=None, size: int = 800) -> str:
    """Static SVG of the annulus: two origin-centred circles, axes, optional root markers."""
    half = 1.1 * r_hi if r_hi > 0 else 1.0
    sw = half / 400
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{-half!r} {-half!r} {2 * half!r} {2 * half!r}">',
        f'<line x1="{-half!r}" y1="0" x2="{half!r}" y2="0" stroke="gray" stroke-width="{sw!r}"/>',
        f'<line x1="0" y1="{-half!r}" x2="0" y2="{half!r}" stroke="gray" stroke-width="{sw!r}"/>',
        f'<circle cx="0" cy="0" r="{r_lo!r}" fill="none" stroke="blue" stroke-width="{2 * sw!r}"/>',
        f'<circle cx="0" cy="0" r="{r_hi!r}" fill="none" stroke="red" stroke-width="{2 * sw!r}"/>',
    ]
    for z in roots if roots is not None else []:
        x, y = float(z.real), -float(z.imag)
        d = 4 * sw
        parts.append(
            f'<path d="M {x - d!r} {y - d!r} L {x + d!r} {y + d!r} M {x - d!r} {y + d!r} '
            f'L {x + d!r} {y - d!r}" stroke="black" stroke-width="{sw!r}"><title>'
            f"{escape(repr(complex(z)))}</title></path>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_annulus(args) -> tuple[dict, int, str]:
    p, m, warnings = _prepare(args)
    k1, k2 = _k_pair(args)
    a = annulus(p, k1, k2, args.norms, args.balance_iters, Form(args.form))
    doc = {"annulus": _annulus_doc(a), "warnings": warnings, "zero_roots": m}
    code = EXIT_OK
    roots = None
    if args.plot_roots:
        rs = aberth_roots(p, AberthConfig())
        roots = rs.roots
        doc["roots"] = [[_num(z.real), _num(z.imag)] for z in rs.roots] + [[0.0, 0.0]] * m
        if not rs.all_converged:
            warnings.append("some roots did not converge")
            code = EXIT_UNCONVERGED
    if args.svg:
        Path(args.svg).write_text(render_svg(a.r_lo, a.r_hi, roots))
    row = {"r_lo": a.r_lo, "r_hi": a.r_hi, "k1": k1, "k2": k2}
    return doc, code, _emit(doc, args.output, [row], list(row))


def cmd_spread(args) -> tuple[dict, int, str]:
    p, m, warnings = _prepare(args)
    k1, k2 = _k_pair(args)
    which = args.norms[0] if len(args.norms) == 1 else Norm.INF
    s = spread_bounds(p, k1, k2, which, args.balance_iters, Form(args.form))
    warnings.append(
        "the distance bracket for |root_max - root_min| is asymptotic: "
        "it is guaranteed only for sufficiently large k"
    )
    doc = {
        "spreads": {
            "abs_spread_upper": _num(s.abs_spread_upper),
            "root_spread_upper": _num(s.root_spread_upper),
            "distance_bracket": [_num(s.distance_bracket[0]), _num(s.distance_bracket[1])],
            "asymptotic_flag": s.asymptotic_flag,
            "k1": k1,
            "k2": k2,
            "norm": which.value,
            "balance_iters": args.balance_iters,
        },
        "warnings": warnings,
        "zero_roots": m,
    }
    row = {
        "abs_spread_upper": s.abs_spread_upper,
        "root_spread_upper": s.root_spread_upper,
        "bracket_lo": s.distance_bracket[0],
        "bracket_hi": s.distance_bracket[1],
    }
    return doc, EXIT_OK, _emit(doc, args.output, [row], list(row))


def cmd_roots(args) -> tuple[dict, int, str]:
    p = read_poly(args.poly, args.order)
    rs = aberth_roots(p, AberthConfig(tol=args.tol, max_iters=args.max_iters))
    warnings = []
    m = int(np.sum(rs.roots == 0))
    if m:
        warnings.append(f"0 is a root of multiplicity {m}")
    code = EXIT_OK
    if not rs.all_converged:
        warnings.append(f"{int((~rs.converged).sum())} roots did not converge")
        code = EXIT_UNCONVERGED
    rows = [
        {"re": float(z.real), "im": float(z.imag), "modulus": float(abs(z)),
         "residual": float(r), "converged": bool(c)}
        for z, r, c in zip(rs.roots, rs.residuals, rs.converged)
    ]
    doc = {
        "roots": [dict(r, re=_num(r["re"]), im=_num(r["im"]), modulus=_num(r["modulus"]),
                       residual=_num(r["residual"])) for r in rows],
        "iterations": rs.iterations,
        "warnings": warnings,
    }
    return doc, code, _emit(doc, args.output, rows, list(rows[0]) if rows else [])


def cmd_bench(args) -> tuple[dict, int, str]:
    if args.name not in bench.EXPERIMENTS:
        raise InputError(f"unknown benchmark {args.name!r}")
    spec = bench.ExperimentSpec.default(
        args.name, ks=args.k, norms=args.norms, balance_iters=args.balance_iters,
        headers=not args.no_headers,
    )
    table = bench.run_experiment(spec)
    rows = _table_rows(table)
    doc = {
        "name": args.name,
        "balance_iters": spec.balance_iters,
        "headers": {k: _num(v) for k, v in table.headers.items()},
        "table": [dict(r, value=_num(r["value"])) for r in rows],
        "warnings": [],
    }
    text = _emit(doc, args.output, rows, ["matrix", "k", "norm", "balanced", "value"])
    if args.output == "table" and table.headers:
        text = (f"rho(C1) = {_sig4(table.headers['rho_c1'])}   "
                f"1/rho(C2) = {_sig4(table.headers['inv_rho_c2'])}\n") + text
    return doc, EXIT_OK, text


# -- entry point ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="polyannulus", description="Annulus bounds on polynomial roots.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("bound", help="table of upper and lower bounds")
    _add_bound_flags(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("annulus", help="best annulus, optionally as SVG")
    _add_bound_flags(sp)
    sp.add_argument("--k1", type=int)
    sp.add_argument("--k2", type=int)
    sp.add_argument("--svg")
    sp.add_argument("--plot-roots", action="store_true")
    sp.set_defaults(func=cmd_annulus)

    sp = sub.add_parser("spread", help="root-spread bounds")
    _add_bound_flags(sp)
    sp.add_argument("--k1", type=int)
    sp.add_argument("--k2", type=int)
    sp.set_defaults(func=cmd_spread)

    sp = sub.add_parser("roots", help="roots by Ehrlich-Aberth iteration")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--order", choices=("asc", "desc"), default="asc")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--max-iters", type=int, default=200)
    sp.add_argument("--output", choices=("json", "csv", "table"), default="table")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("bench", help="reproduce a benchmark table")
    sp.add_argument("--name", required=True)
    sp.add_argument("--k", type=_parse_ks, default=None)
    sp.add_argument("--norms", type=_parse_norms, default=None)
    sp.add_argument("--balance-iters", type=_nonneg, default=None)
    sp.add_argument("--no-headers", action="store_true", help="skip the reference radii")
    sp.add_argument("--output", choices=("json", "csv", "table"), default="table")
    sp.set_defaults(func=cmd_bench)
    return ap


def run(argv=None) -> tuple[dict | None, int, str]:
    """Parse and dispatch; returns ``(doc, exit_code, text)`` without printing."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        return None, EXIT_INPUT, f"error: {exc}"
    except ZeroConstantTerm as exc:
        return None, EXIT_ZERO_CONST, f"error: {exc}"
    except PolyAnnulusError as exc:
        return None, EXIT_INPUT, f"error: {exc}"
    except ValueError as exc:
        return None, EXIT_INPUT, f"error: {exc}"


def main(argv=None) -> int:
    doc, code, text = run(argv)
    stream = sys.stdout if doc is not None else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
