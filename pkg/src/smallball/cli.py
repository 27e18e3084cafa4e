"""Command-line entry point: ``smallball <subcommand> ...``.

Exit codes: 0 success, 1 a verified fact failed, 2 usage error,
3 an undecidable verdict under ``--strict``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .exact import Undecidable, exact, point_str
from .germs import Unsupported

EXIT_OK, EXIT_FACT, EXIT_USAGE, EXIT_UNDECIDABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- argument helpers ------------------------------------------------------------

def _split_top(text: str, sep: str = ",") -> list:
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def parse_point(text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return tuple(parse_point(t) for t in _split_top(text[1:-1]))
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot parse point {text!r}") from e
    return int(v) if v.denominator == 1 and "/" not in text and "." not in text else v


def parse_points(text: str) -> list:
    pts = [parse_point(t) for t in _split_top(text)]
    if not pts:
        raise UsageError("no points given")
    return pts


def _coerce_point(mu, p):
    """Integer literals become ``Fraction`` on the real line, and stay ``int`` on discrete spaces."""
    from .metric import RealLine
    if isinstance(mu.space, RealLine) and isinstance(p, int):
        return Fraction(p)
    return p


def _radius(text: str):
    try:
        r = exact(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot parse radius {text!r}") from e
    if not r > 0:
        raise UsageError("radius must be positive")
    return r


def _load_selection(args):
    """``(measure, gallery item or None)`` from ``--gallery`` or ``--measure``."""
    from .gallery import REGISTRY, get_item
    from .serialize import MalformedMeasure, measure_from_json
    if bool(args.gallery) == bool(args.measure):
        raise UsageError("give exactly one of --gallery or --measure")
    if args.gallery:
        if args.gallery not in REGISTRY:
            raise UsageError(f"unknown gallery id {args.gallery!r}; see 'gallery list'")
        item = get_item(args.gallery)
        return item.measure, item
    try:
        with open(args.measure) as fh:
            return measure_from_json(json.load(fh)), None
    except OSError as e:
        raise UsageError(f"cannot read measure file: {e}") from e
    except (json.JSONDecodeError, MalformedMeasure) as e:
        raise UsageError(f"malformed measure file: {e}") from e


# -- output ----------------------------------------------------------------------

def _emit(args, payload, fmt_ok=("json",)):
    fmt = args.format
    if fmt not in fmt_ok:
        raise UsageError(f"--format {fmt} is not available here; choose from {', '.join(fmt_ok)}")
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        text = payload if isinstance(payload, str) else _rows_csv(payload)
    else:
        text = payload if isinstance(payload, str) else _table(payload)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_csv(rows) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _table(rows) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# -- subcommands -------------------------------------------------------------------

def cmd_gallery(args) -> int:
    from .gallery import REGISTRY, figure_rows, get_item, list_items, to_csv, verify_expected_facts
    if args.action == "list":
        rows = [{"id": k, "description": d} for k, d in list_items()]
        _emit(args, rows if args.format != "json" else {"items": rows}, ("json", "table", "csv"))
        return EXIT_OK
    if args.action == "figure":
        if args.target not in ("1", "2", "5"):
            raise UsageError("figure must be one of 1, 2, 5")
        if args.format == "json":
            args.format = "csv"
        _emit(args, to_csv(figure_rows(args.target)), ("csv",))
        return EXIT_OK
    if args.action == "show":
        if args.target not in REGISTRY:
            raise UsageError(f"unknown gallery id {args.target!r}")
        _emit(args, get_item(args.target).to_json())
        return EXIT_OK
    ids = list(REGISTRY) if args.target in (None, "all") else [args.target]
    for i in ids:
        if i not in REGISTRY:
            raise UsageError(f"unknown gallery id {i!r}")
    reports = [verify_expected_facts(get_item(i), workers=args.workers) for i in ids]
    if args.format == "table":
        _emit(args, "\n".join(r.table() for r in reports) + "\n", ("table",))
    else:
        _emit(args, {"passed": all(r.passed for r in reports), "items": [r.to_json() for r in reports]})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FACT


def _undecided(args, payload) -> int:
    _emit(args, [payload] if args.format == "table" else payload, ("json", "table"))
    return EXIT_UNDECIDABLE if args.strict else EXIT_OK


def cmd_compare(args) -> int:
    from .preorder import compare_at_radius, compare_limit, compare_liminf_relation, compare_limsup_relation
    mu, _ = _load_selection(args)
    pts = [_coerce_point(mu, p) for p in parse_points(args.points)]
    if len(pts) != 2:
        raise UsageError("compare needs exactly two points")
    x, y = pts
    head = {"points": [point_str(x), point_str(y)], "mode": args.mode}
    try:
        if args.mode == "radius":
            if args.r is None:
                raise UsageError("--mode radius needs --r")
            out = {**head, **compare_at_radius(mu, x, y, _radius(args.r)).to_json()}
        elif args.mode == "limit":
            out = {**head, **compare_limit(mu, x, y, args.depth).to_json()}
        elif args.mode == "liminf":
            out = {**head, "holds": compare_liminf_relation(mu, x, y)}
        else:
            out = {**head, "holds": compare_limsup_relation(mu, x, y)}
    except (Undecidable, Unsupported) as e:
        return _undecided(args, {**head, "relation": "Undecidable", "reason": str(e)})
    except ValueError as e:
        raise UsageError(str(e)) from e
    if args.format == "table":
        _emit(args, [{"x": head["points"][0], "y": head["points"][1], "mode": args.mode,
                      "verdict": out.get("relation", out.get("holds"))}], ("table",))
    else:
        _emit(args, out)
    return EXIT_OK


def _domain(args, item):
    if args.domain:
        return args.domain
    return item.domain if item is not None else "line"


def cmd_modes(args) -> int:
    from .modes import sup_ball_mass
    mu, item = _load_selection(args)
    if args.r is None:
        raise UsageError("modes needs --r")
    try:
        rep = sup_ball_mass(mu, _radius(args.r), _domain(args, item))
    except (Undecidable, Unsupported) as e:
        return _undecided(args, {"r": args.r, "attained": "Undecidable", "reason": str(e)})
    except ValueError as e:
        raise UsageError(str(e)) from e
    out = rep.to_json()
    if rep.attained is None and args.strict:
        _emit(args, out)
        return EXIT_UNDECIDABLE
    _emit(args, out)
    return EXIT_OK


def cmd_amf(args) -> int:
    from .modes import amf_upward_intersection, build_amf, default_grid
    mu, item = _load_selection(args)
    grid = default_grid(mu, 1, args.levels)
    eps = "r" if args.eps == "r" else _radius(args.eps)
    dom = _domain(args, item)
    try:
        rec = build_amf(mu, eps, grid, dom)
        out = rec.to_json()
        if args.points:
            cands = [_coerce_point(mu, p) for p in parse_points(args.points)]
            keep = amf_upward_intersection(mu, rec, cands, dom if dom in ("line", "atoms") else "line")
            out["upward_intersection"] = [point_str(c) for c in keep]
    except (Undecidable, Unsupported) as e:
        return _undecided(args, {"amf": "Undecidable", "reason": str(e)})
    except (ValueError, RuntimeError) as e:
        raise UsageError(str(e)) from e
    _emit(args, out)
    return EXIT_OK


def cmd_ratio_plot(args) -> int:
    from .gallery.figures import _log_radii, ratio_rows, to_csv
    from .modes import default_grid
    mu, _ = _load_selection(args)
    pts = [_coerce_point(mu, p) for p in parse_points(args.points)]
    if len(pts) != 2:
        raise UsageError("ratio-plot needs exactly two points")
    base = exact(getattr(mu, "grid_base", Fraction(2)))
    radii = _log_radii(base, args.levels, args.per_level) if args.per_level > 1 else default_grid(mu, 0, args.levels)
    try:
        rows = ratio_rows(mu, pts[0], pts[1], radii)
    except (Undecidable, Unsupported) as e:
        return _undecided(args, {"reason": str(e)})
    if args.format == "json":
        args.format = "csv"
    _emit(args, to_csv(rows), ("csv",))
    return EXIT_OK


def cmd_mc(args) -> int:
    from .sequence import BudgetTooSmall, run_experiment
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read config: {e}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed config: {e}") from e
    if args.seed is not None:
        cfg["seed"] = args.seed
    try:
        rows = run_experiment(cfg)
    except BudgetTooSmall as e:
        raise UsageError(str(e)) from e
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"bad experiment configuration: {e}") from e
    _emit(args, rows if args.format != "json" else {"rows": rows}, ("json", "csv", "table"))
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FACT


def cmd_audit(args) -> int:
    from .preorder import as_relation, transitivity_audit
    mu, _ = _load_selection(args)
    pts = [_coerce_point(mu, p) for p in parse_points(args.points)]
    r = _radius(args.r) if args.r is not None else None
    if args.mode == "radius" and r is None:
        raise UsageError("--mode radius needs --r")
    try:
        bad = transitivity_audit(as_relation(mu, args.mode, r, args.depth), pts)
    except (Undecidable, Unsupported) as e:
        return _undecided(args, {"mode": args.mode, "violations": "Undecidable", "reason": str(e)})
    except ValueError as e:
        raise UsageError(str(e)) from e
    _emit(args, {"mode": args.mode, "points": [point_str(p) for p in pts],
                 "violations": [[point_str(p) for p in t] for t in bad]})
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def _common(p, selection=True):
    if selection:
        p.add_argument("--gallery", help="gallery id")
        p.add_argument("--measure", help="serialized measure file (JSON)")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("-o", "--output", help="write to this file instead of standard output")
    p.add_argument("--strict", action="store_true", help="exit 3 on undecidable verdicts")
    p.add_argument("--depth", type=int, default=64, help="knot-analysis depth")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smallball", description="Small-ball masses, mode preorders and the gallery.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gallery", help="list, verify, show or export figure data")
    g.add_argument("action", choices=("list", "run", "show", "figure"))
    g.add_argument("target", nargs="?", help="gallery id, 'all', or a figure number")
    g.add_argument("--workers", type=int, default=1)
    _common(g, selection=False)

    c = sub.add_parser("compare", help="compare two points")
    c.add_argument("--points", required=True, help="two comma-separated points")
    c.add_argument("--mode", choices=("radius", "limit", "liminf", "limsup"), default="limit")
    c.add_argument("--r", help="radius for --mode radius")
    _common(c)

    m = sub.add_parser("modes", help="supremum of ball masses and radius-r modes")
    m.add_argument("--r", help="radius")
    m.add_argument("--domain", choices=("atoms", "line"), help="search domain (default: the item's own)")
    _common(m)

    a = sub.add_parser("amf", help="asymptotic maximising family on a geometric grid")
    a.add_argument("--eps", default="r", help="tolerance: 'r' or a positive number")
    a.add_argument("--levels", type=int, default=8, help="grid radii base^-1 .. base^-levels")
    a.add_argument("--points", help="candidates for the upward-closure intersection")
    a.add_argument("--domain", choices=("atoms", "line"))
    _common(a)

    rp = sub.add_parser("ratio-plot", help="ball-mass ratio with running max/min (CSV)")
    rp.add_argument("--points", required=True)
    rp.add_argument("--levels", type=int, default=14)
    rp.add_argument("--per-level", type=int, default=8, help="radii per factor of the grid base")
    _common(rp)

    mc = sub.add_parser("mc", help="Monte Carlo experiment from a JSON configuration")
    mc.add_argument("--config", required=True)
    mc.add_argument("--seed", type=int, help="overrides the configuration and SMALLBALL_SEED")
    _common(mc, selection=False)

    au = sub.add_parser("audit", help="transitivity audit over a point set")
    au.add_argument("--points", required=True)
    au.add_argument("--mode", choices=("radius", "limit", "liminf", "limsup"), default="limit")
    au.add_argument("--r")
    _common(au)
    return ap


COMMANDS = {"gallery": cmd_gallery, "compare": cmd_compare, "modes": cmd_modes, "amf": cmd_amf,
            "ratio-plot": cmd_ratio_plot, "mc": cmd_mc, "audit": cmd_audit}


def _glue_point_args(argv: list) -> list:
    # "--points -1,+1" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--points", "--r", "--eps") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_point_args(argv))
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"smallball: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (Undecidable, Unsupported) as e:
        print(f"smallball: undecidable: {e}", file=sys.stderr)
        return EXIT_UNDECIDABLE if getattr(args, "strict", False) else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
