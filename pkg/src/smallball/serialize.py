"""Versioned JSON round trip for measures.

Exact scalars use ``{"rat": "p/q", "surd": "p/q", "base": "n"}`` and survive
the round trip unchanged.
"""
from __future__ import annotations

import json
from fractions import Fraction

from . import measures as M
from .exact import QSqrt, scalar_from_json, scalar_to_json
from .germs import KnotPattern
from .metric import SPACES, FiniteMetric, MetricSpace

SCHEMA_VERSION = 1


class MalformedMeasure(ValueError):
    pass


def point_to_json(p):
    if isinstance(p, bool):
        raise TypeError("booleans are not points")
    if isinstance(p, int):
        return {"int": p}
    if isinstance(p, tuple):
        return {"tuple": [point_to_json(v) for v in p]}
    if isinstance(p, str):
        return {"label": p}
    return scalar_to_json(p)


def point_from_json(d):
    if not isinstance(d, dict):
        raise MalformedMeasure(f"malformed point {d!r}")
    if "int" in d:
        return int(d["int"])
    if "tuple" in d:
        return tuple(point_from_json(v) for v in d["tuple"])
    if "label" in d:
        return str(d["label"])
    return scalar_from_json(d)


def _s(x):
    return scalar_to_json(x)


def _u(d):
    return scalar_from_json(d)


def space_to_json(space: MetricSpace):
    if isinstance(space, FiniteMetric):
        pts = list(space.points)
        table = [[i, j, _s(space.distance(p, q))] for i, p in enumerate(pts)
                 for j, q in enumerate(pts) if i < j]
        return {"kind": "finite", "points": [point_to_json(p) for p in pts], "table": table}
    return {"kind": space.name}


def space_from_json(d):
    kind = d.get("kind")
    if kind == "finite":
        pts = [point_from_json(p) for p in d["points"]]
        table = {(pts[i], pts[j]): _u(v) for i, j, v in d["table"]}
        return FiniteMetric(pts, table)
    if kind not in SPACES:
        raise MalformedMeasure(f"unknown metric space {kind!r}")
    return SPACES[kind]()


def _pattern_to_json(p: KnotPattern):
    return {"top": _s(p.top), "lam": _s(p.lam), "kappa": _s(p.kappa),
            "radii": [_s(r) for r in p.radii], "values": [_s(v) for v in p.values],
            "mode": p.mode, "exponent": str(p.exponent)}


def _pattern_from_json(d):
    return KnotPattern(_u(d["top"]), _u(d["lam"]), _u(d["kappa"]),
                       tuple(_u(r) for r in d["radii"]), tuple(_u(v) for v in d["values"]),
                       d.get("mode", "linear"), Fraction(d["exponent"]) if "exponent" in d else None)


def _tail_to_json(t: M.TailBlock):
    return {"kind": t.kind, **{k: (_s(v) if isinstance(v, (Fraction, QSqrt)) else v)
                               for k, v in t.params().items()}}


def _tail_from_json(d):
    d = dict(d)
    kind = d.pop("kind", None)
    if kind not in M.TAILS:
        raise MalformedMeasure(f"unknown tail block {kind!r}")
    args = {k: (_u(v) if isinstance(v, dict) else v) for k, v in d.items()}
    return M.TAILS[kind](**args)


def _to(mu: M.Measure) -> dict:
    if isinstance(mu, M.Atomic):
        return {"kind": "atomic", "space": space_to_json(mu.space),
                "atoms": [[point_to_json(p), _s(m)] for p, m in mu.atoms.items()]}
    if isinstance(mu, M.PiecewisePolyDensity):
        out = {"kind": "piecewise-poly", "breaks": [_s(b) for b in mu.breaks],
               "polys": [[_s(c) for c in p] for p in mu.polys]}
        if mu.unimodal_center is not None:
            out["unimodal_center"] = _s(mu.unimodal_center)
        return out
    if isinstance(mu, M.KnotRCDF):
        return {"kind": "knot-rcdf", "center": _s(mu.center), "pattern": _pattern_to_json(mu.pattern),
                "outer": [[_s(r), _s(v)] for r, v in mu.outer],
                "truncation": None if mu.truncation is None else _s(mu.truncation)}
    if isinstance(mu, M.GeometricCluster):
        return {"kind": "geometric-cluster", "center": _s(mu.center), "lam": _s(mu.lam),
                "kappa": _s(mu.kappa),
                "bumps": [[_s(b.offset), _s(b.mass), _s(b.half_width)] for b in mu.bumps]}
    if isinstance(mu, M.ClippedPolyBump):
        return {"kind": "clipped-poly", "center": _s(mu.center), "coeffs": [_s(c) for c in mu.coeffs],
                "half_width": _s(mu.w)}
    if isinstance(mu, M.SegmentFamily):
        return {"kind": "segments",
                "segments": [[list(lab), _s(w), _s(h)] for lab, w, h in mu.segments]}
    if isinstance(mu, M.Mixture):
        return {"kind": "mixture", "space": space_to_json(mu.space),
                "components": [_to(c) for c in mu.parts],
                "tails": [_tail_to_json(t) for t in mu.tails], "Z": _s(mu.Z)}
    raise MalformedMeasure(f"cannot serialise {type(mu).__name__}")


def _from(d) -> M.Measure:
    if not isinstance(d, dict):
        raise MalformedMeasure("measure must be a JSON object")
    kind = d.get("kind")
    if kind == "atomic":
        return M.Atomic(space_from_json(d["space"]), [(point_from_json(p), _u(m)) for p, m in d["atoms"]])
    if kind == "piecewise-poly":
        uc = d.get("unimodal_center")
        return M.PiecewisePolyDensity([_u(b) for b in d["breaks"]], [[_u(c) for c in p] for p in d["polys"]],
                                      None if uc is None else _u(uc))
    if kind == "knot-rcdf":
        tr = d.get("truncation")
        return M.KnotRCDF(_u(d["center"]), _pattern_from_json(d["pattern"]),
                          [(_u(r), _u(v)) for r, v in d.get("outer", [])], None if tr is None else _u(tr))
    if kind == "geometric-cluster":
        return M.GeometricCluster(_u(d["center"]), [M.Bump(_u(o), _u(m), _u(w)) for o, m, w in d["bumps"]],
                                  _u(d["lam"]), _u(d["kappa"]))
    if kind == "clipped-poly":
        return M.ClippedPolyBump(_u(d["center"]), [_u(c) for c in d["coeffs"]], _u(d["half_width"]))
    if kind == "segments":
        return M.SegmentFamily([(tuple(lab), _u(w), _u(h)) for lab, w, h in d["segments"]])
    if kind == "mixture":
        Z = _u(d["Z"]) if "Z" in d else None
        return M.Mixture([_from(c) for c in d["components"]], [_tail_from_json(t) for t in d.get("tails", [])],
                         Z, space_from_json(d["space"]) if "space" in d else None)
    raise MalformedMeasure(f"unknown measure kind {kind!r}")


def measure_to_json(mu: M.Measure) -> dict:
    return {"version": SCHEMA_VERSION, "measure": _to(mu)}


def measure_from_json(doc) -> M.Measure:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise MalformedMeasure(f"not JSON: {e}") from e
    if not isinstance(doc, dict) or doc.get("version") != SCHEMA_VERSION or "measure" not in doc:
        raise MalformedMeasure("expected {'version': 1, 'measure': ...}")
    try:
        return _from(doc["measure"])
    except MalformedMeasure:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedMeasure(str(e)) from e


def dumps(mu: M.Measure) -> str:
    return json.dumps(measure_to_json(mu), sort_keys=True)


def loads(text: str) -> M.Measure:
    return measure_from_json(text)


__all__ = ["measure_to_json", "measure_from_json", "dumps", "loads", "point_to_json", "point_from_json",
           "MalformedMeasure"]
