"""Shared JSON formats.

Polytopes:  {"dim": n, "facets": [{"normal": [int, ...], "offset": "p/q"}]}
        or  {"dim": n, "vertices": [["p/q", ...], ...]}
Rationals are serialized as strings "p/q" (or "p" for integers); integers
are also accepted on input.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import InputError
from .geometry import HPolytope, VPolytope, make_facet


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_from_json(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {x!r}") from exc
    raise InputError(f"expected a rational (int or 'p/q' string), got {x!r}")


def polytope_to_json(p: HPolytope | VPolytope) -> dict:
    if isinstance(p, HPolytope):
        return {
            "dim": p.dim,
            "facets": [
                {"normal": list(f.normal), "offset": frac_to_str(f.offset)}
                for f in p.facets
            ],
        }
    return {
        "dim": p.dim,
        "vertices": [[frac_to_str(x) for x in v] for v in p.vertices],
    }


def polytope_from_json(data: Any) -> HPolytope | VPolytope:
    if not isinstance(data, dict):
        raise InputError("polytope JSON must be an object")
    if "dim" not in data:
        raise InputError("polytope JSON needs a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InputError("'dim' must be a positive integer")
    if "facets" in data:
        facets = []
        for f in data["facets"]:
            if not isinstance(f, dict) or "normal" not in f or "offset" not in f:
                raise InputError("each facet needs 'normal' and 'offset'")
            normal = f["normal"]
            if (not isinstance(normal, list) or len(normal) != dim
                    or not all(isinstance(a, int) for a in normal)):
                raise InputError("facet normal must be an integer vector of length dim")
            try:
                facets.append(make_facet(tuple(normal), frac_from_json(f["offset"])))
            except ValueError as exc:
                raise InputError(str(exc)) from exc
        return HPolytope(dim, tuple(facets))
    if "vertices" in data:
        verts = []
        for v in data["vertices"]:
            if not isinstance(v, list) or len(v) != dim:
                raise InputError("each vertex must be a list of length dim")
            verts.append(tuple(frac_from_json(x) for x in v))
        return VPolytope.from_points(dim, verts)
    raise InputError("polytope JSON needs 'facets' or 'vertices'")


def weights_from_json(data: Any):
    from .arrangements import WeightVector

    if not isinstance(data, dict) or "n" not in data or "weights" not in data:
        raise InputError("weights JSON needs 'n' and 'weights'")
    if not isinstance(data["n"], int) or data["n"] < 1:
        raise InputError("'n' must be a positive integer")
    if not isinstance(data["weights"], list) or not data["weights"]:
        raise InputError("'weights' must be a nonempty list")
    return WeightVector(data["n"], tuple(frac_from_json(w) for w in data["weights"]))


def round_float(x: float) -> float:
    """12 significant digits, for deterministic byte-identical output."""
    return float(f"{x:.12g}")


def _round_floats(obj):
    if isinstance(obj, float):
        return round_float(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def dumps(payload: dict) -> str:
    return json.dumps(_round_floats(payload), sort_keys=True, indent=2)
