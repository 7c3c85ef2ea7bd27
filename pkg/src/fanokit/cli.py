"""Command-line front door.

Every subcommand reads JSON (inline via --json, from a file via --input, or
from a preset), dispatches to the library and emits a report as JSON, CSV or
an aligned table.  Exit codes: 0 success, 1 invalid input, 2 numerical
failure (non-convergence or a reproduction mismatch).

A top-level {"batch": [item, ...]} input runs the subcommand over each item
(optionally in parallel with --jobs; items are independent).
"""
from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from fractions import Fraction

from . import arrangements as arr
from . import geometry as geom
from . import hypersurfaces as hyp
from . import jsonio
from . import presets
from . import sx_optimizer as sx
from . import toric_heights as toric
from . import zeta
from .errors import (
    FanokitError,
    InputError,
    MismatchBeyondTolerance,
    NumericalError,
)


def _load_input(args) -> dict | None:
    if getattr(args, "json", None) and getattr(args, "input", None):
        raise InputError("use --input or --json, not both")
    raw = None
    if getattr(args, "json", None):
        raw = args.json
    elif getattr(args, "input", None):
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from exc
    if raw is None:
        return None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("top-level JSON must be an object")
    return data


def _policy(args) -> zeta.PrecisionPolicy:
    eps = getattr(args, "precision", None)
    if eps is None:
        env = os.environ.get("FANOKIT_PRECISION")
        if env is not None:
            try:
                eps = float(env)
            except ValueError as exc:
                raise InputError(f"bad FANOKIT_PRECISION value {env!r}") from exc
    if eps is None:
        return zeta.DEFAULT_POLICY
    if not eps > 0:
        raise InputError("precision must be positive")
    return zeta.PrecisionPolicy(target_abs_error=eps)


def _need_polytope(data, args=None) -> geom.HPolytope:
    preset = getattr(args, "preset", None) if args is not None else None
    if preset:
        if data is not None:
            raise InputError("give either --preset or an input, not both")
        if preset not in presets.POLYTOPE_PRESETS:
            raise InputError(f"unknown preset {preset!r}; "
                             f"have {sorted(presets.POLYTOPE_PRESETS)}")
        return presets.POLYTOPE_PRESETS[preset]()
    if data is None:
        raise InputError("missing input: give --input, --json or --preset")
    p = jsonio.polytope_from_json(data)
    if isinstance(p, geom.VPolytope):
        return geom.to_hpolytope(p)
    return p


def _toric_from(data, args=None) -> toric.ToricLogFano:
    return toric.ToricLogFano(_need_polytope(data, args))


# -- subcommand handlers -----------------------------------------------------

def _cmd_semistable(args, data) -> dict:
    if data is not None and "weights" in data:
        w = jsonio.weights_from_json(data)
        return {
            "kind": "arrangement",
            "semistable": arr.is_arrangement_semistable(w),
            "full_criterion": arr.full_weight_condition(w),
        }
    t = _toric_from(data, args)
    v = geom.enumerate_vertices(t.polytope)
    bary = geom.barycenter(v)
    return {
        "kind": "toric",
        "semistable": toric.is_k_semistable(t),
        "barycenter": [jsonio.frac_to_str(x) for x in bary],
    }


def _cmd_volume(args, data) -> dict:
    h = _need_polytope(data, args)
    v = geom.enumerate_vertices(h)
    if args.cut_normal is not None or args.cut_offset is not None:
        if args.cut_normal is None or args.cut_offset is None:
            raise InputError("--cut-normal and --cut-offset go together")
        try:
            normal = tuple(int(x) for x in args.cut_normal.split(","))
            cutoff = Fraction(args.cut_offset)
        except ValueError as exc:
            raise InputError(f"bad cut arguments: {exc}") from exc
        if len(normal) != h.dim:
            raise InputError("cut normal has wrong dimension")
        v = geom.intersect_halfspace(v, normal, cutoff)
    out = {"vertex_count": len(v.vertices)}
    if all(0 < f.offset <= 1 for f in h.facets) and args.cut_normal is None:
        pair = toric.log_fano_volume(toric.ToricLogFano(h))
        out["poly_volume"] = jsonio.frac_to_str(pair.poly_volume)
        out["degree"] = jsonio.frac_to_str(pair.degree)
    else:
        vol = geom.volume(v)
        out["poly_volume"] = jsonio.frac_to_str(vol)
        out["degree"] = jsonio.frac_to_str(math.factorial(h.dim) * vol)
    return out


def _cmd_barycenter(args, data) -> dict:
    h = _need_polytope(data, args)
    bary = geom.barycenter(geom.enumerate_vertices(h))
    return {
        "barycenter": [jsonio.frac_to_str(x) for x in bary],
        "is_origin": all(x == 0 for x in bary),
    }


def _cmd_sx(args, data) -> dict:
    if args.preset:
        if args.preset not in presets.SX_PRESETS:
            raise InputError(
                f"unknown preset {args.preset!r}; have {sorted(presets.SX_PRESETS)}"
            )
        sd = presets.SX_PRESETS[args.preset]()
        result = sx.sx_invariant(sd)
        payload = result.to_json()
        payload["preset"] = args.preset
        payload["closed_form_w"] = sx.solve_cut_weight(sd)
        return payload
    if data is None:
        raise InputError("sx needs --preset or a polytope JSON input")
    result = sx.sx_invariant(_need_polytope(data))
    return result.to_json()


def _cmd_pn_height(args, data) -> dict:
    if args.n is None:
        raise InputError("pn-height needs --n")
    rep = toric.pn_height(args.n)
    out = rep.to_json()
    out["n"] = args.n
    out["a_n"] = toric.a_n_constant(args.n)
    return out


def _cmd_scaled_height(args, data) -> dict:
    if args.n is None or args.t is None:
        raise InputError("scaled-height needs --n and --t")
    rep = toric.scaled_divisor_height(args.n, Fraction(args.t))
    out = rep.to_json()
    out["n"] = args.n
    out["t"] = args.t
    return out


def _cmd_universal_bound(args, data) -> dict:
    if args.n is None or args.volume is None:
        raise InputError("universal-bound needs --n and --volume (poly-volume, 'p/q')")
    v = Fraction(args.volume)
    pair = toric.VolumePair.from_poly_volume(args.n, v)
    rep = toric.universal_height_bound(pair, args.n)
    out = rep.to_json()
    out["n"] = args.n
    out["poly_volume"] = jsonio.frac_to_str(v)
    return out


def _cmd_gap_check(args, data) -> dict:
    t = _toric_from(data, args)
    report = toric.gap_check(t)
    sing = toric.vertex_singularity_report(t)
    gorenstein = None
    if all(f.offset == 1 for f in t.polytope.facets):
        gorenstein = toric.is_gorenstein(t)
    return {
        "verdict": report.verdict.value,
        "poly_volume": jsonio.frac_to_str(report.poly_volume),
        "gap_threshold": jsonio.frac_to_str(report.gap_threshold),
        "singular": report.singular,
        "certificate_bound": (
            None if report.certificate_bound is None
            else jsonio.frac_to_str(report.certificate_bound)
        ),
        "certificate_holds": report.certificate_holds,
        "vertex_dets": [r.det for r in sing],
        "all_vertices_simple": all(r.simple for r in sing),
        "gorenstein": gorenstein,
    }


def _cmd_stability_polytope(args, data) -> dict:
    if args.n is None or args.m is None or args.degree is None:
        raise InputError("stability-polytope needs --n, --m and --degree")
    sp = arr.stability_polytope(args.n, args.m, Fraction(args.degree))
    c = jsonio.frac_to_str(sp.c_value) if sp.c_exact else float(sp.c_value)
    return {
        "n": sp.n,
        "m": sp.m,
        "degree": jsonio.frac_to_str(sp.target_degree),
        "c": c,
        "c_exact": sp.c_exact,
        "vertex_count": len(sp.vertices),
        "vertices": [
            [jsonio.frac_to_str(x) for x in v.weights] for v in sp.vertices
        ],
    }


def _cmd_arrangement_bound(args, data) -> dict:
    if data is None:
        raise InputError("arrangement-bound needs a weights JSON input")
    w = jsonio.weights_from_json(data)
    rep = arr.arrangement_height_bound(w)
    red = arr.reduce_to_toric(w)
    out = rep.to_json()
    out["degree"] = jsonio.frac_to_str(red.degree)
    out["t_toric"] = jsonio.frac_to_str(red.t)
    out["decomposition"] = [
        {"support": list(supp), "coeff": jsonio.frac_to_str(c)}
        for supp, c in red.decomposition
    ]
    return out


def _cmd_diagonal(args, data) -> dict:
    if data is None:
        raise InputError('diagonal needs JSON {"n": int, "d": int, "a": [int,...]}')
    for key in ("n", "d", "a"):
        if key not in data:
            raise InputError(f"diagonal input is missing {key!r}")
    if not isinstance(data["a"], list) or not all(isinstance(x, int) for x in data["a"]):
        raise InputError("'a' must be a list of integers")
    try:
        spec = hyp.DiagonalHypersurfaceSpec(data["n"], data["d"], tuple(data["a"]))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    bound = hyp.diagonal_theorem_bound(spec, tighter=True)
    fermat = hyp.fermat_height_bound(spec.n, spec.d)
    branch = hyp.branch_arrangement(spec)
    ratio = hyp.cover_volume_ratio_check(spec.n, spec.d)
    out = {
        "bound": bound.report.to_json(),
        "correction": bound.correction,
        "fermat_delta": bound.fermat_delta,
        "chain_bound": bound.chain_value,
        "lambda": float(fermat.lam),
        "strict": bound.strict,
        "fermat_bound": fermat.report.to_json(),
        "branch_weights": [jsonio.frac_to_str(x) for x in branch.weights],
        "cover_degree_check": {
            "topological": jsonio.frac_to_str(ratio[0]),
            "volume_ratio": jsonio.frac_to_str(ratio[1]),
        },
    }
    if args.det_t is not None:
        out["general_delta"] = hyp.general_linear_height_delta(
            spec.n, spec.d, args.det_t
        )
    return out


def _cmd_p1_zeta_height(args, data) -> dict:
    if data is None or "weights" not in data:
        raise InputError('p1-zeta-height needs JSON {"weights": ["p/q","p/q","p/q"]}')
    ws = data["weights"]
    if not isinstance(ws, list) or len(ws) != 3:
        raise InputError("'weights' must be a list of three rationals")
    inp = zeta.ZetaHeightInput(*(jsonio.frac_from_json(w) for w in ws))
    policy = _policy(args)
    if "precision" in data:
        policy = zeta.PrecisionPolicy(target_abs_error=float(data["precision"]))
    rep = zeta.p1_canonical_height(inp, policy)
    out = rep.to_json()
    out["V"] = float(inp.v)
    out["branch"] = "fano" if inp.v > 0 else "continuation"
    out["semistable_advisory"] = zeta.p1_weights_semistable(inp)
    return out


# -- reference-value reproduction ------------------------------------------------

def _reproduce_rows(perturb: bool) -> list[dict]:
    rows = []

    def row(name: str, reference, computed, tol):
        ref_f, got_f = float(reference), float(computed)
        ok = abs(ref_f - got_f) <= tol + 1e-15
        rows.append({
            "name": name,
            "reference": ref_f,
            "computed": got_f,
            "tolerance": tol,
            "pass": ok,
        })

    a_blowup = Fraction(41, 10) if perturb else Fraction(4)
    sd1 = sx.SimplexDifference(a=a_blowup, b=Fraction(2))
    sd2 = presets.po_o2_normal_form()

    r1 = sx.sx_invariant(sd1)
    r2 = sx.sx_invariant(sd2)
    row("n!S(X), P3 blown up in one point", 41.8, r1.s_value, 0.05)
    row("n!S(X), P(O+O(2))", 30.3, r2.s_value, 0.05)

    w1 = (2 / 3) * (5 - 4 / (19 - 3 * math.sqrt(33)) ** (1 / 3)
                    - (19 - 3 * math.sqrt(33)) ** (1 / 3))
    w2 = 4 - (4 / (2 - math.sqrt(2))) ** (1 / 3) - (2 * (2 - math.sqrt(2))) ** (1 / 3)
    row("cut weight w, P3 blown up in one point", w1, sx.solve_cut_weight(sd1), 1e-10)
    row("cut weight w, P(O+O(2))", w2, sx.solve_cut_weight(sd2), 1e-10)

    def degree_of(h):
        return math.factorial(h.dim) * geom.volume(geom.enumerate_vertices(h))

    row("degree, P3 blown up in one point", 56,
        float(math.factorial(3) * geom.volume(
            geom.enumerate_vertices(sd1.to_hpolytope())) / sd1.det_correction), 0)
    row("degree, P(O+O(2))", 62, float(degree_of(presets.po_o2_polytope())), 0)
    row("degree, P2xP1", 54, float(degree_of(presets.pn_times_p1_polytope(3))), 0)
    for n in range(1, 5):
        row(f"degree, P^{n}", (n + 1) ** n,
            float(degree_of(presets.pn_polytope(n))), 0)

    bary = sx.simplex_difference_barycenter(sd1)[0]
    row("barycenter coordinate, P3 blowup polytope", 1 / 14, float(bary), 0)

    row("Mabuchi constant of P^1_Z", -1 - math.log(math.pi),
        zeta.mabuchi_p1_constant(), 1e-12)

    sp = arr.stability_polytope(1, 3, 1)
    row("stability polytope vertex count, (n,m,D)=(1,3,1)", 3, len(sp.vertices), 0)
    sp2 = arr.stability_polytope(2, 5, 4)
    row("stability polytope vertex count, (n,m,D)=(2,5,4)",
        math.comb(5, 3), len(sp2.vertices), 0)

    spec = hyp.DiagonalHypersurfaceSpec(2, 3, (1, 1, 1, 8))
    row("diagonal correction, (n,d,a)=(2,3,(1,1,1,8))",
        -2 * math.log(8), hyp.diagonal_height_correction(spec), 1e-9)

    for dp in sx.n2_classification_check():
        reference = {"P2": 9, "P1xP1": 8}.get(
            dp.label, 9 - int(dp.label.split("_")[1].split(" ")[0])
            if dp.label.startswith("Bl_") else None)
        row(f"degree, {dp.label}", reference, float(dp.degree), 0)

    det2 = geom.LinearMap(((1, 0, 0), (0, 1, 0), (-1, -1, 2)))
    po = geom.enumerate_vertices(presets.po_o2_polytope())
    ratio = geom.volume(geom.transform(po, det2)) / geom.volume(po)
    row("volume ratio under the determinant-2 normal-form map", 2,
        float(ratio), 0)

    return rows


def _cmd_reproduce_paper(args, data) -> dict:
    rows = _reproduce_rows(perturb=bool(getattr(args, "perturb", False)))
    all_pass = all(r["pass"] for r in rows)
    payload = {"rows": rows, "all_pass": all_pass}
    if not all_pass:
        raise MismatchBeyondTolerance(jsonio.dumps(payload))
    return payload


_HANDLERS = {
    "semistable": _cmd_semistable,
    "volume": _cmd_volume,
    "barycenter": _cmd_barycenter,
    "sx": _cmd_sx,
    "pn-height": _cmd_pn_height,
    "scaled-height": _cmd_scaled_height,
    "universal-bound": _cmd_universal_bound,
    "gap-check": _cmd_gap_check,
    "stability-polytope": _cmd_stability_polytope,
    "arrangement-bound": _cmd_arrangement_bound,
    "diagonal": _cmd_diagonal,
    "p1-zeta-height": _cmd_p1_zeta_height,
    "reproduce-paper": _cmd_reproduce_paper,
}


# -- output ---------------------------------------------------------------------

def _flatten(prefix: str, obj, out: list[tuple[str, str]]):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else k, obj[k], out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, "" if obj is None else str(obj)))


def _emit(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return jsonio.dumps(payload)
    rows = payload.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        headers = list(rows[0])
        table = [[str(jsonio._round_floats(r[h])) for h in headers] for r in rows]
    else:
        flat: list[tuple[str, str]] = []
        _flatten("", jsonio._round_floats(payload), flat)
        headers = ["key", "value"]
        table = [[k, v] for k, v in flat]
    if fmt == "csv":
        lines = [",".join(headers)]
        for r in table:
            lines.append(",".join('"' + c.replace('"', '""') + '"'
                                  if ("," in c or '"' in c) else c for c in r))
        return "\n".join(lines)
    widths = [max(len(h), *(len(r[i]) for r in table)) if table else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in table:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines)


# -- argument parsing -------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanokit",
        description="K-semistability tests and height bounds for toric log Fano data",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="path to a JSON input file")
        p.add_argument("--json", help="inline JSON input")
        p.add_argument("--precision", type=float,
                       help="target absolute error (default: FANOKIT_PRECISION or 1e-12)")
        p.add_argument("--format", choices=("json", "csv", "table"), default="json")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel workers for batch inputs")
        if name == "sx":
            p.add_argument("--preset", choices=sorted(presets.SX_PRESETS))
        if name in ("volume", "barycenter", "semistable", "gap-check"):
            p.add_argument("--preset",
                           choices=sorted(presets.POLYTOPE_PRESETS))
        if name == "volume":
            p.add_argument("--cut-normal", dest="cut_normal",
                           help="integer vector 'a,b,...' to clip by before measuring")
            p.add_argument("--cut-offset", dest="cut_offset",
                           help="rational cutoff c for <normal, x> <= c")
        if name in ("pn-height", "scaled-height", "universal-bound",
                    "stability-polytope"):
            p.add_argument("--n", type=int)
        if name == "scaled-height":
            p.add_argument("--t", help="rational in (0,1], e.g. '1/2'")
        if name == "universal-bound":
            p.add_argument("--volume", help="poly-volume as 'p/q'")
        if name == "stability-polytope":
            p.add_argument("--m", type=int)
            p.add_argument("--degree", help="target degree as 'p/q'")
        if name == "diagonal":
            p.add_argument("--det-t", dest="det_t", type=float,
                           help="|det T| for the general linear height delta")
        if name == "reproduce-paper":
            p.add_argument("--perturb", action="store_true",
                           help="negative control: perturb one preset and expect a mismatch")
    return parser


def run(argv: list[str]) -> int:
    """Parse argv, dispatch, print the report; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    handler = _HANDLERS[args.subcommand]
    try:
        data = _load_input(args)
        if data is not None and "batch" in data:
            items = data["batch"]
            if not isinstance(items, list):
                raise InputError("'batch' must be a list of inputs")
            jobs = max(1, args.jobs)
            if jobs > 1:
                with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
                    results = list(pool.map(lambda it: handler(args, it), items))
            else:
                results = [handler(args, it) for it in items]
            payload = {"results": results}
        else:
            payload = handler(args, data)
    except InputError as exc:
        print(f"fanokit: input error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"fanokit: numerical failure: {exc}", file=sys.stderr)
        return 2
    except FanokitError as exc:
        print(f"fanokit: input error: {exc}", file=sys.stderr)
        return 1
    print(_emit(payload, args.format))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
