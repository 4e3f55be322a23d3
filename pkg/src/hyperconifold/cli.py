"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 resource bound exceeded,
4 domain precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .classify import canonical_form, diagram_of, exceptional_scan, identify_from_matrix, phase_label
from .fan import ToricDiagram
from .groups import CosetLimitError, FiniteGroup
from .intersect import exceptional_surfaces, local_ample_cone, triple_intersections
from .lattice import squaring_shear
from .mirror import independent_node_search, mirror_nodes, mirror_polynomial, poly_str
from .resolve import DEFAULT_ENUM_BOUND, EnumerationBoundError, Resolution, crepant_resolution, enumerate_crepant_resolutions
from .transition import DomainError, HodgeData, transition_report

SCHEMA_VERSION = 1
SPACING, DOT_RADIUS, STROKE = 40, 4, 2

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_DOMAIN = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- serialisation --------------------------------------------------------------


def num(z: complex | float) -> Any:
    """Inexact numbers as decimal strings with 12 significant digits."""
    if isinstance(z, complex):
        return {"re": f"{z.real:.12g}", "im": f"{z.imag:.12g}", "abs": f"{abs(z):.12g}"}
    return f"{z:.12g}"


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, complex)):
        return num(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def envelope(command: str, inputs: dict, payload: Any, warnings: list[str] | None = None) -> dict:
    return {
        "command": command,
        "inputs": jsonable(inputs),
        "schema_version": SCHEMA_VERSION,
        "payload": jsonable(payload),
        "warnings": list(warnings or []),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# -- payload builders --------------------------------------------------------------


def _class(n: int, k: int):
    try:
        return canonical_form(n, k)
    except ValueError as e:
        raise CliError(str(e), EXIT_INPUT)


def diagram_payload(d: ToricDiagram) -> dict:
    return {
        "vertices": [list(v) for v in d.polygon_vertices],
        "points": [{"point": list(p), "kind": kind} for p, kind in d.lattice_points],
        "interior_points": [list(p) for p in d.interior_points],
        "triangles": [[list(p) for p in t] for t in d.triangles],
        "edges": [[list(a), list(b)] for a, b in d.edges],
    }


def resolution_payload(index: int, r: Resolution) -> dict:
    cone = local_ample_cone(r)
    tensor = triple_intersections(r)
    return {
        "index": index,
        "built_by_star_sequence": r.built_by_star_sequence,
        "star_history": [list(v) for v in r.history],
        "triangles": [[list(p) for p in t] for t in r.triangles],
        "cone_count": len(r.fan.maximal_cones),
        "smooth": r.fan.is_smooth(),
        "local_ample_cone": {
            "variables": list(cone.variables),
            "divisor_rays": [list(v) for v in cone.rays],
            "inequalities": [list(row) for row in cone.inequalities],
            "readable": cone.describe(),
            "empty": cone.is_empty,
            "witness": list(cone.witness) if cone.witness is not None else None,
            "emptiness_certificate": list(cone.feasibility.certificate) if cone.feasibility.certificate else None,
            "no_local_ample_divisors": cone.no_local_ample_divisors,
        },
        "exceptional_surfaces": [
            {
                "center_ray": list(s.center_ray),
                "neighbors": [list(v) for v in s.neighbors],
                "self_intersections": list(s.self_intersections),
                "label": s.label,
            }
            for s in exceptional_surfaces(r)
        ],
        "triple_intersections": tensor.as_lists(),
        "projective": not cone.is_empty,
    }


# -- SVG ----------------------------------------------------------------------------


def render_svg(d: ToricDiagram) -> str:
    pts = [p for p, _ in d.lattice_points]
    U = squaring_shear(pts)
    img = {p: U(p) for p in pts}
    xs = [q[0] for q in img.values()]
    ys = [q[1] for q in img.values()]
    x0, y1 = min(xs), max(ys)
    w = (max(xs) - x0 + 2) * SPACING
    h = (y1 - min(ys) + 2) * SPACING

    def xy(p):
        q = img[tuple(p)]
        return (q[0] - x0 + 1) * SPACING, (y1 - q[1] + 1) * SPACING

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for t in d.triangles:
        pts_ = " ".join(f"{x},{y}" for x, y in map(xy, t))
        out.append(f'<polygon class="triangle" points="{pts_}" fill="none" stroke="#888" stroke-width="1"/>')
    poly = " ".join(f"{x},{y}" for x, y in map(xy, d.polygon_vertices))
    out.append(f'<polygon class="diagram" points="{poly}" fill="none" stroke="black" stroke-width="{STROKE}"/>')
    for p, kind in d.lattice_points:
        x, y = xy(p)
        fill = "#c03" if kind == "interior" else "black"
        out.append(f'<circle class="{kind}" cx="{x}" cy="{y}" r="{DOT_RADIUS}" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- commands -------------------------------------------------------------------------


def _pick_resolution(c, which: str | None, args) -> Resolution:
    if which in (None, "star"):
        if c.n == 1:
            raise CliError("no interior points; use --resolve 1 or 2 for small resolutions", EXIT_DOMAIN)
        return crepant_resolution(c, args.seed_order)
    try:
        idx = int(which)
    except ValueError:
        raise CliError(f"--resolve must be 'star' or a 1-based index, got {which!r}", EXIT_INPUT)
    res = enumerate_crepant_resolutions(c, args.enum_bound)
    if not 1 <= idx <= len(res):
        raise CliError(f"resolution index {idx} out of range 1..{len(res)}", EXIT_INPUT)
    return res[idx - 1]


def cmd_classify(args) -> tuple[dict, str]:
    c = _class(args.n, args.k)
    d = diagram_of(c.n, c.k)
    payload = {
        "canonical": [c.n, c.k],
        "label": c.label,
        "orbit": list(c.orbit),
        "lens_space": c.lens_space,
        "diagram_vertices": [list(v) for v in d.polygon_vertices],
    }
    text = f"{c.label}  orbit {list(c.orbit)}  lens space {c.lens_space}\n"
    return envelope("classify", {"n": args.n, "k": args.k}, payload), text


def cmd_diagram(args) -> tuple[dict, str]:
    c = _class(args.n, args.k)
    if args.resolve is None:
        d = diagram_of(c.n, c.k)
    else:
        d = _pick_resolution(c, args.resolve, args).fan.height_one_slice()
    rep = envelope("diagram", {"n": args.n, "k": args.k, "resolve": args.resolve}, diagram_payload(d))
    if args.format == "svg":
        return rep, render_svg(d)
    text = "\n".join(f"{p} {kind}" for p, kind in d.lattice_points) + "\n"
    return rep, text


def cmd_resolve(args) -> tuple[dict, str]:
    c = _class(args.n, args.k)
    if args.enumerate:
        res = enumerate_crepant_resolutions(c, args.enum_bound)
    else:
        if c.n == 1:
            raise CliError("no interior points; use --enumerate for small resolutions", EXIT_DOMAIN)
        res = [crepant_resolution(c, args.seed_order)]
    entries = [resolution_payload(i + 1, r) for i, r in enumerate(res)]
    verdicts = ["projective" if e["projective"] else "non-projective" for e in entries]
    payload = {"class": [c.n, c.k], "label": c.label, "resolutions": entries, "verdicts": verdicts}
    lines = [f"{c.label}: {len(res)} resolution(s)"]
    for e, v in zip(entries, verdicts):
        surf = ", ".join(s["label"] for s in e["exceptional_surfaces"]) or "none"
        extra = " (no local ample divisors)" if e["local_ample_cone"]["no_local_ample_divisors"] else ""
        lines.append(f"  {e['index']}: {e['cone_count']} cones, {v}{extra}, surfaces: {surf}")
    inputs = {"n": args.n, "k": args.k, "enumerate": args.enumerate}
    return envelope("resolve", inputs, payload), "\n".join(lines) + "\n"


def cmd_mirror(args) -> tuple[dict, str]:
    c = _class(args.n, args.k)
    g = mirror_polynomial(c)
    nodes = mirror_nodes(g)
    warnings = []
    grid = args.grid or (32 if c.n <= 4 else 64)
    found = independent_node_search(g, grid)
    if not found:
        warnings.append("numeric oracle did not converge from any start")
    agrees = len(found) == len(nodes) and all(
        min(abs(p[3] - nd.y) for nd in nodes) < 1e-6 for p in found
    )
    payload = {
        "class": [c.n, c.k],
        "f": g.describe(),
        "factors": [poly_str(g.f1), poly_str(g.f2)],
        "nodes": [
            {
                "u": 0,
                "v": 0,
                "x": -1,
                "y_root": f"exp(pi i {nd.root_index}/{g.n})",
                "y_power_n": nd.y_power,
                "y": num(nd.y),
                "hessian_det": num(nd.hessian_det),
                "exact_vanishing": nd.exact_vanishing,
                "nondegenerate": nd.nondegenerate,
            }
            for nd in nodes
        ],
        "node_count": len(nodes),
        "oracle": {"grid": grid, "clusters": len(found), "agrees": agrees},
    }
    text = f"{g.describe()}: {len(nodes)} nodes, oracle {'agrees' if agrees else 'DISAGREES'}\n"
    return envelope("mirror", {"n": args.n, "k": args.k}, payload, warnings), text


def load_group(path: str) -> FiniteGroup:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read group file: {e}", EXIT_INPUT)
    try:
        kind = data["type"]
        if kind == "cayley":
            return FiniteGroup.from_cayley(data["cayley"], generators=data.get("generators"))
        if kind == "permutations":
            return FiniteGroup.from_permutations(data["permutations"], data.get("names"))
        if kind == "presentation":
            p = data["presentation"]
            return FiniteGroup.from_presentation(p["generators"], p["relators"])
    except CosetLimitError as e:
        raise CliError(str(e), EXIT_BOUND)
    except (KeyError, TypeError, ValueError) as e:
        raise CliError(f"malformed group file: {e}", EXIT_INPUT)
    raise CliError(f"malformed group file: unknown type {data.get('type')!r}", EXIT_INPUT)


def _seed(G: FiniteGroup, s: str) -> int:
    if s.isdigit():
        return G.check_element(int(s) - 1)
    return G.evaluate(s)


def cmd_transition(args) -> tuple[dict, str]:
    c = _class(args.n, args.k)
    G = load_group(args.group_file)
    try:
        seeds = [_seed(G, s) for s in args.seeds]
    except ValueError as e:
        raise CliError(f"bad seed: {e}", EXIT_INPUT)
    if not seeds:
        raise CliError("at least one seed is required", EXIT_INPUT)
    try:
        before = HodgeData(args.h11, args.h21)
        rep = transition_report(c, before, G, seeds, _pick_resolution(c, args.resolve, args))
    except DomainError as e:
        raise CliError(str(e), EXIT_DOMAIN)
    payload = {
        "class": [c.n, c.k],
        "label": c.label,
        "before": {"h11": rep.before.h11, "h21": rep.before.h21, "chi": rep.before.chi},
        "after": {"h11": rep.after.h11, "h21": rep.after.h21, "chi": rep.after.chi},
        "euler_change": rep.euler_change,
        "pi1_before": rep.pi1_before,
        "pi1_after": rep.pi1_after,
        "normal_closure_order": len(rep.normal_subgroup),
        "resolution_triangles": [[list(p) for p in t] for t in rep.resolution.triangles],
        "triple_intersections": rep.tensor.as_lists(),
        "statements": list(rep.statements),
    }
    inputs = {"n": args.n, "k": args.k, "h11": args.h11, "h21": args.h21,
              "group_file": Path(args.group_file).name, "seeds": args.seeds}
    text = (f"{c.label}: ({rep.before.h11},{rep.before.h21}) -> ({rep.after.h11},{rep.after.h21}), "
            f"pi1 {rep.pi1_before} -> {rep.pi1_after}\n")
    return envelope("transition", inputs, payload), text


def cmd_identify(args) -> tuple[dict, str]:
    try:
        M = json.loads(Path(args.matrix_file).read_text())["matrix"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise CliError(f"cannot read matrix file: {e}", EXIT_INPUT)
    try:
        c, n, exps = identify_from_matrix(M)
    except ValueError as e:
        raise CliError(str(e), EXIT_INPUT)
    payload = {"order": n, "exponents": exps, "class": [c.n, c.k], "label": c.label}
    return envelope("identify", {"matrix": M}, payload), f"{c.label}  order {n}  exponents {exps}\n"


def cmd_scan(args) -> tuple[dict, str]:
    try:
        found = exceptional_scan(args.n_max)
    except ValueError as e:
        raise CliError(str(e), EXIT_INPUT)
    payload = [
        {
            "action": r.action.describe(),
            "order": r.order,
            "p_phase": phase_label(r.p_phase),
            "omega_phase": phase_label(r.omega_phase),
        }
        for r in found
    ]
    text = "".join(f"{p['action']}  order {p['order']}  p -> {p['p_phase']} p\n" for p in payload)
    return envelope("scan-exceptional", {"n_max": args.n_max}, payload), text


# -- argument parsing -------------------------------------------------------------------


def _seed_order(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated list of heights")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperconifold", description="Hyperconifold singularities and their transitions.")
    p.add_argument("--version", action="version", version=__version__)

    def add_globals(q, suppress: bool):
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        q.add_argument("--format", choices=["json", "svg", "text"], default=d("json"))
        q.add_argument("--out", default=d(None), help="output file (default stdout)")
        q.add_argument("--seed-order", type=_seed_order, default=d(None),
                       help="star subdivision order, e.g. 2,1,3")
        q.add_argument("--enum-bound", type=int, default=d(DEFAULT_ENUM_BOUND))

    add_globals(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_):
        q = sub.add_parser(name, help=help_)
        add_globals(q, True)
        q.set_defaults(func=func)
        return q

    def nk(q):
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--k", type=int, required=True)

    nk(cmd("classify", cmd_classify, "normal form, orbit and lens space"))
    q = cmd("diagram", cmd_diagram, "toric diagram as JSON or SVG")
    nk(q)
    q.add_argument("--resolve", default=None, help="'star' or a 1-based enumerated resolution index")
    q = cmd("resolve", cmd_resolve, "crepant resolutions with ample cones and intersections")
    nk(q)
    q.add_argument("--enumerate", action="store_true")
    q = cmd("mirror", cmd_mirror, "local mirror and its nodes")
    nk(q)
    q.add_argument("--grid", type=int, default=None)
    q = cmd("transition", cmd_transition, "Hodge numbers and fundamental group after the transition")
    nk(q)
    q.add_argument("--h11", type=int, required=True)
    q.add_argument("--h21", type=int, required=True)
    q.add_argument("--group-file", required=True)
    q.add_argument("--seeds", nargs="+", required=True, help="group words or 1-based element numbers")
    q.add_argument("--resolve", default=None)
    q = cmd("identify", cmd_identify, "hyperconifold class of a 4x4 matrix action")
    q.add_argument("--matrix-file", required=True)
    q = cmd("scan-exceptional", cmd_scan, "exchange-type actions with isolated fixed points")
    q.add_argument("--n-max", type=int, default=20)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else 0
    try:
        if args.format == "svg" and args.command != "diagram":
            raise CliError("svg output is only available for the diagram command", EXIT_INPUT)
        report, text = args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except EnumerationBoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    out = dumps(report) if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
