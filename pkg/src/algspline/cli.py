"""
Command-line front end.

Every subcommand prints one JSON report (or an aligned table with
--format table) with a "meta" block holding the tool version, the sha256 of
the input file, the parsed configuration and the seed.

Exit status: 0 ok, 1 golden failure, 2 unreadable or malformed input,
3 invalid complex or arguments, 4 computation limit exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cellcomplex import ComplexError, EmbeddedComplex, validate
from .chainhomology import VARIANTS, build_rj_complex, freeness_probe, local_series_formula
from .closedforms import (minimal_generators, mixed_hf, plf_dim, planar_main, resolution_hf,
                          schumaker_lower_bound, star_dimension, syzygy_data)
from .fixtures import fixture_names, fixture_path
from .geomprimes import build_xi_graph, cycle_ideals, xi_candidates
from .invsys import (FatPointScheme, annihilator_dim, expected_hf, fatpoints_hf, general_points,
                     ideal_dim, inverse_system_span_dim, nine_planes_experiment)
from .linalg import ComputationLimitError
from .polyring import StabilizationError
from .splinemod import ExponentVector, SplineSystem, dimension_table


class InputError(Exception):
    """Input that cannot be read or parsed (exit status 2)."""


def _read_json(path: str) -> tuple[object, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not UTF-8 at byte {exc.start}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise InputError(f"{path}: malformed JSON at byte {offset}: {exc.msg}") from None
    return data, hashlib.sha256(raw).hexdigest()


def _resolve_complex_path(name: str) -> str:
    if Path(name).is_file():
        return name
    stem = Path(name).name[:-5] if name.endswith(".json") else name
    if stem in fixture_names():
        return str(fixture_path(stem))
    raise InputError(f"no such file or bundled complex: {name}")


def _load_complex(args, state: dict) -> EmbeddedComplex:
    path = _resolve_complex_path(args.complex)
    data, digest = _read_json(path)
    if not isinstance(data, dict):
        raise ComplexError("complex file must hold a JSON object")
    c = EmbeddedComplex.from_dict(data, name=Path(path).stem)
    problems = validate(c)
    if problems:
        raise ComplexError("; ".join(problems))
    state["input_sha256"] = digest
    return c


def _alpha(args, c: EmbeddedComplex, state: dict):
    if getattr(args, "alphas", None):
        data, digest = _read_json(args.alphas)
        state["alphas_sha256"] = digest
        if isinstance(data, dict) and "alpha" in data:
            data = data["alpha"]
        if isinstance(data, list) and data and isinstance(data[0], dict):
            data = {tuple(item["face"]): item["r"] for item in data}
        return ExponentVector.build(c, data)
    if args.r is None:
        raise ComplexError("give a smoothness order with -r or a file with --alphas")
    return ExponentVector.build(c, args.r)


def _alpha_echo(av: ExponentVector):
    v = av.uniform_value()
    return v if v is not None else av.to_json()


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _degree_range(text: str) -> range:
    try:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi if hi else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 0..8, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty degree range {text!r}")
    return range(lo, hi + 1)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and x == float("-inf"):
        return "-inf"
    return x


# subcommands: each returns (payload, table rows or None)


def cmd_dim(args, state):
    c = _load_complex(args, state)
    av = _alpha(args, c, state)
    state["config"].update(alpha=_alpha_echo(av), degree=args.degree)
    sys_ = SplineSystem(c, av)
    dim = sys_.dim(args.degree)
    payload = {"dim": dim, "degree": args.degree, "cokernel_dim": sys_.cokernel_dim(args.degree)}
    return payload, [{"degree": args.degree, "dim": dim, "cokernel_dim": payload["cokernel_dim"]}]


def cmd_series(args, state):
    c = _load_complex(args, state)
    av = _alpha(args, c, state)
    state["config"].update(alpha=_alpha_echo(av), min_degree=args.min_degree,
                           max_degree=args.max_degree, fit=args.fit)
    t = dimension_table(c, av, args.max_degree, args.min_degree, fit=args.fit)
    payload = t.to_json()
    rows = [{"degree": d, "dim": t.dims[d]} for d in t.degrees()]
    if t.fit is not None:
        rows = [dict(row, fit=str(t.fit(row["degree"]))) for row in rows]
    return payload, rows


def cmd_homology(args, state):
    c = _load_complex(args, state)
    av = _alpha(args, c, state)
    indices = [args.index] if args.index is not None else list(range(c.k + 1))
    state["config"].update(alpha=_alpha_echo(av), variant=args.variant, indices=indices,
                           max_degree=args.max_degree)
    cx = build_rj_complex(c, av, args.variant)
    rows = []
    for d in range(args.max_degree + 1):
        row = {"degree": d}
        for i in indices:
            row[f"H{i}"] = cx.homology_dim(i, d)
        rows.append(row)
    payload = {"variant": args.variant,
               "homology": {f"H{i}": [row[f"H{i}"] for row in rows] for i in indices},
               "degrees": [row["degree"] for row in rows]}
    return payload, rows


def cmd_freeness(args, state):
    c = _load_complex(args, state)
    av = _alpha(args, c, state)
    state["config"].update(alpha=_alpha_echo(av), degree_bound=args.bound)
    v = freeness_probe(c, av, args.bound)
    payload = v.to_json()
    rows = [dict({"degree": d}, **{k: vals[d] for k, vals in payload["homology"].items()})
            for d in range(args.bound + 1)]
    return payload, rows


def cmd_local_series(args, state):
    c = _load_complex(args, state)
    av = _alpha(args, c, state)
    state["config"].update(alpha=_alpha_echo(av), max_degree=args.max_degree)
    s = local_series_formula(c, av, args.max_degree)
    coeffs = s.coefficients(args.max_degree)
    payload = {"series": s.to_json(), "coefficients": coeffs}
    return payload, [{"degree": d, "coefficient": v} for d, v in enumerate(coeffs)]


def cmd_xi(args, state):
    c = _load_complex(args, state)
    state["config"].update(min_lines=args.min_lines, r=args.r)
    loci = []
    rows = []
    av = ExponentVector.build(c, args.r) if args.r is not None else None
    for xi in xi_candidates(c, args.min_lines):
        g = build_xi_graph(c, xi)
        entry = g.to_json()
        if av is not None:
            entry["cycle_ideals"] = [cyc.to_json() for cyc in cycle_ideals(c, xi, av, graph=g)]
        loci.append(entry)
        rows.append({"point": ",".join(map(str, xi.point)), "lines": xi.n_lines,
                     "components": " ".join(comp["kind"] for comp in g.components)})
    return {"loci": loci}, rows


def cmd_formula(args, state):
    kind = args.kind
    state["config"].update(kind=kind)
    if kind in ("schumaker", "star"):
        c = _load_complex(args, state)
        if args.r is None:
            raise ComplexError("formula needs -r")
        degrees = [args.degree] if args.degree is not None else list(range(args.max_degree + 1))
        state["config"].update(r=args.r, degrees=degrees)
        f = schumaker_lower_bound if kind == "schumaker" else star_dimension
        rows = [{"degree": d, "value": f(c, args.r, d)} for d in degrees]
        return {"values": rows}, rows
    if kind == "planar-main":
        c = _load_complex(args, state)
        av = _alpha(args, c, state)
        state["config"].update(alpha=_alpha_echo(av), min_lines=args.min_lines)
        rep = planar_main(c, av, min_lines=args.min_lines)
        payload = rep.to_json()
        rows = [{"polynomial": payload["polynomial"], "leading_part": payload["leading_part"],
                 "face_constant": payload["face_constant"], "cycle_total": payload["cycle_total"]}]
        return payload, rows
    if args.alpha is None:
        raise ComplexError(f"formula {kind} needs --alpha")
    alpha = sorted(args.alpha)
    state["config"].update(alpha=alpha)
    if kind == "plf":
        degrees = [args.degree] if args.degree is not None else list(range(args.max_degree + 1))
        state["config"].update(degrees=degrees)
        rows = [{"degree": t, "ideal_dim": plf_dim(alpha, t), "quotient_dim": (t + 1) - plf_dim(alpha, t)}
                for t in degrees]
        return {"minimal_generators": minimal_generators(alpha), "values": rows}, rows
    # resolution
    mins = minimal_generators(alpha)
    data = syzygy_data(mins)
    payload = data.to_json()
    payload["input_alpha"] = alpha
    payload["hilbert_function"] = [resolution_hf(mins, i) for i in range(data.omega + 1)]
    rows = [{"degree": i, "resolution_hf": resolution_hf(mins, i), "direct_hf": mixed_hf(mins, i)}
            for i in range(data.omega + 1)]
    return payload, rows


def cmd_fatpoints(args, state):
    if args.points:
        data, digest = _read_json(args.points)
        state["input_sha256"] = digest
        if isinstance(data, dict):
            pts = data.get("points")
            mults = args.mults if args.mults is not None else data.get("mults")
        else:
            pts, mults = data, args.mults
        if pts is None or mults is None:
            raise ComplexError("points file needs 'points', and multiplicities from the file or --mults")
        pts = [tuple(Fraction(str(x)) for x in p) for p in pts]
    elif args.general:
        pts = general_points(args.general, seed=args.seed)
        mults = args.mults if args.mults is not None else [2] * args.general
    else:
        raise ComplexError("give --points FILE or --general N")
    if len(mults) == 1 and len(pts) > 1:
        mults = mults * len(pts)
    X = FatPointScheme(pts, mults)
    degrees = list(args.degree_range)
    state["config"].update(scheme=X.to_json(), degrees=degrees)
    rows = []
    for j in degrees:
        hf = fatpoints_hf(X, j)
        exp = expected_hf(X, j)
        actual_ideal = ideal_dim(X, j)
        rows.append({"degree": j, "hf": hf, "annihilator": annihilator_dim(X, j),
                     "span": inverse_system_span_dim(X, j), "expected_hf": exp["quotient"],
                     "ideal_dim": actual_ideal, "expected_ideal_dim": exp["ideal"],
                     "deficit": actual_ideal - exp["ideal"]})
    return {"scheme": X.to_json(), "rows": rows}, rows


def cmd_goldens(args, state):
    from .goldens import run_suite

    state["config"].update(suite=args.suite)
    items = run_suite(args.suite)
    failed = sum(not it.ok for it in items)
    state["exit"] = 1 if failed else 0
    payload = {"suite": args.suite, "passed": len(items) - failed, "total": len(items),
               "items": [it.to_json() for it in items]}
    rows = [{"verdict": "PASS" if it.ok else "FAIL", "suite": it.suite, "item": it.name, "detail": it.detail}
            for it in items]
    return payload, rows


def cmd_experiment(args, state):
    state["config"].update(name=args.name, exponent=args.exponent, count=args.count,
                           max_degree=args.max_degree)
    out = nine_planes_experiment(seed=args.seed, exponent=args.exponent, count=args.count,
                                 max_degree=args.max_degree)
    return out, out["hilbert_function"]


# output


def _table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)"
    cols = list(rows[0])
    for row in rows[1:]:
        cols += [k for k in row if k not in cols]
    cells = [[str(_jsonable(row.get(k, ""))) for k in cols] for row in rows]
    widths = [max(len(k), *(len(r[i]) for r in cells)) for i, k in enumerate(cols)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) if v.lstrip("-").isdigit() else v.ljust(w)
                        for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="algspline", description="Exact spline dimension and homology computations.")
    p.add_argument("--version", action="version", version=f"algspline {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled input (recorded in every report)")
    common.add_argument("--threads", type=int, default=None, help="overrides SPLINE_THREADS")
    cx = argparse.ArgumentParser(add_help=False)
    cx.add_argument("--complex", required=True, help="complex JSON file or bundled fixture name")
    cx.add_argument("-r", type=int, default=None, help="uniform smoothness order")
    cx.add_argument("--alphas", default=None, help="JSON file with per-face smoothness orders")

    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("dim", parents=[common, cx], help="dimension of the spline space in one degree")
    s.add_argument("-d", "--degree", type=int, required=True)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("series", parents=[common, cx], help="dimension table and Hilbert polynomial fit")
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--min-degree", type=int, default=0)
    s.add_argument("--fit", action="store_true")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("homology", parents=[common, cx], help="homology dimensions of R/J, R/I or R")
    s.add_argument("--index", type=int, default=None)
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--variant", choices=VARIANTS, default="rj")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("freeness", parents=[common, cx], help="look for nonzero lower homology")
    s.add_argument("--bound", type=int, required=True, help="largest degree examined")
    s.set_defaults(func=cmd_freeness)

    s = sub.add_parser("local-series", parents=[common, cx], help="Hilbert series from the chain complex terms")
    s.add_argument("--max-degree", type=int, default=16)
    s.set_defaults(func=cmd_local_series)

    s = sub.add_parser("xi", parents=[common], help="codimension-two loci, graphs and cycle ideals")
    s.add_argument("--complex", required=True)
    s.add_argument("-r", type=int, default=None, help="also report cycle ideals for this smoothness")
    s.add_argument("--min-lines", type=int, default=2)
    s.set_defaults(func=cmd_xi)

    s = sub.add_parser("formula", parents=[common], help="closed-form counts")
    s.add_argument("kind", choices=("schumaker", "star", "planar-main", "plf", "resolution"))
    s.add_argument("--complex", default=None)
    s.add_argument("-r", type=int, default=None)
    s.add_argument("--alphas", default=None)
    s.add_argument("--alpha", type=_int_list, default=None, help="exponents, e.g. 2,3,3")
    s.add_argument("-d", "--degree", type=int, default=None)
    s.add_argument("--max-degree", type=int, default=12)
    s.add_argument("--min-lines", type=int, default=2)
    s.set_defaults(func=cmd_formula)

    s = sub.add_parser("fatpoints", parents=[common], help="Hilbert functions of fat point schemes")
    s.add_argument("--points", default=None, help="JSON list of projective points or {points, mults}")
    s.add_argument("--general", type=int, default=None, help="sample N general points from --seed")
    s.add_argument("--mults", type=_int_list, default=None)
    s.add_argument("--degree-range", type=_degree_range, default=range(0, 9))
    s.set_defaults(func=cmd_fatpoints)

    s = sub.add_parser("goldens", parents=[common], help="run the golden suites")
    s.add_argument("suite", nargs="?", default="all")
    s.set_defaults(func=cmd_goldens)

    s = sub.add_parser("experiment", parents=[common], help="data-only experiments")
    s.add_argument("name", choices=("nine-planes",))
    s.add_argument("--exponent", type=int, default=3)
    s.add_argument("--count", type=int, default=9)
    s.add_argument("--max-degree", type=int, default=8)
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        os.environ["SPLINE_THREADS"] = str(args.threads)
    config = {k: v for k, v in vars(args).items() if k not in ("func", "format", "threads")}
    config = {k: (f"{v.start}..{v.stop - 1}" if isinstance(v, range) else v) for k, v in config.items()}
    state = {"config": config, "input_sha256": None, "exit": 0}
    try:
        payload, rows = args.func(args, state)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationLimitError as exc:
        print(f"error: computation limit: {exc}", file=sys.stderr)
        return 4
    except StabilizationError as exc:
        print(f"error: {exc}; try a larger --max-degree", file=sys.stderr)
        return 4
    except (ComplexError, ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 3
    meta = {"tool": "algspline", "version": __version__, "input_sha256": state["input_sha256"],
            "config": state["config"], "seed": args.seed,
            "threads": int(os.environ.get("SPLINE_THREADS", "1") or 1)}
    if "alphas_sha256" in state:
        meta["alphas_sha256"] = state["alphas_sha256"]
    if args.format == "json":
        print(json.dumps(_jsonable(dict(payload, meta=meta)), indent=2))
    else:
        print(f"# algspline {__version__} {args.command}  seed={args.seed}  input_sha256={state['input_sha256']}")
        print(f"# config {json.dumps(_jsonable(state['config']), sort_keys=True)}")
        print(_table(rows))
    return state["exit"]


if __name__ == "__main__":
    sys.exit(main())
