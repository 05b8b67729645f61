"""Command-line surface: search, induction, coding, rendering, verification.

All structured output is JSON on stdout; SVG goes to --out files.  Exit
codes: 0 success, 1 usage or input error, 2 legitimate empty result.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog
from .geometry import TorusPartition
from .markers import find_markers, find_substitution, is_equivalent
from .morphisms import language
from .pet import Window, config_patch, enumerate_language, induce_action, induced_partition
from .phifield import PhiNumber, parse_phi
from .pipeline import build_reference_partition, run_all
from .wang import TilingInstance, WangTileSet, patterns_with_surrounding, solve

OK, USAGE_ERROR, EMPTY = 0, 1, 2


def _parse_shape(text: str) -> tuple[int, int]:
    for sep in ("x", ","):
        if sep in text:
            a, b = text.split(sep, 1)
            return int(a), int(b)
    raise ValueError(f"cannot parse shape {text!r}; expected WxH")


def _parse_point(text: str):
    x, y = text.split(",", 1)
    return (PhiNumber(Fraction(x.strip())), PhiNumber(Fraction(y.strip())))


def _load_tileset(path: str) -> WangTileSet:
    if path == "U":
        return catalog.wang_tiles()
    with open(path) as handle:
        return WangTileSet.from_json(json.load(handle))


def _load_partition(path: str):
    """Partition plus the action that codes it.

    ``PU`` names the built-in reference pair.  A file may hold either a
    bare partition JSON (unit lattice, coded by the built-in rotation) or
    the wrapped output of the induce command, which carries its own
    action.
    """
    if path == "PU":
        return build_reference_partition()
    with open(path) as handle:
        data = json.load(handle)
    if "partition" in data:
        from .pet import TorusAction

        partition = TorusPartition.from_json(data["partition"])
        spec = data["action"]
        action = TorusAction(
            tuple(parse_phi(s) for s in spec["lattice"]),
            tuple(parse_phi(s) for s in spec["axis1"]),
            tuple(parse_phi(s) for s in spec["axis2"]),
        )
        return partition, action
    partition = TorusPartition.from_json(data)
    if partition.lattice != (PhiNumber(1), PhiNumber(1)):
        raise ValueError(
            "bare partition JSON must live on the unit lattice; induced "
            "partitions are loaded from the wrapped induce output"
        )
    return partition, catalog.rotation_action()


def _emit(data, out: str | None):
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def cmd_markers(args) -> int:
    tileset = _load_tileset(args.tileset)
    report = find_markers(tileset, args.axis, args.radius)
    _emit(
        {
            "direction": report.direction,
            "radius": report.radius,
            "marker_subsets": report.marker_subsets,
        },
        args.out,
    )
    if not report.marker_subsets:
        print("no markers found; try increasing the radius", file=sys.stderr)
        return EMPTY
    return OK


def cmd_desub(args) -> int:
    tileset = _load_tileset(args.tileset)
    markers = [int(x) for x in args.markers.split(",")]
    result = find_substitution(tileset, markers, args.axis, args.radius, args.side)
    _emit(result.to_json(), args.out)
    return OK


def cmd_equiv(args) -> int:
    first = _load_tileset(args.tileset)
    second = _load_tileset(args.other)
    certificate = is_equivalent(first, second)
    if certificate is None:
        print("tile sets are not equivalent", file=sys.stderr)
        return EMPTY
    vert, horiz, bijection = certificate
    _emit(
        {
            "vert": vert,
            "horiz": horiz,
            "bijection": {str(k): v for k, v in sorted(bijection.items())},
        },
        args.out,
    )
    return OK


def cmd_solve(args) -> int:
    tileset = _load_tileset(args.tileset)
    shape = _parse_shape(args.shape)
    fixed = {}
    for pin in args.fixed or []:
        place, tile = pin.split(":", 1)
        x, y = place.split(",", 1)
        fixed[(int(x), int(y))] = int(tile)
    wrap = None
    if args.wrap:
        a, b, c, d = [int(x) for x in args.wrap.split(",")]
        wrap = ((a, b), (c, d))
    word = solve(TilingInstance(tileset, shape, fixed, wrap), backend=args.backend)
    if word is None:
        print("no valid tiling", file=sys.stderr)
        return EMPTY
    _emit({"shape": list(word.shape), "columns": word.to_json()}, args.out)
    return OK


def cmd_lang(args) -> int:
    shape = _parse_shape(args.shape)
    if args.method == "substitution":
        words = language(catalog.square_substitution(), shape)
    elif args.method == "tiles":
        words = patterns_with_surrounding(catalog.wang_tiles(), shape, args.radius)
    else:
        partition, action = build_reference_partition()
        words = enumerate_language(partition, action, shape)
    ordered = sorted(words, key=lambda w: w.columns)
    _emit(
        {
            "method": args.method,
            "shape": list(shape),
            "count": len(ordered),
            "patterns": [w.to_json() for w in ordered],
        },
        args.out,
    )
    return OK if ordered else EMPTY


def cmd_induce(args) -> int:
    partition, action = _load_partition(args.partition)
    bound = parse_phi(args.bound)
    window = Window(args.axis, bound)
    induced, morphism = induced_partition(partition, action, window)
    new_action = induce_action(action, window)
    _emit(
        {
            "partition": induced.to_json(),
            "morphism": morphism.to_json(),
            "action": {
                "lattice": [str(new_action.lattice[0]), str(new_action.lattice[1])],
                "axis1": [str(v) for v in new_action.alpha1],
                "axis2": [str(v) for v in new_action.alpha2],
            },
        },
        args.out,
    )
    return OK


def cmd_config(args) -> int:
    partition, action = _load_partition(args.partition)
    point = _parse_point(args.seed_point)
    shape = _parse_shape(args.shape)
    offset = (0, 0)
    if args.offset:
        ox, oy = args.offset.split(",", 1)
        offset = (int(ox), int(oy))
    patch = config_patch(partition, action, point, shape, offset)
    _emit({"shape": list(patch.shape), "columns": patch.to_json()}, args.out)
    return OK


def cmd_render(args) -> int:
    from . import render

    if args.target == "tiling":
        tileset = _load_tileset(args.input)
        if args.shape:
            shape = _parse_shape(args.shape)
            word = solve(TilingInstance(tileset, shape))
            if word is None:
                print("no valid tiling to draw", file=sys.stderr)
                return EMPTY
            svg = render.render_tiling(tileset, word, seed=args.seed)
        else:
            svg = render.render_tileset(tileset, seed=args.seed)
    elif args.target == "partition":
        partition, _ = _load_partition(args.input)
        svg = render.render_partition(partition, seed=args.seed)
    elif args.target == "coded-orbit":
        partition, action = _load_partition(args.input)
        point = _parse_point(args.seed_point)
        shape = _parse_shape(args.shape or "6x8")
        svg = render.render_coded_orbit(partition, action, point, shape, seed=args.seed)
    else:
        raise ValueError(f"unknown render target {args.target!r}")
    with open(args.out, "w") as handle:
        handle.write(svg + "\n")
    return OK


def cmd_verify_all(args) -> int:
    report = run_all(max_shape=_parse_shape(args.max_shape))
    if args.out:
        with open(args.out, "w") as handle:
            json.dump(report.to_json(), handle, indent=2)
            handle.write("\n")
    print(report.to_text())
    return OK if report.ok() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aperiodic-kit",
        description=(
            "Cross-verified computations for a self-similar aperiodic plane "
            "subshift: substitution language, Wang tiles, coded rotations."
        ),
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="process count for independent searches (default: APERIODIC_KIT_JOBS or 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("markers", help="find marker tile subsets")
    p.add_argument("tileset", help="tile-set JSON path, or U for the built-in 19 tiles")
    p.add_argument("--axis", type=int, choices=(1, 2), default=2)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_markers)

    p = sub.add_parser("desub", help="desubstitute a tile set using markers")
    p.add_argument("tileset")
    p.add_argument("markers", help="comma-separated marker tile indices")
    p.add_argument("--axis", type=int, choices=(1, 2), default=2)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--out")
    p.set_defaults(func=cmd_desub)

    p = sub.add_parser("equiv", help="search a tile-set equivalence certificate")
    p.add_argument("tileset")
    p.add_argument("other")
    p.add_argument("--out")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("solve", help="tile a rectangle or quotient torus")
    p.add_argument("tileset")
    p.add_argument("--shape", required=True, help="WxH")
    p.add_argument("--fixed", action="append", help="x,y:tile (repeatable)")
    p.add_argument("--wrap", help="a,b,c,d: torus lattice basis columns (a,b),(c,d)")
    p.add_argument(
        "--backend", choices=("backtracking", "exact_cover", "both"), default="backtracking"
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lang", help="enumerate allowed patterns of a shape")
    p.add_argument("--method", choices=("substitution", "tiles", "coding"), required=True)
    p.add_argument("--shape", required=True, help="WxH")
    p.add_argument("--radius", type=int, default=2, help="surrounding radius for tiles")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lang)

    p = sub.add_parser("induce", help="induce the coded rotation on an axis window")
    p.add_argument("--partition", default="PU", help="partition JSON path or PU")
    p.add_argument("--axis", type=int, choices=(1, 2), required=True)
    p.add_argument("--bound", default="-1+phi", help="window bound as a+b*phi")
    p.add_argument("--out")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("config", help="code an orbit patch of a starting point")
    p.add_argument("--partition", default="PU")
    p.add_argument("--seed-point", required=True, help='"x,y" with rational entries')
    p.add_argument("--shape", required=True, help="WxH")
    p.add_argument("--offset", help="i,j lattice offset of the patch")
    p.add_argument("--out")
    p.set_defaults(func=cmd_config)

    p = sub.add_parser("render", help="draw a tile set, tiling, partition or orbit")
    p.add_argument("--target", choices=("tiling", "partition", "coded-orbit"), required=True)
    p.add_argument("--input", default="U", help="artifact path, or U / PU built-ins")
    p.add_argument("--shape", help="WxH (tiling and coded-orbit targets)")
    p.add_argument("--seed-point", help='"x,y" (coded-orbit target)')
    p.add_argument("--seed", type=int, default=0, help="palette rotation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify-all", help="run every pipeline and cross-check")
    p.add_argument("--max-shape", default="2,2")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs is not None:
        os.environ["APERIODIC_KIT_JOBS"] = str(args.jobs)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, RuntimeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
