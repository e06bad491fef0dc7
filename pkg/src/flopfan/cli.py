"""Command-line interface.

Exit codes: 0 ok, 1 invariant failure, 2 bad configuration, 3 resource cap,
4 not a heart cone.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import arrangement as arr
from .checks import run_checks
from .dynkin import DiagramError, DynkinData, parse_diagram
from .errors import NotAHeartCone, ResourceCapExceeded, default_cap
from .hearts import classify_cone, numerical_interval
from .mutation import complement_name, mutation_class, quiver_dot
from .render import chambers_csv, chambers_payload, hasse_dot, slice_svg

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_CAP, EXIT_NOT_HEART = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    ctx: DynkinData
    sector: str = "+"
    box: int | None = None
    fmt: str = "json"
    cap: int = 100000


def _parse_marked(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"cannot parse marked set {text!r}")


def _config(args) -> RunConfig:
    try:
        D = parse_diagram(args.diagram)
    except DiagramError as e:
        raise ConfigError(str(e))
    if not D.affine:
        raise ConfigError("the diagram must be affine (append ~)")
    marked = _parse_marked(args.marked)
    try:
        ctx = DynkinData(D, marked)
    except DiagramError as e:
        raise ConfigError(str(e))
    cap = args.max_chambers if args.max_chambers is not None else default_cap()
    if cap < 1:
        raise ConfigError("resource cap must be positive")
    box = getattr(args, "box", None)
    sector = getattr(args, "sector", "+")
    if box is not None and box < 1:
        raise ConfigError("box level must be at least 1")
    return RunConfig(ctx, sector, box, args.format, cap)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_mutation_class(args) -> int:
    cfg = _config(args)
    if cfg.fmt not in ("json", "dot"):
        raise ConfigError("mutclass supports json and dot output")
    D = cfg.ctx.ambient
    Q = mutation_class(D, cfg.ctx.marked, max_vertices=cfg.cap)
    if cfg.fmt == "dot":
        _emit(args, quiver_dot(D, Q))
    else:
        out = Q.to_json()
        out["names"] = [complement_name(D, v) for v in Q.vertices]
        _emit(args, _json(out))
    return EXIT_OK


def cmd_chambers(args) -> int:
    cfg = _config(args)
    if cfg.sector != "0" and cfg.box is None:
        raise ConfigError("the + and - sectors need --box N")
    chambers = arr.enumerate_box(cfg.ctx, cfg.sector, cfg.box, cap=cfg.cap)
    if cfg.fmt == "json":
        _emit(args, _json(chambers_payload(chambers, cfg.box)))
    elif cfg.fmt == "csv":
        _emit(args, chambers_csv(chambers))
    elif cfg.fmt == "dot":
        _emit(args, hasse_dot(chambers))
    else:
        try:
            _emit(args, slice_svg(chambers))
        except ValueError as e:
            raise ConfigError(str(e))
    return EXIT_OK


def _parse_point(text: str, n: int) -> tuple[Fraction, ...]:
    try:
        vals = tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse point {text!r}")
    if len(vals) != n:
        raise ConfigError(f"point needs {n} coordinates")
    return vals


def cmd_classify(args) -> int:
    cfg = _config(args)
    theta = _parse_point(args.point, len(cfg.ctx.unmarked))
    cone = arr.locate(cfg.ctx, theta, max_steps=cfg.cap)
    if cone.is_zero:
        raise NotAHeartCone("the zero cone is not a heart cone")
    desc = classify_cone(cone)
    lower, upper = numerical_interval(cfg.ctx, theta)
    out = desc.to_json()
    out["interval"] = [lower.label(), upper.label()]
    _emit(args, _json(out))
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _config(args)
    rep = run_checks(cfg.ctx, cfg.box or 2, fault=args.inject_fault)
    payload = {"diagram": cfg.ctx.ambient.name, "marked": sorted(cfg.ctx.marked),
               "box": cfg.box or 2, "ok": rep.ok, "failed": rep.failed(),
               "properties": rep.results}
    _emit(args, _json(payload))
    return EXIT_OK if rep.ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flopfan", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default="json"):
        sp.add_argument("--diagram", required=True, help="affine diagram, e.g. A2~ or E7~")
        sp.add_argument("--marked", default="", help="comma-separated marked vertices")
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--max-chambers", type=int, default=None,
                        help="resource cap (default from FLOPFAN_MAX_CHAMBERS or 100000)")

    sp = sub.add_parser("mutclass", help="exchange quiver of a marked set")
    common(sp, ["json", "dot"])
    sp.set_defaults(func=cmd_mutation_class)

    sp = sub.add_parser("chambers", help="chambers of one sector")
    common(sp, ["json", "dot", "svg", "csv"])
    sp.add_argument("--sector", choices=["+", "0", "-"], default="+")
    sp.add_argument("--box", type=int, default=None)
    sp.set_defaults(func=cmd_chambers)

    sp = sub.add_parser("classify", help="classify the cone containing a functional")
    common(sp, ["json"])
    sp.add_argument("--point", required=True,
                    help="values on the simple roots of the restricted lattice, e.g. 1,0,1/2")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("check", help="run the invariant suites")
    common(sp, ["json"])
    sp.add_argument("--box", type=int, default=None)
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceCapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except NotAHeartCone as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_HEART


if __name__ == "__main__":
    sys.exit(main())
