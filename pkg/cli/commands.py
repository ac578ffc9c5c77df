"""
Command line front end.

Every command prints one JSON document ``{version, command, inputs, result}``
on stdout. Domain failures print ``{version, command, error, detail}`` and
exit with status 2; export write failures exit with status 3. Logs go to
stderr.

Option values starting with '-' must be attached with '=', e.g.
``--point=-1,1,1`` or ``--signs=-,+,+``.
"""

import argparse
import math
import sys

import numpy as np

from config.settings import Config
from confocal.focal_curves import FocalKind
from confocal.system import (
    ConfocalCoords,
    cartesian_from_confocal,
    classify_surface,
    confocal_coords,
    make_system,
    matrix_at,
    phi_factored,
)
from cli.scene import conic_scene, conic_summary, family_scene, jsonable, viewpoint_summary
from cli.writers import FORMATS, dumps, export_scene
from utils.errors import GeometryError, InvalidInput
from utils.logger import log, setup_logger
from viewpoint.viewing_cone import Conic, aperture_extremes, embed_conic, focal_view


# ============================================================
# ARGUMENT TYPES
# ============================================================
def _floats(text, count):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return values


def triple(text):
    return _floats(text, 3)


def pair(text):
    return _floats(text, 2)


def finite(text):
    return _floats(text, 1)[0]


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


_SIGN_TOKENS = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}


def sign(text):
    try:
        return _SIGN_TOKENS[text.strip()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"expected + or -, got {text!r}") from None


def signs(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three signs, got {text!r}")
    return [sign(p) for p in parts]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conic-viewpoints",
        description="Confocal quadrics and the viewpoints from which a conic looks circular.",
    )
    parser.add_argument("--log-level", default=Config.LOG_LEVEL,
                        choices=["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="surface type of one family member")
    p.add_argument("--abc", type=triple, required=True, metavar="A,B,C")
    p.add_argument("--k", type=finite, required=True)

    p = sub.add_parser("coords", help="Cartesian <-> confocal coordinates")
    p.add_argument("--abc", type=triple, required=True, metavar="A,B,C")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--point", type=triple, metavar="X,Y,Z")
    mode.add_argument("--confocal", type=triple, metavar="K1,K2,K3")
    p.add_argument("--signs", type=signs, default=[1, 1, 1], metavar="S,S,S")

    p = sub.add_parser("viewpoints", help="viewpoint locus, cones and apertures for a conic")
    p.add_argument("--conic", type=pair, required=True, metavar="ALPHA,BETA")
    where = p.add_mutually_exclusive_group()
    where.add_argument("--at", type=finite, metavar="T")
    where.add_argument("--grid", type=positive_int, metavar="N")
    p.add_argument("--branch", type=sign, default=1)
    p.add_argument("--extremes", action="store_true", help="include the aperture range")

    p = sub.add_parser("export", help="sampled geometry for plotting")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--conic", type=pair, metavar="ALPHA,BETA")
    source.add_argument("--abc", type=triple, metavar="A,B,C")
    p.add_argument("--at", type=finite, metavar="T")
    p.add_argument("--branch", type=sign, default=1)
    p.add_argument("--rulings", type=positive_int, default=Config.EXPORT_RULINGS)
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("-o", "--output", required=True, metavar="PATH")
    return parser


class CommandLineApp:
    """Dispatches parsed arguments to the command handlers and renders the JSON envelope."""

    def __init__(self, stdout=None):
        self.parser = build_parser()
        self.stdout = stdout or sys.stdout

    def emit(self, document):
        self.stdout.write(dumps(jsonable(document)))

    def run(self, argv=None):
        args = self.parser.parse_args(argv)
        setup_logger(args.log_level)
        handler = getattr(self, f"cmd_{args.command}")
        log.info(f"Running {args.command}")
        try:
            inputs, result = handler(args)
        except GeometryError as exc:
            log.error(f"{args.command} failed: {exc.code}: {exc.detail}")
            self.emit({"version": Config.JSON_SCHEMA_VERSION, "command": args.command, **exc.to_dict()})
            return Config.EXIT_DOMAIN_ERROR
        except OSError as exc:
            log.error(f"{args.command} could not write output: {exc}")
            self.emit({
                "version": Config.JSON_SCHEMA_VERSION,
                "command": args.command,
                "error": "io_error",
                "detail": str(exc),
            })
            return Config.EXIT_IO_ERROR

        self.emit({
            "version": Config.JSON_SCHEMA_VERSION,
            "command": args.command,
            "inputs": inputs,
            "result": result,
        })
        return Config.EXIT_OK

    # ============================================================
    # COMMANDS
    # ============================================================
    def cmd_classify(self, args):
        system = make_system(*args.abc)
        kind = classify_surface(system, args.k)
        diag = matrix_at(system, args.k).diag()
        return {"abc": args.abc, "k": args.k}, {"class": kind.value, "matrix_diag": diag}

    def cmd_coords(self, args):
        system = make_system(*args.abc)
        if args.point is not None:
            inputs = {"abc": args.abc, "point": args.point}
            cartesian = np.array(args.point)
            coords = confocal_coords(system, cartesian)
        else:
            inputs = {"abc": args.abc, "confocal": args.confocal, "signs": args.signs}
            cartesian = cartesian_from_confocal(system, args.confocal, args.signs)
            coords = ConfocalCoords(*args.confocal)
        evaluate = phi_factored(system, cartesian)
        result = {
            "cartesian": cartesian,
            "confocal": list(coords),
            "residuals": [evaluate(k) for k in coords],
            "surfaces": [kind.value for kind in (classify_surface(system, k) for k in coords)],
        }
        return inputs, result

    def cmd_viewpoints(self, args):
        inputs = {"conic": args.conic, "at": args.at, "grid": args.grid, "branch": args.branch}
        conic = Conic(*args.conic)
        embedding = embed_conic(conic)
        result = conic_summary(conic, embedding)
        locus_kind = embedding.locus.kind

        if args.at is not None:
            view = focal_view(embedding.system, locus_kind, args.at, args.branch)
            result["viewpoint"] = viewpoint_summary(view)
        elif args.grid is not None:
            if locus_kind is FocalKind.ELLIPSE:
                ts = np.linspace(0.0, 2.0 * np.pi, args.grid, endpoint=False)
            else:
                span = Config.HYPERBOLA_SAMPLE_SPAN
                ts = np.linspace(-span, span, args.grid)
            result["samples"] = [
                viewpoint_summary(focal_view(embedding.system, locus_kind, t, args.branch)) for t in ts
            ]

        if args.extremes:
            extremes = aperture_extremes(conic)
            result["extremes"] = [
                {
                    "label": e.label,
                    "theta": e.theta,
                    "theta_deg": math.degrees(e.theta),
                    "attained": e.attained,
                    "points": list(e.points),
                }
                for e in (extremes.minimum, extremes.maximum)
            ]
        return inputs, result

    def cmd_export(self, args):
        if args.conic is not None:
            if args.at is None:
                raise InvalidInput("export --conic needs --at T for the viewpoint")
            inputs = {"conic": args.conic, "at": args.at, "branch": args.branch, "rulings": args.rulings}
            scene = conic_scene(Conic(*args.conic), args.at, args.branch, rulings=args.rulings)
        else:
            inputs = {"abc": args.abc}
            scene = family_scene(make_system(*args.abc))
        inputs.update({"format": args.format, "output": args.output})
        path = export_scene(scene, args.format, args.output)
        return inputs, {"path": str(path), "format": args.format, "counts": scene.counts}


def main(argv=None):
    """Entry point; returns the process exit status."""
    return CommandLineApp().run(argv)
