"""
Plot-ready scene data: sampled focal curves, confocal surface patches and
cone rulings, with the parameters that produced them.

``SceneExport`` is the single source for every export format; the CSV and
OBJ writers only re-project its contents.
"""

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from config.settings import Config
from confocal.focal_curves import FocalKind, focal_curve
from confocal.system import SurfaceClass, sample_surface
from viewpoint.viewing_cone import embed_conic, focal_view


def jsonable(value):
    """Plain Python containers and floats, with -0.0 written as 0.0."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) + 0.0
    if isinstance(value, (SurfaceClass, FocalKind)):
        return value.value
    return value


@dataclass(eq=False)
class SampledCurve:
    role: str
    kind: FocalKind
    equation: str
    points: np.ndarray
    params: np.ndarray
    branches: np.ndarray

    def to_dict(self):
        return {
            "role": self.role,
            "kind": self.kind,
            "equation": self.equation,
            "params": self.params,
            "branches": self.branches,
            "points": self.points,
        }


@dataclass(eq=False)
class SurfacePatch:
    surface_class: SurfaceClass
    k: float
    points: np.ndarray  # (rows, columns, 3)

    @property
    def name(self):
        return f"surface:{self.surface_class.value}"

    def to_dict(self):
        return {"class": self.surface_class, "k": self.k, "grid": self.points}


@dataclass(eq=False)
class ConeRulings:
    """Segments from the apex to sampled points of the target curve."""

    apex: np.ndarray
    axis: np.ndarray
    aperture: float
    ends: np.ndarray
    params: np.ndarray
    branches: np.ndarray

    def to_dict(self):
        return {
            "apex": self.apex,
            "axis": self.axis,
            "aperture": self.aperture,
            "rulings": [
                {"end": end, "param": t, "branch": s}
                for end, t, s in zip(self.ends, self.params, self.branches)
            ],
        }


@dataclass(eq=False)
class SceneExport:
    surfaces: List[SurfacePatch] = field(default_factory=list)
    curves: List[SampledCurve] = field(default_factory=list)
    cones: List[ConeRulings] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        return jsonable({
            "version": Config.JSON_SCHEMA_VERSION,
            "metadata": self.metadata,
            "surfaces": [s.to_dict() for s in self.surfaces],
            "curves": [c.to_dict() for c in self.curves],
            "cones": [c.to_dict() for c in self.cones],
        })

    @property
    def counts(self):
        return {
            "surfaces": len(self.surfaces),
            "curves": len(self.curves),
            "rulings": sum(len(c.ends) for c in self.cones),
        }


def sample_curve(role, curve, count):
    params, branches = curve.sample_parameters(count)
    return SampledCurve(role, curve.kind, curve.equation(), curve.sample(count), params, branches)


def viewpoint_summary(view):
    return {
        "t": view.t,
        "branch": view.branch,
        "apex": view.cone.apex,
        "axis": view.cone.axis,
        "theta": view.cone.aperture,
        "theta_deg": math.degrees(view.cone.aperture),
        "cos2": view.aperture_cos2,
        "ell": view.ell,
        "confocal_parameter": view.confocal_parameter,
        "coords": list(view.coords),
        "boundary": view.boundary,
    }


def conic_summary(conic, embedding):
    return {
        "conic": {
            "alpha": conic.alpha,
            "beta": conic.beta,
            "kind": embedding.conic_curve.kind,
            "equation": embedding.conic_curve.equation(),
        },
        "locus": {
            "kind": embedding.locus.kind,
            "equation": embedding.locus.equation(),
        },
        "critical": embedding.critical,
        "foci": list(conic.foci),
    }


def conic_scene(conic, t, branch=1, rulings=None, curve_samples=None):
    """
    Conic, viewpoint locus and the circular cone from the locus point ``t``.

    Args:
        conic (Conic): Target curve
        t (float): Locus parameter of the apex
        branch (int): Locus branch for a hyperbola locus
        rulings (int, optional): Number of rulings
        curve_samples (int, optional): Samples per curve

    Returns:
        SceneExport
    """
    rulings = Config.EXPORT_RULINGS if rulings is None else rulings
    curve_samples = Config.EXPORT_CURVE_SAMPLES if curve_samples is None else curve_samples
    embedding = embed_conic(conic)
    view = focal_view(embedding.system, embedding.locus.kind, t, branch)

    target = embedding.conic_curve
    params, branches = target.sample_parameters(rulings)
    cone = ConeRulings(
        apex=view.cone.apex,
        axis=view.cone.axis,
        aperture=view.cone.aperture,
        ends=target.sample(rulings),
        params=params,
        branches=branches,
    )
    metadata = {"mode": "conic", **conic_summary(conic, embedding), "viewpoint": viewpoint_summary(view)}
    return SceneExport(
        curves=[
            sample_curve("conic", target, curve_samples),
            sample_curve("locus", embedding.locus, curve_samples),
        ],
        cones=[cone],
        metadata=metadata,
    )


def family_parameters(system):
    """One family parameter per real surface class: below c, between c and b, between b and a."""
    a, b, c = system.canonical
    return (c - (b - c), 0.5 * (c + b), 0.5 * (b + a))


def family_scene(system, curve_samples=None, grid=None):
    """
    One sampled surface of each real class plus both real focal curves.

    Args:
        system (ConfocalSystem): The family
        curve_samples (int, optional): Samples per curve
        grid (tuple, optional): Surface grid (rows, columns)

    Returns:
        SceneExport
    """
    curve_samples = Config.EXPORT_CURVE_SAMPLES if curve_samples is None else curve_samples
    surfaces = []
    for k in family_parameters(system):
        kind, points = sample_surface(system, k, grid=grid)
        surfaces.append(SurfacePatch(kind, k, points))

    curves = [
        sample_curve(f"focal_{kind.value}", focal_curve(system, kind), curve_samples)
        for kind in (FocalKind.ELLIPSE, FocalKind.HYPERBOLA)
    ]
    metadata = {
        "mode": "abc",
        "abc": list(system.user_params),
        "canonical": list(system.canonical),
        "roles": list(system.roles),
        "surfaces": [{"class": s.surface_class, "k": s.k} for s in surfaces],
    }
    return SceneExport(surfaces=surfaces, curves=curves, metadata=metadata)
