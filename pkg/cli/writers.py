"""
Scene writers: JSON (the full SceneExport), CSV (one row per point) and OBJ
(vertices with polyline records).

Floats are written with ``repr`` so values survive a re-read unchanged.
"""

import csv
import json
from pathlib import Path

from utils.logger import log

FORMATS = ("json", "csv", "obj")
CSV_HEADER = ("role", "x", "y", "z", "param")


def dumps(document):
    """Deterministic JSON text: two-space indent, insertion order, trailing newline."""
    return json.dumps(document, indent=2) + "\n"


def _num(value):
    return repr(float(value) + 0.0)


def write_json(scene, path):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(scene.to_dict()))


def scene_rows(scene):
    """``(role, x, y, z, param)`` tuples for every exported point."""
    for patch in scene.surfaces:
        for point in patch.points.reshape(-1, 3):
            yield (patch.name, *point, patch.k)
    for curve in scene.curves:
        for point, t in zip(curve.points, curve.params):
            yield (curve.role, *point, t)
    for cone in scene.cones:
        yield ("apex", *cone.apex, 0.0)
        yield ("axis", *(cone.apex + cone.axis), cone.aperture)
        for end, t in zip(cone.ends, cone.params):
            yield ("ruling", *end, t)


def write_csv(scene, path):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for role, x, y, z, param in scene_rows(scene):
            writer.writerow((role, _num(x), _num(y), _num(z), _num(param)))


class _ObjBuilder:
    """Accumulates ``v`` and ``l`` records with 1-based vertex indices."""

    def __init__(self):
        self.lines = []
        self.count = 0

    def group(self, name):
        self.lines.append(f"g {name}")

    def vertex(self, point):
        self.lines.append("v " + " ".join(_num(c) for c in point))
        self.count += 1
        return self.count

    def polyline(self, points):
        indices = [self.vertex(p) for p in points]
        if len(indices) > 1:
            self.lines.append("l " + " ".join(str(i) for i in indices))


def write_obj(scene, path):
    obj = _ObjBuilder()
    obj.lines.append("# conic viewpoint scene")
    for patch in scene.surfaces:
        obj.group(f"{patch.name}:k={_num(patch.k)}")
        for row in patch.points:
            obj.polyline(row)
    for curve in scene.curves:
        obj.group(curve.role)
        for sign in sorted(set(int(s) for s in curve.branches), reverse=True):
            obj.polyline(curve.points[curve.branches == sign])
    for cone in scene.cones:
        obj.group("ruling")
        apex = obj.vertex(cone.apex)
        for end in cone.ends:
            obj.lines.append(f"l {apex} {obj.vertex(end)}")
        obj.group("axis")
        tip = obj.vertex(cone.apex + cone.axis)
        obj.lines.append(f"l {apex} {tip}")

    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(obj.lines) + "\n")


_WRITERS = {"json": write_json, "csv": write_csv, "obj": write_obj}


def export_scene(scene, fmt, path):
    """
    Write ``scene`` to ``path`` in ``fmt``.

    Raises:
        OSError: When the path cannot be written
    """
    path = Path(path)
    _WRITERS[fmt](scene, path)
    log.info(f"Wrote {fmt} scene to {path}")
    return path
