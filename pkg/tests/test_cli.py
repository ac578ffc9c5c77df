"""End-to-end tests for the command line: JSON envelopes, exit codes and exported files."""

import csv
import json
import math

import numpy as np
import pytest

from cli.commands import main
from config.settings import Config
from confocal.system import make_system, surface_residual


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr().out
        return code, out

    return _run


@pytest.fixture
def run_json(run):
    def _run(*argv):
        code, out = run(*argv)
        return code, json.loads(out)

    return _run


@pytest.mark.parametrize(
    "argv, golden",
    [
        (("classify", "--abc", "4,2,1", "--k", "0"), "classify_ellipsoid.json"),
        (("classify", "--abc", "4,2,1", "--k", "3"), "classify_two_sheets.json"),
        (("viewpoints", "--conic", "3,1"), "viewpoints_conic_3_1.json"),
    ],
)
def test_golden_output(run, argv, golden):
    code, out = run(*argv)
    assert code == Config.EXIT_OK
    assert out == (Config.GOLDEN_DIR / golden).read_text(encoding="utf-8")


class TestClassify:
    def test_permuted_parameters(self, run_json):
        code, doc = run_json("classify", "--abc", "1,4,2", "--k", "1.5")
        assert code == 0
        assert doc["result"]["class"] == "hyperboloid_one_sheet"
        assert doc["result"]["matrix_diag"] == [-2.0, 0.4, 2.0]

    def test_degenerate_parameters(self, run_json):
        code, doc = run_json("classify", "--abc", "2,2,1", "--k", "0")
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "degenerate_parameters"
        assert doc["command"] == "classify"
        assert "result" not in doc

    def test_malformed_triple_is_a_usage_error(self, run):
        with pytest.raises(SystemExit) as excinfo:
            run("classify", "--abc", "1,2", "--k", "0")
        assert excinfo.value.code == 2


class TestCoords:
    def test_point_to_confocal(self, run_json):
        code, doc = run_json("coords", "--abc", "4,2,1", "--point", "1,1,1")
        assert code == 0
        k1, k2, k3 = doc["result"]["confocal"]
        assert k1 < 1.0 < k2 < 2.0 < k3 < 4.0
        assert max(abs(r) for r in doc["result"]["residuals"]) <= 1e-10
        assert doc["result"]["surfaces"] == [
            "ellipsoid",
            "hyperboloid_one_sheet",
            "hyperboloid_two_sheets",
        ]

    def test_confocal_to_point_with_signs(self, run_json):
        code, doc = run_json("coords", "--abc", "4,2,1", "--confocal", "0,1.5,3", "--signs=-,+,-")
        assert code == 0
        x, y, z = doc["result"]["cartesian"]
        assert x < 0 < y and z < 0
        assert doc["result"]["confocal"] == [0.0, 1.5, 3.0]
        assert doc["inputs"]["signs"] == [-1, 1, -1]

    def test_negative_point_needs_attached_value(self, run_json):
        code, doc = run_json("coords", "--abc", "4,2,1", "--point=-1,1,1")
        assert code == 0
        assert doc["inputs"]["point"] == [-1.0, 1.0, 1.0]

    def test_point_on_a_principal_plane(self, run_json):
        code, doc = run_json("coords", "--abc", "4,2,1", "--point", "1,0,1")
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "non_generic_point"

    def test_non_interlacing_coordinates(self, run_json):
        code, doc = run_json("coords", "--abc", "4,2,1", "--confocal", "0,3,3.5")
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "negative_square"


class TestViewpoints:
    def test_single_viewpoint(self, run_json):
        code, doc = run_json("viewpoints", "--conic", "3,1", "--at", "1")
        assert code == 0
        view = doc["result"]["viewpoint"]
        s2 = 3.0 * math.sinh(1.0) ** 2
        assert view["cos2"] == pytest.approx(s2 / (s2 + 1.0), abs=1e-14)
        assert view["theta_deg"] == pytest.approx(math.degrees(view["theta"]))
        assert view["boundary"] is None
        assert view["branch"] == 1

    def test_negative_parameter_and_branch(self, run_json):
        code, doc = run_json("viewpoints", "--conic", "3,1", "--at", "-0.5", "--branch=-1")
        assert code == 0
        view = doc["result"]["viewpoint"]
        assert view["t"] == -0.5
        assert view["apex"][0] < 0 and view["apex"][2] < 0

    def test_grid_over_a_hyperbola_locus(self, run_json):
        code, doc = run_json("viewpoints", "--conic", "3,1", "--grid", "5")
        assert code == 0
        samples = doc["result"]["samples"]
        assert [s["t"] for s in samples] == [-2.0, -1.0, 0.0, 1.0, 2.0]
        assert samples[2]["boundary"] == "c"
        assert samples[2]["theta"] == pytest.approx(math.pi / 2)

    def test_grid_over_an_ellipse_locus(self, run_json):
        code, doc = run_json("viewpoints", "--conic=2,-1", "--grid", "4")
        assert code == 0
        assert doc["result"]["locus"]["kind"] == "ellipse"
        ts = [s["t"] for s in doc["result"]["samples"]]
        assert ts == pytest.approx([0.0, math.pi / 2, math.pi, 3 * math.pi / 2])

    def test_extremes(self, run_json):
        code, doc = run_json("viewpoints", "--conic=2,-1", "--extremes")
        assert code == 0
        low, high = doc["result"]["extremes"]
        assert low["label"] == "minimum" and high["label"] == "maximum"
        assert math.cos(low["theta"]) ** 2 == pytest.approx(2.0 / 3.0)
        assert high["theta_deg"] == pytest.approx(90.0)
        assert len(high["points"]) == 2

    def test_invalid_conic(self, run_json):
        code, doc = run_json("viewpoints", "--conic", "1,3")
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "invalid_conic"

    def test_far_locus_parameter_is_rejected(self, run_json):
        code, doc = run_json("viewpoints", "--conic", "3,1", "--at", "400")
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "invalid_input"
        assert "result" not in doc

    def test_far_locus_parameter_in_export(self, run_json, tmp_path):
        code, doc = run_json("export", "--conic", "3,1", "--at=-1e6", "-o", str(tmp_path / "far.json"))
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "invalid_input"
        assert not (tmp_path / "far.json").exists()

    def test_at_and_grid_are_exclusive(self, run):
        with pytest.raises(SystemExit):
            run("viewpoints", "--conic", "3,1", "--at", "1", "--grid", "3")


def read_obj(path):
    """Vertices grouped by the ``g`` record they appear under, plus the raw ``l`` records."""
    groups, lines, vertices = {}, [], []
    current = None
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("g "):
            current = line[2:]
            groups.setdefault(current, [])
        elif line.startswith("v "):
            vertex = np.array([float(v) for v in line.split()[1:]])
            vertices.append(vertex)
            groups[current].append(vertex)
        elif line.startswith("l "):
            lines.append([int(i) for i in line.split()[1:]])
    return groups, lines, vertices


class TestExport:
    def test_json_scene(self, run_json, tmp_path):
        target = tmp_path / "scene.json"
        code, doc = run_json(
            "export", "--conic", "3,1", "--at", "0.7", "--rulings", "16", "--format", "json", "-o", str(target)
        )
        assert code == 0
        assert doc["result"]["counts"] == {"surfaces": 0, "curves": 2, "rulings": 16}
        scene = json.loads(target.read_text(encoding="utf-8"))
        assert list(scene) == ["version", "metadata", "surfaces", "curves", "cones"]
        assert scene["metadata"]["mode"] == "conic"
        assert [c["role"] for c in scene["curves"]] == ["conic", "locus"]
        assert len(scene["cones"][0]["rulings"]) == 16

    def test_csv_rulings_make_a_constant_angle(self, run_json, tmp_path):
        target = tmp_path / "scene.csv"
        code, _ = run_json(
            "export", "--conic", "3,1", "--at", "0.7", "--rulings", "16", "--format", "csv", "-o", str(target)
        )
        assert code == 0
        with open(target, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["role", "x", "y", "z", "param"]
        by_role = {}
        for role, x, y, z, param in rows[1:]:
            by_role.setdefault(role, []).append((np.array([float(x), float(y), float(z)]), float(param)))

        (apex, _), = by_role["apex"]
        (tip, aperture), = by_role["axis"]
        axis = tip - apex
        angles = []
        for end, _ in by_role["ruling"]:
            ray = end - apex
            angles.append(math.atan2(np.linalg.norm(np.cross(ray, axis)), abs(ray @ axis)))
        assert len(angles) == 16
        assert max(abs(a - aperture) for a in angles) <= 1e-9

    def test_obj_family_surfaces(self, run_json, tmp_path):
        target = tmp_path / "family.obj"
        code, doc = run_json("export", "--abc", "4,2,1", "--format", "obj", "-o", str(target))
        assert code == 0
        assert doc["result"]["counts"]["surfaces"] == 3
        groups, lines, vertices = read_obj(target)
        system = make_system(4.0, 2.0, 1.0)
        surface_groups = [name for name in groups if name.startswith("surface:")]
        assert len(surface_groups) == 3
        for name in surface_groups:
            k = float(name.split("k=")[1])
            for x in groups[name]:
                assert abs(surface_residual(system, k, x)) <= 1e-6
        assert "focal_ellipse" in groups and "focal_hyperbola" in groups
        assert all(1 <= i <= len(vertices) for record in lines for i in record)

    def test_obj_conic_rulings(self, run_json, tmp_path):
        target = tmp_path / "cone.obj"
        code, _ = run_json("export", "--conic=2,-1", "--at", "1.2", "--rulings", "8", "--format", "obj", "-o", str(target))
        assert code == 0
        groups, lines, _ = read_obj(target)
        assert len(groups["ruling"]) == 9
        assert len(groups["axis"]) == 1
        assert sum(1 for record in lines if len(record) == 2) == 9

    def test_conic_export_needs_a_viewpoint(self, run_json, tmp_path):
        code, doc = run_json("export", "--conic", "3,1", "-o", str(tmp_path / "x.json"))
        assert code == Config.EXIT_DOMAIN_ERROR
        assert doc["error"] == "invalid_input"

    def test_unwritable_path(self, run_json, tmp_path):
        target = tmp_path / "missing" / "scene.json"
        code, doc = run_json("export", "--abc", "4,2,1", "-o", str(target))
        assert code == Config.EXIT_IO_ERROR
        assert doc["error"] == "io_error"


def test_hyperbola_seen_from_its_locus_top(run_json):
    code, doc = run_json("viewpoints", "--conic=3,-1", "--at", repr(math.pi / 2))
    assert code == 0
    view = doc["result"]["viewpoint"]
    assert np.allclose(view["apex"], [0.0, 0.0, 1.0], atol=1e-15)
    assert abs(view["theta_deg"] - 30.0) <= 1e-9


def test_circle_is_rejected(run_json):
    code, doc = run_json("viewpoints", "--conic", "2,2")
    assert code == Config.EXIT_DOMAIN_ERROR
    assert doc["error"] == "degenerate_parameters"
