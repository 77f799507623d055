import numpy as np
import pytest

from mmwray.channel import FrequencyPlan
from mmwray.geometry import (
    Point2,
    Scene,
    Segment,
    SegmentKind,
    intersect,
    mirror,
    segments_cross,
    validate_scene,
)


def seg(ax, ay, bx, by, material="m", kind=SegmentKind.WALL):
    return Segment(Point2(ax, ay), Point2(bx, by), material, kind)


class TestIntersect:
    def test_perpendicular_crossing(self):
        hit = intersect(Point2(0, 0), (1.0, 0.0), seg(1, -1, 1, 1))
        assert hit is not None
        t, p = hit
        assert t == pytest.approx(1.0, abs=1e-12)
        assert (p.x, p.y) == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_parallel_offset_misses(self):
        assert intersect(Point2(0, 0), (1.0, 0.0), seg(-1, 1, 1, 1)) is None

    def test_oblique_crossing_matches_linear_system(self):
        # oracle: solve origin + t*d = a + s*(b-a) as a 2x2 linear system
        d = np.array([0.6, 0.8])
        a, b = np.array([0.0, 2.0]), np.array([2.0, 0.0])
        t_ref, s_ref = np.linalg.solve(np.column_stack([d, a - b]), a)
        assert 0.0 <= s_ref <= 1.0
        hit = intersect(Point2(0, 0), d, seg(0, 2, 2, 0))
        assert hit is not None
        t, p = hit
        assert t == pytest.approx(t_ref, abs=1e-12)
        assert t == pytest.approx(10.0 / 7.0, abs=1e-12)
        assert (p.x, p.y) == pytest.approx((6.0 / 7.0, 8.0 / 7.0), abs=1e-12)

    def test_self_hit_suppressed(self):
        assert intersect(Point2(1, 0), (1.0, 0.0), seg(1, -1, 1, 1)) is None

    def test_endpoint_swap_symmetry(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            o = Point2(*rng.uniform(-5, 5, 2))
            ang = rng.uniform(0, 2 * np.pi)
            d = (np.cos(ang), np.sin(ang))
            ax, ay, bx, by = rng.uniform(-5, 5, 4)
            if np.hypot(bx - ax, by - ay) < 1e-6:
                continue
            h1 = intersect(o, d, seg(ax, ay, bx, by))
            h2 = intersect(o, d, seg(bx, by, ax, ay))
            assert (h1 is None) == (h2 is None)
            if h1 is not None:
                assert h1[0] == pytest.approx(h2[0], abs=1e-9)

    def test_hit_lies_on_ray_and_segment(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            o = Point2(*rng.uniform(-5, 5, 2))
            ang = rng.uniform(0, 2 * np.pi)
            d = np.array([np.cos(ang), np.sin(ang)])
            s = seg(*rng.uniform(-5, 5, 4))
            hit = intersect(o, d, s)
            if hit is None:
                continue
            t, p = hit
            on_ray = o.as_array() + t * d
            assert np.linalg.norm(on_ray - p.as_array()) < 1e-9
            e = s.b.as_array() - s.a.as_array()
            u = float(np.dot(p.as_array() - s.a.as_array(), e) / np.dot(e, e))
            proj = s.a.as_array() + np.clip(u, 0, 1) * e
            assert np.linalg.norm(proj - p.as_array()) < 1e-9


class TestMirror:
    def test_axis_reflection(self):
        p = mirror(Point2(1, 1), seg(0, 0, 5, 0))
        assert (p.x, p.y) == pytest.approx((1.0, -1.0), abs=1e-12)

    def test_point_on_line_is_fixed(self):
        p = mirror(Point2(2, 0), seg(0, 0, 5, 0))
        assert (p.x, p.y) == pytest.approx((2.0, 0.0), abs=1e-12)

    def test_diagonal_swap(self):
        p = mirror(Point2(0, 2), seg(0, 0, 1, 1))
        assert (p.x, p.y) == pytest.approx((2.0, 0.0), abs=1e-12)

    def test_involution(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            p = Point2(*rng.uniform(-10, 10, 2))
            s = seg(*rng.uniform(-10, 10, 4))
            if s.length < 1e-6:
                continue
            q = mirror(mirror(p, s), s)
            assert abs(q.x - p.x) < 1e-12 and abs(q.y - p.y) < 1e-12


class TestValidateScene:
    def test_empty_scene_is_valid(self):
        assert validate_scene(Scene(segments=())) == []

    def test_degenerate_segment(self):
        scene = Scene(segments=(seg(1, 1, 1, 1),), materials={"m": object()})
        codes = [v.code for v in validate_scene(scene)]
        assert codes == ["degenerate_segment"]

    def test_missing_panel(self):
        scene = Scene(
            segments=(seg(0, 0, 1, 0, material="arr", kind=SegmentKind.REFLECTARRAY_PANEL),),
        )
        codes = [v.code for v in validate_scene(scene)]
        assert codes == ["missing_panel"]

    def test_missing_material(self):
        scene = Scene(segments=(seg(0, 0, 1, 0, material="nope"),))
        codes = [v.code for v in validate_scene(scene)]
        assert codes == ["missing_material"]

    def test_crossing_segments(self):
        scene = Scene(
            segments=(seg(0, -1, 0, 1), seg(-1, 0, 1, 0)),
            materials={"m": object()},
        )
        codes = [v.code for v in validate_scene(scene)]
        assert "segments_cross" in codes

    def test_shared_endpoints_allowed(self):
        scene = Scene(
            segments=(seg(0, 0, 1, 0), seg(1, 0, 1, 1)),
            materials={"m": object()},
        )
        assert validate_scene(scene) == []

    def test_frequency_plan_checked(self):
        scene = Scene(segments=(), frequency_plan=FrequencyPlan(60.0, 2.0, 401))
        assert validate_scene(scene) == []


class TestSegmentsCross:
    def test_endpoint_graze_not_a_crossing(self):
        s = seg(1, 0, 1, 2)
        assert segments_cross(Point2(0, 0), Point2(2, 0), s) is None

    def test_interior_crossing(self):
        s = seg(1, -1, 1, 1)
        hit = segments_cross(Point2(0, 0), Point2(2, 0), s)
        assert hit is not None
        assert (hit.x, hit.y) == pytest.approx((1.0, 0.0), abs=1e-12)


def test_point_requires_finite_coordinates():
    with pytest.raises(ValueError):
        Point2(float("nan"), 0.0)
