"""Tests for the parametric domain families."""

import math

import pytest

from rotcheeger.domains import (
    DomainSpec,
    build_domain,
    domain_from_json,
    domain_metrics,
    domain_to_json,
    faber_krahn_bound,
    inscribed_ball_radius,
    profile_height,
)
from rotcheeger.errors import InvalidParamsError
from rotcheeger.revolve import piece_end, piece_start, unit_ball_volume


class TestBuildDomain:
    def test_cylinder_generatrix(self):
        spec = build_domain("cylinder", 3, l=3.0, r=1.0)
        pts = [piece_start(p) for p in spec.generatrix.pieces] + [
            piece_end(spec.generatrix.pieces[-1])
        ]
        assert pts == [(0.0, 0.0), (0.0, 1.0), (3.0, 1.0), (3.0, 0.0)]

    def test_cone_generatrix(self):
        spec = build_domain("cone", 3, l=1.0, theta=math.pi / 3)
        pts = [piece_start(p) for p in spec.generatrix.pieces] + [
            piece_end(spec.generatrix.pieces[-1])
        ]
        assert pts[0] == (-1.0, 0.0)
        assert pts[1] == pytest.approx((0.0, math.tan(math.pi / 3)), abs=1e-15)
        assert pts[2] == (0.0, 0.0)

    def test_double_cone_right_angle(self):
        # the right-hand slope must equal arctan((l/r) tan(theta))
        l, r, theta = 1.0, 3.0, math.pi / 3
        spec = build_domain("double-cone", 3, l=l, r=r, theta=theta)
        peak = piece_end(spec.generatrix.pieces[0])
        assert peak == pytest.approx((0.0, l * math.tan(theta)), abs=1e-15)
        (x0, y0), (x1, y1) = piece_start(spec.generatrix.pieces[1]), piece_end(
            spec.generatrix.pieces[1]
        )
        phi = math.atan2(y0 - y1, x1 - x0)
        assert phi == pytest.approx(math.atan((l / r) * math.tan(theta)), abs=1e-14)
        assert phi == pytest.approx(math.pi / 6, abs=1e-14)

    def test_double_cone_apex_consistency(self):
        # both slant lines meet at (0, l tan theta)
        for l, r, theta in [(1.8, 3.2, math.asin(0.8)), (2.0, 0.5, 0.9)]:
            spec = build_domain("double-cone", 3, l=l, r=r, theta=theta)
            left_end = piece_end(spec.generatrix.pieces[0])
            right_start = piece_start(spec.generatrix.pieces[1])
            assert abs(left_end[0] - right_start[0]) < 1e-12
            assert abs(left_end[1] - right_start[1]) < 1e-12
            # independent line equations through the base vertices
            phi = math.atan((l / r) * math.tan(theta))
            assert l * math.tan(theta) == pytest.approx(r * math.tan(phi), rel=1e-12)

    def test_hourglass_corner_points(self):
        spec = build_domain("hourglass", 3, a=3.0, b=2.0, c=0.3, d=0.6)
        pts = [piece_start(p) for p in spec.generatrix.pieces] + [
            piece_end(spec.generatrix.pieces[-1])
        ]
        assert pts == [
            (-3.0, 0.0),
            (-3.0, 2.0),
            (-0.3, 0.6),
            (0.0, 2.0),
            (0.3, 0.6),
            (3.0, 2.0),
            (3.0, 0.0),
        ]

    def test_family_name_normalization(self):
        a = build_domain("double_cone", 3, l=1.0, r=1.0, theta=0.5)
        b = build_domain("Double-Cone", 3, l=1.0, r=1.0, theta=0.5)
        assert a == b

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidParamsError, match="unknown family"):
            build_domain("torus", 3, r=1.0)
        with pytest.raises(InvalidParamsError, match="takes parameters"):
            build_domain("cylinder", 3, l=1.0)
        with pytest.raises(InvalidParamsError, match="takes parameters"):
            build_domain("cylinder", 3, l=1.0, r=1.0, extra=2.0)
        with pytest.raises(InvalidParamsError, match="theta"):
            build_domain("cone", 3, l=1.0, theta=math.pi / 2)
        with pytest.raises(InvalidParamsError, match="positive"):
            build_domain("cylinder", 3, l=-1.0, r=1.0)
        with pytest.raises(InvalidParamsError, match="hourglass"):
            build_domain("hourglass", 3, a=1.0, b=2.0, c=1.5, d=0.6)
        with pytest.raises(InvalidParamsError, match="dimension"):
            build_domain("cylinder", 2, l=1.0, r=1.0)


class TestDomainMetrics:
    def test_unit_cylinder(self):
        m = domain_metrics(build_domain("cylinder", 3, l=1.0, r=1.0))
        assert m.volume == pytest.approx(math.pi, rel=1e-13)
        assert m.area == pytest.approx(4.0 * math.pi, rel=1e-13)
        assert m.ratio == pytest.approx(4.0, rel=1e-13)

    def test_cylinder_any_dimension(self):
        for n in (3, 4, 5, 10, 30):
            l, r = 2.0, 1.5
            m = domain_metrics(build_domain("cylinder", n, l=l, r=r))
            wn = unit_ball_volume(n - 1)
            assert m.volume == pytest.approx(wn * r ** (n - 1) * l, rel=1e-12)
            assert m.area == pytest.approx(
                (n - 1) * wn * r ** (n - 2) * l + 2.0 * wn * r ** (n - 1), rel=1e-12
            )

    def test_cone_ratio_closed_form(self):
        # at theta = pi/4 this equals the widely quoted 3(1+cos)/sin value
        m = domain_metrics(build_domain("cone", 3, l=1.0, theta=math.pi / 4))
        assert m.ratio == pytest.approx(7.242640687, rel=1e-9)
        for l, theta in [(1.0, 0.4), (2.5, 1.2), (4.0, math.asin(0.6))]:
            m = domain_metrics(build_domain("cone", 3, l=l, theta=theta))
            st, tt = math.sin(theta), math.tan(theta)
            assert m.volume == pytest.approx(math.pi / 3.0 * l**3 * tt**2, rel=1e-12)
            assert m.ratio == pytest.approx(3.0 * (1.0 + st) / (l * st), rel=1e-12)

    def test_double_cone_three_four_five(self):
        # l=9/5, r=16/5, theta=arcsin(4/5): slant heights 3 and 4 exactly
        m = domain_metrics(
            build_domain("double-cone", 3, l=1.8, r=3.2, theta=math.asin(0.8))
        )
        rho = 1.8 * (0.8 / 0.6)
        assert rho == pytest.approx(2.4, rel=1e-14)
        assert m.volume == pytest.approx(math.pi / 3.0 * rho**2 * 5.0, rel=1e-12)
        assert m.area == pytest.approx(math.pi * rho * (3.0 + 4.0), rel=1e-12)
        assert m.ratio == pytest.approx(1.75, rel=1e-12)

    def test_hourglass_closed_forms(self):
        a, b, c, d = 3.0, 2.0, 0.3, 0.6
        m = domain_metrics(build_domain("hourglass", 3, a=a, b=b, c=c, d=d))
        # both frustum halves share the same mean-square ordinate
        assert m.volume == pytest.approx(
            2.0 * math.pi / 3.0 * a * (b * b + b * d + d * d), rel=1e-12
        )
        s1 = math.hypot(c, b - d)
        s2 = math.hypot(a - c, b - d)
        assert m.area == pytest.approx(
            2.0 * math.pi * b * b + 2.0 * math.pi * (b + d) * (s1 + s2), rel=1e-12
        )


class TestInscribedBall:
    def test_cylinder(self):
        assert inscribed_ball_radius(build_domain("cylinder", 3, l=2.0, r=1.0)) == 1.0
        assert inscribed_ball_radius(build_domain("cylinder", 3, l=1.0, r=1.0)) == 0.5

    def test_cone_closed_form(self):
        spec = build_domain("cone", 3, l=1.0, theta=math.pi / 3)
        s = math.sin(math.pi / 3)
        assert inscribed_ball_radius(spec) == pytest.approx(s / (1.0 + s), rel=1e-14)

    def test_double_cone_against_closed_form(self):
        # incircle of the meridian kite touching both slant walls
        for l, r, theta in [(1.8, 3.2, math.asin(0.8)), (1.0, 1.0, math.pi / 3), (1.0, 3.0, 1.0)]:
            spec = build_domain("double-cone", 3, l=l, r=r, theta=theta)
            phi = math.atan((l / r) * math.tan(theta))
            expected = (l + r) * math.sin(theta) * math.sin(phi) / (
                math.sin(theta) + math.sin(phi)
            )
            assert inscribed_ball_radius(spec) == pytest.approx(expected, abs=1e-7)

    def test_hourglass_bulb_ball(self):
        # ball in a bulb, touching the face x=a and the outer slant wall:
        # radius 5.4 / (sqrt(9.25) + 1.4) for (a,b,c,d) = (3,2,0.3,0.6)
        spec = build_domain("hourglass", 3, a=3.0, b=2.0, c=0.3, d=0.6)
        expected = 5.4 / (math.sqrt(9.25) + 1.4)
        assert inscribed_ball_radius(spec) == pytest.approx(expected, abs=1e-7)


class TestFaberKrahn:
    def test_unit_cylinder_value(self):
        spec = build_domain("cylinder", 3, l=1.0, r=1.0)
        assert faber_krahn_bound(spec) == pytest.approx(3.0 * (4.0 / 3.0) ** (1.0 / 3.0), rel=1e-12)

    def test_bound_below_domain_ratio(self):
        # the ratio of the whole domain always sits above the ball bound
        for spec in [
            build_domain("cylinder", 3, l=1.0, r=1.0),
            build_domain("cone", 3, l=2.0, theta=0.7),
            build_domain("double-cone", 3, l=1.0, r=1.0, theta=math.pi / 3),
            build_domain("hourglass", 3, a=3.0, b=2.0, c=0.3, d=0.6),
        ]:
            assert faber_krahn_bound(spec) < domain_metrics(spec).ratio


class TestJsonRoundTrip:
    def test_round_trip_all_families(self):
        specs = [
            build_domain("cylinder", 5, l=2.0, r=0.5),
            build_domain("cone", 3, l=1.0, theta=0.5235987755982988),
            build_domain("double-cone", 3, l=1.8, r=3.2, theta=math.asin(0.8)),
            build_domain("hourglass", 3, a=3.0, b=2.0, c=0.3, d=0.6),
        ]
        for spec in specs:
            doc = domain_to_json(spec)
            again = domain_from_json(doc)
            assert again == spec

    def test_accepts_mapping(self):
        spec = domain_from_json({"family": "cylinder", "n": 3, "parameters": {"l": 1, "r": 1}})
        assert isinstance(spec, DomainSpec)
        assert spec.parameters == {"l": 1.0, "r": 1.0}

    def test_rejects_malformed(self):
        with pytest.raises(InvalidParamsError, match="family/n/parameters"):
            domain_from_json({"family": "cylinder", "n": 3})
        with pytest.raises(InvalidParamsError):
            domain_from_json({"family": "cylinder", "n": 3, "parameters": {"l": 1.0}})


class TestProfileHeight:
    def test_cylinder(self):
        spec = build_domain("cylinder", 3, l=2.0, r=0.7)
        assert profile_height(spec, 1.0) == 0.7
        assert profile_height(spec, 0.0) == 0.7
        assert profile_height(spec, 2.0) == 0.7
        assert profile_height(spec, -0.1) == 0.0
        assert profile_height(spec, 2.1) == 0.0

    def test_cone_and_double_cone(self):
        cone = build_domain("cone", 3, l=2.0, theta=math.pi / 4)
        assert profile_height(cone, -2.0) == pytest.approx(0.0, abs=1e-15)
        assert profile_height(cone, -1.0) == pytest.approx(1.0, rel=1e-15)
        assert profile_height(cone, 0.0) == pytest.approx(2.0, rel=1e-15)
        assert profile_height(cone, 0.5) == 0.0
        dc = build_domain("double-cone", 3, l=1.0, r=3.0, theta=math.pi / 3)
        apex = math.tan(math.pi / 3)
        assert profile_height(dc, 0.0) == pytest.approx(apex, rel=1e-15)
        assert profile_height(dc, 1.5) == pytest.approx(apex / 2.0, rel=1e-15)
        assert profile_height(dc, -0.5) == pytest.approx(apex / 2.0, rel=1e-15)
        assert profile_height(dc, 3.0) == pytest.approx(0.0, abs=1e-15)

    def test_hourglass_is_even_and_piecewise_linear(self):
        spec = build_domain("hourglass", 3, a=3.0, b=2.0, c=0.3, d=0.6)
        for x in (0.0, 0.15, 0.3, 1.0, 2.9, 3.0):
            assert profile_height(spec, x) == profile_height(spec, -x)
        assert profile_height(spec, 0.0) == 2.0
        assert profile_height(spec, 0.3) == pytest.approx(0.6, rel=1e-15)
        assert profile_height(spec, 3.0) == pytest.approx(2.0, rel=1e-15)
        assert profile_height(spec, 0.15) == pytest.approx(1.3, rel=1e-15)
        mid = 0.3 + (3.0 - 0.3) / 2.0
        assert profile_height(spec, mid) == pytest.approx(1.3, rel=1e-15)
        assert profile_height(spec, 3.5) == 0.0
