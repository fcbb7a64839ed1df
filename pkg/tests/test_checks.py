"""Tests for the certificate validators.

Solver results feeding the certificates are cached per module; reference
comparisons reuse the published five-digit optima where one is needed.
"""

import json
import math

import pytest

from rotcheeger.candidates import CandidateSet, RatioBreakdown
from rotcheeger.checks import (
    CertificateReport,
    classification_certificate,
    height_criterion,
    rolling_ball_check,
    t_sign_certificate,
)
from rotcheeger.domains import DomainSpec, build_domain
from rotcheeger.errors import InvalidParamsError
from rotcheeger.numerics import CheegerResult, cheeger
from rotcheeger.revolve import DelaunayArc, PiecewiseCurve, Segment, SphereArc


@pytest.fixture(scope="module")
def z11():
    return cheeger(build_domain("cylinder", 3, l=1.0, r=1.0))


@pytest.fixture(scope="module")
def z31():
    return cheeger(build_domain("cylinder", 3, l=3.0, r=1.0))


@pytest.fixture(scope="module")
def dcone():
    return cheeger(build_domain("double-cone", 3, l=1.0, r=1.0, theta=math.pi / 4))


@pytest.fixture(scope="module")
def cone30():
    return cheeger(build_domain("cone", 3, l=1.0, theta=math.pi / 6))


@pytest.fixture(scope="module")
def hourglass06():
    return cheeger(build_domain("hourglass", 3, a=3.0, b=2.0, c=0.3, d=0.6))


def _t_sign_of(result):
    cand = result.candidate
    return t_sign_certificate(
        cand.generatrix, result.h, result.domain.n, free_pieces=cand.free_pieces
    )


class TestCertificateReport:
    def test_pass_iff_residual_below_threshold(self, z11, hourglass06):
        good = _t_sign_of(z11)
        bad = _t_sign_of(hourglass06)
        for rep in (good, bad):
            assert rep.passed == (rep.max_residual <= rep.threshold)
        assert good.passed and not bad.passed

    def test_json_round_trip(self, z11):
        rep = _t_sign_of(z11)
        data = json.loads(json.dumps(rep.to_dict()))
        assert data["check"] == "t-sign"
        assert data["status"] == "pass"
        assert data["passed"] is True
        assert data["max_residual"] == rep.max_residual
        assert data["witness"]["pieces_sampled"] == 2

    def test_not_applicable_serializes_residual_as_null(self):
        rep = height_criterion(build_domain("cylinder", 3, l=1.0, r=1.0), 1.0)
        assert rep.status == "not-applicable"
        assert not rep.applicable and not rep.passed
        assert math.isnan(rep.max_residual)
        assert json.loads(json.dumps(rep.to_dict()))["max_residual"] is None


class TestTSignCertificate:
    def test_cylinder_optimum_passes_strictly(self, z11):
        rep = _t_sign_of(z11)
        assert rep.passed
        # the sampled conserved quantity must reproduce the arcs' stored
        # first integral: negative, constant, far below the threshold
        arcs = [p for p in z11.candidate.generatrix.pieces if isinstance(p, DelaunayArc)]
        assert rep.max_residual < -0.5
        assert rep.max_residual == pytest.approx(arcs[0].T, abs=1e-12)

    def test_all_convex_optima_pass(self, z31, dcone, cone30):
        for res in (z31, dcone, cone30):
            assert _t_sign_of(res).passed

    def test_sphere_caps_sit_on_the_zero_level(self, dcone):
        rep = _t_sign_of(dcone)
        assert rep.passed
        assert abs(rep.max_residual) < 1e-12

    def test_hourglass_optimum_fails_on_the_unduloid(self, hourglass06):
        rep = _t_sign_of(hourglass06)
        assert rep.status == "fail"
        assert rep.max_residual > 1e-8
        worst = hourglass06.candidate.generatrix.pieces[rep.witness["worst_piece"]]
        assert isinstance(worst, DelaunayArc)
        assert rep.max_residual == pytest.approx(worst.T, abs=1e-12)
        assert worst.T > 0.0

    def test_empty_selection_is_a_vacuous_pass(self):
        semi = PiecewiseCurve(n=3, pieces=(SphereArc(cx=0.0, r=1.0, phi0=math.pi, phi1=0.0),))
        rep = t_sign_certificate(semi, 3.0, 3, free_pieces=())
        assert rep.passed
        assert rep.max_residual == 0.0
        assert rep.witness["vacuous"] is True
        # with the default selection the ball's own arc also passes: the
        # quantity vanishes exactly at the axis endpoints and is negative
        # in between
        assert t_sign_certificate(semi, 3.0, 3).passed

    def test_reports_are_reproducible(self, hourglass06):
        assert _t_sign_of(hourglass06) == _t_sign_of(hourglass06)

    def test_rejects_bad_arguments(self, z11):
        curve = z11.candidate.generatrix
        with pytest.raises(InvalidParamsError):
            t_sign_certificate("curve", 1.0, 3)
        with pytest.raises(InvalidParamsError):
            t_sign_certificate(curve, -1.0, 3)
        with pytest.raises(InvalidParamsError):
            t_sign_certificate(curve, 1.0, 2)
        with pytest.raises(InvalidParamsError):
            t_sign_certificate(curve, 1.0, 3, free_pieces=(99,))


class TestHeightCriterion:
    def test_ring_domain_far_from_axis_passes(self):
        rect = PiecewiseCurve(n=3, pieces=(
            Segment(0.0, 2.0, 0.0, 3.0),
            Segment(0.0, 3.0, 1.0, 3.0),
            Segment(1.0, 3.0, 1.0, 2.0),
            Segment(1.0, 2.0, 0.0, 2.0),
        ))
        spec = DomainSpec(family="ring", n=3, parameters={}, generatrix=rect)
        rep = height_criterion(spec, 2.0)
        assert rep.passed
        assert rep.witness["min_height"] == pytest.approx(2.0)
        assert rep.witness["required_height"] == pytest.approx(1.0)
        # volume of the revolved rectangle: pi (3^2 - 2^2) * 1 = 5 pi
        want = (2.0 / 3.0) * (5.0 * math.pi / (4.0 * math.pi / 3.0)) ** (1.0 / 3.0)
        assert rep.witness["volume_sufficient_height"] == pytest.approx(want, rel=1e-12)
        assert rep.witness["volume_condition_holds"] is True

    @pytest.mark.parametrize(
        "family,params",
        [
            ("cylinder", dict(l=1.0, r=1.0)),
            ("hourglass", dict(a=3.0, b=2.0, c=0.3, d=0.6)),
        ],
    )
    def test_axis_touching_domains_are_not_applicable(self, family, params):
        rep = height_criterion(build_domain(family, 3, **params), 3.0)
        assert rep.status == "not-applicable"
        assert rep.witness["reason"] == "generatrix touches the axis"

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidParamsError):
            height_criterion("spec", 1.0)
        with pytest.raises(InvalidParamsError):
            height_criterion(build_domain("cylinder", 3, l=1.0, r=1.0), 0.0)


class TestRollingBallCheck:
    def test_wide_cone_counterexample(self):
        h = cheeger(build_domain("cone", 3, l=1.0, theta=1.45)).h
        rep = rolling_ball_check(1.0, 1.45, h)
        assert rep.status == "fail"
        assert rep.witness["ball_radius"] > rep.witness["inscribed_ball_radius"]
        assert rep.witness["counterexample_condition_holds"] is True

    def test_narrow_cone_ball_fits(self, cone30):
        rep = rolling_ball_check(1.0, math.pi / 6, cone30.h)
        assert rep.passed
        assert rep.witness["ball_radius"] == pytest.approx(0.2545, abs=1e-3)
        assert rep.witness["inscribed_ball_radius"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert rep.witness["counterexample_condition_holds"] is False

    def test_right_angle_cone_is_internally_consistent(self):
        h = cheeger(build_domain("cone", 3, l=1.0, theta=math.pi / 4)).h
        rep = rolling_ball_check(1.0, math.pi / 4, h)
        assert rep.witness["ball_radius"] > 0.0
        assert rep.witness["inscribed_ball_radius"] > 0.0
        assert rep.passed == (rep.max_residual <= 0.0)

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidParamsError):
            rolling_ball_check(0.0, 0.5, 1.0)
        with pytest.raises(InvalidParamsError):
            rolling_ball_check(1.0, math.pi / 2, 1.0)
        with pytest.raises(InvalidParamsError):
            rolling_ball_check(1.0, 0.5, math.inf)


class TestClassificationCertificate:
    def test_long_cylinder_all_nodoid(self, z31):
        rep = classification_certificate(z31)
        assert rep.passed
        assert rep.witness["classes"] == ["nodoid", "nodoid"]

    def test_double_cone_caps_and_middle(self, dcone):
        rep = classification_certificate(dcone)
        assert rep.passed
        classes = rep.witness["classes"]
        assert classes[0] == classes[-1] == "sphere"
        assert "nodoid" in classes
        assert set(classes) <= {"sphere", "nodoid"}

    def test_hourglass_unduloid_middle_is_allowed(self, hourglass06):
        rep = classification_certificate(hourglass06)
        assert rep.passed
        assert "unduloid" in rep.witness["classes"]
        assert "unduloid" in rep.witness["allowed_classes"]

    def test_cylinder_middle_reported_and_judged_by_family(self, hourglass06):
        # a degenerate profile piece (horizontal free segment) counts as a
        # cylinder: legitimate on the hourglass, a violation on convex
        # domains
        def fake_result(domain):
            curve = PiecewiseCurve(n=3, pieces=(
                Segment(-1.0, 0.0, -1.0, 0.5),
                Segment(-1.0, 0.5, 1.0, 0.5),
                Segment(1.0, 0.5, 1.0, 0.0),
            ))
            cand = CandidateSet(
                domain=domain,
                H=1.0,
                structure="synthetic",
                glue={},
                generatrix=curve,
                free_pieces=(1,),
                breakdown=RatioBreakdown(areas={}, volumes={}, perimeter=1.0, volume=1.0),
            )
            return CheegerResult(domain=domain, h=2.0, H_opt=1.0, candidate=cand, diagnostics={})

        on_hourglass = classification_certificate(fake_result(hourglass06.domain))
        assert on_hourglass.passed
        assert on_hourglass.witness["classes"] == ["cylinder"]

        convex = build_domain("cylinder", 3, l=1.0, r=1.0)
        on_convex = classification_certificate(fake_result(convex))
        assert on_convex.status == "fail"
        assert on_convex.witness["violations"] == [1]

    def test_rejects_non_result(self):
        with pytest.raises(InvalidParamsError):
            classification_certificate("result")
