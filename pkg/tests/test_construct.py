"""Certificate construction pipelines and independent verification.

Oracles: every emitted certificate is re-verified from scratch through the
vanishing-order and coprimality path, the (gamma, weight) shapes are frozen,
and tampered certificates must be rejected.
"""

from fractions import Fraction

import pytest

from lelongplane.construct import (CERT_SHAPES, PotentialCertificate,
                                   construct_certificate_m3_9,
                                   construct_certificate_m3_high,
                                   make_certificate, verify_certificate)
from lelongplane.errors import PreconditionError
from lelongplane.exactpoly import (HomPoly, ProjPoint, evaluate,
                                   gcd_homogeneous, vanishing_order)
from lelongplane.instances import (case2_instance, case3_instance,
                                   case4_instance, conic6_instance,
                                   conic7_instance, figure_instance,
                                   generic12)


def check_shape(cert, expect_ratio=Fraction(3)):
    assert cert.verified
    shape = (int(cert.gamma_u), int(cert.total_weight))
    assert shape in CERT_SHAPES
    assert cert.total_weight / cert.gamma_u == expect_ratio
    assert gcd_homogeneous(cert.p, cert.q).degree == 0


def test_generic12_sextic_pair_certificate():
    inst = generic12(7)
    report = construct_certificate_m3_9(inst.point_set)
    assert report.outcome == "certificate"
    cert = report.certificate
    check_shape(cert)
    assert (int(cert.gamma_u), int(cert.total_weight)) == (6, 18)
    # all 12 points carry weight 2 (double points scaled by r)
    assert len(cert.points) == 12
    assert {w for _, w in cert.points} <= {Fraction(1, 1), Fraction(2, 1),
                                           Fraction(3, 1)}
    assert sum(w for _, w in cert.points) == 18
    # the independent verifier agrees
    assert verify_certificate(cert).verified


def test_conic6_certificate():
    inst = conic6_instance(3)
    assert inst.m_seq == (2, 6, 9)
    report = construct_certificate_m3_9(inst.point_set)
    assert report.outcome == "certificate"
    check_shape(report.certificate)


def test_conic7_quartic_certificate():
    inst = conic7_instance(1)
    assert inst.m_seq == (2, 7, 9)
    report = construct_certificate_m3_9(inst.point_set)
    assert report.outcome == "certificate"
    cert = report.certificate
    check_shape(cert)
    assert (int(cert.gamma_u), int(cert.total_weight)) == (4, 12)
    assert any("quartic" in step for step in report.branch_trace)


def test_figure_shape_certificate():
    inst = figure_instance("figure1", 2)
    assert inst.m_seq == (4, 7, 9)
    report = construct_certificate_m3_9(inst.point_set)
    assert report.outcome == "certificate"
    check_shape(report.certificate)


def test_m3_9_rejects_higher_m3():
    inst = case2_instance(5)
    with pytest.raises(PreconditionError):
        construct_certificate_m3_9(inst.point_set)


def test_case2_certificate():
    inst = case2_instance(5)
    assert inst.m_seq[2] == 10 and inst.m_seq[0] == 4
    report = construct_certificate_m3_high(inst.point_set)
    assert report.outcome == "certificate"
    check_shape(report.certificate)
    assert report.branch_trace[0] == "m3_10"


def test_case3_certificate():
    inst = case3_instance(4)
    assert inst.m_seq == (3, 7, 10)
    report = construct_certificate_m3_high(inst.point_set)
    assert report.outcome == "certificate"
    cert = report.certificate
    check_shape(cert)
    assert (int(cert.gamma_u), int(cert.total_weight)) == (4, 12)


def test_case4_certificate_weight13():
    inst = case4_instance(6)
    assert inst.m_seq == (4, 7, 11)
    report = construct_certificate_m3_high(inst.point_set, extra=inst.extra)
    assert report.outcome == "certificate"
    cert = report.certificate
    assert cert.verified
    assert cert.gamma_u == 4 and cert.total_weight == 13
    assert cert.total_weight / cert.gamma_u > 3
    assert verify_certificate(cert).verified


def test_m3_high_input_validation():
    inst = generic12(7)
    with pytest.raises(PreconditionError):
        construct_certificate_m3_high(inst.point_set)


def test_tampered_certificate_rejected():
    inst = conic7_instance(1)
    cert = construct_certificate_m3_9(inst.point_set).certificate
    # inflate one claimed weight
    pts = list(cert.points)
    x, w = pts[0]
    pts[0] = (x, w + 1)
    bad = PotentialCertificate(p=cert.p, q=cert.q, r=cert.r,
                               points=tuple(pts), gamma_u=cert.gamma_u,
                               case_tag=cert.case_tag, verified=True)
    assert not verify_certificate(bad).verified
    # break coprimality: q := p
    shared = PotentialCertificate(p=cert.p, q=cert.p, r=cert.r,
                                  points=cert.points, gamma_u=cert.gamma_u,
                                  case_tag=cert.case_tag, verified=True)
    rep = verify_certificate(shared)
    assert not rep.discrete and not rep.verified
    # wrong gamma
    off = PotentialCertificate(p=cert.p, q=cert.q, r=cert.r,
                               points=cert.points,
                               gamma_u=cert.gamma_u + 1,
                               case_tag=cert.case_tag, verified=True)
    assert not verify_certificate(off).verified


def test_make_certificate_rejects_shared_component():
    l = HomPoly.line(1, 2, 3)
    p = l * HomPoly.line(1, 0, 0)
    q = l * HomPoly.line(0, 1, 0)
    assert make_certificate(p, q, [], "engineered") is None
    with pytest.raises(PreconditionError):
        make_certificate(HomPoly.line(1, 0, 0), p, [], "engineered")


def test_make_certificate_engineered_pair():
    # X^2 and YZ meet exactly at (0:1:0) and (0:0:1), each with min order 1
    p = HomPoly.monomial((2, 0, 0))
    q = HomPoly.monomial((0, 1, 1))
    pts = [ProjPoint(Fraction(0), Fraction(1), Fraction(0)),
           ProjPoint(Fraction(0), Fraction(0), Fraction(1))]
    cert = make_certificate(p, q, pts, "engineered")
    assert cert is not None and cert.verified
    assert cert.total_weight == 2
    assert all(w == 1 for _, w in cert.points)


def test_sextic_pair_weights_match_orders():
    inst = generic12(19)
    report = construct_certificate_m3_9(inst.point_set)
    cert = report.certificate
    for x, w in cert.points:
        assert w == Fraction(min(vanishing_order(cert.p, x),
                                 vanishing_order(cert.q, x)), cert.r)
        assert evaluate(cert.p, x) == 0 and evaluate(cert.q, x) == 0


def test_determinism():
    a = construct_certificate_m3_9(generic12(7).point_set)
    b = construct_certificate_m3_9(generic12(7).point_set)
    assert a.certificate.p == b.certificate.p
    assert a.certificate.q == b.certificate.q
    assert a.branch_trace == b.branch_trace
