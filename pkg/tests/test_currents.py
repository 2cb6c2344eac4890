"""Lelong numbers of line-arrangement currents and potential estimators.

Oracles: exact incidence sums on hand-built arrangements, a closed-form
ball-mass value for a single line through the center, numerical slopes
cross-checked against the exact weights they must approximate, and the
exact mass inequality with every term recomputed independently.
"""

from fractions import Fraction

import pytest

from lelongplane.construct import construct_certificate_m3_9
from lelongplane.currents import (ArrangementCurrent, estimate_growth,
                                  estimate_pole_weight, lelong_ball_mass,
                                  lelong_exact, mass_inequality_check,
                                  sharpness_example)
from lelongplane.errors import PreconditionError
from lelongplane.exactpoly import HomPoly, ProjPoint, evaluate
from lelongplane.instances import conic7_instance, generic12

ORIGIN = ProjPoint(Fraction(0), Fraction(0), Fraction(1))


def unit_current(lines):
    n = len(lines)
    return ArrangementCurrent(tuple((l, Fraction(1, n)) for l in lines))


def test_mass_and_validation():
    t = unit_current([HomPoly.line(1, 0, 0), HomPoly.line(0, 1, 0)])
    assert t.mass == 1
    with pytest.raises(PreconditionError):
        ArrangementCurrent(((HomPoly.line(1, 0, 0), Fraction(0)),))
    with pytest.raises(PreconditionError):
        ArrangementCurrent(((HomPoly.monomial((2, 0, 0)), Fraction(1)),))


def test_lelong_exact_incidence_sums():
    lines = [HomPoly.line(1, 0, 0), HomPoly.line(0, 1, 0),
             HomPoly.line(1, 1, -1)]
    t = unit_current(lines)
    # all three lines pass through the origin of the Z chart? X=0 and Y=0
    # do; X+Y-Z misses it
    assert lelong_exact(t, ORIGIN) == Fraction(2, 3)
    # a point on exactly one line
    on_one = ProjPoint(Fraction(2), Fraction(0), Fraction(1))
    assert lelong_exact(t, on_one) == Fraction(1, 3)
    off = ProjPoint(Fraction(5), Fraction(7), Fraction(1))
    assert lelong_exact(t, off) == 0


def test_ball_mass_single_line():
    # one line through the center: the full weight sits inside every ball
    t = ArrangementCurrent(((HomPoly.line(0, 1, 0), Fraction(1)),))
    assert lelong_ball_mass(t, ORIGIN, Fraction(1, 2)) == 1
    # a line at distance 1 contributes nothing to a radius-1/2 ball
    far = ArrangementCurrent(((HomPoly.line(0, 1, -1), Fraction(1)),))
    assert lelong_ball_mass(far, ORIGIN, Fraction(1, 2)) == 0


def test_ball_mass_monotone_and_bounded():
    lines = [HomPoly.line(1, 0, 0), HomPoly.line(0, 1, -1),
             HomPoly.line(1, -1, 3)]
    t = unit_current(lines)
    radii = [Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3)]
    vals = [lelong_ball_mass(t, ORIGIN, r) for r in radii]
    assert all(0 <= v <= t.mass for v in vals)
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    # ball mass dominates the exact Lelong number at the center
    assert vals[0] >= lelong_exact(t, ORIGIN)


def test_ball_mass_rejects_line_at_infinity():
    t = ArrangementCurrent(((HomPoly.line(0, 0, 1), Fraction(1)),))
    with pytest.raises(PreconditionError):
        lelong_ball_mass(t, ORIGIN, Fraction(1))


def test_pole_weight_estimate_matches_exact():
    inst = conic7_instance(1)
    cert = construct_certificate_m3_9(inst.point_set).certificate
    radii = [2.0 ** -k for k in range(8, 17)]
    for x, w in cert.points[:3]:
        est = estimate_pole_weight(cert, x, radii)
        assert est.exact == w
        assert abs(est.extrapolated - float(w)) < 0.05


def test_pole_weight_input_validation():
    inst = conic7_instance(1)
    cert = construct_certificate_m3_9(inst.point_set).certificate
    stranger = ProjPoint(Fraction(1000003), Fraction(17), Fraction(1))
    with pytest.raises(PreconditionError):
        estimate_pole_weight(cert, stranger, [0.1, 0.01, 0.001])
    x = cert.points[0][0]
    with pytest.raises(PreconditionError):
        estimate_pole_weight(cert, x, [0.1, 0.01])


def test_growth_estimate():
    inst = conic7_instance(1)
    cert = construct_certificate_m3_9(inst.point_set).certificate
    radii = [2.0 ** k for k in range(6, 13)]
    est = estimate_growth(cert, radii)
    assert est.claimed == cert.gamma_u
    assert abs(est.slope - float(cert.gamma_u)) < 0.1


def test_mass_inequality_exact():
    inst = generic12(7)
    cert = construct_certificate_m3_9(inst.point_set).certificate
    pts = [x for x, _ in cert.points[:3]]
    lines = [HomPoly.line(1, 0, -pts[0].coords[0]),
             HomPoly.line(0, 1, -pts[1].coords[1]),
             HomPoly.line(1, 1, -(pts[2].coords[0] + pts[2].coords[1]))]
    t = unit_current(lines)
    for line, p in zip(lines, pts):
        assert evaluate(line, p) == 0
    report = mass_inequality_check(t, cert)
    assert report.holds
    assert report.rhs == cert.gamma_u
    # the left side is the exact weighted sum of Lelong numbers
    assert report.lhs == sum(w * lelong_exact(t, x) for x, w in cert.points)
    assert report.lhs <= report.rhs


def test_mass_inequality_requires_unit_mass():
    inst = generic12(7)
    cert = construct_certificate_m3_9(inst.point_set).certificate
    heavy = ArrangementCurrent(((HomPoly.line(1, 0, 0), Fraction(2)),))
    with pytest.raises(PreconditionError):
        mass_inequality_check(heavy, cert)


def test_sharpness_example():
    report = sharpness_example(0)
    assert len(report.lines) == 6
    assert len(report.points) == 15
    assert report.all_values_one_third
    assert set(report.lelong_values) == {Fraction(1, 3)}
    assert report.rank_checks == 105
    assert report.all_ranks_full
    assert report.m_seq[2] == 12
