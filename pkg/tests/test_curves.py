"""Curve analysis and intersection theory.

Oracles: hand-computed multiplicities on classical local models (transverse
lines, tangent conic, cusp), the two independent multiplicity algorithms
cross-checked against each other on seeded random coprime pairs, and the
exact Bezout balance deg(p)*deg(q) = sum of multiplicities + residual.
"""

import math
import random
from fractions import Fraction

import pytest

from lelongplane.curves import (analyze_curve, bezout_table,
                                common_zeros_discrete, conic_rank,
                                cubic_is_irreducible, find_line_components,
                                has_complex_line_factor,
                                intersection_multiplicity, is_smooth,
                                rational_singular_points,
                                resultant_multiplicity)
from lelongplane.errors import PreconditionError
from lelongplane.exactpoly import (HomPoly, ProjPoint, gcd_homogeneous,
                                   monomials, vanishing_order)

ORIGIN = ProjPoint(Fraction(0), Fraction(0), Fraction(1))


def mono(exps, coeff=1):
    return HomPoly.monomial(exps, coeff)


def random_poly(rng, degree, span=5):
    while True:
        terms = {m: Fraction(rng.randint(-span, span))
                 for m in monomials(degree)}
        p = HomPoly(degree, terms)
        if not p.is_zero:
            return p


def test_conic_rank_oracles():
    assert conic_rank(mono((1, 0, 1)) - mono((0, 2, 0))) == 3  # XZ - Y^2
    assert conic_rank(mono((1, 1, 0))) == 2                    # XY
    assert conic_rank(mono((2, 0, 0))) == 1                    # X^2
    assert conic_rank(mono((2, 0, 0)) + mono((0, 2, 0))) == 2  # X^2 + Y^2
    with pytest.raises(PreconditionError):
        conic_rank(HomPoly.line(1, 0, 0))


def test_complex_line_factor_detection():
    # X^2 + Y^2 = (X+iY)(X-iY): no rational line, two complex ones
    p = mono((2, 0, 0)) + mono((0, 2, 0))
    assert has_complex_line_factor(p)
    lines, complete = find_line_components(p)
    assert lines == [] and complete is False
    # the irreducible conic has no line factor at all
    q = mono((1, 0, 1)) - mono((0, 2, 0))
    assert not has_complex_line_factor(q)


def test_cubic_irreducibility():
    # nodal cubic Y^2 Z - X^2 (X + Z): irreducible with a singular point
    nodal = mono((0, 2, 1)) - mono((3, 0, 0)) - mono((2, 0, 1))
    assert cubic_is_irreducible(nodal)
    # cuspidal cubic Y^2 Z - X^3
    cusp = mono((0, 2, 1)) - mono((3, 0, 0))
    assert cubic_is_irreducible(cusp)
    # conic times line is reducible
    conic = mono((1, 0, 1)) - mono((0, 2, 0))
    assert not cubic_is_irreducible(conic * HomPoly.line(1, 1, 1))
    # three lines
    assert not cubic_is_irreducible(HomPoly.line(1, 0, 0)
                                    * HomPoly.line(0, 1, 0)
                                    * HomPoly.line(0, 0, 1))


def test_find_line_components_multiplicity():
    l = HomPoly.line(1, -2, 1)
    conic = mono((1, 0, 1)) - mono((0, 2, 0))
    lines, complete = find_line_components(l * l * conic)
    assert complete
    assert sorted(x.monic().coeff_vector() for x in lines) == [
        l.monic().coeff_vector()] * 2


def test_smoothness_and_singular_points():
    fermat = mono((3, 0, 0)) + mono((0, 3, 0)) + mono((0, 0, 3))
    assert is_smooth(fermat)
    nodal = mono((0, 2, 1)) - mono((3, 0, 0)) - mono((2, 0, 1))
    assert not is_smooth(nodal)
    assert rational_singular_points(nodal) == [ORIGIN]
    cusp = mono((0, 2, 1)) - mono((3, 0, 0))
    assert rational_singular_points(cusp) == [ORIGIN]


def test_analyze_curve_bundle():
    nodal = mono((0, 2, 1)) - mono((3, 0, 0)) - mono((2, 0, 1))
    report = analyze_curve(nodal)
    assert report.is_geometrically_irreducible
    assert report.line_components == ()
    assert report.singular_points_over_q == (ORIGIN,)
    assert not report.smooth


def test_multiplicity_classical_models():
    x_axis = HomPoly.line(0, 1, 0)          # Y = 0
    y_axis = HomPoly.line(1, 0, 0)          # X = 0
    parabola = mono((0, 1, 1)) - mono((2, 0, 0))   # YZ = X^2
    cusp = mono((0, 2, 1)) - mono((3, 0, 0))       # Y^2 Z = X^3
    # transverse lines: 1
    assert intersection_multiplicity(x_axis, y_axis, ORIGIN) == 1
    # tangent line to a conic: 2
    assert intersection_multiplicity(x_axis, parabola, ORIGIN) == 2
    # transverse line through the conic: 1
    assert intersection_multiplicity(y_axis, parabola, ORIGIN) == 1
    # cuspidal tangent: 3; transverse line through the cusp: 2
    assert intersection_multiplicity(x_axis, cusp, ORIGIN) == 3
    assert intersection_multiplicity(y_axis, cusp, ORIGIN) == 2
    # two smooth conics with a common tangent, contact of order 2:
    # parametrizing YZ = X^2 by (t, t^2) turns YZ + X^2 into 2t^2
    conic2 = mono((0, 1, 1)) + mono((2, 0, 0))
    assert intersection_multiplicity(parabola, conic2, ORIGIN) == 2
    # contact of order 4: (t, t^2) turns YZ - X^2 - Y^2 into -t^4
    conic3 = mono((0, 1, 1)) - mono((2, 0, 0)) - mono((0, 2, 0))
    assert intersection_multiplicity(parabola, conic3, ORIGIN) == 4
    # a missed point gives 0
    off = ProjPoint(Fraction(5), Fraction(5), Fraction(1))
    assert intersection_multiplicity(x_axis, parabola, off) == 0


def test_multiplicity_shared_component_is_infinite():
    l = HomPoly.line(1, 1, -1)
    p = l * HomPoly.line(1, 0, 0)
    q = l * HomPoly.line(0, 1, 0)
    x = ProjPoint(Fraction(1, 2), Fraction(1, 2), Fraction(1))
    assert intersection_multiplicity(p, q, x) == math.inf
    assert not common_zeros_discrete(p, q)


def test_lower_bound_by_vanishing_orders():
    rng = random.Random(61)
    checked = 0
    while checked < 20:
        p = random_poly(rng, rng.randint(1, 3))
        q = random_poly(rng, rng.randint(1, 3))
        if gcd_homogeneous(p, q).degree != 0:
            continue
        records, _ = bezout_table(p, q)
        for rec in records:
            mu = rec.multiplicity
            assert mu >= (vanishing_order(p, rec.point)
                          * vanishing_order(q, rec.point))
            checked += 1


def test_oracle_equivalence_random():
    # the recursive local algorithm and the sheared-resultant oracle agree
    rng = random.Random(1234)
    pairs = 0
    while pairs < 30:
        p = random_poly(rng, rng.randint(1, 4))
        q = random_poly(rng, rng.randint(1, 4))
        if gcd_homogeneous(p, q).degree != 0:
            continue
        pairs += 1
        records, residual = bezout_table(p, q)
        assert residual >= 0
        total = sum(r.multiplicity for r in records)
        assert total + residual == p.degree * q.degree
        for rec in records:
            assert intersection_multiplicity(p, q, rec.point) \
                == rec.multiplicity
            assert resultant_multiplicity(p, q, rec.point) \
                == rec.multiplicity


def test_strict_resultant_mode_agrees():
    x_axis = HomPoly.line(0, 1, 0)
    cusp = mono((0, 2, 1)) - mono((3, 0, 0))
    assert resultant_multiplicity(x_axis, cusp, ORIGIN, strict=True) == 3


def test_bezout_engineered_grid():
    # three horizontal and three vertical lines: 9 simple rational points
    horiz = HomPoly.line(0, 1, 0) * HomPoly.line(0, 1, -1) \
        * HomPoly.line(0, 1, -2)
    vert = HomPoly.line(1, 0, 0) * HomPoly.line(1, 0, -1) \
        * HomPoly.line(1, 0, -2)
    records, residual = bezout_table(horiz, vert)
    assert residual == 0 and len(records) == 9
    assert all(r.multiplicity == 1 for r in records)
    pts = {r.point.coords for r in records}
    assert pts == {(Fraction(i), Fraction(j), Fraction(1))
                   for i in range(3) for j in range(3)}


def test_bezout_irrational_residual():
    # X^2 - 2Z^2 and Y: both intersections are irrational
    p = mono((2, 0, 0)) - mono((0, 0, 2), 2)
    q = HomPoly.line(0, 1, 0)
    records, residual = bezout_table(p, q)
    assert records == [] and residual == 2


def test_bezout_points_at_infinity():
    # parallel-looking affine lines meet at infinity, rationally
    p = HomPoly.line(1, 1, 0)
    q = HomPoly.line(1, 1, -1)
    records, residual = bezout_table(p, q)
    assert residual == 0 and len(records) == 1
    assert records[0].point == ProjPoint(Fraction(-1), Fraction(1),
                                         Fraction(0))


def test_bezout_rejects_shared_component():
    l = HomPoly.line(1, 2, 3)
    with pytest.raises(PreconditionError):
        bezout_table(l * HomPoly.line(1, 0, 0), l * HomPoly.line(0, 1, 0))
