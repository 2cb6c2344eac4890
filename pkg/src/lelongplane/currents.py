"""Weighted line-arrangement currents and potential estimators.

Lelong numbers of arrangement currents are exact sums of incident weights;
Euclidean ball masses have the closed form sum w * max(0, r^2 - d^2) / r^2
over the lines at distance d. Pole weights and growth rates of certified
potentials u = (1/2r) log(|P|^2 + |Q|^2) are estimated numerically from
exact local expansions, so the samples stay cancellation-free down to very
small radii.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .config import PointSet, m_sequence
from .construct import PotentialCertificate
from .errors import PreconditionError
from .exactpoly import (HomPoly, ProjPoint, evaluate, monomial_count,
                        monomials)
from .linalg import int_rank


@dataclass(frozen=True)
class ArrangementCurrent:
    lines: tuple[tuple[HomPoly, Fraction], ...]

    def __post_init__(self):
        for line, w in self.lines:
            if line.degree != 1 or line.is_zero:
                raise PreconditionError("arrangement entries must be lines")
            if w <= 0:
                raise PreconditionError("weights must be positive")

    @property
    def mass(self) -> Fraction:
        return sum((w for _, w in self.lines), Fraction(0))


def lelong_exact(t: ArrangementCurrent, x: ProjPoint) -> Fraction:
    """Sum of the weights of the lines through x."""
    return sum((w for line, w in t.lines if evaluate(line, x) == 0),
               Fraction(0))


def _line_coeffs(line: HomPoly):
    return (line.terms.get((1, 0, 0), Fraction(0)),
            line.terms.get((0, 1, 0), Fraction(0)),
            line.terms.get((0, 0, 1), Fraction(0)))


def lelong_ball_mass(t: ArrangementCurrent, x, r):
    """Normalized mass of the arrangement in the Euclidean ball B(x, r) of
    the chart Z = 1: sum of w * max(0, r^2 - d^2) / r^2 with d the distance
    from x to each affine line trace. Exact when x and r are rational."""
    if isinstance(x, ProjPoint):
        if x.coords[2] == 0:
            raise PreconditionError("center must be affine in the chart Z=1")
        x0, y0 = x.affine(2)
    else:
        x0, y0 = x
    r2 = r * r
    total = 0
    for line, w in t.lines:
        a, b, c = _line_coeffs(line)
        if a == 0 and b == 0:
            raise PreconditionError("arrangement contains the line at "
                                    "infinity of the chart Z=1")
        d2 = (a * x0 + b * y0 + c) ** 2 / (a * a + b * b)
        excess = r2 - d2
        if excess > 0:
            total = total + w * excess / r2
    return total


@dataclass(frozen=True)
class LelongEstimate:
    point: ProjPoint
    radii: tuple[float, ...]
    values: tuple[float, ...]
    extrapolated: float
    exact: Fraction | None


@dataclass(frozen=True)
class GrowthEstimate:
    radii: tuple[float, ...]
    max_values: tuple[float, ...]
    slope: float
    claimed: Fraction


def _fit_slope(xs, ys) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    den = sum((a - mx) ** 2 for a in xs)
    return num / den


def _directions(seed: int, count: int = 32, phases: int = 8):
    """Deterministic unit directions in C^2, each with a ring of phases."""
    rng = random.Random(seed)
    dirs = []
    for _ in range(count):
        v = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(2)]
        norm = math.sqrt(sum(abs(c) ** 2 for c in v))
        dirs.append((v[0] / norm, v[1] / norm))
    out = []
    for v0, v1 in dirs:
        for k in range(phases):
            ph = cmath.exp(2j * math.pi * k / phases)
            out.append((ph * v0, ph * v1))
    return out


def _scaled_local_floats(cert: PotentialCertificate, x: ProjPoint):
    """Local expansions of both forms at x with a shared normalization so
    float evaluation cannot overflow; the dropped log-scale only shifts u
    by a constant and leaves every slope unchanged."""
    chart = x.chart()
    _, fp = cert.p.local_expansion(x, chart)
    _, fq = cert.q.local_expansion(x, chart)
    scale = max(abs(c) for c in
                itertools.chain(fp.values(), fq.values()))
    fpf = {k: float(c / scale) for k, c in fp.items()}
    fqf = {k: float(c / scale) for k, c in fq.items()}
    return fpf, fqf


def _eval_local(f, du: complex, dv: complex) -> complex:
    return sum(c * du ** i * dv ** j for (i, j), c in sorted(f.items()))


def estimate_pole_weight(cert: PotentialCertificate, x: ProjPoint, radii,
                         seed: int = 0) -> LelongEstimate:
    """Least-squares slope of max u on shrinking circles around x against
    log radius; for a pole of weight w the slope converges to w."""
    if not cert.verified:
        raise PreconditionError("certificate must be verified")
    claimed = None
    for pt, w in cert.points:
        if pt.coords == x.coords:
            claimed = w
            break
    if claimed is None:
        raise PreconditionError("point is not listed in the certificate")
    radii = sorted((float(r) for r in radii), reverse=True)
    if len(radii) < 3:
        raise PreconditionError("need at least 3 radii")
    fp, fq = _scaled_local_floats(cert, x)
    dirs = _directions(seed)
    values = []
    for r in radii:
        best = -math.inf
        for v0, v1 in dirs:
            du, dv = r * v0, r * v1
            m2 = abs(_eval_local(fp, du, dv)) ** 2 + \
                abs(_eval_local(fq, du, dv)) ** 2
            if m2 > 0:
                best = max(best, math.log(m2) / (2 * cert.r))
        values.append(best)
    slope = _fit_slope([math.log(r) for r in radii], values)
    return LelongEstimate(point=x, radii=tuple(radii), values=tuple(values),
                          extrapolated=slope, exact=claimed)


def estimate_growth(cert: PotentialCertificate, radii,
                    seed: int = 0) -> GrowthEstimate:
    """Slope of max u on spheres ||z|| = R against log R; converges to
    gamma = degree / r."""
    if not cert.verified:
        raise PreconditionError("certificate must be verified")
    radii = sorted(float(r) for r in radii)
    if len(radii) < 3:
        raise PreconditionError("need at least 3 radii")
    p_aff = cert.p.dehomogenize(2)
    q_aff = cert.q.dehomogenize(2)
    scale = max(abs(c) for c in
                itertools.chain(p_aff.values(), q_aff.values()))
    fp = {k: float(c / scale) for k, c in p_aff.items()}
    fq = {k: float(c / scale) for k, c in q_aff.items()}
    dirs = _directions(seed)
    values = []
    for big_r in radii:
        best = -math.inf
        for v0, v1 in dirs:
            z0, z1 = big_r * v0, big_r * v1
            m2 = abs(_eval_local(fp, z0, z1)) ** 2 + \
                abs(_eval_local(fq, z0, z1)) ** 2
            if m2 > 0:
                best = max(best, math.log(m2) / (2 * cert.r))
        values.append(best)
    slope = _fit_slope([math.log(r) for r in radii], values)
    return GrowthEstimate(radii=tuple(radii), max_values=tuple(values),
                          slope=slope, claimed=cert.gamma_u)


@dataclass(frozen=True)
class InequalityReport:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    terms: tuple[tuple[ProjPoint, Fraction, Fraction], ...]


def mass_inequality_check(t: ArrangementCurrent,
                          cert: PotentialCertificate) -> InequalityReport:
    """Exact check of sum over certificate points of weight * nu(T, x)
    against gamma, for a unit-mass arrangement current."""
    if t.mass != 1:
        raise PreconditionError("arrangement must have unit mass")
    if not cert.verified:
        raise PreconditionError("certificate must be verified")
    terms = []
    lhs = Fraction(0)
    for x, w in cert.points:
        nu = lelong_exact(t, x)
        terms.append((x, w, nu))
        lhs += w * nu
    return InequalityReport(lhs=lhs, rhs=cert.gamma_u,
                            holds=lhs <= cert.gamma_u, terms=tuple(terms))


@dataclass(frozen=True)
class SharpnessReport:
    lines: tuple[HomPoly, ...]
    points: tuple[ProjPoint, ...]
    lelong_values: tuple[Fraction, ...]
    all_values_one_third: bool
    rank_checks: int
    all_ranks_full: bool
    m_seq: tuple[int, int, int]


def _random_line(rng) -> HomPoly:
    while True:
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        if a != 0 or b != 0:
            return HomPoly.line(a, b, c).monic()


def sharpness_example(seed: int, budget: int = 100) -> SharpnessReport:
    """Six generic rational lines and their 15 pairwise intersections.

    Certifies: the normalized arrangement has Lelong number exactly 1/3 at
    every intersection point, and no cubic passes through any 13 of the 15
    points (all 105 evaluation matrices have full rank 10), so the level
    set cannot sit inside a cubic plus two points.
    """
    rng = random.Random(seed)
    for _ in range(budget):
        lines = [_random_line(rng) for _ in range(6)]
        if len({tuple(l.coeff_vector()) for l in lines}) != 6:
            continue
        pts = []
        ok = True
        for l1, l2 in itertools.combinations(lines, 2):
            a = _line_coeffs(l1)
            b = _line_coeffs(l2)
            cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0])
            if all(c == 0 for c in cross):
                ok = False
                break
            pts.append(ProjPoint(*cross))
        if not ok or len({p.coords for p in pts}) != 15:
            continue  # a concurrence or parallel pair: resample
        t = ArrangementCurrent(tuple((l, Fraction(1, 6)) for l in lines))
        values = tuple(lelong_exact(t, p) for p in pts)
        ncols = monomial_count(3)
        checks = 0
        full = True
        rows = []
        for p in pts:
            a, b, c = p.coords
            vals = [Fraction(a) ** i * Fraction(b) ** j * Fraction(c) ** k
                    for i, j, k in monomials(3)]
            lcm = math.lcm(*(v.denominator for v in vals))
            rows.append([int(v * lcm) for v in vals])
        for combo in itertools.combinations(range(15), 13):
            checks += 1
            if int_rank([rows[i] for i in combo]) != ncols:
                full = False
        ms = m_sequence(PointSet(tuple(pts)))
        return SharpnessReport(
            lines=tuple(lines), points=tuple(pts), lelong_values=values,
            all_values_one_third=all(v == Fraction(1, 3) for v in values),
            rank_checks=checks, all_ranks_full=full, m_seq=ms.as_tuple())
    raise PreconditionError("could not generate a generic arrangement "
                            "within the budget")
