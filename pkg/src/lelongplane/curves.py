"""Geometric properties of plane curves over Q.

Line-component detection and (ir)reducibility are decided by an elimination
procedure (substitute a parametrized line, then Groebner bases / univariate
gcds on the coefficient system), so the answers are certified over the
complex numbers even though all data is rational.

Local intersection numbers use the classical recursive reduction in affine
coordinates; a sheared-resultant computation provides an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import PreconditionError
from .exactpoly import (HomPoly, ProjPoint, evaluate, exact_divide, from_sympy,
                        gcd_homogeneous, partial_derivatives)
from .linalg import frac_rref

_A, _B = sympy.symbols("a b")
_S = sympy.Symbol("s")
_SX, _SY, _SZ = sympy.symbols("X Y Z")


@dataclass(frozen=True)
class IntersectionRecord:
    point: ProjPoint
    multiplicity: int


@dataclass(frozen=True)
class CurveAnalysis:
    poly: HomPoly
    is_geometrically_irreducible: bool | None
    line_components: tuple[HomPoly, ...]
    singular_points_over_q: tuple[ProjPoint, ...]
    smooth: bool


def conic_rank(p: HomPoly) -> int:
    """Rank of the symmetric matrix of a nonzero conic.

    3 = irreducible, 2 = two distinct lines (over C), 1 = a double line.
    """
    if p.degree != 2:
        raise PreconditionError("conic_rank requires a degree-2 form")
    if p.is_zero:
        raise PreconditionError("conic_rank requires a nonzero form")
    t = p.terms
    half = Fraction(1, 2)

    def c(e):
        return t.get(e, Fraction(0))

    m = [
        [c((2, 0, 0)), half * c((1, 1, 0)), half * c((1, 0, 1))],
        [half * c((1, 1, 0)), c((0, 2, 0)), half * c((0, 1, 1))],
        [half * c((1, 0, 1)), half * c((0, 1, 1)), c((0, 0, 2))],
    ]
    r, _, _ = frac_rref(m)
    return r


def _line_substitution_coeffs(p: HomPoly):
    """Coefficient polynomials in (a, b) of p(X, Y, -aX - bY).

    The line aX + bY + Z divides p iff all of them vanish at (a, b).
    """
    d = p.degree
    coeffs = [sympy.Integer(0)] * (d + 1)  # index m: coeff of X^m Y^(d-m)
    for (i, j, k), c in p.terms.items():
        cc = sympy.Rational(c.numerator, c.denominator) * (-1) ** k
        for l in range(k + 1):
            m = i + l
            coeffs[m] += cc * math.comb(k, l) * _A ** l * _B ** (k - l)
    return coeffs


def has_complex_line_factor(p: HomPoly) -> bool:
    """True iff some line over C divides p (p nonzero, degree >= 1)."""
    if p.is_zero or p.degree < 1:
        raise PreconditionError("needs a nonzero form of positive degree")
    # lines aX + bY + Z
    eqs = [sympy.expand(e) for e in _line_substitution_coeffs(p)]
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return True
    gb = sympy.groebner(eqs, _A, _B, order="lex")
    if 1 not in gb.exprs and -1 not in gb.exprs:
        return True
    # lines aX + Y: substitute Y = -aX, collect coeff polys in a
    d = p.degree
    coeffs = [sympy.Integer(0)] * (d + 1)  # index m: coeff of X^m Z^(d-m)
    for (i, j, k), c in p.terms.items():
        cc = sympy.Rational(c.numerator, c.denominator) * (-1) ** j
        coeffs[i + j] += cc * _A ** j
    coeffs = [sympy.expand(e) for e in coeffs]
    nonzero = [e for e in coeffs if e != 0]
    if not nonzero:
        return True
    g = nonzero[0]
    for e in nonzero[1:]:
        g = sympy.gcd(g, e)
    if sympy.degree(g, _A) >= 1:
        return True
    # the single remaining line X = 0
    return all(e[0] >= 1 for e in p.terms)


def find_line_components(p: HomPoly) -> tuple[list[HomPoly], bool]:
    """All rational line factors (with multiplicity) and a completeness flag.

    The flag is True when the elimination test certifies that no further
    line factor exists over C after the rational ones are divided out.
    """
    if not 1 <= p.degree <= 6:
        raise PreconditionError("degree must be between 1 and 6")
    if p.is_zero:
        raise PreconditionError("zero polynomial")
    _, factors = sympy.factor_list(p.to_sympy(), _SX, _SY, _SZ)
    lines: list[HomPoly] = []
    residual = p
    for fac, mult in factors:
        hp = from_sympy(fac)
        if hp.degree == 1:
            hp = hp.monic()
            for _ in range(mult):
                lines.append(hp)
                residual = exact_divide(residual, hp)
    lines.sort(key=lambda l: tuple(l.coeff_vector()))
    if residual.degree == 0:
        return lines, True
    return lines, not has_complex_line_factor(residual)


def cubic_is_irreducible(p: HomPoly) -> bool:
    """A cubic is irreducible over C iff it has no line component over C."""
    if p.degree != 3:
        raise PreconditionError("cubic_is_irreducible requires degree 3")
    if p.is_zero:
        raise PreconditionError("zero polynomial")
    return not has_complex_line_factor(p)


def is_smooth(p: HomPoly) -> bool:
    """True iff the partials have no common projective zero over C."""
    if p.degree < 1:
        raise PreconditionError("needs positive degree")
    parts = [q.to_sympy() for q in partial_derivatives(p)]
    # chart Z = 1
    eqs = [sympy.expand(q.subs(_SZ, 1)) for q in parts]
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return False
    gb = sympy.groebner(eqs, _SX, _SY, order="lex")
    if 1 not in gb.exprs and -1 not in gb.exprs:
        return False
    # chart Y = 1, Z = 0
    eqs = [sympy.expand(q.subs({_SZ: 0, _SY: 1})) for q in parts]
    nonzero = [e for e in eqs if e != 0]
    if not nonzero:
        return False
    g = nonzero[0]
    for e in nonzero[1:]:
        g = sympy.gcd(g, e)
    if sympy.degree(g, _SX) >= 1:
        return False
    # the point (1:0:0)
    one = ProjPoint(1, 0, 0)
    if all(evaluate(q, one) == 0 for q in partial_derivatives(p)):
        return False
    return True


def rational_singular_points(p: HomPoly) -> list[ProjPoint]:
    """Rational common zeros of the partial derivatives.

    When every pair of partials shares a component (the singular locus
    contains a curve) the finite search does not apply and [] is returned;
    callers must not read that as smoothness.
    """
    px, py, pz = partial_derivatives(p)
    pairs = [(px, py, pz), (px, pz, py), (py, pz, px)]
    for f, g, h in pairs:
        if f.is_zero or g.is_zero:
            continue
        if gcd_homogeneous(f, g).degree == 0:
            records, _ = bezout_table(f, g)
            return sorted((r.point for r in records
                           if evaluate(h, r.point) == 0),
                          key=lambda q: q.coords)
    return []


def analyze_curve(p: HomPoly) -> CurveAnalysis:
    if p.is_zero or p.degree < 1:
        raise PreconditionError("needs a nonzero form of positive degree")
    lines, complete = find_line_components(p)
    smooth = is_smooth(p)
    if smooth:
        irr: bool | None = True
    elif p.degree == 1:
        irr = True
    elif p.degree == 2:
        irr = conic_rank(p) == 3
    elif p.degree == 3:
        irr = cubic_is_irreducible(p)
    elif lines:
        irr = False
    elif complete:
        irr = None  # no line factor, but higher-degree splits are undecided
    else:
        irr = False
    sing = [] if smooth else rational_singular_points(p)
    return CurveAnalysis(poly=p, is_geometrically_irreducible=irr,
                         line_components=tuple(lines),
                         singular_points_over_q=tuple(sing), smooth=smooth)


# ---------------------------------------------------------------------------
# Local intersection numbers: recursive reduction in affine coordinates.
# Bivariate polynomials are dicts {(i, j): Fraction} in local coordinates.


def _xpart(f):
    return {i: c for (i, j), c in f.items() if j == 0}


def _ydiv(f):
    return {(i, j - 1): c for (i, j), c in f.items()}


def _to_int_local(f):
    """Scale a local Fraction dict to coprime integer coefficients."""
    if not f:
        return {}
    lcm = math.lcm(*(c.denominator for c in f.values()))
    vals = {k: int(c * lcm) for k, c in f.items()}
    content = math.gcd(*vals.values())
    return {k: v // content for k, v in vals.items()}


def _local_mu(f, g):
    """Intersection number of two local bivariate integer polynomials at
    the origin. Cross-multiplied reductions with content division keep the
    arithmetic in small integers; terminates because the homogeneous inputs
    were coprime.
    """
    if not f or not g:
        return math.inf
    if f.get((0, 0), 0) != 0 or g.get((0, 0), 0) != 0:
        return 0
    f0, g0 = _xpart(f), _xpart(g)
    if not f0 and not g0:
        return math.inf  # both divisible by the second variable
    if not f0:
        return min(g0) + _local_mu(_ydiv(f), g)
    if not g0:
        return min(f0) + _local_mu(f, _ydiv(g))
    r, s = max(f0), max(g0)
    if r > s:
        return _local_mu(g, f)
    shift = s - r
    a, b = f0[r], g0[s]
    g_new = {k: a * v for k, v in g.items()}
    for (i, j), c in f.items():
        key = (i + shift, j)
        g_new[key] = g_new.get(key, 0) - b * c
    g_new = {k: v for k, v in g_new.items() if v != 0}
    if g_new:
        content = math.gcd(*g_new.values())
        if content > 1:
            g_new = {k: v // content for k, v in g_new.items()}
    return _local_mu(f, g_new)


_factor_cache: dict = {}


def _rational_factors(p: HomPoly):
    """Irreducible rational factors with multiplicities, primitive integer
    coefficients; cached because verification asks repeatedly."""
    key = (p.degree, tuple(sorted(p.terms.items())))
    if key not in _factor_cache:
        prim = p.primitive_int()
        bits = max(abs(c.numerator).bit_length() for c in prim.terms.values())
        if bits > 192:
            # factoring with coefficients this large can stall in the
            # integer factorization stage; the direct recursion is cheaper
            out = [(prim, 1)]
        else:
            _, factors = sympy.factor_list(prim.to_sympy(), _SX, _SY, _SZ)
            out = [(from_sympy(fac).primitive_int(), mult)
                   for fac, mult in factors]
        if len(_factor_cache) > 256:
            _factor_cache.clear()
        _factor_cache[key] = out
    return _factor_cache[key]


def _local_mu_at(p: HomPoly, q: HomPoly, x: ProjPoint):
    chart = x.chart()
    _, fp = p.local_expansion(x, chart)
    _, fq = q.local_expansion(x, chart)
    return _local_mu(_to_int_local(fp), _to_int_local(fq))


def intersection_multiplicity(p: HomPoly, q: HomPoly, x: ProjPoint):
    """The local intersection number mu_x(p, q).

    0 iff x is not a common zero; math.inf iff a common component passes
    through x. Additivity over rational factors keeps the reductions on
    small factors instead of large products.
    """
    if p.is_zero or q.is_zero:
        other = q if p.is_zero else p
        if other.is_zero or evaluate(other, x) == 0:
            return math.inf
        return 0
    if evaluate(p, x) != 0 or evaluate(q, x) != 0:
        return 0
    if p.degree >= 1 and q.degree >= 1:
        g = gcd_homogeneous(p, q)
        if g.degree >= 1:
            if evaluate(g, x) == 0:
                return math.inf
            p = exact_divide(p, g)
            q = exact_divide(q, g)
    if p.degree == 0 or q.degree == 0:
        return 0
    total = 0
    for pf, pe in _rational_factors(p):
        if evaluate(pf, x) != 0:
            continue
        for qf, qe in _rational_factors(q):
            if evaluate(qf, x) != 0:
                continue
            total += pe * qe * _local_mu_at(pf, qf, x)
    return total


# ---------------------------------------------------------------------------
# Sheared-resultant machinery: enumeration of rational common zeros and the
# independent multiplicity oracle.


def _frame_sub(p: HomPoly, s: int) -> HomPoly:
    """Substitute Z -> s*X + s^2*Y + Z (a determinant-1 change of frame)."""
    if s == 0:
        return p
    terms: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, k), coef in p.terms.items():
        for a in range(k + 1):
            for b in range(k - a + 1):
                c = k - a - b
                w = math.comb(k, a) * math.comb(k - a, b)
                key = (i + a, j + b, c)
                val = coef * w * s ** (a + 2 * b)
                terms[key] = terms.get(key, Fraction(0)) + val
    return HomPoly(p.degree, terms)


def _frame_point_back(x: ProjPoint, s: int) -> ProjPoint:
    """Map a zero of the transformed curves back to original coordinates."""
    a, b, c = x.coords
    return ProjPoint(a, b, s * a + s * s * b + c)


def _frame_point_fwd(x: ProjPoint, s: int) -> ProjPoint:
    a, b, c = x.coords
    return ProjPoint(a, b, c - s * a - s * s * b)


def _choose_frame(p: HomPoly, q: HomPoly) -> int:
    """Smallest s >= 0 such that after the frame change neither curve
    contains the reference line Z = 0. Each line of either curve rules out
    at most two values of s, so the scan is short."""
    d = p.degree + q.degree
    for s in range(2 * d + 1):
        ok = True
        for f in (p, q):
            vals = [evaluate(f, ProjPoint(t, 1, s * t + s * s))
                    for t in range(f.degree + 1)]
            vals.append(evaluate(f, ProjPoint(1, 0, s)))
            if all(v == 0 for v in vals):
                ok = False
                break
        if ok:
            return s
    raise PreconditionError("could not find a valid frame")


def _shear(p: HomPoly, t: int) -> HomPoly:
    """Substitute X -> X + t*Y."""
    if t == 0:
        return p
    terms: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, k), c in p.terms.items():
        for l in range(i + 1):
            key = (i - l, j + l, k)
            val = c * math.comb(i, l) * t ** l
            terms[key] = terms.get(key, Fraction(0)) + val
    return HomPoly(p.degree, terms)


def _resultant_xz(p: HomPoly, q: HomPoly):
    """Resultant with respect to Y, as a binary form dict {(i, k): Fraction}."""
    res = sympy.resultant(p.to_sympy(), q.to_sympy(), _SY)
    res = sympy.expand(res)
    if res == 0:
        return {}
    poly = sympy.Poly(res, _SX, _SZ, domain="QQ")
    return {(int(i), int(k)): Fraction(c.p, c.q) for (i, k), c in poly.terms()}


def _binary_root_multiplicity(binform, u: Fraction, v: Fraction) -> int:
    """Multiplicity of the linear factor v*X - u*Z in a binary form."""
    if not binform:
        raise PreconditionError("zero binary form")
    if v == 0:
        return min(k for (_, k) in binform)
    x0 = u / v
    deg = max(i + k for (i, k) in binform)
    coeffs = [Fraction(0)] * (deg + 1)
    for (i, _), c in binform.items():
        coeffs[i] += c
    mult = 0
    while coeffs:
        val = Fraction(0)
        for c in reversed(coeffs):
            val = val * x0 + c
        if val != 0:
            return mult
        # synthetic division by (X - x0)
        new = [Fraction(0)] * (len(coeffs) - 1)
        b = Fraction(0)
        for i in range(len(coeffs) - 1, 0, -1):
            b = coeffs[i] + b * x0
            new[i - 1] = b
        coeffs = new
        mult += 1
    return mult


def _valid_shears(p: HomPoly, q: HomPoly, count: int):
    """First `count` shear parameters whose projection center lies on
    neither curve."""
    out = []
    t = 0
    while len(out) < count:
        pt = ProjPoint(t, 1, 0)
        if evaluate(p, pt) != 0 and evaluate(q, pt) != 0:
            out.append(t)
        t += 1
        if t > count + p.degree + q.degree + 4:
            break
    if len(out) < count:
        raise PreconditionError("could not find enough valid shears")
    return out


def resultant_multiplicity(p: HomPoly, q: HomPoly, x: ProjPoint,
                           strict: bool = False) -> int:
    """Independent oracle for mu_x(p, q) via sheared resultants.

    For each shear t the multiplicity of the projection line of x in
    Res_Y(p_t, q_t) is an upper bound for mu_x, exact for all but finitely
    many t. With strict=True the full guaranteed number of shears
    (deg p * deg q) is taken and the minimum is exact; otherwise the scan
    stops once two distinct shears agree on the running minimum.
    """
    if evaluate(p, x) != 0 or evaluate(q, x) != 0:
        return 0
    if gcd_homogeneous(p, q).degree >= 1:
        raise PreconditionError("common component: oracle needs coprime forms")
    frame = _choose_frame(p, q)
    p, q = _frame_sub(p, frame), _frame_sub(q, frame)
    x = _frame_point_fwd(x, frame)
    m, n = p.degree, q.degree
    total = max(1, m * n)
    best = None
    hits = 0
    x0, y0, z0 = x.coords
    checked = 0
    t = 0
    while True:
        center = ProjPoint(t, 1, 0)
        if evaluate(p, center) != 0 and evaluate(q, center) != 0:
            r = _resultant_xz(_shear(p, t), _shear(q, t))
            mult = _binary_root_multiplicity(r, x0 - t * y0, z0)
            if best is None or mult < best:
                best, hits = mult, 1
            elif mult == best:
                hits += 1
            checked += 1
            if not strict and hits >= 2:
                return best
            if checked >= total:
                return best
        t += 1


def common_zeros_discrete(p: HomPoly, q: HomPoly) -> bool:
    """True iff p and q share no component (finitely many common zeros)."""
    if p.is_zero or q.is_zero:
        raise PreconditionError("needs nonzero forms")
    return gcd_homogeneous(p, q).degree == 0


def _univariate_rational_roots(expr, var) -> list[Fraction]:
    poly = sympy.Poly(expr, var, domain="QQ")
    if poly.is_zero:
        raise PreconditionError("identically zero restriction")
    return [Fraction(r.p, r.q) for r in poly.ground_roots()]


def bezout_table(p: HomPoly, q: HomPoly):
    """All rational common zeros with exact multiplicities, plus the residual
    deg(p)*deg(q) - sum(multiplicities) accounting for non-rational zeros."""
    if p.is_zero or q.is_zero:
        raise PreconditionError("needs nonzero forms")
    if gcd_homogeneous(p, q).degree >= 1:
        raise PreconditionError("infinite intersection")
    m, n = p.degree, q.degree
    if m == 0 or n == 0:
        return [], 0
    frame = _choose_frame(p, q)
    pf, qf = _frame_sub(p, frame), _frame_sub(q, frame)
    t = _valid_shears(pf, qf, 1)[0]
    pt, qt = _shear(pf, t), _shear(qf, t)
    res = _resultant_xz(pt, qt)
    if not res:
        raise PreconditionError("vanishing resultant for coprime forms")
    # projection roots: finite X/Z values plus possibly the line Z = 0
    points: set[ProjPoint] = set()
    z_exp = min(k for (_, k) in res)
    deg = max(i + k for (i, k) in res)
    uni = sympy.Integer(0)
    for (i, k), c in res.items():
        uni += sympy.Rational(c.numerator, c.denominator) * _S ** i
    finite_roots = _univariate_rational_roots(uni, _S)

    def fiber_points(restrict):
        """Common rational zeros of p_t, q_t on a parametrized line."""
        pu = sympy.expand(pt.to_sympy().subs(restrict))
        qu = sympy.expand(qt.to_sympy().subs(restrict))
        if pu == 0 or qu == 0:
            return []
        g = sympy.gcd(pu, qu)
        if sympy.degree(g, _SY) < 1:
            return []
        return _univariate_rational_roots(g, _SY)

    for u in finite_roots:
        ur = sympy.Rational(u.numerator, u.denominator)
        for s in fiber_points({_SX: ur, _SZ: 1}):
            # the sheared point (u, s, 1) maps back through X -> X + tY,
            # then through the frame change
            points.add(_frame_point_back(ProjPoint(u + t * s, s, 1), frame))
    if z_exp >= 1:
        for s in fiber_points({_SX: 1, _SZ: 0}):
            points.add(_frame_point_back(ProjPoint(1 + t * s, s, 0), frame))
    records = []
    for x in sorted(points, key=lambda pp: pp.coords):
        if evaluate(p, x) != 0 or evaluate(q, x) != 0:
            continue
        mu = intersection_multiplicity(p, q, x)
        records.append(IntersectionRecord(point=x, multiplicity=int(mu)))
    residual = m * n - sum(r.multiplicity for r in records)
    if residual < 0:
        raise PreconditionError("multiplicity bookkeeping error")
    return records, residual
