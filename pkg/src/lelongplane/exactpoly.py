"""Exact arithmetic over Q: projective points and homogeneous polynomials in X, Y, Z.

All values are immutable after construction and all operations are pure.
The ground field is the rationals (stdlib ``Fraction``); the fixed monomial
order used everywhere for canonical forms is graded lexicographic with
X > Y > Z.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import sympy

from .errors import ParseError, PreconditionError

Rational = Fraction

_SX, _SY, _SZ = sympy.symbols("X Y Z")


def fraction_to_str(q: Fraction) -> str:
    """Serialize as "num/den", omitting the denominator when it is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fraction_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {s!r}") from exc


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples of the given total degree in grlex order (X > Y > Z)."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return tuple(out)


def monomial_count(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


class ProjPoint:
    """A point of the projective plane with exact rational coordinates.

    The stored representative is canonical: the last nonzero coordinate is 1,
    so equality and hashing are component-wise.
    """

    __slots__ = ("coords",)

    def __init__(self, a, b, c):
        coords = (Fraction(a), Fraction(b), Fraction(c))
        if all(x == 0 for x in coords):
            raise PreconditionError("projective point cannot be (0,0,0)")
        pivot = coords[2] if coords[2] != 0 else (coords[1] if coords[1] != 0 else coords[0])
        object.__setattr__(self, "coords", tuple(x / pivot for x in coords))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("ProjPoint is immutable")

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "ProjPoint(%s)" % ":".join(fraction_to_str(c) for c in self.coords)

    def chart(self) -> int:
        """Index of the largest coordinate in absolute value (ties: latest)."""
        best, best_abs = 0, abs(self.coords[0])
        for i in (1, 2):
            if abs(self.coords[i]) >= best_abs:
                best, best_abs = i, abs(self.coords[i])
        return best

    def affine(self, chart: int) -> tuple[Fraction, Fraction]:
        """Coordinates of the point in the affine chart where ``chart`` is 1."""
        if self.coords[chart] == 0:
            raise PreconditionError("point at infinity of the requested chart")
        others = [i for i in range(3) if i != chart]
        return tuple(self.coords[i] / self.coords[chart] for i in others)


class HomPoly:
    """Homogeneous polynomial in X, Y, Z with exact rational coefficients.

    The zero polynomial carries an explicit degree tag so it stays inside a
    fixed graded piece. No zero coefficients are stored.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[int, int, int], Fraction]):
        if degree < 0:
            raise PreconditionError("degree must be non-negative")
        clean = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            i, j, k = exps
            if i < 0 or j < 0 or k < 0 or i + j + k != degree:
                raise PreconditionError(
                    f"exponent triple {exps} does not match degree {degree}")
            clean[(i, j, k)] = coeff
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("HomPoly is immutable")

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree, {})

    @classmethod
    def monomial(cls, exps: tuple[int, int, int], coeff=1) -> "HomPoly":
        return cls(sum(exps), {exps: Fraction(coeff)})

    @classmethod
    def line(cls, a, b, c) -> "HomPoly":
        return cls(1, {(1, 0, 0): Fraction(a), (0, 1, 0): Fraction(b),
                       (0, 0, 1): Fraction(c)})

    @classmethod
    def from_coeff_vector(cls, degree: int, vec: Iterable[Fraction]) -> "HomPoly":
        mons = monomials(degree)
        vec = list(vec)
        if len(vec) != len(mons):
            raise PreconditionError("coefficient vector length mismatch")
        return cls(degree, dict(zip(mons, vec)))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff_vector(self) -> list[Fraction]:
        return [self.terms.get(m, Fraction(0)) for m in monomials(self.degree)]

    def leading_coeff(self) -> Fraction:
        for m in monomials(self.degree):
            if m in self.terms:
                return self.terms[m]
        raise PreconditionError("zero polynomial has no leading coefficient")

    def monic(self) -> "HomPoly":
        lc = self.leading_coeff()
        return HomPoly(self.degree, {m: c / lc for m, c in self.terms.items()})

    def primitive_int(self) -> "HomPoly":
        """Scale to coprime integer coefficients with positive leading one."""
        if self.is_zero:
            return self
        denoms = math.lcm(*(c.denominator for c in self.terms.values()))
        nums = [c.numerator * denoms // c.denominator for c in self.terms.values()]
        g = math.gcd(*nums)
        if self.leading_coeff() < 0:
            g = -g
        return HomPoly(self.degree,
                       {m: c * denoms / g for m, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, HomPoly) and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if self.degree != other.degree:
            raise PreconditionError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return HomPoly(self.degree, terms)

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.degree, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            terms: dict[tuple[int, int, int], Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    terms[m] = terms.get(m, Fraction(0)) + c1 * c2
            return HomPoly(self.degree + other.degree, terms)
        return HomPoly(self.degree,
                       {m: c * Fraction(other) for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if self.is_zero:
            return f"HomPoly(0; deg {self.degree})"
        parts = []
        for m in monomials(self.degree):
            if m in self.terms:
                mono = "".join(v * e for v, e in zip("XYZ", m))
                parts.append(f"{fraction_to_str(self.terms[m])}*{mono or '1'}")
        return "HomPoly(" + " + ".join(parts) + ")"

    def evaluate_coords(self, a, b, c):
        """Value at arbitrary (not necessarily normalized) coordinates."""
        total = Fraction(0) if isinstance(a, Fraction) else 0
        for (i, j, k), coeff in self.terms.items():
            total = total + coeff * a ** i * b ** j * c ** k
        return total

    def dehomogenize(self, chart: int) -> dict[tuple[int, int], Fraction]:
        """Set the chart variable to 1; keys are exponents of the remaining
        two variables in (X, Y, Z) order."""
        others = [i for i in range(3) if i != chart]
        out: dict[tuple[int, int], Fraction] = {}
        for exps, coeff in self.terms.items():
            key = (exps[others[0]], exps[others[1]])
            out[key] = out.get(key, Fraction(0)) + coeff
        return {k: v for k, v in out.items() if v != 0}

    def local_expansion(self, x: ProjPoint, chart: int | None = None
                        ) -> tuple[int, dict[tuple[int, int], Fraction]]:
        """Dehomogenize at the chart of x and translate x to the origin.

        Returns (chart, bivariate terms). The minimal total degree of the
        result is the vanishing order of the polynomial at x.
        """
        if chart is None:
            chart = x.chart()
        a, b = x.affine(chart)
        out: dict[tuple[int, int], Fraction] = {}
        for (e1, e2), coeff in self.dehomogenize(chart).items():
            # (a+s)^e1 (b+t)^e2 expanded exactly
            for i in range(e1 + 1):
                ca = coeff * math.comb(e1, i) * a ** (e1 - i)
                for j in range(e2 + 1):
                    key = (i, j)
                    val = ca * math.comb(e2, j) * b ** (e2 - j)
                    out[key] = out.get(key, Fraction(0)) + val
        return chart, {k: v for k, v in out.items() if v != 0}

    def to_sympy(self):
        expr = sympy.Integer(0)
        for (i, j, k), c in self.terms.items():
            expr += sympy.Rational(c.numerator, c.denominator) * _SX**i * _SY**j * _SZ**k
        return expr


def from_sympy(expr, degree: int | None = None) -> HomPoly:
    poly = sympy.Poly(sympy.expand(expr), _SX, _SY, _SZ, domain="QQ")
    terms = {}
    deg = 0
    for exps, coeff in poly.terms():
        deg = max(deg, sum(exps))
        terms[tuple(int(e) for e in exps)] = Fraction(coeff.p, coeff.q)
    if degree is None:
        degree = deg
    return HomPoly(degree, terms)


def evaluate(p: HomPoly, x: ProjPoint) -> Fraction:
    """Value of p at the canonical representative of x."""
    return p.evaluate_coords(*x.coords)


def partial_derivatives(p: HomPoly) -> tuple[HomPoly, HomPoly, HomPoly]:
    """The three formal partials; Euler's identity holds exactly."""
    if p.degree == 0:
        raise PreconditionError("constant polynomial")
    outs = []
    for var in range(3):
        terms = {}
        for exps, coeff in p.terms.items():
            if exps[var] == 0:
                continue
            new = list(exps)
            new[var] -= 1
            terms[tuple(new)] = coeff * exps[var]
        outs.append(HomPoly(p.degree - 1, terms))
    return tuple(outs)


def vanishing_order(p: HomPoly, x: ProjPoint):
    """Least total order of a nonvanishing iterated partial at x.

    Returns math.inf iff p is the zero polynomial.
    """
    if p.is_zero:
        return math.inf
    _, local = p.local_expansion(x)
    if not local:  # cannot happen for a nonzero form
        return math.inf
    return min(i + j for (i, j) in local)


def exact_divide(p: HomPoly, q: HomPoly) -> HomPoly | None:
    """p / q when the division is exact, else None."""
    if q.is_zero:
        raise PreconditionError("division by the zero polynomial")
    if p.is_zero:
        return HomPoly.zero(max(p.degree - q.degree, 0))
    if p.degree < q.degree:
        return None
    quo, rem = sympy.div(p.to_sympy(), q.to_sympy(), _SX, _SY, _SZ)
    if sympy.expand(rem) != 0:
        return None
    return from_sympy(quo, p.degree - q.degree)


def divides(q: HomPoly, p: HomPoly) -> bool:
    return exact_divide(p, q) is not None


def gcd_homogeneous(p: HomPoly, q: HomPoly) -> HomPoly:
    """A gcd, normalized to leading coefficient 1 in grlex order.

    Constant 1 iff p and q share no common component.
    """
    if p.is_zero and q.is_zero:
        raise PreconditionError("gcd of two zero polynomials")
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    g = sympy.gcd(p.to_sympy(), q.to_sympy())
    return from_sympy(g).monic()
