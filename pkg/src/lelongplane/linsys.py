"""Linear systems of plane curves with base-point multiplicity conditions.

A condition of order m at a point imposes the vanishing of all partial
derivatives of total order below m, written in the affine chart where the
point's largest coordinate is 1 so the rows are scale-free. Ranks and kernel
bases are exact over the rationals and canonicalized for determinism.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, UnsupportedInstanceError
from .exactpoly import (HomPoly, ProjPoint, evaluate, gcd_homogeneous,
                        monomial_count, monomials, vanishing_order)
from .linalg import frac_rref, nullspace, rank, solve_exact


@dataclass(frozen=True)
class VanishingCondition:
    point: ProjPoint
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise PreconditionError("condition order must be at least 1")

    @property
    def row_count(self) -> int:
        return self.order * (self.order + 1) // 2


@dataclass(frozen=True)
class LinearSystem:
    degree: int
    conditions: tuple[VanishingCondition, ...]
    matrix_rank: int
    kernel_basis: tuple[HomPoly, ...]

    @property
    def dim(self) -> int:
        return monomial_count(self.degree) - self.matrix_rank


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def condition_rows(degree: int, cond: VanishingCondition):
    """Constraint rows for one vanishing condition, in the chart where the
    point's largest coordinate is 1."""
    chart = cond.point.chart()
    coords = cond.point.coords
    scale = coords[chart]
    u0, v0 = [coords[i] / scale for i in range(3) if i != chart]
    mons = monomials(degree)
    rows = []
    for total in range(cond.order):
        for a in range(total + 1):
            b = total - a
            row = []
            for exps in mons:
                rest = [exps[i] for i in range(3) if i != chart]
                alpha, beta = rest
                if alpha < a or beta < b:
                    row.append(Fraction(0))
                    continue
                val = Fraction(_falling(alpha, a) * _falling(beta, b))
                val *= u0 ** (alpha - a) * v0 ** (beta - b)
                row.append(val)
            rows.append(row)
    return rows


def _merge_conditions(conditions):
    merged: dict[tuple, VanishingCondition] = {}
    order = []
    for cond in conditions:
        key = cond.point.coords
        if key in merged:
            prev = merged[key]
            if prev.order != cond.order:
                warnings.warn(
                    "duplicate point with conflicting orders; using the max",
                    stacklevel=3)
            if cond.order > prev.order:
                merged[key] = cond
        else:
            merged[key] = cond
            order.append(key)
    return [merged[k] for k in order]


def build_system(degree: int, conditions) -> LinearSystem:
    """Exact rank and canonical kernel basis of the constraint matrix."""
    if not 1 <= degree <= 12:
        raise PreconditionError("degree must be between 1 and 12")
    conds = _merge_conditions(conditions)
    rows = []
    for cond in conds:
        rows.extend(condition_rows(degree, cond))
    ncols = monomial_count(degree)
    if rows:
        matrix_rank = rank(rows)
        kernel = nullspace(rows, ncols)
    else:
        matrix_rank = 0
        kernel = nullspace([], ncols)
    basis = tuple(HomPoly.from_coeff_vector(degree, v) for v in kernel)
    return LinearSystem(degree=degree, conditions=tuple(conds),
                        matrix_rank=matrix_rank, kernel_basis=basis)


def satisfies(poly: HomPoly, cond: VanishingCondition) -> bool:
    """Independent re-check of one condition via local vanishing order."""
    return vanishing_order(poly, cond.point) >= cond.order


def linearly_independent(f: HomPoly, g: HomPoly) -> bool:
    if f.degree != g.degree:
        raise PreconditionError("degree mismatch")
    return rank([f.coeff_vector(), g.coeff_vector()]) == 2


@dataclass(frozen=True)
class PairFailure:
    """Names the divisibility pattern that blocked every selection move."""
    basis_pattern: tuple[tuple[int, ...], ...]  # per basis element: indices
    sum_pattern: tuple[tuple[int, int, tuple[int, ...]], ...]
    message: str


def independent_pair(system: LinearSystem, forbidden_factors):
    """Two independent kernel members with no forbidden factor.

    Moves, in order: direct scan of the basis; pairwise sums of basis
    elements. Returns ((P, Q), trace) or (None, PairFailure).
    """
    if system.dim < 2:
        raise PreconditionError("system dimension below 2")
    from .exactpoly import divides

    def blockers(p: HomPoly):
        return tuple(i for i, f in enumerate(forbidden_factors)
                     if divides(f, p))

    basis = list(system.kernel_basis)
    basis_pattern = tuple(blockers(b) for b in basis)
    clean = [b for b, pat in zip(basis, basis_pattern) if not pat]
    if len(clean) >= 2:
        return (clean[0], clean[1]), ["direct"]
    candidates = list(clean)
    trace = []
    sum_pattern = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = basis[i] + basis[j]
            pat = blockers(s)
            sum_pattern.append((i, j, pat))
            if not pat:
                candidates.append(s)
                trace.append(f"sum({i},{j})")
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            if linearly_independent(candidates[a], candidates[b]):
                moves = ["direct"] if clean else []
                return (candidates[a], candidates[b]), moves + trace
    return None, PairFailure(
        basis_pattern=basis_pattern, sum_pattern=tuple(sum_pattern),
        message="no move produced two independent factor-free members")


def pencil_member(f: HomPoly, g: HomPoly, h: HomPoly):
    """The unique (alpha, beta) with h = alpha*f + beta*g, or None."""
    if f.degree != g.degree or f.degree != h.degree:
        raise PreconditionError("degree mismatch")
    if not linearly_independent(f, g):
        raise PreconditionError("pencil generators are dependent")
    fv, gv, hv = f.coeff_vector(), g.coeff_vector(), h.coeff_vector()
    rows = [[a, b] for a, b in zip(fv, gv)]
    sol = solve_exact(rows, hv)
    if sol is None:
        return None
    return sol[0], sol[1]


@dataclass(frozen=True)
class CayleyBacharachReport:
    points: tuple[ProjPoint, ...]
    per_point: tuple[bool, ...]  # omitting point i: dim 2 and basis hits i
    passed: bool


def cayley_bacharach_check(c1: HomPoly, c2: HomPoly) -> CayleyBacharachReport:
    """For two cubics meeting in 9 distinct rational points: every cubic
    through 8 of them contains the 9th."""
    if c1.degree != 3 or c2.degree != 3:
        raise PreconditionError("both inputs must be cubics")
    if gcd_homogeneous(c1, c2).degree >= 1:
        raise PreconditionError("cubics share a component")
    from .curves import bezout_table
    records, residual = bezout_table(c1, c2)
    if residual != 0 or len(records) != 9 or any(
            r.multiplicity != 1 for r in records):
        raise UnsupportedInstanceError(
            "intersection is not 9 distinct rational points")
    pts = tuple(r.point for r in records)
    per_point = []
    for omit in range(9):
        conds = [VanishingCondition(p, 1) for k, p in enumerate(pts)
                 if k != omit]
        sys8 = build_system(3, conds)
        ok = sys8.dim == 2 and all(
            evaluate(b, pts[omit]) == 0 for b in sys8.kernel_basis)
        per_point.append(ok)
    return CayleyBacharachReport(points=pts, per_point=tuple(per_point),
                                 passed=all(per_point))
