"""Seeded generators for the named 12-point configurations.

Every generator certifies its output exactly: the m-sequence is recomputed
from scratch and any advertised incidence (points on a conic, a 4-point
line, the realized line structures) is checked before the instance is
returned. Generation is deterministic in the seed; degenerate draws are
resampled within a bounded budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .config import (SHAPE_3CONCURRENT_PLUS2, SHAPE_3CONCURRENT_PLUS2_SPLIT,
                     SHAPE_5LINES_CAP2, SHAPE_DOUBLE_STAR, IncidenceStructure,
                     PointSet, Realization, m_sequence, realize_structure)
from .curves import conic_rank
from .errors import PreconditionError
from .exactpoly import HomPoly, ProjPoint, evaluate, partial_derivatives
from .linsys import VanishingCondition, build_system


@dataclass(frozen=True)
class Instance:
    """A generated configuration with its certified invariants."""
    kind: str
    seed: int
    point_set: PointSet
    m_seq: tuple[int, int, int]
    lines: tuple[HomPoly, ...] = ()
    extra: ProjPoint | None = None


INSTANCE_KINDS = ("generic12", "figure1", "figure2", "figure3", "figure4",
                  "figure5", "case2", "case3", "case4", "example6lines")

_BUDGET = 200


def _random_point(rng) -> ProjPoint:
    # small heights keep interpolated curve coefficients small, which
    # dominates the cost of every exact computation downstream
    return ProjPoint(Fraction(rng.randint(-30, 30), rng.randint(1, 12)),
                     Fraction(rng.randint(-30, 30), rng.randint(1, 12)),
                     Fraction(1))


def _distinct_points(rng, count):
    pts = []
    seen = set()
    while len(pts) < count:
        p = _random_point(rng)
        if p.coords not in seen:
            seen.add(p.coords)
            pts.append(p)
    return pts


def _irreducible_conic_through(points) -> HomPoly | None:
    sys2 = build_system(2, [VanishingCondition(x, 1) for x in points])
    for b in sys2.kernel_basis:
        if conic_rank(b) == 3:
            return b
    return None


def random_conic(rng) -> tuple[HomPoly, ProjPoint]:
    """A random irreducible conic together with a rational point on it."""
    for _ in range(_BUDGET):
        base = _distinct_points(rng, 5)
        conic = _irreducible_conic_through(base)
        if conic is not None:
            return conic, base[0]
    raise PreconditionError("could not sample an irreducible conic")


def second_intersection(conic: HomPoly, p0: ProjPoint, d: ProjPoint):
    """The residual intersection of the chord from p0 in direction d.

    For a quadratic form q with q(p0) = 0, the line p0 + s*d meets the conic
    again at s = -grad q(p0).d / q(d); returns None for tangent or
    degenerate directions.
    """
    qd = conic.evaluate_coords(*d.coords)
    if qd == 0:
        return None
    grads = partial_derivatives(conic)
    b = sum(evaluate(g, p0) * dc for g, dc in zip(grads, d.coords))
    s = -b / qd
    if s == 0:
        return None
    coords = tuple(pc + s * dc for pc, dc in zip(p0.coords, d.coords))
    if all(c == 0 for c in coords):
        return None
    return ProjPoint(*coords)


def points_on_conic(conic: HomPoly, p0: ProjPoint, rng, count: int):
    """count distinct rational points on the conic, not including p0."""
    out = []
    seen = {p0.coords}
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > _BUDGET * count:
            raise PreconditionError("conic point sampling budget exhausted")
        p = second_intersection(conic, p0, _random_point(rng))
        if p is not None and p.coords not in seen:
            seen.add(p.coords)
            out.append(p)
    return out


def _line_through(a: ProjPoint, b: ProjPoint) -> HomPoly:
    u, v = a.coords, b.coords
    return HomPoly.line(u[1] * v[2] - u[2] * v[1],
                        u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0])


def _points_on_line(line: HomPoly, rng, count: int, avoid=()):
    a = line.terms.get((1, 0, 0), Fraction(0))
    b = line.terms.get((0, 1, 0), Fraction(0))
    c = line.terms.get((0, 0, 1), Fraction(0))
    out = []
    seen = {p.coords for p in avoid}
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > _BUDGET * count:
            raise PreconditionError("line point sampling budget exhausted")
        t = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        if b != 0:
            p = ProjPoint(t, (-c - a * t) / b, Fraction(1))
        elif a != 0:
            p = ProjPoint((-c - b * t) / a, t, Fraction(1))
        else:
            raise PreconditionError("degenerate line")
        if p.coords not in seen:
            seen.add(p.coords)
            out.append(p)
    return out


def _certified(kind, seed, points, expect, lines=(), extra=None):
    s = PointSet(tuple(points))
    ms = m_sequence(s)
    if ms.as_tuple() != expect:
        return None
    return Instance(kind=kind, seed=seed, point_set=s,
                    m_seq=ms.as_tuple(), lines=tuple(lines), extra=extra)


def generic12(seed: int) -> Instance:
    """12 random points with certified m-sequence (2, 5, 9)."""
    rng = random.Random(seed)
    for _ in range(_BUDGET):
        inst = _certified("generic12", seed, _distinct_points(rng, 12),
                          (2, 5, 9))
        if inst is not None:
            return inst
    raise PreconditionError("generic sampling budget exhausted")


def conic6_instance(seed: int) -> Instance:
    """Six points on an irreducible conic plus six generic points;
    m-sequence (2, 6, 9)."""
    rng = random.Random(seed)
    for _ in range(_BUDGET):
        conic, p0 = random_conic(rng)
        on_conic = [p0] + points_on_conic(conic, p0, rng, 5)
        free = _distinct_points(rng, 6)
        inst = _certified("conic6", seed, on_conic + free, (2, 6, 9),
                          lines=())
        if inst is not None:
            return inst
    raise PreconditionError("conic6 sampling budget exhausted")


def conic7_instance(seed: int) -> Instance:
    """Seven points on an irreducible conic plus five generic points;
    m-sequence (2, 7, 9)."""
    rng = random.Random(seed)
    for _ in range(_BUDGET):
        conic, p0 = random_conic(rng)
        on_conic = [p0] + points_on_conic(conic, p0, rng, 6)
        free = _distinct_points(rng, 5)
        inst = _certified("conic7", seed, on_conic + free, (2, 7, 9))
        if inst is not None:
            return inst
    raise PreconditionError("conic7 sampling budget exhausted")


_FIGURE_SHAPES: dict[str, tuple[IncidenceStructure, tuple[int, int, int]]] = {
    # five 4-point lines, pairwise meeting in distinct points, cap 2
    "figure1": (SHAPE_5LINES_CAP2, (4, 7, 9)),
    # same incidence class; the kind is kept separate because downstream
    # constructions drop different label triples
    "figure2": (SHAPE_5LINES_CAP2, (4, 7, 9)),
    # three lines concurrent at label 1 plus two more through label 11
    "figure3": (SHAPE_3CONCURRENT_PLUS2, (4, 7, 10)),
    # two concurrence points (labels 1 and 2) sharing a line
    "figure4": (SHAPE_3CONCURRENT_PLUS2_SPLIT, (4, 7, 10)),
    # three lines through label 1 and three through label 11
    "figure5": (SHAPE_DOUBLE_STAR, (4, 7, 10)),
}


def figure_instance(kind: str, seed: int) -> Instance:
    """A rational realization of one of the named line structures, with the
    realized 4-point lines and the certified m-sequence."""
    if kind not in _FIGURE_SHAPES:
        raise PreconditionError(f"unknown figure kind: {kind}")
    shape, expect = _FIGURE_SHAPES[kind]
    for attempt in range(40):
        result = realize_structure(shape, seed * 1009 + attempt)
        if not isinstance(result, Realization):
            continue
        inst = _certified(kind, seed, result.point_set.points, expect,
                          lines=result.lines)
        if inst is not None:
            return inst
    raise PreconditionError(f"could not realize {kind} within the budget")


def case2_instance(seed: int) -> Instance:
    """A unique 4-point line, six points on an irreducible conic, and two
    free points; m-sequence (4, 6, 10)."""
    rng = random.Random(seed)
    for _ in range(_BUDGET):
        conic, p0 = random_conic(rng)
        a, b = _distinct_points(rng, 2)
        line = _line_through(a, b)
        if evaluate(line, p0) == 0:
            continue
        on_line = [a, b] + _points_on_line(line, rng, 2, avoid=(a, b))
        on_conic = [p0] + points_on_conic(conic, p0, rng, 5)
        if any(evaluate(line, p) == 0 for p in on_conic):
            continue
        free = _distinct_points(rng, 2)
        pts = on_line + on_conic + free
        if len({p.coords for p in pts}) != 12:
            continue
        inst = _certified("case2", seed, pts, (4, 6, 10), lines=(line,))
        if inst is not None:
            return inst
    raise PreconditionError("case2 sampling budget exhausted")


def case3_instance(seed: int) -> Instance:
    """Seven points on an irreducible conic; of the other five, exactly
    three are collinear; m-sequence (3, 7, 10)."""
    rng = random.Random(seed)
    for _ in range(_BUDGET):
        conic, p0 = random_conic(rng)
        on_conic = [p0] + points_on_conic(conic, p0, rng, 6)
        x8, x9 = _distinct_points(rng, 2)
        line = _line_through(x8, x9)
        if any(evaluate(line, p) == 0 for p in on_conic):
            continue
        (x12,) = _points_on_line(line, rng, 1, avoid=(x8, x9))
        x10, x11 = _distinct_points(rng, 2)
        pts = on_conic + [x8, x9, x10, x11, x12]
        if len({p.coords for p in pts}) != 12:
            continue
        inst = _certified("case3", seed, pts, (3, 7, 10), lines=(line,))
        if inst is not None:
            return inst
    raise PreconditionError("case3 sampling budget exhausted")


def case4_instance(seed: int) -> Instance:
    """Seven points on an irreducible conic, four on a line, one point off
    both, and an extra point whose join with the off point misses the rest
    of the set; m-sequence (4, 7, 11)."""
    rng = random.Random(seed)
    for _ in range(_BUDGET):
        conic, p0 = random_conic(rng)
        on_conic = [p0] + points_on_conic(conic, p0, rng, 6)
        a, b = _distinct_points(rng, 2)
        line = _line_through(a, b)
        if evaluate(line, p0) == 0:
            continue
        on_line = [a, b] + _points_on_line(line, rng, 2, avoid=(a, b))
        if any(evaluate(line, p) == 0 for p in on_conic):
            continue
        (x12,) = _distinct_points(rng, 1)
        if evaluate(line, x12) == 0 or \
                conic.evaluate_coords(*x12.coords) == 0:
            continue
        pts = on_conic + on_line + [x12]
        if len({p.coords for p in pts}) != 12:
            continue
        extra = None
        for _ in range(_BUDGET):
            cand = _random_point(rng)
            if cand.coords in {p.coords for p in pts}:
                continue
            if evaluate(line, cand) == 0 or \
                    conic.evaluate_coords(*cand.coords) == 0:
                continue
            join = _line_through(cand, x12)
            if any(evaluate(join, p) == 0 for p in pts[:-1]):
                continue
            extra = cand
            break
        if extra is None:
            continue
        inst = _certified("case4", seed, pts, (4, 7, 11), lines=(line,),
                          extra=extra)
        if inst is not None:
            return inst
    raise PreconditionError("case4 sampling budget exhausted")


def example6lines(seed: int) -> Instance:
    """The 15 pairwise intersections of six generic lines."""
    from .currents import sharpness_example
    rep = sharpness_example(seed)
    s = PointSet(rep.points)
    return Instance(kind="example6lines", seed=seed, point_set=s,
                    m_seq=rep.m_seq, lines=rep.lines)


def generate(kind: str, seed: int) -> Instance:
    """Dispatch by kind name; see INSTANCE_KINDS."""
    if kind == "generic12":
        return generic12(seed)
    if kind in _FIGURE_SHAPES:
        return figure_instance(kind, seed)
    if kind == "case2":
        return case2_instance(seed)
    if kind == "case3":
        return case3_instance(seed)
    if kind == "case4":
        return case4_instance(seed)
    if kind == "example6lines":
        return example6lines(seed)
    if kind == "conic6":
        return conic6_instance(seed)
    if kind == "conic7":
        return conic7_instance(seed)
    raise PreconditionError(f"unknown instance kind: {kind}")
