"""Point-configuration invariants and 4-point-line incidence structures.

m_j of a point set is the maximum number of its points lying on a single
curve of degree j; a k-subset lies on such a curve iff its monomial
evaluation matrix has a nonzero kernel. Incidence structures are abstract
families of 4-element label sets in which any two lines share exactly one
label; they are enumerated up to relabeling and realized by seeded random
placement with exact certification.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .exactpoly import HomPoly, ProjPoint, evaluate, monomial_count, monomials
from .linalg import int_rank, nullspace


@dataclass(frozen=True)
class PointSet:
    """Ordered distinct projective points; label i means points[i-1]."""
    points: tuple[ProjPoint, ...]

    def __post_init__(self):
        seen = set()
        for p in self.points:
            if p.coords in seen:
                raise PreconditionError("points must be pairwise distinct")
            seen.add(p.coords)

    def __len__(self):
        return len(self.points)

    def point(self, label: int) -> ProjPoint:
        return self.points[label - 1]


@dataclass(frozen=True)
class MSequence:
    m1: int
    m2: int
    m3: int
    witnesses: tuple[tuple[tuple[int, ...], HomPoly], ...]  # per degree 1..3

    def as_tuple(self):
        return (self.m1, self.m2, self.m3)


@dataclass(frozen=True)
class IncidenceStructure:
    n_points: int
    lines: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for line in self.lines:
            if len(line) != 4 or len(set(line)) != 4:
                raise PreconditionError("lines must have 4 distinct labels")
            if any(not 1 <= l <= self.n_points for l in line):
                raise PreconditionError("label out of range")
        for a, b in itertools.combinations(self.lines, 2):
            if len(set(a) & set(b)) > 1:
                raise PreconditionError("two lines share more than one label")

    def line_count_at(self, label: int) -> int:
        return sum(label in line for line in self.lines)


def _evaluation_rows(points, degree):
    """Integer-scaled monomial evaluation rows, one per point."""
    mons = monomials(degree)
    rows = []
    for p in points:
        row = [Fraction(1)]
        vals = []
        for i, j, k in mons:
            a, b, c = p.coords
            vals.append(a ** i * b ** j * c ** k)
        lcm = math.lcm(*(v.denominator for v in vals))
        rows.append([int(v * lcm) for v in vals])
    return rows


def subset_on_curve(points, degree: int):
    """The degree-`degree` curve through all the points, or None.

    Returns a witness curve exactly when the evaluation matrix has a
    nonzero kernel.
    """
    rows = _evaluation_rows(points, degree)
    ncols = monomial_count(degree)
    if int_rank(rows) == ncols:
        return None
    frac_rows = [[Fraction(x) for x in r] for r in rows]
    kernel = nullspace(frac_rows, ncols)
    return HomPoly.from_coeff_vector(degree, kernel[0])


def m_sequence(s: PointSet) -> MSequence:
    """Exact invariants (m1, m2, m3) with witness subsets and curves."""
    n = len(s)
    if n > 16:
        raise PreconditionError("point sets capped at 16 points")
    floors = {1: 2, 2: 5, 3: 9}
    rows_by_degree = {d: _evaluation_rows(s.points, d) for d in (1, 2, 3)}
    values = {}
    witnesses = []
    for degree in (1, 2, 3):
        ncols = monomial_count(degree)
        floor = min(floors[degree], n)
        found = None
        for k in range(n, floor - 1, -1):
            for combo in itertools.combinations(range(n), k):
                rows = [rows_by_degree[degree][i] for i in combo]
                if int_rank(rows) < ncols:
                    frac_rows = [[Fraction(x) for x in r] for r in rows]
                    kern = nullspace(frac_rows, ncols)
                    curve = HomPoly.from_coeff_vector(degree, kern[0])
                    found = (k, tuple(i + 1 for i in combo), curve)
                    break
            if found:
                break
        if found is None:
            # fewer points than the interpolation floor: everything fits
            combo = tuple(range(n))
            curve = subset_on_curve(s.points, degree)
            found = (n, tuple(i + 1 for i in combo), curve)
        values[degree] = found[0]
        witnesses.append((found[1], found[2]))
    return MSequence(m1=values[1], m2=values[2], m3=values[3],
                     witnesses=tuple(witnesses))


def four_point_lines(s: PointSet):
    """All maximal collinear label groups of size >= 3, largest first."""
    n = len(s)
    groups = set()
    for i, j in itertools.combinations(range(n), 2):
        a, b = s.points[i].coords, s.points[j].coords
        # line through the two points via the cross product
        line = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0])
        members = tuple(k + 1 for k in range(n)
                        if sum(l * c for l, c in
                               zip(line, s.points[k].coords)) == 0)
        if len(members) >= 3:
            groups.add(members)
    return sorted(groups, key=lambda g: (-len(g), g))


# ---------------------------------------------------------------------------
# Enumeration of 4-point-line families up to relabeling.


def canonical_form(lines):
    """Lexicographically least relabeling of a line family.

    Minimizes over all line orderings, assigning fresh labels by first
    occurrence, branching over the orderings of new labels within a line;
    branch-and-bound against the best sequence found so far.
    """
    lines = [tuple(sorted(l)) for l in lines]
    if not lines:
        return ()
    best: list[tuple[int, ...] | None] = [None]

    def extend(remaining, mapping, next_label, acc):
        if not remaining:
            cand = tuple(acc)
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        pos = len(acc)
        for idx in list(remaining):
            line = lines[idx]
            old = sorted(mapping[x] for x in line if x in mapping)
            fresh = [x for x in line if x not in mapping]
            # fresh labels take consecutive values; branch over their order
            for perm in itertools.permutations(fresh):
                relabeled = tuple(sorted(
                    old + list(range(next_label, next_label + len(fresh)))))
                if best[0] is not None:
                    prefix = best[0][:pos + 1]
                    if (tuple(acc) + (relabeled,)) > prefix:
                        continue
                new_map = dict(mapping)
                for off, x in enumerate(perm):
                    new_map[x] = next_label + off
                extend(remaining - {idx}, new_map,
                       next_label + len(fresh), acc + [relabeled])

    extend(frozenset(range(len(lines))), {}, 1, [])
    return best[0]


def _extensions(lines, n_points, cap):
    """All ways to add one line meeting every existing line in exactly one
    label, respecting the per-point cap and the label budget; fresh labels
    are appended in order so extensions are already label-normalized."""
    used = sorted({x for l in lines for x in l})
    counts = {x: sum(x in l for l in lines) for x in used}
    available = [x for x in used if counts[x] < cap]
    out = []
    for k in range(0, 5):
        fresh_needed = 4 - k
        if len(used) + fresh_needed > n_points:
            continue
        for combo in itertools.combinations(available, k):
            if any(len(set(combo) & set(l)) != 1 for l in lines):
                continue
            fresh = list(range(len(used) + 1, len(used) + 1 + fresh_needed))
            out.append(tuple(sorted(list(combo) + fresh)))
    return out


@dataclass(frozen=True)
class EnumerationReport:
    n_points: int
    per_point_cap: int
    maximum: int
    families_by_size: tuple[tuple[int, tuple[tuple[tuple[int, ...], ...], ...]], ...]
    maximal_families: tuple[tuple[tuple[int, ...], ...], ...]


def enumerate_4lines(n_points: int, per_point_cap: int) -> EnumerationReport:
    """Exhaustive enumeration, up to relabeling, of families of 4-point
    lines in which any two lines meet in exactly one point.

    Returns the maximum family size, the canonical families of every size,
    and the families admitting no further extension.
    """
    if n_points > 12:
        raise PreconditionError("enumeration capped at 12 points")
    if per_point_cap not in (2, 3):
        raise PreconditionError("per-point cap must be 2 or 3")
    if n_points < 4:
        return EnumerationReport(n_points, per_point_cap, 0, ((0, ((),)),), ((),))
    start = ((1, 2, 3, 4),)
    levels = {1: {start: canonical_form(start)}}
    maximal = []
    size = 1
    while True:
        nxt = {}
        for fam in levels[size]:
            exts = _extensions(list(fam), n_points, per_point_cap)
            if not exts:
                maximal.append(fam)
                continue
            for line in exts:
                new = tuple(sorted(fam + (line,)))
                if new in nxt:
                    continue
                nxt[new] = canonical_form(new)
        if not nxt:
            break
        # isomorph rejection: keep one representative per canonical form
        by_canon = {}
        for fam, canon in nxt.items():
            if canon not in by_canon:
                by_canon[canon] = canon  # the canonical form is itself valid
        levels[size + 1] = {f: f for f in by_canon.values()}
        size += 1
    maximum = max(levels)
    fams = tuple(sorted((k, tuple(sorted(set(levels[k].values()))))
                        for k in levels))
    return EnumerationReport(
        n_points=n_points, per_point_cap=per_point_cap, maximum=maximum,
        families_by_size=fams,
        maximal_families=tuple(sorted(set(canonical_form(f)
                                          for f in maximal))))


# named incidence shapes used by the instance generators: five 4-point
# lines with every point on at most two of them; families of concurrent
# lines; and the two 5-line shapes with a triple point
SHAPE_5LINES_CAP2 = IncidenceStructure(12, (
    (1, 2, 3, 4), (1, 5, 6, 7), (2, 5, 8, 9), (3, 6, 8, 10), (4, 7, 9, 10)))
SHAPE_3CONCURRENT_PLUS2 = IncidenceStructure(12, (
    (1, 2, 3, 4), (1, 5, 6, 7), (1, 8, 9, 10), (2, 5, 8, 11), (3, 6, 9, 11)))
SHAPE_3CONCURRENT_PLUS2_SPLIT = IncidenceStructure(12, (
    (1, 2, 3, 4), (1, 5, 6, 7), (1, 8, 9, 10), (2, 5, 8, 11), (2, 6, 9, 12)))
SHAPE_DOUBLE_STAR = IncidenceStructure(12, (
    (1, 2, 3, 4), (1, 5, 6, 7), (1, 8, 9, 10),
    (11, 2, 5, 8), (11, 3, 6, 9), (11, 4, 7, 10)))


@dataclass(frozen=True)
class Realization:
    point_set: PointSet
    lines: tuple[HomPoly, ...]


@dataclass(frozen=True)
class NonRealizationReport:
    attempts: int
    message: str


def _random_fraction(rng):
    # small heights keep downstream exact arithmetic cheap
    return Fraction(rng.randint(-30, 30), rng.randint(1, 12))


def _line_through(a: ProjPoint, b: ProjPoint) -> HomPoly:
    u, v = a.coords, b.coords
    return HomPoly.line(u[1] * v[2] - u[2] * v[1],
                        u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0])


def _point_on_line(line: HomPoly, rng) -> ProjPoint:
    a = line.terms.get((1, 0, 0), Fraction(0))
    b = line.terms.get((0, 1, 0), Fraction(0))
    c = line.terms.get((0, 0, 1), Fraction(0))
    while True:
        t = _random_fraction(rng)
        if b != 0:
            cand = ProjPoint(t, (-c - a * t) / b, 1)
        elif a != 0:
            cand = ProjPoint((-c - b * t) / a, t, 1)
        else:
            cand = ProjPoint(t, 1, 0)
        if evaluate(line, cand) == 0:
            return cand


def _intersect_lines(l1: HomPoly, l2: HomPoly):
    def coeffs(l):
        return (l.terms.get((1, 0, 0), Fraction(0)),
                l.terms.get((0, 1, 0), Fraction(0)),
                l.terms.get((0, 0, 1), Fraction(0)))
    a, b = coeffs(l1), coeffs(l2)
    x = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
         a[0] * b[1] - a[1] * b[0])
    if all(c == 0 for c in x):
        return None
    return ProjPoint(*x)


def realize_structure(structure: IncidenceStructure, seed: int,
                      attempts: int = 200):
    """Rational points and line equations realizing the incidences exactly,
    with no unintended collinear triple among the points.

    Placement is randomized from the seed; failure after the attempt budget
    yields a report, not a proof of non-realizability.
    """
    rng = random.Random(seed)
    n = structure.n_points
    for _ in range(attempts):
        result = _try_realize(structure, rng)
        if result is not None:
            return result
    return NonRealizationReport(
        attempts=attempts,
        message="random placement budget exhausted")


def _try_realize(structure: IncidenceStructure, rng):
    n = structure.n_points
    line_eqs: list[HomPoly] = []
    pos: dict[int, ProjPoint] = {}

    def lines_of(label):
        return [i for i, l in enumerate(structure.lines) if label in l]

    for idx, line in enumerate(structure.lines):
        anchors = [pos[x] for x in line if x in pos]
        if len(anchors) >= 3:
            return None  # ordering forces a non-generic collinearity
        if len(anchors) == 2:
            eq = _line_through(anchors[0], anchors[1])
        elif len(anchors) == 1:
            other = ProjPoint(_random_fraction(rng), _random_fraction(rng), 1)
            if other.coords == anchors[0].coords:
                return None
            eq = _line_through(anchors[0], other)
        else:
            p1 = ProjPoint(_random_fraction(rng), _random_fraction(rng), 1)
            p2 = ProjPoint(_random_fraction(rng), _random_fraction(rng), 1)
            if p1.coords == p2.coords:
                return None
            eq = _line_through(p1, p2)
        if eq.is_zero:
            return None
        line_eqs.append(eq)
        # fix every label now lying on two placed lines
        for label in line:
            if label in pos:
                continue
            placed = [i for i in lines_of(label) if i <= idx]
            if len(placed) >= 2:
                x = _intersect_lines(line_eqs[placed[0]], line_eqs[placed[1]])
                if x is None:
                    return None
                pos[label] = x
    # consistency: every fixed point lies on all of its lines
    for label, x in pos.items():
        for i in lines_of(label):
            if evaluate(line_eqs[i], x) != 0:
                return None
    # labels on exactly one line get a random point of that line;
    # free labels get random points
    for label in range(1, n + 1):
        if label in pos:
            continue
        on = lines_of(label)
        if on:
            pos[label] = _point_on_line(line_eqs[on[0]], rng)
        else:
            pos[label] = ProjPoint(_random_fraction(rng),
                                   _random_fraction(rng), 1)
    pts = [pos[label] for label in range(1, n + 1)]
    if len({p.coords for p in pts}) != n:
        return None
    ps = PointSet(tuple(pts))
    # certification: the collinear groups of size >= 3 are exactly the lines
    groups = four_point_lines(ps)
    expected = sorted(tuple(sorted(l)) for l in structure.lines)
    if sorted(tuple(g) for g in groups) != expected:
        return None
    return Realization(point_set=ps, lines=tuple(line_eqs))
