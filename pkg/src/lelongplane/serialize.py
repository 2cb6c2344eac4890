"""Versioned JSON schemas for every report and instance file.

All rationals are serialized as "num/den" strings, polynomials as grlex
term lists, and every document carries a schema_version and a type tag.
Serialization is byte-stable: keys are sorted and term order is canonical,
so identical objects always produce identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .config import (EnumerationReport, IncidenceStructure, MSequence,
                     PointSet, Realization)
from .construct import (ConstructionReport, PointCheck, PotentialCertificate,
                        VerificationReport)
from .currents import (ArrangementCurrent, GrowthEstimate, InequalityReport,
                       LelongEstimate, SharpnessReport)
from .errors import ParseError
from .exactpoly import (HomPoly, ProjPoint, fraction_from_str,
                        fraction_to_str, monomials)
from .linsys import LinearSystem

SCHEMA_VERSION = 1


# --------------------------------------------------------------------------
# encoding


def encode_poly(p: HomPoly) -> dict:
    terms = [[i, j, k, fraction_to_str(p.terms[(i, j, k)])]
             for (i, j, k) in monomials(p.degree) if (i, j, k) in p.terms]
    return {"degree": p.degree, "terms": terms}


def encode_point(x: ProjPoint) -> list:
    return [fraction_to_str(c) for c in x.coords]


def encode(obj):
    """Recursive JSON-ready encoding of any toolkit object."""
    if isinstance(obj, HomPoly):
        return encode_poly(obj)
    if isinstance(obj, ProjPoint):
        return encode_point(obj)
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if isinstance(obj, PointSet):
        return {"type": "point_set",
                "points": [encode_point(p) for p in obj.points]}
    if isinstance(obj, MSequence):
        return {"m1": obj.m1, "m2": obj.m2, "m3": obj.m3,
                "witnesses": [{"labels": list(labels),
                               "curve": encode(curve)
                               if curve is not None else None}
                              for labels, curve in obj.witnesses]}
    if isinstance(obj, IncidenceStructure):
        return {"type": "incidence_structure", "n_points": obj.n_points,
                "lines": [list(l) for l in obj.lines]}
    if isinstance(obj, Realization):
        return {"point_set": encode(obj.point_set),
                "lines": [encode_poly(l) for l in obj.lines]}
    if isinstance(obj, EnumerationReport):
        return {"type": "enumeration_report", "n_points": obj.n_points,
                "per_point_cap": obj.per_point_cap, "maximum": obj.maximum,
                "families_by_size": [
                    {"size": k, "families": [[list(l) for l in fam]
                                             for fam in fams]}
                    for k, fams in obj.families_by_size],
                "maximal_families": [[list(l) for l in fam]
                                     for fam in obj.maximal_families]}
    if isinstance(obj, LinearSystem):
        return {"type": "linear_system", "degree": obj.degree,
                "conditions": [{"point": encode_point(c.point),
                                "order": c.order}
                               for c in obj.conditions],
                "matrix_rank": obj.matrix_rank, "dim": obj.dim,
                "kernel_basis": [encode_poly(b) for b in obj.kernel_basis]}
    if isinstance(obj, PotentialCertificate):
        return {"type": "certificate", "p": encode_poly(obj.p),
                "q": encode_poly(obj.q), "r": obj.r,
                "points": [{"point": encode_point(x),
                            "weight": fraction_to_str(w)}
                           for x, w in obj.points],
                "gamma_u": fraction_to_str(obj.gamma_u),
                "total_weight": fraction_to_str(obj.total_weight),
                "case_tag": obj.case_tag, "verified": obj.verified}
    if isinstance(obj, ConstructionReport):
        return {"type": "construction_report",
                "branch_trace": list(obj.branch_trace),
                "outcome": obj.outcome, "detail": obj.detail,
                "certificate": encode(obj.certificate)
                if obj.certificate else None}
    if isinstance(obj, PointCheck):
        return {"point": encode_point(obj.point),
                "claimed": fraction_to_str(obj.claimed),
                "ord_p": _encode_order(obj.ord_p),
                "ord_q": _encode_order(obj.ord_q),
                "multiplicity": _encode_order(obj.multiplicity),
                "ok": obj.ok}
    if isinstance(obj, VerificationReport):
        return {"type": "verification_report", "discrete": obj.discrete,
                "per_point": [encode(c) for c in obj.per_point],
                "total_weight_ok": obj.total_weight_ok,
                "verified": obj.verified}
    if isinstance(obj, ArrangementCurrent):
        return {"type": "arrangement",
                "lines": [{"line": encode_poly(l),
                           "weight": fraction_to_str(w)}
                          for l, w in obj.lines]}
    if isinstance(obj, LelongEstimate):
        return {"type": "lelong_estimate", "point": encode_point(obj.point),
                "radii": [repr(r) for r in obj.radii],
                "values": [repr(v) for v in obj.values],
                "extrapolated": repr(obj.extrapolated),
                "exact": fraction_to_str(obj.exact)
                if obj.exact is not None else None}
    if isinstance(obj, GrowthEstimate):
        return {"type": "growth_estimate",
                "radii": [repr(r) for r in obj.radii],
                "max_values": [repr(v) for v in obj.max_values],
                "slope": repr(obj.slope),
                "claimed": fraction_to_str(obj.claimed)}
    if isinstance(obj, InequalityReport):
        return {"type": "inequality_report",
                "lhs": fraction_to_str(obj.lhs),
                "rhs": fraction_to_str(obj.rhs), "holds": obj.holds,
                "terms": [{"point": encode_point(x),
                           "weight": fraction_to_str(w),
                           "lelong": fraction_to_str(nu)}
                          for x, w, nu in obj.terms]}
    if isinstance(obj, SharpnessReport):
        return {"type": "sharpness_report",
                "lines": [encode_poly(l) for l in obj.lines],
                "points": [encode_point(p) for p in obj.points],
                "lelong_values": [fraction_to_str(v)
                                  for v in obj.lelong_values],
                "all_values_one_third": obj.all_values_one_third,
                "rank_checks": obj.rank_checks,
                "all_ranks_full": obj.all_ranks_full,
                "m_seq": list(obj.m_seq)}
    from .instances import Instance
    if isinstance(obj, Instance):
        return {"type": "instance", "kind": obj.kind, "seed": obj.seed,
                "points": [encode_point(p) for p in obj.point_set.points],
                "m_seq": list(obj.m_seq),
                "lines": [encode_poly(l) for l in obj.lines],
                "extra": encode_point(obj.extra)
                if obj.extra is not None else None}
    raise ParseError(f"cannot encode object of type {type(obj).__name__}")


def _encode_order(v):
    if v is None:
        return None
    if v == float("inf"):
        return "inf"
    return int(v)


def dumps(obj) -> str:
    doc = obj if isinstance(obj, dict) else encode(obj)
    if isinstance(doc, dict):
        doc = {"schema_version": SCHEMA_VERSION, **doc}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dump(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))


# --------------------------------------------------------------------------
# decoding


def _expect(doc, key, kinds=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    val = doc[key]
    if kinds is not None and not isinstance(val, kinds):
        raise ParseError(f"field {key!r} has the wrong type")
    return val


def decode_poly(doc) -> HomPoly:
    degree = _expect(doc, "degree", int)
    terms = {}
    for entry in _expect(doc, "terms", list):
        try:
            i, j, k, coeff = entry
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed term entry: {entry!r}") from exc
        if i + j + k != degree:
            raise ParseError(f"term {entry!r} is not homogeneous of "
                             f"degree {degree}")
        terms[(i, j, k)] = fraction_from_str(coeff)
    return HomPoly(degree, terms)


def decode_point(doc) -> ProjPoint:
    if not isinstance(doc, list) or len(doc) != 3:
        raise ParseError(f"a point needs 3 coordinates: {doc!r}")
    return ProjPoint(*[fraction_from_str(c) for c in doc])


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: line {exc.lineno}, "
                         f"column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level document must be an object")
    version = _expect(doc, "schema_version", int)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version}")
    return doc


def load_instance(path):
    from .instances import Instance
    with open(path) as fh:
        doc = loads(fh.read())
    if _expect(doc, "type", str) != "instance":
        raise ParseError("not an instance file")
    points = tuple(decode_point(p) for p in _expect(doc, "points", list))
    extra = doc.get("extra")
    return Instance(
        kind=_expect(doc, "kind", str), seed=_expect(doc, "seed", int),
        point_set=PointSet(points),
        m_seq=tuple(_expect(doc, "m_seq", list)),
        lines=tuple(decode_poly(l) for l in doc.get("lines", [])),
        extra=decode_point(extra) if extra is not None else None)


def load_certificate(path) -> PotentialCertificate:
    with open(path) as fh:
        doc = loads(fh.read())
    if _expect(doc, "type", str) != "certificate":
        raise ParseError("not a certificate file")
    points = tuple(
        (decode_point(_expect(e, "point")),
         fraction_from_str(_expect(e, "weight", str)))
        for e in _expect(doc, "points", list))
    return PotentialCertificate(
        p=decode_poly(_expect(doc, "p")), q=decode_poly(_expect(doc, "q")),
        r=_expect(doc, "r", int), points=points,
        gamma_u=fraction_from_str(_expect(doc, "gamma_u", str)),
        case_tag=_expect(doc, "case_tag", str),
        verified=bool(_expect(doc, "verified", bool)))
