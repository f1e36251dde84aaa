"""JSON encodings for matroids, building sets, weights, facets and reports.

Flats are written as lists of ground labels in ground order. Rationals are
written as strings (``"3"``, ``"-5/2"``) so nothing passes through a float.
Every ``*_to_json`` has a matching reader, and the two round-trip.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence

from .building import BuildingSet, maximal_building_set, minimal_building_set
from .geometry import VertexSolution, as_rational, inner
from .matroid import Matroid
from .nested import reduced, sorted_flats
from .orders import FacetOrder, nl_labeling

__all__ = [
    "FormatError",
    "dumps",
    "rational",
    "matroid_to_json",
    "matroid_from_json",
    "building_to_json",
    "building_from_json",
    "flat_string",
    "parse_flat_string",
    "c_to_json",
    "c_from_json",
    "vertex_report",
    "vertex_report_from_json",
    "facets_to_json",
    "facets_from_json",
    "order_report",
    "order_from_json",
    "facet_name",
]


class FormatError(ValueError):
    pass


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(obj, indent=indent, ensure_ascii=False)


def rational(q) -> str:
    return str(Fraction(q))


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    try:
        return as_rational(value)
    except TypeError as exc:
        raise FormatError(str(exc)) from None
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational: {value!r}") from None


def _flat_list(m: Matroid, x: int) -> list[str]:
    return list(m.labels_of(x))


def _read_flat(m: Matroid, labels) -> int:
    if not isinstance(labels, list):
        raise FormatError(f"expected a list of labels, got {labels!r}")
    try:
        return m.mask(str(s) for s in labels)
    except KeyError as exc:
        raise FormatError(f"unknown ground label {exc.args[0]!r}") from None


# -- matroids ---------------------------------------------------------------


def matroid_to_json(m: Matroid) -> dict:
    return {"ground": list(m.labels), "flats": [_flat_list(m, f) for f in m.flats]}


def matroid_from_json(data: Mapping) -> Matroid:
    try:
        ground = [str(x) for x in data["ground"]]
        raw = data["flats"]
    except (KeyError, TypeError):
        raise FormatError('matroid JSON needs "ground" and "flats"') from None
    index = {label: i for i, label in enumerate(ground)}
    flats = []
    for k, labels in enumerate(raw):
        mask = 0
        for label in labels:
            if str(label) not in index:
                raise FormatError(f"flat #{k}: unknown ground label {label!r}")
            mask |= 1 << index[str(label)]
        flats.append(mask)
    return Matroid(ground, flats)


# -- building sets ----------------------------------------------------------


def building_to_json(b: BuildingSet) -> dict:
    return {"members": [_flat_list(b.matroid, x) for x in b.members]}


def building_from_json(m: Matroid, data) -> BuildingSet:
    """Accepts ``"minimal"``, ``"maximal"`` or ``{"members": [...]}``."""
    if isinstance(data, Mapping):
        data = data.get("members", data)
    if data == "minimal":
        return minimal_building_set(m)
    if data == "maximal":
        return maximal_building_set(m)
    if not isinstance(data, list):
        raise FormatError('building set JSON needs "members" or "minimal"/"maximal"')
    return BuildingSet(m, [_read_flat(m, x) for x in data])


# -- weights ----------------------------------------------------------------


def flat_string(m: Matroid, x: int) -> str:
    return ",".join(m.labels_of(x))


def parse_flat_string(m: Matroid, s: str) -> int:
    parts = [p.strip() for p in str(s).split(",") if p.strip()]
    return _read_flat(m, parts)


def c_to_json(b: BuildingSet, c: Mapping) -> dict:
    m = b.matroid
    return {"c": {flat_string(m, x): rational(c[x]) for x in b.members}}


def c_from_json(m: Matroid, data: Mapping) -> dict:
    if not isinstance(data, Mapping) or not isinstance(data.get("c"), Mapping):
        raise FormatError('weight JSON needs a "c" object')
    return {parse_flat_string(m, k): _parse_rational(v) for k, v in data["c"].items()}


# -- facets and vertices ----------------------------------------------------


def facet_name(m: Matroid, facet) -> str:
    return "{" + ",".join(m.name(x) for x in sorted_flats(facet)) + "}"


def _facet_json(m: Matroid, facet) -> list[list[str]]:
    return [_flat_list(m, x) for x in sorted_flats(facet)]


def facets_to_json(b: BuildingSet, facets: Sequence) -> dict:
    m = b.matroid
    return {
        "full": [_facet_json(m, f) for f in facets],
        "reduced": [_facet_json(m, reduced(b, f)) for f in facets],
    }


def facets_from_json(m: Matroid, data: Mapping) -> list[frozenset]:
    """Reads the ``"full"`` form back into facets."""
    return [frozenset(_read_flat(m, x) for x in f) for f in data["full"]]


def vertex_report(b: BuildingSet, sols: Mapping[frozenset, VertexSolution]) -> dict:
    m = b.matroid
    return {
        facet_name(m, f): {
            "lambda": {flat_string(m, x): rational(sol.coefficients[x])
                       for x in sorted_flats(sol.coefficients)},
            "point": [rational(p) for p in sol.point],
        }
        for f, sol in sols.items()
    }


def vertex_report_from_json(m: Matroid, data: Mapping) -> dict:
    """``{facet: (lambda, point)}`` with exact values."""
    out = {}
    for entry in data.values():
        lam = {parse_flat_string(m, k): _parse_rational(v) for k, v in entry["lambda"].items()}
        out[frozenset(lam)] = (lam, tuple(_parse_rational(p) for p in entry["point"]))
    return out


# -- orders -----------------------------------------------------------------


def order_report(
    b: BuildingSet,
    order: FacetOrder,
    sols: Mapping[frozenset, VertexSolution] | None = None,
    gamma: Sequence | None = None,
) -> dict:
    """Ordered facets with NL-labelings, and vertices/inner products when given."""
    m = b.matroid
    rows = []
    for f in order.facets:
        lab = nl_labeling(m, f)
        row = {
            "facet": _facet_json(m, f),
            "reduced": _facet_json(m, reduced(b, f)),
            "nl_labeling": [_flat_list(m, a) for a in lab.atoms],
        }
        if sols is not None:
            row["vertex"] = [rational(p) for p in sols[f].point]
            if gamma is not None:
                row["inner_product"] = rational(inner(sols[f].point, gamma))
        rows.append(row)
    out = {"provenance": order.provenance, "ground": list(m.labels), "facets": rows}
    if gamma is not None:
        out["gamma"] = [rational(as_rational(g)) for g in gamma]
    return out


def order_from_json(m: Matroid, data: Mapping) -> FacetOrder:
    return FacetOrder(
        tuple(frozenset(_read_flat(m, x) for x in row["facet"]) for row in data["facets"]),
        data["provenance"],
    )
