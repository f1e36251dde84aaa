"""Shelling checks for pure simplicial complexes, plus the end-to-end check that the normal complex order shells.

An order ``F_1, ..., F_t`` of the facets is a shelling when for every ``j`` and
every ``i < j`` there are ``k < j`` and a vertex ``x`` of ``F_j`` with
``F_i & F_j <= F_k & F_j == F_j - {x}``. Equivalently, let ``S_j`` be the
vertices ``x`` of ``F_j`` for which ``F_j - {x}`` lies in an earlier facet;
then every earlier facet must miss some vertex of ``S_j``. That reformulation
is what ``check_shelling`` evaluates, in ``O(t^2 r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .building import BuildingSet
from .nested import facets as enumerate_facets
from .nested import reduced
from .orders import FacetOrder, MismatchedFacetSets, codim1_faces, nc_order

__all__ = [
    "NotPure",
    "ShellingReport",
    "check_shelling",
    "check_shelling_bruteforce",
    "verify_theorem1",
    "check_local_equivalence",
]


class NotPure(ValueError):
    pass


@dataclass
class ShellingReport:
    ordered_facets: tuple
    verdict: bool
    # (j, i): facet j has no codimension-1 face covering its intersection with facet i
    first_violation: tuple[int, int] | None = None
    # per step j, the vertices x with F_j - {x} inside an earlier facet
    glue: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict


def check_shelling(facets_in_order: Sequence[Iterable], strip: Iterable = ()) -> ShellingReport:
    """Decide whether the given facet order is a shelling.

    ``strip`` removes vertices common to all facets before checking; pass
    ``max(B)`` to evaluate on reduced nested sets.
    """
    strip = frozenset(strip)
    faces = [frozenset(f) - strip for f in facets_in_order]
    if len(set(map(len, faces))) > 1:
        raise NotPure(f"facet sizes differ: {sorted(set(map(len, faces)))}")
    report = ShellingReport(tuple(frozenset(f) for f in facets_in_order), True)
    for j, fj in enumerate(faces):
        glue = set()
        for fk in faces[:j]:
            missing = fj - fk
            if len(missing) == 1:
                glue |= missing
        report.glue.append(frozenset(glue))
        for i, fi in enumerate(faces[:j]):
            if not (fj - fi) & glue:
                report.verdict = False
                report.first_violation = (j, i)
                return report
    return report


def check_shelling_bruteforce(facets_in_order: Sequence[Iterable], strip: Iterable = ()) -> bool:
    """The shelling condition evaluated literally, quantifying over i, k and x."""
    strip = frozenset(strip)
    faces = [frozenset(f) - strip for f in facets_in_order]
    for j, n in enumerate(faces):
        for n1 in faces[:j]:
            ok = any(
                n & n1 <= n & n2 and n & n2 == n - {x}
                for n2 in faces[:j]
                for x in n
            )
            if not ok:
                return False
    return True


def verify_theorem1(b: BuildingSet, c: Mapping, facets=None) -> ShellingReport:
    """Order facets by the normal complex of ``c`` and check that the order shells."""
    if facets is None:
        facets = enumerate_facets(b)
    order = nc_order(b, c, facets)  # raises NonCubical
    return check_shelling(order.facets, strip=b.maximal)


def check_local_equivalence(o1: FacetOrder, o2: FacetOrder, b: BuildingSet, weak: bool = False):
    """Compare two orders on every ridge star.

    Returns ``(True, None)`` or ``(False, ridge)``. With ``weak`` only the
    minimum of each star is compared.
    """
    if set(o1.facets) != set(o2.facets) or len(o1) != len(o2):
        raise MismatchedFacetSets("orders are over different facet sets")
    p1, p2 = o1.position(), o2.position()
    for ridge in codim1_faces(b, o1.facets):
        star = [f for f in o1.facets if ridge <= reduced(b, f)]
        s1 = sorted(star, key=p1.__getitem__)
        s2 = sorted(star, key=p2.__getitem__)
        if (s1[0] != s2[0]) if weak else (s1 != s2):
            return False, ridge
    return True, None
