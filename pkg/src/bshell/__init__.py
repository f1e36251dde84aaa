"""Exact nested set complexes, normal complexes and shelling orders of matroids.

Flats are integer bitmasks over the ground set of a ``Matroid``; nested sets
and facets are frozensets of such masks. All geometry is over the rationals.
"""

from .building import (
    BuildingSet,
    NotABuildingSet,
    contract_building_set,
    enumerate_building_sets,
    is_building_set,
    maximal_building_set,
    minimal_building_set,
    product_building_set,
    restrict_building_set,
)
from .generators import boolean, broom, graphic, uniform
from .geometry import (
    default_cubical,
    is_cubical,
    is_lexicographic_vector,
    restrict_cubical,
    vertex,
    vertices,
)
from .matroid import Matroid
from .nested import facets, forest, is_nested, link_image, reduced, tau
from .orders import (
    FacetOrder,
    compare_orders,
    construct_n_min,
    descents,
    el_order,
    functional_order,
    nc_order,
    nl_labeling,
    nl_order,
    reconstruct_from_labeling,
)
from .search import replay, search_nl_shelling
from .shelling import ShellingReport, check_local_equivalence, check_shelling, verify_theorem1

__version__ = "0.1.0"
