# NL-labelings: label each flat of a facet by its smallest new atom, then pluck leaves.

from bshell import BuildingSet, boolean
from bshell.formats import facet_name
from bshell.nested import link_image, product_of
from bshell.orders import construct_n_min, descents, nl_labeling, nl_order, reconstruct_from_labeling

m = boolean(5)
b = BuildingSet(m, [m.mask(s) for s in ["1", "2", "3", "4", "5", "13", "123", "45"]])

n_min = construct_n_min(b)  # greedy: smallest atom not yet covered, widest member above it
lab = nl_labeling(m, n_min)
print("N_min =", facet_name(m, n_min), "labels", [m.name(a) for a in lab.atoms])
print("descents:", descents(lab))
print("first in NL order:", nl_order(b).facets[0] == n_min)
print("round trip:", reconstruct_from_labeling(b, lab.atoms) == n_min)

# labels depend on the ground order; links can reorder facets
m = boolean(3).with_ground_order(["2", "1", "3"])
b = BuildingSet(m, [m.mask(s) for s in ["1", "2", "3", "13", "12", "123"]])
n = frozenset(m.mask(s) for s in ["3", "13", "123"])
n2 = frozenset(m.mask(s) for s in ["2", "3", "123"])
for f in (n, n2):
    print(facet_name(m, f), [m.name(a) for a in nl_labeling(m, f).atoms])
print("NL order:", [facet_name(m, f) for f in nl_order(b)])

z = m.mask("3")
pb = product_of(b, z)  # the link of z, as a building set on the split matroid
pm = pb.matroid
for f in (n, n2):
    img = link_image(b, z, f)
    print(facet_name(m, f), "->", facet_name(pm, img), [pm.name(a) for a in nl_labeling(pm, img).atoms])
print("link NL order:", [facet_name(pm, f) for f in nl_order(pb) if z in f])
