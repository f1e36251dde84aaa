# Does the NL-order always shell? Not here.
# A triangle 0-3-4 glued along the edge 0-3 to the square 0-1-2-3.

from bshell import graphic, minimal_building_set
from bshell.formats import facet_name
from bshell.geometry import default_cubical
from bshell.nested import reduced
from bshell.orders import compare_orders, nc_order, nl_labeling, nl_order
from bshell.shelling import check_shelling, verify_theorem1

m = graphic([(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
b = minimal_building_set(m)
print("members:", [m.name(x) for x in b.members])

nl = nl_order(b)
for k, f in enumerate(nl):
    print(f"{k:>2} {nl_labeling(m, f).key()} {facet_name(m, reduced(b, f))}")

report = check_shelling(nl.facets, strip=b.maximal)
j, i = report.first_violation
print("NL shells:", report.verdict)
print("facet", j, "meets facet", i, "in", facet_name(m, reduced(b, nl.facets[j]) & reduced(b, nl.facets[i])))
print("no earlier facet shares a ridge of facet", j, "through that vertex")

# the complex is still shellable: the normal complex order works
c = default_cubical(b)
print("NC shells:", verify_theorem1(b, c).verdict)
cmp = compare_orders(nc_order(b, c), nl, b)
print("same minimum:", cmp.same_minimum, " weakly locally equivalent:", cmp.weakly_locally_equivalent)
