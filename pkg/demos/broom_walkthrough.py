# The broom: ground set {0,1,2,3} with 1, 2, 3 on a line.
# Build both extreme building sets, cut out the normal complex and order its facets.

from fractions import Fraction

from bshell import broom, maximal_building_set, minimal_building_set
from bshell.formats import facet_name, rational
from bshell.geometry import inner, is_cubical, is_lexicographic_vector, vertices
from bshell.nested import facets
from bshell.orders import el_order, functional_order, nc_order
from bshell.shelling import check_shelling, verify_theorem1

m = broom()
print("flats:", [m.name(f) for f in m.flats])
print("connected flats:", [m.name(f) for f in m.connected_flats()])

# minimal building set: connected flats only, three facets
bm = minimal_building_set(m)
c = {m.mask("0"): 3, m.mask("1"): 1, m.mask("2"): 1, m.mask("3"): 1, m.mask("123"): -3}
print("cubical:", is_cubical(bm, c)[0])
gamma = [1000, 100, 10, 1]
sols = vertices(bm, c)
for f in nc_order(bm, c):
    print(facet_name(m, f), [rational(x) for x in sols[f].point], inner(sols[f].point, gamma))
print("shelling:", verify_theorem1(bm, c).verdict)

# maximal building set: every nonempty flat, nine facets
bM = maximal_building_set(m)
c = {x: Fraction((4 - bin(x).count("1")) * bin(x).count("1")) for x in bM.members}
sols = vertices(bM, c)
print(len(facets(bM)), "facets")
for f in nc_order(bM, c):
    print(f"{facet_name(m, f):14} {rational(inner(sols[f].point, gamma)):>6}")
print("shelling:", verify_theorem1(bM, c).verdict)

# a functional that is not lexicographic gives an order that fails right away
bad = [1, 100, 101, -1000]
print("lexicographic:", is_lexicographic_vector(bM, c, bad)[0])
report = check_shelling(functional_order(bM, c, bad).facets, strip=bM.maximal)
j, i = report.first_violation
print("shelling:", report.verdict, "first failure at facets", i, "and", j)

# the EL-order: same first facet, different order
print("EL:", [facet_name(m, f) for f in el_order(m)])
