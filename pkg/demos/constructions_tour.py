"""
Building spaces with constant ball volumes
==========================================

"""

from hexalab import check_cvc, is_transitive
from hexalab.constructions import (
    ProductSpec,
    build_space,
    cantor_space,
    cycle,
    graph_substitution,
    named_graph,
    path,
    product_space,
    union_space,
)

# Cayley graphs and polyhedra are vertex-transitive
for name in ("petersen", "icosahedron", "truncated_icosahedron"):
    s = named_graph(name)
    print(name, s.n, "points, transitive:", is_transitive(s), "cvc:", check_cvc(s).holds)

# a path is not: the endpoint ball at radius 1 is smaller than the middle one
print("path witness (x, y, r):", check_cvc(path(3)).witness)

# products under the three norms
for p in (1, 2, "inf"):
    grid = product_space(ProductSpec((cycle(3), cycle(4)), p))
    print(f"l{p} product of cycles:", check_cvc(grid).holds)

# two far-apart copies, and triangles glued along a square
print("union:", check_cvc(union_space(cycle(4), cycle(4), 10)).holds)
print("substitution:", check_cvc(graph_substitution(cycle(4), [cycle(3)] * 4, 10)).holds)

# a truncated middle-thirds set with the dyadic measure
c = cantor_space(6)
print("cantor depth 6:", c.n, "points, cvc:", check_cvc(c).holds)

# the same recipes the CLI reads
z7 = build_space({"kind": "zmod", "n": 7, "generators": [1, 3]})
rho = check_cvc(z7).rho
print("Z/7 with steps 1 and 3:", [str(rho(r)) for r in (0, 1, 2)])
