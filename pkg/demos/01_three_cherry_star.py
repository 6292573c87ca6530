"""Seven leaves, three cherries and one vertex of degree 4.

Images of the split metrics of this star and of its three resolutions,
first under the classic 4-dissimilarity map, then under the weighted one.
"""
from treetrop import audit, left_kernel_basis, rank, star_matrix, three_cherry_star, to_newick
from treetrop.tree import degree4_vertex, resolutions

g = three_cherry_star()
print("topology:", to_newick(g))
for res in resolutions(g, degree4_vertex(g)):
    print("  resolution:", to_newick(res.topology), "new edge cuts off", sorted(res.topology.splits[res.edge]))

classic = star_matrix(g, 4, "classic")
print("\nclassic matrix", classic.shape, "rank", rank(classic))
print(classic.dumps())

weighted = star_matrix(g, 4, "weighted")
print("weighted matrix", weighted.shape, "rank", rank(weighted))
print(weighted.dumps())

# the only linear relation among the weighted rows: the three new edges add
# up to the four edges at the degree-4 vertex
print("left kernel:", left_kernel_basis(weighted))

for kind in ("classic", "weighted"):
    rep = audit(g, 4, kind)
    print(f"{kind:9s} base rank {rep.base_rank}, full rank {rep.full_rank}, "
          f"rays dependent modulo the cone: {rep.dependent_mod_base}")
