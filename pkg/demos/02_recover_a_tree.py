"""From a tree to its weighted 4-dissimilarity vector and back."""
from fractions import Fraction

from treetrop import d_weighted, parse_newick, recover_tree, to_newick

t = parse_newick("((1:1,2:2):3,(3:1/2,4:1):1,(5:2,6:-1/3):0,7:4);")
print("input tree (zero edge kept):", to_newick(t))

w = d_weighted(t, 4)
print("first entries:", dict(list((",".join(map(str, s)), str(x)) for s, x in w.items())[:5]))

cert = recover_tree(w)
print("verdict:", cert.verdict)
print("recovered:", to_newick(cert.witness_tree))
print("same tree after contracting zero edges:", cert.witness_tree.same_tree(t))

# nudge one coordinate: the cube relations notice at once
bad = w.replace((1, 2, 3, 5), w[(1, 2, 3, 5)] + Fraction(1, 7))
cert = recover_tree(bad)
print("\nafter nudging entry 1235 by 1/7:", cert.verdict, "with", len(cert.cube_violations), "cube violations")
print("first one:", cert.cube_violations[0].to_dict())
