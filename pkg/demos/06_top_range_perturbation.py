"""When r = n-2 the pair-sum map is a bijection, so a single-coordinate
change can land on another tree.

Changing the entry indexed by I moves the pair distances by a pendant shift
plus a positive multiple of the indicator of the complementary pair {a,b}.
If {a,b} is a cherry, lowering that entry just lengthens the edge above the
cherry; raising it shortens that edge and stays valid while it is long enough.
"""
from fractions import Fraction

from treetrop import d_weighted, is_weighted_dissimilarity, parse_newick, recover_tree, to_newick

t = parse_newick("((1:1,2:1):1,(3:1,4:1):1,(5:1,6:1):1);")
w = d_weighted(t, 4)
print("tree:", to_newick(t))

for I, delta in [((1, 2, 3, 4), -1), ((1, 2, 3, 4), Fraction(1, 2)), ((1, 2, 3, 4), 5), ((1, 2, 3, 5), -1)]:
    changed = w.replace(I, w[I] + delta)
    cert = recover_tree(changed, "all_A")
    witness = to_newick(cert.witness_tree) if cert.passed else "-"
    print(f"entry {''.join(map(str, I))} {'+' if delta > 0 else ''}{delta}: {cert.verdict:4s}  "
          f"four-point violations {len(cert.four_point_violations)}  tree {witness}")

print("\nmode check:", is_weighted_dissimilarity(w).verdict)
