"""The 15 cubes in the graph on 3-subsets of {1..6}, and the linear
relations they impose on weighted dissimilarity vectors."""
from math import comb

from treetrop import cube_relation_matrix, enumerate_cubes, rank, trop_phi_matrix


def word(ts):
    return " ".join("".join(map(str, t)) for t in ts)


for c in enumerate_cubes():
    print(f"{c.id:2d}  black {word(c.black)}   white {word(c.white)}")

print()
for n, r in [(6, 3), (7, 3), (7, 4), (8, 3), (8, 4), (8, 5)]:
    N = cube_relation_matrix(n, r)
    M = trop_phi_matrix(n, r)
    print(f"n={n} r={r}: {N.shape[0]:4d} relations, rank {rank(N):3d}"
          f" = C(n,r)-C(n,2) = {comb(n, r) - comb(n, 2):3d},  N M = 0: {(N @ M).is_zero()}")
