"""Points on a rational normal curve satisfy the cube binomials and the
three-term Pluecker relations exactly."""
import random

from treetrop import eval_psi, eval_three_term, maximal_minors, phi_r, pluecker_2n, veronese_lift
from treetrop.algebraic import identity_report, random_matrix_2n
from treetrop.combinat import cube_relations, enumerate_cubes, subsets

rng = random.Random(2024)
m = random_matrix_2n(7, rng)
print("2 x 7 matrix:")
for row in m:
    print("  ", [str(x) for x in row])

x = phi_r(pluecker_2n(m), 4)
print("\nproducts of pair minors equal the 4 x 4 minors of the Veronese lift:",
      x == maximal_minors(veronese_lift(m, 4)))

cubes = enumerate_cubes()
vals = [eval_psi(x, cubes[rel.cube_id], rel.ground, rel.shift) for rel in cube_relations(7, 4)]
print(f"{len(vals)} cube binomials, all zero: {not any(vals)}")
print("three-term relation 1234 | A=56:", eval_three_term(x, 1, 2, 3, 4, (5, 6)))
print("three-term relation on all quadruples with A = first two free labels:",
      {eval_three_term(x, *q, tuple(t for t in range(1, 8) if t not in q)[:2]) for q in subsets(7, 4)})

print("\nseeded batch:", identity_report(8, 5, trials=5, seed=1))
