"""Scan every codimension-one cone (one vertex of degree 4) for small n.

A cone can only be balanced if its three resolution rays are linearly
dependent modulo the cone's own span.
"""
import time

from treetrop import audit_all

for n, r, kind in [(5, 3, "classic"), (6, 3, "classic"), (6, 4, "classic"), (6, 4, "weighted"),
                   (7, 2, "classic"), (7, 4, "classic"), (7, 4, "weighted")]:
    start = time.perf_counter()
    reps = audit_all(n, r, kind)
    bad = sum(not rep.dependent_mod_base for rep in reps)
    print(f"n={n} r={r} {kind:8s}: {len(reps):5d} cones, {bad:5d} with independent rays"
          f"  ({time.perf_counter() - start:.1f}s)")
