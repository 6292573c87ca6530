"""Balancing test at codimension-one cones of the space of trees.

A topology with one vertex of degree 4 spans a cone of split-metric images;
its three resolutions add one ray each.  Balancing along that cone needs the
three new rays to be linearly dependent modulo the cone's span.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dissim import d_classic, d_weighted
from .linalg import RationalMatrix, left_kernel_basis, rank
from .tree import Topology, degree4_vertex, enumerate_topologies, parse_newick, resolutions, split_metric, to_newick

CLASSIC = "classic"
WEIGHTED = "weighted"


def three_cherry_star() -> Topology:
    """Seven leaves: cherries {1,2}, {3,4}, {5,6} and leaf 7 on one degree-4 vertex."""
    return parse_newick("((1,2),(3,4),(5,6),7);").topology


def _image(kind: str):
    if kind == CLASSIC:
        return d_classic
    if kind == WEIGHTED:
        return d_weighted
    raise ValueError(f"unknown map kind {kind!r}")


def star_matrix(g: Topology, r: int, kind: str = CLASSIC) -> RationalMatrix:
    """Split-metric images of the edges of ``g`` followed by the three
    resolution edges; columns are r-subsets in lex order."""
    image = _image(kind)
    v = degree4_vertex(g)
    rows = [image(split_metric(g, e), r).values for e in g.canonical_edges()]
    for res in resolutions(g, v):
        rows.append(image(split_metric(res.topology, res.edge), r).values)
    return RationalMatrix(rows)


@dataclass
class BalancingReport:
    n: int
    r: int
    map_kind: str
    topology: str
    base_rank: int
    full_rank: int
    kernel_vector: Optional[tuple[int, ...]] = None

    @property
    def dependent_mod_base(self) -> bool:
        return self.full_rank < self.base_rank + 3

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "map_kind": self.map_kind,
            "topology": self.topology,
            "base_rank": self.base_rank,
            "full_rank": self.full_rank,
            "dependent_mod_base": self.dependent_mod_base,
            "kernel_vector": list(self.kernel_vector) if self.kernel_vector is not None else None,
        }


def audit(g: Topology, r: int, kind: str = CLASSIC) -> BalancingReport:
    m = star_matrix(g, r, kind)
    nbase = len(m.rows) - 3
    base = rank(m.select_rows(range(nbase)))
    full = rank(m)
    report = BalancingReport(g.n, r, kind, to_newick(g), base, full)
    if report.dependent_mod_base:
        kernel = left_kernel_basis(m)
        if len(kernel) == 1:
            report.kernel_vector = kernel[0]
    return report


def audit_all(n: int, r: int, kind: str = CLASSIC) -> list[BalancingReport]:
    """Audit every topology on n leaves with exactly one degree-4 vertex."""
    if not 4 <= n <= 8:
        raise ValueError(f"n = {n} outside the supported range 4..8")
    if not 2 <= r <= n:
        raise ValueError(f"r = {r} outside 2..{n}")
    return [audit(g, r, kind) for g in enumerate_topologies(n, "one_degree4")]
