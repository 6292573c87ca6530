"""Decide whether a vector is a weighted r-dissimilarity vector and rebuild
its tree.

A vector w indexed by r-subsets (2 <= r <= n-2) is accepted when

* every cube relation is balanced: sum of w over the four black columns of
  the relation equals the sum over the four white columns, and
* for every 4-subset {i,j,k,l} and the chosen (r-2)-set A avoiding it, the
  largest of w[ijA]+w[klA], w[ikA]+w[jlA], w[ilA]+w[jkA] occurs twice.

The cube relations cut out the image of the pair-sum map, and on that image
the four-point test does not depend on A, so the default tests only the
lex-smallest A.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .combinat import cube_relations, subset_index, subsets
from .dissim import SubsetVector, d_weighted, recover_d2
from .tree import PhyloTree, _relabel_internal, contract_zero_edges, format_rational, to_newick

SINGLE_A = "single_A"
ALL_A = "all_A"


class NotATreeMetricError(ValueError):
    def __init__(self, violation: "FourPointViolation"):
        self.violation = violation
        super().__init__(f"not a tree metric: four-point condition fails on {violation.quadruple}")


class ReconstructionMismatch(RuntimeError):
    """The rebuilt tree does not reproduce its input vector (an internal bug)."""


@dataclass(frozen=True)
class FourPointViolation:
    quadruple: tuple[int, int, int, int]
    A: tuple[int, ...]
    sums: tuple[Fraction, Fraction, Fraction]

    def to_dict(self):
        return {
            "quadruple": list(self.quadruple),
            "A": list(self.A),
            "sums": [format_rational(x) for x in self.sums],
        }


@dataclass(frozen=True)
class CubeViolation:
    I: tuple[int, ...]
    J: tuple[int, ...]
    cube_id: int
    imbalance: Fraction

    def to_dict(self):
        return {"I": list(self.I), "J": list(self.J), "cube": self.cube_id, "imbalance": format_rational(self.imbalance)}


@dataclass
class Certificate:
    n: int
    r: int
    four_point_mode: str
    cube_violations: list[CubeViolation] = field(default_factory=list)
    four_point_violations: list[FourPointViolation] = field(default_factory=list)
    four_point_checked: bool = False
    witness_tree: Optional[PhyloTree] = None

    @property
    def passed(self) -> bool:
        return not self.cube_violations and not self.four_point_violations

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "r": self.r,
            "mode": {"four_point": self.four_point_mode, "four_point_checked": self.four_point_checked},
            "cube_violations": [v.to_dict() for v in self.cube_violations],
            "four_point_violations": [v.to_dict() for v in self.four_point_violations],
            "witness_tree": to_newick(self.witness_tree) if self.witness_tree is not None else None,
        }


def _check_range(w: SubsetVector):
    if not 2 <= w.r <= w.n - 2:
        raise ValueError(f"membership is defined for 2 <= r <= n-2; got n={w.n}, r={w.r}")


def check_cube_conditions(w: SubsetVector) -> list[CubeViolation]:
    """Every unbalanced cube relation with its imbalance (black minus white)."""
    _check_range(w)
    idx = subset_index(w.n, w.r)
    vals = w.values
    out = []
    for rel in cube_relations(w.n, w.r):
        imbalance = sum((vals[idx[s]] for s in rel.black), Fraction(0)) - sum(
            (vals[idx[s]] for s in rel.white), Fraction(0)
        )
        if imbalance:
            out.append(CubeViolation(rel.ground, rel.shift, rel.cube_id, imbalance))
    return out


def _four_point_sums(w, quad, A, idx):
    i, j, k, l = quad

    def x(a, b):
        return w.values[idx[tuple(sorted((a, b) + A))]]

    return (x(i, j) + x(k, l), x(i, k) + x(j, l), x(i, l) + x(j, k))


def _max_twice(sums) -> bool:
    top = max(sums)
    return sum(1 for s in sums if s == top) >= 2


def check_four_point(w: SubsetVector, mode: str = SINGLE_A) -> list[FourPointViolation]:
    """Four-point test on w; ``mode`` is ``"single_A"`` or ``"all_A"``."""
    _check_range(w)
    if mode not in (SINGLE_A, ALL_A):
        raise ValueError(f"unknown four-point mode {mode!r}")
    idx = subset_index(w.n, w.r)
    out = []
    for quad in subsets(w.n, 4):
        rest = [x for x in range(1, w.n + 1) if x not in quad]
        choices = combinations(rest, w.r - 2)
        if mode == SINGLE_A:
            choices = [next(choices)]
        for A in choices:
            sums = _four_point_sums(w, quad, A, idx)
            if not _max_twice(sums):
                out.append(FourPointViolation(quad, A, sums))
    return out


def is_weighted_dissimilarity(w: SubsetVector, mode: str = SINGLE_A) -> Certificate:
    """Cube relations first; the four-point test runs only if they all hold."""
    cert = Certificate(w.n, w.r, mode)
    cert.cube_violations = check_cube_conditions(w)
    if not cert.cube_violations:
        cert.four_point_violations = check_four_point(w, mode)
        cert.four_point_checked = True
    return cert


def reconstruct_tree(d: SubsetVector) -> PhyloTree:
    """Tree realising a pair vector exactly, by repeated cherry contraction.

    Leaves i, j are siblings iff d(i,k) - d(j,k) is the same for every other
    leaf k.  Zero-length internal edges are contracted in the result.
    """
    if d.r != 2:
        raise ValueError("reconstruct_tree expects a vector indexed by pairs")
    n = d.n
    if n >= 4:
        bad = check_four_point(d, SINGLE_A)
        if bad:
            raise NotATreeMetricError(bad[0])
    if n == 2:
        return PhyloTree.from_edges([(1, 2, d[(1, 2)])])

    dist: dict[frozenset, Fraction] = {frozenset(p): x for p, x in d.items()}

    def D(a, b):
        return dist[frozenset((a, b))]

    active = list(range(1, n + 1))
    edges = []
    next_id = -1
    while len(active) > 3:
        pair = None
        for a, b in combinations(active, 2):
            others = [k for k in active if k != a and k != b]
            diff = D(a, others[0]) - D(b, others[0])
            if all(D(a, k) - D(b, k) == diff for k in others[1:]):
                pair = (a, b, others)
                break
        if pair is None:  # pragma: no cover - excluded by the four-point check
            raise RuntimeError("no cherry found in a tree metric")
        a, b, others = pair
        v = next_id
        next_id -= 1
        la = (D(a, b) + D(a, others[0]) - D(b, others[0])) / 2
        edges += [(v, a, la), (v, b, D(a, b) - la)]
        for k in others:
            dist[frozenset((v, k))] = (D(a, k) + D(b, k) - D(a, b)) / 2
        active = others + [v]
    a, b, c = active
    center = next_id
    edges += [
        (center, a, (D(a, b) + D(a, c) - D(b, c)) / 2),
        (center, b, (D(a, b) + D(b, c) - D(a, c)) / 2),
        (center, c, (D(a, c) + D(b, c) - D(a, b)) / 2),
    ]
    return contract_zero_edges(PhyloTree.from_edges(_relabel_internal(edges)))


def recover_tree(w: SubsetVector, mode: str = SINGLE_A) -> Certificate:
    """Membership certificate carrying the witness tree when w is accepted."""
    cert = is_weighted_dissimilarity(w, mode)
    if not cert.passed:
        return cert
    tree = reconstruct_tree(recover_d2(w))
    if d_weighted(tree, w.r) != w:
        raise ReconstructionMismatch("rebuilt tree does not reproduce the input vector")
    cert.witness_tree = tree
    return cert
