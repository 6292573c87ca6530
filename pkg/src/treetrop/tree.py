"""Phylogenetic trees with exact rational edge lengths.

Vertex ids encode the leaf labelling: a positive id *is* a leaf label, and
internal vertices carry negative ids.  Pendant edges may have any rational
length; internal edges must be non-negative.
"""
from __future__ import annotations

import random
import re
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]


class TreeError(ValueError):
    """Invalid tree data (structure, labels or lengths)."""


class NewickError(TreeError):
    pass


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Topology:
    """Combinatorial leaf-labelled tree (no lengths)."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(sorted({_edge(u, v) for u, v in self.edges}))
        if len(edges) != len(self.edges):
            raise TreeError("repeated edge")
        object.__setattr__(self, "edges", edges)
        self._validate()

    def _validate(self):
        adj = self.adjacency
        if any(v == 0 for v in adj):
            raise TreeError("vertex id 0 is reserved")
        leaves = self.leaves
        if len(leaves) < 2:
            raise TreeError("a tree needs at least two leaves")
        if len(self.edges) != len(adj) - 1:
            raise TreeError("edge count does not match a tree")
        seen = {leaves[0]}
        stack = [leaves[0]]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != len(adj):
            raise TreeError("graph is not connected")
        for v, nbrs in adj.items():
            if v > 0 and len(nbrs) != 1:
                raise TreeError(f"leaf {v} has degree {len(nbrs)}")
            if v < 0 and len(nbrs) < 3:
                raise TreeError(f"internal vertex {v} has degree {len(nbrs)}")

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {}
        for u, v in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(sorted(v for v in self.adjacency if v > 0))

    @property
    def n(self) -> int:
        return len(self.leaves)

    @property
    def internal_vertices(self) -> tuple[int, ...]:
        return tuple(sorted((v for v in self.adjacency if v < 0), reverse=True))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_pendant(self, e: Edge) -> bool:
        return e[0] > 0 or e[1] > 0

    @cached_property
    def splits(self) -> dict[Edge, frozenset[int]]:
        """Edge -> leaf set on the side not containing the smallest leaf."""
        root = self.leaves[0]
        below: dict[int, frozenset[int]] = {}
        parent = {root: None}
        order = [root]
        for v in order:
            for u in self.adjacency[v]:
                if u not in parent:
                    parent[u] = v
                    order.append(u)
        for v in reversed(order):
            s = {v} if v > 0 and v != root else set()
            for u in self.adjacency[v]:
                if parent.get(u) == v:
                    s |= below[u]
            below[v] = frozenset(s)
        return {_edge(v, p): below[v] for v, p in parent.items() if p is not None}

    def canonical_edges(self) -> list[Edge]:
        """Pendant edges by leaf label, then internal edges by sorted split."""
        pendant = sorted((e for e in self.edges if self.is_pendant(e)), key=lambda e: max(e))
        internal = sorted(
            (e for e in self.edges if not self.is_pendant(e)),
            key=lambda e: tuple(sorted(self.splits[e])),
        )
        return pendant + internal

    def key(self) -> frozenset[frozenset[int]]:
        """Set of internal splits; identifies the topology up to isomorphism."""
        return frozenset(self.splits[e] for e in self.edges if not self.is_pendant(e))

    def with_lengths(self, lengths: Mapping[Edge, object]) -> "PhyloTree":
        return PhyloTree(self, {e: Fraction(lengths[e]) for e in self.edges})

    def unit(self) -> "PhyloTree":
        return PhyloTree(self, {e: Fraction(1) for e in self.edges})


@dataclass(frozen=True)
class PhyloTree:
    topology: Topology
    lengths: Mapping[Edge, Fraction] = field(hash=False)

    def __post_init__(self):
        lengths = {}
        for e, x in self.lengths.items():
            lengths[_edge(*e)] = Fraction(x)
        if set(lengths) != set(self.topology.edges):
            raise TreeError("lengths must be given for exactly the tree's edges")
        for e, x in lengths.items():
            if not self.topology.is_pendant(e) and x < 0:
                raise TreeError(f"internal edge {e} has negative length {x}")
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int, object]]) -> "PhyloTree":
        edges = list(edges)
        topo = Topology(tuple((u, v) for u, v, _ in edges))
        return cls(topo, {_edge(u, v): Fraction(x) for u, v, x in edges})

    @property
    def leaves(self) -> tuple[int, ...]:
        return self.topology.leaves

    @property
    def n(self) -> int:
        return self.topology.n

    @property
    def edges(self) -> list[tuple[int, int, Fraction]]:
        return [(u, v, self.lengths[(u, v)]) for u, v in self.topology.edges]

    def total_length(self) -> Fraction:
        return sum(self.lengths.values(), Fraction(0))

    @cached_property
    def distances(self) -> dict[tuple[int, int], Fraction]:
        """All pairwise leaf distances, keyed by (i, j) with i < j."""
        adj = self.topology.adjacency
        out = {}
        for a in self.leaves:
            dist = {a: Fraction(0)}
            stack = [a]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u not in dist:
                        dist[u] = dist[v] + self.lengths[_edge(u, v)]
                        stack.append(u)
            for b in self.leaves:
                if b > a:
                    out[(a, b)] = dist[b]
        return out

    def canonical_form(self) -> "PhyloTree":
        return contract_zero_edges(self)

    def key(self) -> frozenset:
        """Comparison key: splits with lengths, zero internal edges removed."""
        t = contract_zero_edges(self)
        return frozenset((t.topology.splits[e], x) for e, x in t.lengths.items())

    def same_tree(self, other: "PhyloTree") -> bool:
        return self.key() == other.key()


# --- construction helpers -------------------------------------------------


def _relabel_internal(edges: Iterable[tuple[int, int, Fraction]]):
    """Renumber internal vertices -1, -2, ... in order of first appearance."""
    mapping: dict[int, int] = {}
    out = []
    for u, v, x in edges:
        ends = []
        for w in (u, v):
            if w < 0:
                if w not in mapping:
                    mapping[w] = -(len(mapping) + 1)
                w = mapping[w]
            ends.append(w)
        out.append((ends[0], ends[1], x))
    return out


def _suppress_and_build(adj: dict[int, dict[int, Fraction]]) -> PhyloTree:
    """Suppress internal vertices of degree 2 (adding lengths) and build a tree."""
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v < 0 and len(adj[v]) == 2:
                (a, la), (b, lb) = adj[v].items()
                del adj[a][v], adj[b][v], adj[v]
                adj[a][b] = la + lb
                adj[b][a] = la + lb
                changed = True
    edges = [(u, v, x) for u in adj for v, x in adj[u].items() if u < v]
    return PhyloTree.from_edges(_relabel_internal(sorted(edges, key=lambda e: (e[0], e[1]))))


def contract_zero_edges(t: PhyloTree) -> PhyloTree:
    """Contract every internal edge of length zero."""
    zero = [e for e, x in t.lengths.items() if x == 0 and not t.topology.is_pendant(e)]
    if not zero:
        return t
    rep = {v: v for v in t.topology.adjacency}

    def find(v):
        while rep[v] != v:
            rep[v] = rep[rep[v]]
            v = rep[v]
        return v

    for u, v in zero:
        a, b = find(u), find(v)
        rep[min(a, b)] = max(a, b)
    edges = []
    for (u, v), x in t.lengths.items():
        if (u, v) in zero:
            continue
        edges.append((find(u), find(v), x))
    return PhyloTree.from_edges(_relabel_internal(edges))


# --- Newick ---------------------------------------------------------------

_LENGTH_RE = re.compile(r"[+-]?(\d+/\d+|\d+\.?\d*([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)")


def parse_length(text: str) -> Fraction:
    """Parse an exact length: integer, decimal or ``p/q``."""
    text = text.strip()
    if not _LENGTH_RE.fullmatch(text):
        raise NewickError(f"bad branch length {text!r}")
    x = Fraction(text)
    if "/" in text and x.denominator == 0:  # pragma: no cover - Fraction raises first
        raise NewickError(f"zero denominator in {text!r}")
    return x


class _NewickParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.next_internal = -1
        self.adj: dict[int, dict[int, Fraction]] = {}

    def error(self, msg):
        raise NewickError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def length(self) -> Fraction:
        if self.peek() != ":":
            return Fraction(0)
        self.pos += 1
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",();" and not self.text[self.pos].isspace():
            self.pos += 1
        if start == self.pos:
            self.error("missing branch length")
        return parse_length(self.text[start : self.pos])

    def link(self, u, v, x):
        self.adj.setdefault(u, {})[v] = x
        self.adj.setdefault(v, {})[u] = x

    def subtree(self) -> tuple[int, Fraction]:
        """Parse a subtree; return (vertex id, length of its parent edge)."""
        if self.peek() == "(":
            self.pos += 1
            v = self.next_internal
            self.next_internal -= 1
            self.adj[v] = {}
            children = [self.subtree()]
            while self.peek() == ",":
                self.pos += 1
                children.append(self.subtree())
            self.take(")")
            if len(children) < 2:
                self.error("internal node needs at least two children")
            for c, x in children:
                self.link(v, c, x)
            return v, self.length()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a leaf label or '('")
        label = int(self.text[start : self.pos])
        if label < 1:
            self.error(f"leaf label {label} is not positive")
        if label in self.adj:
            raise NewickError(f"duplicate leaf label {label}")
        self.adj[label] = {}
        return label, self.length()

    def parse(self) -> PhyloTree:
        root, root_len = self.subtree()
        self.take(";")
        if self.peek():
            self.error("trailing characters")
        if root > 0:
            raise NewickError("a tree needs at least two leaves")
        if root_len != 0:
            raise NewickError("a length on the root edge is not supported")
        labels = sorted(v for v in self.adj if v > 0)
        if labels != list(range(1, len(labels) + 1)):
            missing = sorted(set(range(1, labels[-1] + 1)) - set(labels))
            raise NewickError(f"leaf labels must be 1..n; missing {missing}")
        try:
            return _suppress_and_build(self.adj)
        except TreeError as exc:
            raise NewickError(str(exc)) from exc


def parse_newick(text: str) -> PhyloTree:
    """Parse a Newick string with integer leaf labels 1..n.

    A root of degree 2 is suppressed and its two edges merged.
    """
    return _NewickParser(text).parse()


def to_newick(t: PhyloTree | Topology) -> str:
    """Canonical Newick string, rooted at the neighbour of the smallest leaf.

    Children are ordered by their smallest descendant leaf.  Topologies are
    written without lengths.
    """
    topo = t.topology if isinstance(t, PhyloTree) else t
    lengths = t.lengths if isinstance(t, PhyloTree) else None
    adj = topo.adjacency
    first = topo.leaves[0]

    def fmt(v, parent):
        if lengths is None:
            suffix = ""
        else:
            suffix = ":" + format_rational(lengths[_edge(v, parent)])
        if v > 0:
            return str(v) + suffix, v
        parts = [fmt(u, v) for u in adj[v] if u != parent]
        parts.sort(key=lambda p: p[1])
        return "(" + ",".join(p[0] for p in parts) + ")" + suffix, parts[0][1]

    if topo.n == 2:
        other = topo.leaves[1]
        if lengths is None:
            return f"({first},{other});"
        x = format_rational(lengths[_edge(first, other)])
        return f"({first}:{x},{other}:0);"
    root = adj[first][0]
    parts = [fmt(u, root) for u in adj[root]]
    parts.sort(key=lambda p: p[1])
    return "(" + ",".join(p[0] for p in parts) + ");"


# --- metric operations ----------------------------------------------------


def leaf_distance(t: PhyloTree, i: int, j: int) -> Fraction:
    for x in (i, j):
        if x not in t.topology.adjacency or x < 0:
            raise TreeError(f"unknown leaf {x}")
    if i == j:
        raise TreeError("leaf_distance needs two different leaves")
    return t.distances[(min(i, j), max(i, j))]


def spanned_subtree(t: PhyloTree, leaves: Iterable[int]) -> PhyloTree:
    """Minimal subtree joining ``leaves``, degree-2 vertices suppressed."""
    keep = set(leaves)
    if len(keep) < 2:
        raise TreeError("a spanned subtree needs at least two leaves")
    unknown = keep - set(t.leaves)
    if unknown:
        raise TreeError(f"unknown leaves {sorted(unknown)}")
    adj = {v: {} for v in t.topology.adjacency}
    for (u, v), x in t.lengths.items():
        adj[u][v] = x
        adj[v][u] = x
    stack = [v for v in adj if len(adj[v]) == 1 and v not in keep]
    while stack:
        v = stack.pop()
        if v not in adj or len(adj[v]) != 1 or v in keep:
            continue
        (u,) = adj[v]
        del adj[u][v], adj[v]
        if len(adj[u]) == 1 and u not in keep:
            stack.append(u)
    if len(keep) == 2:
        a, b = sorted(keep)
        return PhyloTree.from_edges([(a, b, leaf_distance(t, a, b))])
    return _suppress_and_build(adj)


def split_metric(g: Topology, e: Edge) -> PhyloTree:
    """Length 1 on ``e`` and 0 on every other edge."""
    e = _edge(*e)
    if e not in g.splits:
        raise TreeError(f"{e} is not an edge of the topology")
    return PhyloTree(g, {f: Fraction(int(f == e)) for f in g.edges})


def edge_split(t: PhyloTree | Topology, e: Edge) -> frozenset[int]:
    topo = t.topology if isinstance(t, PhyloTree) else t
    return topo.splits[_edge(*e)]


# --- enumeration ----------------------------------------------------------


def _insert_leaf(g: Topology, leaf: int, *, at_edge: Edge | None = None, at_vertex: int | None = None) -> Topology:
    new = min(min(g.adjacency), 0) - 1
    edges = list(g.edges)
    if at_edge is not None:
        u, v = at_edge
        edges.remove(at_edge)
        edges += [(u, new), (new, v), (new, leaf)]
    else:
        edges.append((at_vertex, leaf))
    return Topology(tuple(edges))


def _canonical_topology(g: Topology) -> Topology:
    return Topology(tuple((u, v) for u, v, _ in _relabel_internal((u, v, 0) for u, v in g.edges)))


def _grow(n: int, multifurcating: bool) -> list[Topology]:
    level = [Topology(((-1, 1), (-1, 2), (-1, 3)))]
    for leaf in range(4, n + 1):
        nxt = {}
        for g in level:
            cands = [_insert_leaf(g, leaf, at_edge=e) for e in g.edges]
            if multifurcating:
                cands += [_insert_leaf(g, leaf, at_vertex=v) for v in g.internal_vertices]
            for c in cands:
                nxt.setdefault(c.key(), c)
        level = list(nxt.values())
    return level


def _sort_key(g: Topology):
    return sorted(tuple(sorted(s)) for s in g.key())


def enumerate_topologies(n: int, mode: str = "all") -> list[Topology]:
    """All leaf-labelled trees on [n] up to isomorphism.

    ``mode`` is ``"all"``, ``"binary"`` or ``"one_degree4"`` (exactly one
    vertex of degree 4, all others of degree 3).
    """
    if not 3 <= n <= 9:
        raise ValueError(f"n = {n} is outside the supported range 3..9")
    if mode == "binary":
        out = _grow(n, False)
    elif mode == "all":
        out = _grow(n, True)
    elif mode == "one_degree4":
        if n < 4:
            return []
        found = {}
        for g in _grow(n, False):
            for e in g.edges:
                if not g.is_pendant(e):
                    c = contract_edge(g, e)
                    found.setdefault(c.key(), c)
        out = list(found.values())
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return sorted((_canonical_topology(g) for g in out), key=_sort_key)


def contract_edge(g: Topology, e: Edge) -> Topology:
    u, v = _edge(*e)
    if u > 0 or v > 0:
        raise TreeError("only internal edges can be contracted")
    edges = []
    for a, b in g.edges:
        if (a, b) == (u, v):
            continue
        edges.append((u if a == v else a, u if b == v else b))
    return Topology(tuple(edges))


Resolution = namedtuple("Resolution", "topology edge")


def resolutions(g: Topology, v: int) -> list[Resolution]:
    """The three ways to split a degree-4 vertex by a new internal edge.

    Returns ``(topology, new_edge)`` pairs ordered by the new edge's split.
    """
    if v not in g.adjacency or g.degree(v) != 4:
        raise TreeError(f"vertex {v} does not have degree 4")
    a, b, c, d = g.adjacency[v]
    new = min(g.adjacency) - 1
    out = []
    for moved in ((c, d), (b, d), (b, c)):
        edges = [e for e in g.edges if not (v in e and (e[0] in moved or e[1] in moved))]
        edges += [(new, x) for x in moved] + [(new, v)]
        topo = Topology(tuple(edges))
        out.append(Resolution(topo, _edge(new, v)))
    out.sort(key=lambda res: tuple(sorted(res.topology.splits[res.edge])))
    return out


def degree4_vertex(g: Topology) -> int:
    """The unique vertex of degree 4; error unless all others have degree <= 3."""
    big = [v for v in g.internal_vertices if g.degree(v) >= 4]
    if len(big) != 1 or g.degree(big[0]) != 4:
        raise TreeError("topology must have exactly one vertex of degree 4 and none larger")
    return big[0]


# --- random trees ---------------------------------------------------------


def _random_length(rng: random.Random, lo: int, hi: int) -> Fraction:
    q = rng.choice((1, 2, 3, 4, 5))
    return Fraction(rng.randint(lo * q, hi * q), q)


def random_topology(n: int, rng: random.Random, p_multi: float = 0.2) -> Topology:
    if n == 2:
        return Topology(((1, 2),))
    g = Topology(((-1, 1), (-1, 2), (-1, 3)))
    for leaf in range(4, n + 1):
        if rng.random() < p_multi:
            g = _insert_leaf(g, leaf, at_vertex=rng.choice(g.internal_vertices))
        else:
            g = _insert_leaf(g, leaf, at_edge=rng.choice(g.edges))
    return g


def random_tree(
    n: int,
    rng: random.Random,
    *,
    pendant: tuple[int, int] = (-2, 5),
    internal: tuple[int, int] = (0, 5),
    p_multi: float = 0.2,
    p_zero: float = 0.1,
) -> PhyloTree:
    """Random tree with random rational lengths (seed through ``rng``)."""
    g = random_topology(n, rng, p_multi)
    lengths = {}
    for e in g.edges:
        if g.is_pendant(e):
            lengths[e] = _random_length(rng, *pendant)
        elif rng.random() < p_zero:
            lengths[e] = Fraction(0)
        else:
            lengths[e] = _random_length(rng, *internal)
    return PhyloTree(g, lengths)


def star(n: int, length=1) -> PhyloTree:
    return PhyloTree.from_edges([(-1, i, length) for i in range(1, n + 1)])


def pairs(leaves: Sequence[int]):
    return combinations(sorted(leaves), 2)
