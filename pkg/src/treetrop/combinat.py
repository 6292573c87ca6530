"""Subsets of [n] in lexicographic order, and the 15 cube subgraphs of the
triple graph on [6].

Subsets are plain sorted tuples of 1-based integers.  Lexicographic order on
sorted tuples is the one ordering used everywhere in the package (it is also
the order produced by :func:`itertools.combinations`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence


class InvalidSubsetError(ValueError):
    pass


def check_subset(s: Sequence[int], n: int) -> tuple[int, ...]:
    """Return ``s`` as a tuple after checking it is a valid subset of [n]."""
    s = tuple(s)
    if not s:
        raise InvalidSubsetError("subset must be non-empty")
    for a, b in zip(s, s[1:]):
        if a >= b:
            raise InvalidSubsetError(f"subset {s} is not strictly increasing")
    if s[0] < 1 or s[-1] > n:
        raise InvalidSubsetError(f"subset {s} has an element outside 1..{n}")
    return s


def lex_rank(s: Sequence[int], n: int) -> int:
    """0-based position of ``s`` among the ``len(s)``-subsets of [n]."""
    s = check_subset(s, n)
    r = len(s)
    rank = 0
    prev = 0
    for i, x in enumerate(s, start=1):
        # subsets that agree so far but have a smaller i-th element
        for v in range(prev + 1, x):
            rank += comb(n - v, r - i)
        prev = x
    return rank


def lex_unrank(k: int, n: int, r: int) -> tuple[int, ...]:
    total = comb(n, r)
    if r < 1 or not 0 <= k < total:
        raise InvalidSubsetError(f"rank {k} out of range for C({n},{r}) = {total}")
    out = []
    v = 1
    for i in range(1, r + 1):
        while True:
            block = comb(n - v, r - i)
            if k < block:
                break
            k -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


@lru_cache(maxsize=None)
def subsets(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All r-subsets of [n] in lex order."""
    return tuple(itertools.combinations(range(1, n + 1), r))


@lru_cache(maxsize=None)
def subset_index(n: int, r: int) -> dict[tuple[int, ...], int]:
    """Lookup table subset -> lex rank; faster than :func:`lex_rank` in loops."""
    return {s: i for i, s in enumerate(subsets(n, r))}


def to_mask(s: Sequence[int]) -> int:
    m = 0
    for x in s:
        m |= 1 << x
    return m


def sort_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has a repeat)."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


# --- cubes ---------------------------------------------------------------

TRIPLES = subsets(6, 3)


@dataclass(frozen=True)
class Cube:
    """A cube subgraph of the graph on 3-subsets of a 6-set.

    Two triples are adjacent when they share two elements.  ``black`` holds
    the colour class containing the lex-smallest vertex.
    """

    id: int
    black: tuple[tuple[int, ...], ...]
    white: tuple[tuple[int, ...], ...]

    @property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.black + self.white))

    def ground_set(self) -> tuple[int, ...]:
        return tuple(sorted({x for t in self.vertices for x in t}))


def _adjacent(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(set(a) & set(b)) == 2


@lru_cache(maxsize=1)
def _triple_adjacency() -> tuple[int, ...]:
    adj = []
    for a in TRIPLES:
        m = 0
        for j, b in enumerate(TRIPLES):
            if _adjacent(a, b):
                m |= 1 << j
        adj.append(m)
    return tuple(adj)


def _two_colour(vertices: Sequence[int], adj: Sequence[int]):
    """BFS 2-colouring of the induced subgraph; None if not bipartite."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    colour = {vertices[0]: 0}
    queue = [vertices[0]]
    while queue:
        v = queue.pop()
        nbrs = adj[v] & mask
        while nbrs:
            low = nbrs & -nbrs
            u = low.bit_length() - 1
            nbrs ^= low
            if u not in colour:
                colour[u] = 1 - colour[v]
                queue.append(u)
            elif colour[u] == colour[v]:
                return None
    if len(colour) != len(vertices):
        return None
    return colour


@lru_cache(maxsize=1)
def enumerate_cubes() -> tuple[Cube, ...]:
    """The 15 cubes, found by brute force over all 8-subsets of the 20 triples.

    An induced subgraph on 8 vertices that is 3-regular and bipartite is
    K_{4,4} minus a perfect matching, i.e. the cube graph.
    """
    adj = _triple_adjacency()
    found = []
    for combo in itertools.combinations(range(len(TRIPLES)), 8):
        mask = 0
        for v in combo:
            mask |= 1 << v
        if any((adj[v] & mask).bit_count() != 3 for v in combo):
            continue
        colour = _two_colour(combo, adj)
        if colour is None:
            continue
        # combo is increasing, so combo[0] is the lex-smallest triple
        first = colour[combo[0]]
        black = tuple(TRIPLES[v] for v in combo if colour[v] == first)
        white = tuple(TRIPLES[v] for v in combo if colour[v] != first)
        found.append((black, white))
    found.sort(key=lambda bw: sorted(bw[0] + bw[1]))
    if len(found) != 15:
        raise RuntimeError(f"expected 15 cubes, brute force found {len(found)}")
    return tuple(Cube(i, b, w) for i, (b, w) in enumerate(found))


def relabel_cube(cube: Cube, ground: Sequence[int]) -> Cube:
    """Push ``cube`` through the increasing bijection [6] -> ``ground``."""
    ground = tuple(sorted(ground))
    if len(ground) != 6 or len(set(ground)) != 6:
        raise InvalidSubsetError(f"need 6 distinct elements, got {ground}")

    def image(t):
        return tuple(ground[x - 1] for x in t)

    return Cube(cube.id, tuple(map(image, cube.black)), tuple(map(image, cube.white)))


@dataclass(frozen=True)
class CubeRelation:
    """One linear relation: sum of black columns minus sum of white columns."""

    ground: tuple[int, ...]  # the 6-subset I
    shift: tuple[int, ...]  # J, disjoint from I, size r-3
    cube_id: int
    black: tuple[tuple[int, ...], ...]  # the r-subsets J+K for K black
    white: tuple[tuple[int, ...], ...]


def cube_relations(n: int, r: int) -> Iterator[CubeRelation]:
    """All (I, J, cube) triples for r-subsets of [n], in lex order of I, J, cube.

    Empty unless 3 <= r <= n-3.
    """
    if r < 3 or r > n - 3:
        return
    cubes = enumerate_cubes()
    for ground in subsets(n, 6):
        rest = [x for x in range(1, n + 1) if x not in ground]
        relabelled = [relabel_cube(c, ground) for c in cubes]
        for shift in itertools.combinations(rest, r - 3):
            for c in relabelled:
                yield CubeRelation(
                    ground,
                    shift,
                    c.id,
                    tuple(tuple(sorted(shift + k)) for k in c.black),
                    tuple(tuple(sorted(shift + k)) for k in c.white),
                )
