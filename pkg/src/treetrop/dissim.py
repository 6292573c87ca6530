"""Vectors indexed by r-subsets and the dissimilarity maps on trees.

``d2``          pairwise leaf distances
``d_classic``   total edge length of each spanned subtree
``d_weighted``  sum of all pairwise distances inside each spanned subtree
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .combinat import InvalidSubsetError, check_subset, subset_index, subsets, to_mask
from .linalg import left_inverse_matrix, trop_phi_matrix
from .tree import PhyloTree, format_rational, parse_length, spanned_subtree


class VectorFormatError(ValueError):
    pass


class SubsetVector:
    """Total map from the r-subsets of [n] (lex order) to exact rationals."""

    kind = "dissimilarity"
    __slots__ = ("n", "r", "values")

    def __init__(self, n: int, r: int, values: Iterable):
        values = tuple(Fraction(x) for x in values)
        if not 1 <= r <= n:
            raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
        if len(values) != comb(n, r):
            raise ValueError(f"expected {comb(n, r)} entries, got {len(values)}")
        self.n = n
        self.r = r
        self.values = values

    @classmethod
    def from_mapping(cls, n: int, r: int, entries: Mapping) -> "SubsetVector":
        idx = subset_index(n, r)
        vals = [None] * len(idx)
        for key, x in entries.items():
            s = check_subset(key, n)
            if len(s) != r:
                raise InvalidSubsetError(f"subset {s} does not have size {r}")
            vals[idx[s]] = x
        missing = [subsets(n, r)[i] for i, x in enumerate(vals) if x is None]
        if missing:
            raise VectorFormatError(f"missing entries for {missing[:5]}")
        return cls(n, r, vals)

    @classmethod
    def zeros(cls, n: int, r: int) -> "SubsetVector":
        return cls(n, r, [0] * comb(n, r))

    def __getitem__(self, s) -> Fraction:
        s = tuple(s)
        try:
            return self.values[subset_index(self.n, self.r)[s]]
        except KeyError:
            raise InvalidSubsetError(f"{s} is not an increasing {self.r}-subset of 1..{self.n}") from None

    def get(self, s) -> Fraction:
        """Lookup by an unsorted index collection."""
        return self[tuple(sorted(s))]

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return zip(subsets(self.n, self.r), self.values)

    def replace(self, s, value) -> "SubsetVector":
        vals = list(self.values)
        vals[subset_index(self.n, self.r)[tuple(s)]] = Fraction(value)
        return type(self)(self.n, self.r, vals)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, SubsetVector):
            return NotImplemented
        return (self.n, self.r, self.values) == (other.n, other.r, other.values)

    def __hash__(self):
        return hash((self.n, self.r, self.values))

    def __add__(self, other: "SubsetVector") -> "SubsetVector":
        if (self.n, self.r) != (other.n, other.r):
            raise ValueError("shape mismatch")
        return SubsetVector(self.n, self.r, (a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "SubsetVector") -> "SubsetVector":
        return self + (-1) * other

    def __rmul__(self, c) -> "SubsetVector":
        c = Fraction(c)
        return SubsetVector(self.n, self.r, (c * x for x in self.values))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, r={self.r})"

    def to_dict(self) -> dict:
        out = {"n": self.n, "r": self.r}
        if self.kind != "dissimilarity":
            out["kind"] = self.kind
        out["entries"] = {",".join(map(str, s)): format_rational(x) for s, x in self.items()}
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _parse_value(x, promote_decimals: bool) -> Fraction:
    if isinstance(x, bool):
        raise VectorFormatError(f"bad entry {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if "." in text or "e" in text.lower():
            if not promote_decimals:
                raise VectorFormatError(f"decimal entry {x!r} needs exact decimal promotion")
        try:
            return parse_length(text)
        except ValueError:
            raise VectorFormatError(f"bad entry {x!r}") from None
    raise VectorFormatError(f"bad entry {x!r}")


class _Decimal(str):
    """Marker for a JSON float literal, kept as text so it converts exactly."""


def vector_from_dict(data: Mapping, promote_decimals: bool = False) -> SubsetVector:
    try:
        n, r, entries = int(data["n"]), int(data["r"]), data["entries"]
    except (KeyError, TypeError, ValueError):
        raise VectorFormatError("vector JSON needs integer 'n', 'r' and an 'entries' object") from None
    parsed = {}
    for key, x in entries.items():
        try:
            s = tuple(int(p) for p in key.split(","))
        except ValueError:
            raise VectorFormatError(f"bad subset key {key!r}") from None
        if isinstance(x, _Decimal):
            if not promote_decimals:
                raise VectorFormatError(f"floating-point entry {x} needs exact decimal promotion")
            x = str(x)
        parsed[s] = _parse_value(x, promote_decimals)
    if len(parsed) != len(entries):
        raise VectorFormatError("duplicate subset keys")
    if data.get("kind") == "pluecker":
        from .algebraic import PlueckerVector

        return PlueckerVector.from_mapping(n, r, parsed)
    return SubsetVector.from_mapping(n, r, parsed)


def vector_from_json(text: str, promote_decimals: bool = False) -> SubsetVector:
    """Parse the canonical JSON vector format.

    Float literals are rejected unless ``promote_decimals`` is set, in which
    case their decimal text is converted exactly.
    """
    try:
        data = json.loads(text, parse_float=_Decimal)
    except json.JSONDecodeError as exc:
        raise VectorFormatError(f"invalid JSON: {exc}") from None
    return vector_from_dict(data, promote_decimals)


# --- dissimilarity maps ---------------------------------------------------


def _check_tree_labels(t: PhyloTree):
    if t.leaves != tuple(range(1, t.n + 1)):
        raise ValueError("tree leaves must be labelled 1..n")


def _check_r(n: int, r: int, hi: int):
    if not 2 <= r <= hi:
        raise ValueError(f"r = {r} outside 2..{hi} for n = {n}")


def d2(t: PhyloTree) -> SubsetVector:
    _check_tree_labels(t)
    dist = t.distances
    return SubsetVector(t.n, 2, (dist[p] for p in subsets(t.n, 2)))


def d_classic(t: PhyloTree, r: int) -> SubsetVector:
    """Total length of each spanned subtree.

    An edge lies in the subtree spanned by I exactly when I meets both sides
    of its split, so each entry is a sum over separating edges.
    """
    _check_tree_labels(t)
    _check_r(t.n, r, t.n)
    splits = t.topology.splits
    masks = [(to_mask(splits[e]), x) for e, x in t.lengths.items() if x]
    full = to_mask(t.leaves)
    out = []
    for s in subsets(t.n, r):
        m = to_mask(s)
        out.append(sum((x for side, x in masks if m & side and m & (full ^ side)), Fraction(0)))
    return SubsetVector(t.n, r, out)


def d_classic_by_subtrees(t: PhyloTree, r: int) -> SubsetVector:
    """Same as :func:`d_classic`, built from explicit spanned subtrees."""
    _check_tree_labels(t)
    _check_r(t.n, r, t.n)
    return SubsetVector(t.n, r, (spanned_subtree(t, s).total_length() for s in subsets(t.n, r)))


def d_weighted(t: PhyloTree, r: int) -> SubsetVector:
    _check_tree_labels(t)
    _check_r(t.n, r, t.n)
    dist = t.distances
    return SubsetVector(
        t.n,
        r,
        (sum((dist[p] for p in combinations(s, 2)), Fraction(0)) for s in subsets(t.n, r)),
    )


def apply_trop_phi(v: SubsetVector, r: int) -> SubsetVector:
    """Send a pair vector x to the r-subset vector I -> sum of x over pairs in I."""
    if v.r != 2:
        raise ValueError("apply_trop_phi expects a vector indexed by pairs")
    _check_r(v.n, r, v.n)
    return SubsetVector(v.n, r, trop_phi_matrix(v.n, r).apply(v.values))


def recover_d2(w: SubsetVector) -> SubsetVector:
    """Pair vector obtained through the explicit left inverse."""
    _check_r(w.n, w.r, w.n - 2)
    return SubsetVector(w.n, 2, left_inverse_matrix(w.n, w.r).apply(w.values))
