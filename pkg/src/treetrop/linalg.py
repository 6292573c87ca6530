"""Dense exact-rational matrices and the structured matrices used elsewhere:
the pair-sum matrix, its explicit left inverse, and the cube relation matrix.

No floating point is used anywhere in this module.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from .combinat import cube_relations, subset_index, subsets


class RationalMatrix:
    """Immutable dense matrix of :class:`~fractions.Fraction` entries."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged rows")
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RationalMatrix":
        return cls(([0] * n for _ in range(m)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"RationalMatrix({len(self.rows)}x{self.ncols})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows), len(self.rows)) if self.rows else RationalMatrix([], 0)

    T = property(transpose)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != len(other.rows):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        sparse_other = [[(j, x) for j, x in enumerate(row) if x] for row in other.rows]
        out = []
        for row in self.rows:
            acc = [Fraction(0)] * other.ncols
            for k, a in enumerate(row):
                if a:
                    for j, b in sparse_other[k]:
                        acc[j] += a * b
            out.append(acc)
        return RationalMatrix(out, other.ncols)

    def apply(self, vec: Sequence) -> list[Fraction]:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return [sum((a * b for a, b in zip(row, vec) if a), Fraction(0)) for row in self.rows]

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix((self.rows[i] for i in idx), self.ncols)

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return RationalMatrix(self.rows + other.rows, self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def rank(self) -> int:
        return rank(self)

    def dumps(self) -> str:
        return dump_matrix(self)


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for row in m.rows:
        den = reduce(lcm, (x.denominator for x in row), 1)
        out.append([int(x * den) for x in row])
    return out


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    return [x // g for x in row] if g > 1 else row


def rank(m: RationalMatrix) -> int:
    """Exact rank.

    Rows are cleared of denominators and eliminated over the integers; each
    step pivots on the entry of smallest bit length in the current column and
    keeps rows primitive (content 1) to limit coefficient growth.
    """
    rows = [r for r in (_primitive(r) for r in _integer_rows(m)) if any(r)]
    rk = 0
    for col in range(m.ncols):
        cands = [i for i in range(rk, len(rows)) if rows[i][col]]
        if not cands:
            continue
        p = min(cands, key=lambda i: (abs(rows[i][col]).bit_length(), i))
        rows[rk], rows[p] = rows[p], rows[rk]
        piv = rows[rk]
        a = piv[col]
        for i in range(rk + 1, len(rows)):
            b = rows[i][col]
            if b:
                g = gcd(a, b)
                fa, fb = a // g, b // g
                rows[i] = _primitive([fa * x - fb * y for x, y in zip(rows[i], piv)])
        rk += 1
        if rk == len(rows):
            break
    return rk


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots = []
    rk = 0
    for col in range(m.ncols):
        p = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        inv = 1 / rows[rk][col]
        rows[rk] = [x * inv for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        pivots.append(col)
        rk += 1
    return rows[:rk], pivots


def normalize_integer(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale to coprime integers with a positive first nonzero entry."""
    den = reduce(lcm, (Fraction(x).denominator for x in vec), 1)
    ints = [int(Fraction(x) * den) for x in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    lead = next(x for x in ints if x)
    sign = 1 if lead > 0 else -1
    return tuple(sign * x // g for x in ints)


def right_kernel_basis(m: RationalMatrix) -> list[tuple[int, ...]]:
    """Basis of {v : m v = 0}, one vector per free column, normalized."""
    red, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(normalize_integer(v))
    return basis


def left_kernel_basis(m: RationalMatrix) -> list[tuple[int, ...]]:
    """Basis of {v : v m = 0}; integer vectors with gcd 1 and leading sign +."""
    if not m.rows:
        return []
    return right_kernel_basis(m.transpose())


def det(m: RationalMatrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    den = reduce(lambda a, b: a * b, (reduce(lcm, (x.denominator for x in row), 1) for row in m.rows), 1)
    a = _integer_rows(m)
    scale = Fraction(1, den)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            p = next((i for i in range(c + 1, n) if a[i][c]), None)
            if p is None:
                return Fraction(0)
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1] * scale


# --- dump format ----------------------------------------------------------


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dump_matrix(m: RationalMatrix) -> str:
    """One row per line, entries as integers or p/q separated by single spaces."""
    return "".join(" ".join(_fmt(x) for x in row) + "\n" for row in m.rows)


def load_matrix(text: str) -> RationalMatrix:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    return RationalMatrix(rows)


# --- structured matrices --------------------------------------------------


def _check_range(n: int, r: int, lo: int, hi: int):
    if not lo <= r <= hi:
        raise ValueError(f"r = {r} outside {lo}..{hi} for n = {n}")


@lru_cache(maxsize=64)
def trop_phi_matrix(n: int, r: int) -> RationalMatrix:
    """C(n,r) x C(n,2) incidence matrix: entry 1 iff the pair lies in the r-subset."""
    _check_range(n, r, 2, n)
    col = subset_index(n, 2)
    out = []
    for s in subsets(n, r):
        row = [0] * len(col)
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                row[col[(s[i], s[j])]] = 1
        out.append(row)
    return RationalMatrix(out, len(col))


@lru_cache(maxsize=64)
def left_inverse_matrix(n: int, r: int) -> RationalMatrix:
    """Explicit left inverse of :func:`trop_phi_matrix`, shape C(n,2) x C(n,r).

    The entry depends only on how many elements the pair shares with the
    r-subset.
    """
    _check_range(n, r, 2, n - 2)
    value = {
        2: Fraction(1, comb(n - 2, r - 2)),
        1: -Fraction(r - 2, r - 1) / comb(n - 2, r - 1),
        0: Fraction(r - 2, r) / comb(n - 2, r),
    }
    cols = subsets(n, r)
    out = []
    for pair in subsets(n, 2):
        a, b = pair
        out.append([value[(a in s) + (b in s)] for s in cols])
    return RationalMatrix(out, len(cols))


@lru_cache(maxsize=64)
def cube_relation_matrix(n: int, r: int) -> RationalMatrix:
    """Rows: +1 on the four black columns and -1 on the four white columns of
    every cube relation; zero rows unless 3 <= r <= n-3."""
    col = subset_index(n, r)
    out = []
    for rel in cube_relations(n, r):
        row = [0] * len(col)
        for s in rel.black:
            row[col[s]] += 1
        for s in rel.white:
            row[col[s]] -= 1
        out.append(row)
    return RationalMatrix(out, len(col))
