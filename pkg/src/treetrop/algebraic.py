"""Exact evaluation of the polynomial identities behind the tropical results.

Points are :class:`SubsetVector` s of Pluecker coordinates x_I (I sorted).
The monomial map ``phi_r`` sends pair coordinates x_ij to
x_I = prod of x_ij over pairs in I; on 2 x n matrices it agrees with the
maximal minors of the column-wise Veronese lift.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .combinat import Cube, InvalidSubsetError, relabel_cube, sort_sign, subset_index, subsets
from .dissim import SubsetVector
from .linalg import RationalMatrix, det


class ZeroCoordinateError(ValueError):
    pass


class PlueckerVector(SubsetVector):
    """Point of the torus: every coordinate nonzero."""

    kind = "pluecker"
    __slots__ = ()

    def __init__(self, n, r, values):
        super().__init__(n, r, values)
        for s, x in self.items():
            if x == 0:
                raise ZeroCoordinateError(f"coordinate {s} is zero")


def pluecker_2n(m: Sequence[Sequence]) -> PlueckerVector:
    """The 2 x 2 minors of a 2 x n matrix, in lex order of column pairs."""
    if len(m) != 2 or len(m[0]) != len(m[1]):
        raise ValueError("expected a 2 x n matrix")
    top = [Fraction(x) for x in m[0]]
    bot = [Fraction(x) for x in m[1]]
    n = len(top)
    vals = []
    for i, j in subsets(n, 2):
        minor = top[i - 1] * bot[j - 1] - top[j - 1] * bot[i - 1]
        if minor == 0:
            raise ZeroCoordinateError(f"minor on columns ({i}, {j}) vanishes")
        vals.append(minor)
    return PlueckerVector(n, 2, vals)


def veronese_lift(m: Sequence[Sequence], r: int) -> RationalMatrix:
    """Apply the degree r-1 Veronese map to each column: rows x^(r-1-k) y^k."""
    top = [Fraction(x) for x in m[0]]
    bot = [Fraction(x) for x in m[1]]
    return RationalMatrix([[x ** (r - 1 - k) * y**k for x, y in zip(top, bot)] for k in range(r)])


def maximal_minors(a: RationalMatrix) -> SubsetVector:
    r, n = a.shape
    cols = list(zip(*a.rows))
    return SubsetVector(n, r, (det(RationalMatrix(zip(*(cols[i - 1] for i in s)))) for s in subsets(n, r)))


def phi_r(x: SubsetVector, r: int) -> PlueckerVector:
    if x.r != 2:
        raise ValueError("phi_r expects pair coordinates")
    if not 2 <= r <= x.n:
        raise ValueError(f"r = {r} outside 2..{x.n}")
    for s, v in x.items():
        if v == 0:
            raise ZeroCoordinateError(f"coordinate {s} is zero")
    idx = subset_index(x.n, 2)
    return PlueckerVector(
        x.n, r, (prod((x.values[idx[p]] for p in combinations(s, 2)), start=Fraction(1)) for s in subsets(x.n, r))
    )


def eval_psi(x: SubsetVector, cube: Cube, I: Sequence[int], J: Sequence[int]) -> Fraction:
    """Product of x over the black columns J+K minus product over the white ones.

    ``cube`` lives on {1..6} and is relabelled onto ``I``.
    """
    I, J = tuple(sorted(I)), tuple(sorted(J))
    if len(I) != 6:
        raise InvalidSubsetError("I must have six elements")
    if set(I) & set(J):
        raise InvalidSubsetError(f"J = {J} meets I = {I}")
    if len(J) != x.r - 3:
        raise InvalidSubsetError(f"J must have {x.r - 3} elements for r = {x.r}")
    c = relabel_cube(cube, I)
    black = prod((x.get(J + k) for k in c.black), start=Fraction(1))
    white = prod((x.get(J + k) for k in c.white), start=Fraction(1))
    return black - white


def _signed(x: SubsetVector, idx: Sequence[int]) -> Fraction:
    return sort_sign(idx) * x.get(idx)


def _check_quad(x: SubsetVector, i, j, k, l, A):
    if not i < j < k < l:
        raise InvalidSubsetError("need i < j < k < l")
    if set(A) & {i, j, k, l}:
        raise InvalidSubsetError("A must avoid i, j, k, l")
    if len(set(A)) != x.r - 2:
        raise InvalidSubsetError(f"A must have {x.r - 2} distinct elements")


def eval_three_term(x: SubsetVector, i: int, j: int, k: int, l: int, A: Sequence[int]) -> Fraction:
    """x_ijA x_klA - x_ikA x_jlA + x_ilA x_jkA, each index list sorted with its sign."""
    A = tuple(A)
    _check_quad(x, i, j, k, l, A)

    def t(a, b):
        return _signed(x, (a, b) + A)

    return t(i, j) * t(k, l) - t(i, k) * t(j, l) + t(i, l) * t(j, k)


def pullback_factor(x2: SubsetVector, i, j, k, l, A) -> Fraction:
    """(x_ij x_kl - x_ik x_jl + x_il x_jk) * prod x_B^2 (B pair in A) * prod x_it x_jt x_kt x_lt."""
    A = tuple(A)
    quad = x2.get((i, j)) * x2.get((k, l)) - x2.get((i, k)) * x2.get((j, l)) + x2.get((i, l)) * x2.get((j, k))
    inner = prod((x2.get(b) ** 2 for b in combinations(A, 2)), start=Fraction(1))
    cross = prod((x2.get((p, t)) for t in A for p in (i, j, k, l)), start=Fraction(1))
    return quad * inner * cross


def pullback_sign(i, j, k, l, A) -> int:
    """Common sign of the three products after sorting each index list.

    sign(ijA) sign(klA) = sign(ikA) sign(jlA) = sign(ilA) sign(jkA).
    """
    A = tuple(A)
    return sort_sign((i, j) + A) * sort_sign((k, l) + A)


def pullback_identity_check(x2: SubsetVector, i: int, j: int, k: int, l: int, A: Sequence[int]) -> bool:
    """Check that phi_r pulls the three-term relation back to the pair relation
    times the monomial factor (up to the sorting sign), exactly."""
    A = tuple(A)
    r = len(A) + 2
    lhs = eval_three_term(phi_r(x2, r), i, j, k, l, A)
    return lhs == pullback_sign(i, j, k, l, A) * pullback_factor(x2, i, j, k, l, A)


# --- random samples -------------------------------------------------------


def random_matrix_2n(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> list[list[Fraction]]:
    """Random rational 2 x n matrix with all 2 x 2 minors nonzero (rejection)."""
    while True:
        m = [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(n)] for _ in range(2)]
        try:
            pluecker_2n(m)
        except ZeroCoordinateError:
            continue
        return m


def random_torus_point(n: int, r: int, rng: random.Random, lo: int = -9, hi: int = 9) -> PlueckerVector:
    vals = []
    for _ in subsets(n, r):
        v = 0
        while v == 0:
            v = Fraction(rng.randint(lo, hi), rng.randint(1, 4))
        vals.append(v)
    return PlueckerVector(n, r, vals)


def identity_report(n: int, r: int, trials: int, seed: int) -> dict:
    """Count nonzero evaluations of psi, three-term and pullback identities."""
    from .combinat import cube_relations, enumerate_cubes

    rng = random.Random(seed)
    cubes = enumerate_cubes()
    rels = [(rel.ground, rel.shift, cubes[rel.cube_id]) for rel in cube_relations(n, r)]
    quads = [(q, A) for q in subsets(n, 4) for A in combinations([t for t in range(1, n + 1) if t not in q], r - 2)]
    psi_bad = three_bad = pull_bad = 0
    for _ in range(trials):
        x = phi_r(pluecker_2n(random_matrix_2n(n, rng)), r)
        psi_bad += sum(1 for I, J, c in rels if eval_psi(x, c, I, J) != 0)
        three_bad += sum(1 for q, A in quads if eval_three_term(x, *q, A) != 0)
        x2 = random_torus_point(n, 2, rng)
        for q in subsets(n, 4):
            A = next(combinations([t for t in range(1, n + 1) if t not in q], r - 2))
            pull_bad += not pullback_identity_check(x2, *q, A)
    return {
        "n": n,
        "r": r,
        "trials": trials,
        "seed": seed,
        "psi_evaluations": trials * len(rels),
        "psi_nonzero": psi_bad,
        "three_term_evaluations": trials * len(quads),
        "three_term_nonzero": three_bad,
        "pullback_checks": trials * len(subsets(n, 4)),
        "pullback_failures": pull_bad,
        "ok": psi_bad == 0 and three_bad == 0 and pull_bad == 0,
    }
