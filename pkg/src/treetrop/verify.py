"""Recompute the reference matrices, ranks and cubes from scratch and compare
them with transcribed reference data.

Each check returns a :class:`Check`; :func:`run_all` collects them.  The
reference matrices live in ``treetrop/data`` unless another directory is
given.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from pathlib import Path

from .balancing import CLASSIC, WEIGHTED, star_matrix, three_cherry_star
from .combinat import enumerate_cubes
from .linalg import (
    RationalMatrix,
    cube_relation_matrix,
    left_inverse_matrix,
    left_kernel_basis,
    load_matrix,
    rank,
    trop_phi_matrix,
)

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_FILES = {CLASSIC: "classic_7_4.txt", WEIGHTED: "weighted_7_4.txt"}

EXPECTED_RANKS = {CLASSIC: 13, WEIGHTED: 12}
EXPECTED_KERNEL = (0, 0, 0, 0, 0, 0, 1, 1, 1, 1, -1, -1, -1)
EXAMPLE_CUBE_BLACK = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))
EXAMPLE_CUBE_WHITE = ((1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6))


@dataclass
class Check:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "ok" if self.ok else "fail", **self.details}


def load_golden(kind: str, golden_dir: Path | str | None = None) -> RationalMatrix:
    path = Path(golden_dir or DATA_DIR) / GOLDEN_FILES[kind]
    return load_matrix(path.read_text())


def row_permutation(ours: RationalMatrix, golden: RationalMatrix) -> list[int] | None:
    """perm with golden.rows[k] == ours.rows[perm[k]], or None if the row
    multisets differ."""
    if ours.shape != golden.shape or Counter(ours.rows) != Counter(golden.rows):
        return None
    unused: dict = {}
    for i, row in enumerate(ours.rows):
        unused.setdefault(row, []).append(i)
    return [unused[row].pop(0) for row in golden.rows]


def _check_matrix(kind: str, golden_dir) -> Check:
    ours = star_matrix(three_cherry_star(), 4, kind)
    try:
        golden = load_golden(kind, golden_dir)
    except (OSError, ValueError) as exc:
        return Check(f"{kind}_matrix", False, {"error": str(exc)})
    perm = row_permutation(ours, golden)
    rk = rank(ours)
    details = {
        "shape": list(ours.shape),
        "matches_golden_up_to_row_order": perm is not None,
        "rank": rk,
        "expected_rank": EXPECTED_RANKS[kind],
    }
    return Check(f"{kind}_matrix", perm is not None and rk == EXPECTED_RANKS[kind], details)


def check_classic_matrix(golden_dir=None) -> Check:
    return _check_matrix(CLASSIC, golden_dir)


def check_weighted_matrix(golden_dir=None) -> Check:
    return _check_matrix(WEIGHTED, golden_dir)


def check_kernel_vector(golden_dir=None) -> Check:
    """Left kernel of the weighted matrix with rows in the reference order."""
    ours = star_matrix(three_cherry_star(), 4, WEIGHTED)
    try:
        golden = load_golden(WEIGHTED, golden_dir)
    except (OSError, ValueError) as exc:
        return Check("kernel_vector", False, {"error": str(exc)})
    perm = row_permutation(ours, golden)
    if perm is None:
        return Check("kernel_vector", False, {"error": "weighted matrix does not match the reference rows"})
    kernel = left_kernel_basis(ours.select_rows(perm))
    ok = kernel == [EXPECTED_KERNEL]
    return Check(
        "kernel_vector",
        ok,
        {"kernel": [list(v) for v in kernel], "expected": list(EXPECTED_KERNEL)},
    )


def check_cubes() -> Check:
    cubes = enumerate_cubes()
    found = any(c.black == EXAMPLE_CUBE_BLACK and c.white == EXAMPLE_CUBE_WHITE for c in cubes)
    return Check("cubes", len(cubes) == 15 and found, {"count": len(cubes), "example_cube_found": found})


def check_left_inverse(n: int = 7, r: int = 4) -> Check:
    prod = left_inverse_matrix(n, r) @ trop_phi_matrix(n, r)
    ok = prod == RationalMatrix.identity(comb(n, 2))
    return Check("left_inverse", ok, {"n": n, "r": r, "is_identity": ok})


def check_cube_ranks(cases=((6, 3), (7, 4))) -> Check:
    rows = []
    ok = True
    for n, r in cases:
        rk = rank(cube_relation_matrix(n, r))
        want = comb(n, r) - comb(n, 2)
        ok &= rk == want
        rows.append({"n": n, "r": r, "rank": rk, "expected": want})
    return Check("cube_relation_rank", ok, {"cases": rows})


def run_all(golden_dir=None) -> list[Check]:
    return [
        check_classic_matrix(golden_dir),
        check_weighted_matrix(golden_dir),
        check_kernel_vector(golden_dir),
        check_cubes(),
        check_left_inverse(),
        check_cube_ranks(),
    ]
