import random

import pytest

from treetrop.balancing import CLASSIC, WEIGHTED, BalancingReport, audit, audit_all, star_matrix
from treetrop.dissim import d2
from treetrop.linalg import left_kernel_basis, rank
from treetrop.tree import Topology, TreeError, degree4_vertex, enumerate_topologies, parse_newick, resolutions, split_metric, star
from treetrop.verify import EXPECTED_KERNEL, load_golden, row_permutation


def test_classic_matrix_matches_reference(cherry_star):
    m = star_matrix(cherry_star, 4, CLASSIC)
    assert m.shape == (13, 35)
    perm = row_permutation(m, load_golden(CLASSIC))
    assert perm is not None
    assert m.select_rows(perm) == load_golden(CLASSIC)
    assert rank(m) == 13


def test_weighted_matrix_matches_reference(cherry_star):
    m = star_matrix(cherry_star, 4, WEIGHTED)
    perm = row_permutation(m, load_golden(WEIGHTED))
    assert m.select_rows(perm) == load_golden(WEIGHTED)
    assert rank(m) == 12
    assert left_kernel_basis(m.select_rows(perm)) == [EXPECTED_KERNEL]


def test_reference_row_order(cherry_star):
    """Reference order: leaf edges, internal edges cutting {5,6}, {3,4}, {1,2},
    then the new edges cutting {5,6,7}, {3,4,7}, {3,4,5,6}."""
    m = star_matrix(cherry_star, 4, CLASSIC)
    assert row_permutation(m, load_golden(CLASSIC)) == [0, 1, 2, 3, 4, 5, 6, 9, 7, 8, 12, 11, 10]


def test_star_r2():
    g = star(4).topology
    m = star_matrix(g, 2, CLASSIC)
    assert m.shape == (7, 6)
    quartet_rows = set()
    for side in ({3, 4}, {2, 4}, {2, 3}):
        quartet_rows.add(tuple(int((a in side) != (b in side)) for a, b in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]))
    assert {tuple(row) for row in m.rows[4:]} == quartet_rows


def test_star_matrix_needs_degree4():
    g = parse_newick("((1,2),3,(4,5));").topology
    with pytest.raises(TreeError):
        star_matrix(g, 2)
    with pytest.raises(ValueError):
        star_matrix(star(4).topology, 2, "other")


def test_audit_classic_r4(cherry_star):
    rep = audit(cherry_star, 4, CLASSIC)
    assert (rep.base_rank, rep.full_rank, rep.dependent_mod_base) == (10, 13, False)
    assert rep.kernel_vector is None


def test_audit_weighted_r4(cherry_star):
    rep = audit(cherry_star, 4, WEIGHTED)
    assert (rep.full_rank, rep.dependent_mod_base) == (12, True)
    assert rep.kernel_vector == EXPECTED_KERNEL


def test_audit_r2(cherry_star):
    for kind in (CLASSIC, WEIGHTED):
        rep = audit(cherry_star, 2, kind)
        assert rep.dependent_mod_base


def test_report_dict(cherry_star):
    data = audit(cherry_star, 4, WEIGHTED).to_dict()
    assert data["kernel_vector"] == list(EXPECTED_KERNEL)
    assert data["dependent_mod_base"] is True
    assert data["topology"] == "(1,2,((3,4),(5,6),7));"
    rep = BalancingReport(7, 4, CLASSIC, "", 10, 12)
    assert rep.dependent_mod_base


def test_audit_all_r2_dependent():
    reps = audit_all(6, 2, CLASSIC)
    assert len(reps) == 105
    assert all(r.dependent_mod_base for r in reps)


def test_audit_all_small_weighted():
    for n, r in [(5, 2), (5, 3), (6, 3), (6, 4)]:
        assert all(rep.dependent_mod_base for rep in audit_all(n, r, WEIGHTED))


def test_audit_all_range():
    with pytest.raises(ValueError):
        audit_all(9, 4)
    with pytest.raises(ValueError):
        audit_all(6, 7)


def test_kernel_reads_as_incident_edges_minus_new_edges():
    """Sum of the three new-edge images equals the sum over the four edges at
    the degree-4 vertex."""
    for g in enumerate_topologies(6, "one_degree4"):
        rep = audit(g, 3, WEIGHTED)
        assert rep.kernel_vector is not None
        v = degree4_vertex(g)
        edges = g.canonical_edges()
        expected = [1 if v in e else 0 for e in edges] + [-1, -1, -1]
        assert list(rep.kernel_vector) == expected


def relabel(g: Topology, perm):
    return Topology(tuple(tuple(perm.get(x, x) for x in e) for e in g.edges))


def test_audit_invariant_under_relabelling(cherry_star):
    rng = random.Random(3)
    for _ in range(3):
        images = list(range(1, 8))
        rng.shuffle(images)
        perm = dict(zip(range(1, 8), images))
        h = relabel(cherry_star, perm)
        for kind in (CLASSIC, WEIGHTED):
            a, b = audit(cherry_star, 4, kind), audit(h, 4, kind)
            assert (a.base_rank, a.full_rank) == (b.base_rank, b.full_rank)


def test_resolution_rows_are_split_metric_images(cherry_star):
    m = star_matrix(cherry_star, 2, CLASSIC)
    res = resolutions(cherry_star, degree4_vertex(cherry_star))
    for row, r in zip(m.rows[-3:], res):
        assert row == d2(split_metric(r.topology, r.edge)).values
