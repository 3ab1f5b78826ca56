import math

import numpy as np
import pytest

from conemoea.archive import (
    ACCEPTED,
    REJECTED,
    REPLACED,
    BoundedArchive,
    ParetoArchive,
    cone_archive_insert,
    eps_archive_insert,
    pareto_archive_insert,
)
from conemoea.core import Solution
from conemoea.dominance import build_cone_matrix


def sol(*f):
    arr = np.asarray(f, dtype=np.float64)
    return Solution(x=arr, f=arr)


def cone_archive(eps=(0.1, 0.1), kappa=0.5):
    return BoundedArchive(build_cone_matrix(np.asarray(eps), kappa))


def test_empty_archive_accepts():
    arc = cone_archive()
    assert arc.insert(sol(1.0, 1.0)).status == ACCEPTED
    assert len(arc) == 1


def test_cone_rejects_dominated_candidate():
    arc = cone_archive()
    arc.insert(sol(1.0, 1.0))
    out = cone_archive_insert(arc, sol(1.05, 1.05))
    assert out.status == REJECTED
    assert len(arc) == 1


def test_cone_shared_box_replacement():
    arc = cone_archive()
    arc.insert(sol(0.37, 0.42))
    incoming = sol(0.31, 0.41)
    # same box (0.3, 0.4); candidate Pareto-dominates and is closer to the corner
    assert math.dist((0.31, 0.41), (0.3, 0.4)) == pytest.approx(0.01414, abs=1e-5)
    assert math.dist((0.37, 0.42), (0.3, 0.4)) == pytest.approx(0.07280, abs=1e-5)
    out = arc.insert(incoming)
    assert out.status == REPLACED
    assert [tuple(s.f) for s in arc.members] == [(0.31, 0.41)]
    assert any(tuple(e.f) == (0.37, 0.42) for e in out.evicted)


def test_shared_box_mutual_nondominance_keeps_closer_incumbent():
    arc = BoundedArchive(np.array([0.1, 0.1]))
    arc.insert(sol(0.31, 0.44))
    # same box (0.3, 0.4), mutually nondominated; incumbent is closer to corner
    assert math.dist((0.31, 0.44), (0.3, 0.4)) == pytest.approx(0.04123, abs=1e-5)
    assert math.dist((0.39, 0.41), (0.3, 0.4)) == pytest.approx(0.09055, abs=1e-5)
    out = eps_archive_insert(arc, sol(0.39, 0.41))
    assert out.status == REJECTED
    assert [tuple(s.f) for s in arc.members] == [(0.31, 0.44)]


def test_eps_box_level_acceptance_keeps_box_nondominated_neighbor():
    # (0.98, 1.3) sits in box (9, 12), incumbent (1,1) in box (10, 10):
    # neither box dominates the other, so both coexist under the grid rule
    arc = BoundedArchive(np.array([0.1, 0.1]))
    arc.insert(sol(1.0, 1.0))
    assert arc.insert(sol(0.98, 1.3)).status == ACCEPTED
    assert len(arc) == 2
    # box-dominated candidates are rejected outright
    assert arc.insert(sol(1.12, 1.13)).status == REJECTED


def test_eps_archive_evicts_box_dominated_members():
    arc = BoundedArchive(np.array([0.1, 0.1]))
    arc.insert(sol(0.55, 0.55))
    out = arc.insert(sol(0.31, 0.31))
    assert out.status == REPLACED
    assert [tuple(s.f) for s in arc.members] == [(0.31, 0.31)]


def test_acceptance_type_guards():
    cone = cone_archive()
    flat = BoundedArchive(np.array([0.1, 0.1]))
    with pytest.raises(ValueError):
        eps_archive_insert(cone, sol(1.0, 1.0))
    with pytest.raises(ValueError):
        cone_archive_insert(flat, sol(1.0, 1.0))


def test_reinserting_member_leaves_archive_unchanged():
    rng = np.random.default_rng(7)
    arc = cone_archive(eps=(0.05, 0.05), kappa=0.5)
    for _ in range(500):
        arc.insert(sol(*rng.uniform(0, 1, 2)))
    before = [tuple(s.f) for s in arc.members]
    for member in list(arc.members):
        out = arc.insert(member)
        assert out.status == REJECTED
    assert [tuple(s.f) for s in arc.members] == before


def test_invariants_hold_under_random_stream():
    rng = np.random.default_rng(8)
    for kappa in (0.0, 0.5, 0.9):
        arc = cone_archive(eps=(0.07, 0.11), kappa=kappa)
        for _ in range(2000):
            arc.insert(sol(*rng.uniform(0, 1, 2)))
        arc.check_invariants()
        keys = [tuple(k) for k in arc._keys]
        assert len(set(keys)) == len(keys)


def test_kappa_zero_cone_equals_eps_archive():
    rng = np.random.default_rng(9)
    pts = rng.uniform(0, 1, size=(3000, 3))
    cone = cone_archive(eps=(0.1, 0.15, 0.2), kappa=0.0)
    flat = BoundedArchive(np.array([0.1, 0.15, 0.2]))
    for row in pts:
        cone.insert(sol(*row))
        flat.insert(sol(*row))
    got = sorted(tuple(s.f) for s in cone.members)
    want = sorted(tuple(s.f) for s in flat.members)
    assert got == want


def test_pareto_archive_insertions():
    arc = ParetoArchive(m=2)
    assert pareto_archive_insert(arc, sol(1.0, 1.0)).status == ACCEPTED
    assert pareto_archive_insert(arc, sol(2.0, 2.0)).status == REJECTED
    arc2 = ParetoArchive(m=2)
    arc2.insert(sol(1.0, 3.0))
    arc2.insert(sol(3.0, 1.0))
    assert arc2.insert(sol(2.0, 2.0)).status == ACCEPTED
    assert len(arc2) == 3


def test_pareto_archive_evicts_dominated():
    arc = ParetoArchive(m=2)
    arc.insert(sol(1.0, 3.0))
    arc.insert(sol(3.0, 1.0))
    out = arc.insert(sol(0.5, 0.5))
    assert out.status == REPLACED
    assert len(out.evicted) == 2
    assert len(arc) == 1


def test_pareto_archive_mutual_nondominance_property():
    rng = np.random.default_rng(10)
    arc = ParetoArchive(m=3)
    for _ in range(2000):
        arc.insert(sol(*rng.uniform(0, 1, 3)))
    F = arc.objectives()
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt
    np.fill_diagonal(dom, False)
    assert not dom.any()


def test_box_branch_wins_over_eviction_branch():
    # candidate shares a box with a worse incumbent AND dominates a member
    # elsewhere: the box branch handles it, evicting both
    arc = cone_archive(eps=(0.1, 0.1), kappa=0.5)
    assert arc.insert(sol(0.57, 0.42)).status == ACCEPTED
    assert arc.insert(sol(0.83, 0.415)).status == ACCEPTED
    out = arc.insert(sol(0.51, 0.41))
    assert out.status == REPLACED
    assert len(arc) == 1
    assert {tuple(e.f) for e in out.evicted} == {(0.57, 0.42), (0.83, 0.415)}
