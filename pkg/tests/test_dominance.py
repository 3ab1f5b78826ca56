import math

import numpy as np
import pytest

from conemoea.dominance import (
    archive_capacity_bound,
    box_index,
    box_key,
    box_origin_distance,
    build_cone_matrix,
    cone_eps_dominates,
    cone_eps_for_target_size,
    eps_dominates,
    eps_for_target_size,
    pareto_dominates,
)


def cramer_lambda(a, b, eps, kappa):
    """Independent 2x2 oracle for the cone weights (Cramer's rule)."""
    p00, p01 = eps[0], kappa * eps[0]
    p10, p11 = kappa * eps[1], eps[1]
    z0 = b[0] - (a[0] - eps[0])
    z1 = b[1] - (a[1] - eps[1])
    det = p00 * p11 - p01 * p10
    return (z0 * p11 - p01 * z1) / det, (p00 * z1 - z0 * p10) / det


def generators_supports(a, b, eps, kappa, tol=1e-9):
    """Half-plane sign test against the cone generators (m=2 oracle)."""
    w1 = (eps[0], kappa * eps[1])
    w2 = (kappa * eps[0], eps[1])
    z = (b[0] - (a[0] - eps[0]), b[1] - (a[1] - eps[1]))
    det = w1[0] * w2[1] - w1[1] * w2[0]
    cross_w1_z = w1[0] * z[1] - w1[1] * z[0]
    cross_z_w2 = z[0] * w2[1] - z[1] * w2[0]
    return cross_w1_z >= -tol * det and cross_z_w2 >= -tol * det


def test_pareto_dominates_basic():
    assert pareto_dominates([1, 2], [2, 3])
    assert not pareto_dominates([1, 2], [1, 2])
    assert not pareto_dominates([1, 3], [2, 2])


def test_pareto_dominates_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        pareto_dominates([1, 2], [1, 2, 3])


def test_eps_dominates_basic():
    eps = [0.1, 0.1]
    assert eps_dominates([1, 1], [0.95, 1.05], eps)
    assert not eps_dominates([1, 1], [0.85, 1.5], eps)
    assert eps_dominates([1, 1], [1, 1], eps)


def test_build_cone_matrix_layout():
    cone = build_cone_matrix([0.1, 0.1], 0.5)
    assert np.allclose(cone.psi, [[0.1, 0.05], [0.05, 0.1]])
    cone = build_cone_matrix([0.1, 0.2], 0.0)
    assert np.allclose(cone.psi, [[0.1, 0.0], [0.0, 0.2]])
    cone = build_cone_matrix([1.0, 1.0, 1.0], 0.5)
    expect = np.full((3, 3), 0.5)
    np.fill_diagonal(expect, 1.0)
    assert np.allclose(cone.psi, expect)
    assert np.allclose(cone.inv @ cone.psi, np.eye(3), atol=1e-12)


def test_build_cone_matrix_kappa_range():
    with pytest.raises(ValueError, match="kappa"):
        build_cone_matrix([0.1, 0.1], 1.0)
    with pytest.raises(ValueError, match="kappa"):
        build_cone_matrix([0.1, 0.1], -0.01)
    with pytest.raises(ValueError):
        build_cone_matrix([0.1, -0.1], 0.5)


def test_cone_eps_dominates_inside_cone():
    cone = build_cone_matrix([0.1, 0.1], 0.5)
    lam = cramer_lambda([1, 1], [1.05, 1.05], [0.1, 0.1], 0.5)
    assert lam == pytest.approx((1.0, 1.0))
    assert cone_eps_dominates([1, 1], [1.05, 1.05], cone)


def test_cone_eps_dominates_outside_cone_but_eps_dominated():
    cone = build_cone_matrix([0.1, 0.1], 0.5)
    lam = cramer_lambda([1, 1], [0.98, 1.3], [0.1, 0.1], 0.5)
    assert lam[0] < 0.0
    assert not pareto_dominates([1, 1], [0.98, 1.3])
    assert not cone_eps_dominates([1, 1], [0.98, 1.3], cone)
    assert eps_dominates([1, 1], [0.98, 1.3], [0.1, 0.1])


def test_cone_eps_dominates_pareto_branch():
    for kappa in (0.0, 0.3, 0.6, 0.9):
        cone = build_cone_matrix([0.1, 0.1], kappa)
        assert cone_eps_dominates([1, 1], [1.2, 1.2], cone)


def test_cone_eps_dominates_dimension_check():
    cone = build_cone_matrix([0.1, 0.1], 0.5)
    with pytest.raises(ValueError):
        cone_eps_dominates([1, 1, 1], [1, 1, 1], cone)


def test_box_index_floor_and_ceiling():
    eps = [0.1, 0.1]
    assert np.allclose(box_index([0.37, 0.42], eps), [0.3, 0.4])
    assert np.allclose(box_index([0.40, 0.40], eps), [0.4, 0.4])
    assert np.allclose(box_index([0.37, 0.42], eps, sense=("max", "max")), [0.4, 0.5])


def test_box_index_idempotent():
    rng = np.random.default_rng(11)
    eps = np.array([0.07, 0.13, 0.05])
    for _ in range(200):
        y = rng.uniform(-3, 3, 3)
        b = box_index(y, eps)
        assert np.array_equal(box_index(b, eps), b)


def test_box_key_is_integer_lattice():
    key = box_key([0.37, 0.42], [0.1, 0.1])
    assert key == (3, 4)
    assert isinstance(key[0], int)


def test_box_origin_distance():
    eps = [0.1, 0.1]
    assert box_origin_distance([0.35, 0.45], eps) == pytest.approx(math.sqrt(0.05**2 + 0.05**2))
    assert box_origin_distance([0.4, 0.4], eps) == 0.0
    assert box_origin_distance([0.31, 0.40], eps) == pytest.approx(0.01)


def test_eps_for_target_size_golden():
    assert eps_for_target_size(100, 2, 2) == pytest.approx(0.010, abs=5e-4)
    assert eps_for_target_size(100, 2, 3) == pytest.approx(0.10, abs=5e-4)
    assert eps_for_target_size(1, 5, 2) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        eps_for_target_size(100, 2, 1)


def test_cone_eps_for_target_size_golden():
    assert cone_eps_for_target_size(100, 2, 2) == pytest.approx(2.0 / 101.0, rel=1e-9)
    root = cone_eps_for_target_size(100, 2, 3)
    assert root == pytest.approx((-1.0 + math.sqrt(133.0)) / 66.0, rel=1e-9)
    residual = (99 / 3) * root**2 + root - 1.0
    assert abs(residual) < 1e-10


def test_sizing_strictly_decreasing_in_target():
    for m in (2, 3):
        eps_vals = [eps_for_target_size(T, 2, m) for T in (10, 50, 100, 500)]
        cone_vals = [cone_eps_for_target_size(T, 2, m) for T in (10, 50, 100, 500)]
        assert all(a > b for a, b in zip(eps_vals, eps_vals[1:]))
        assert all(a > b for a, b in zip(cone_vals, cone_vals[1:]))


def test_archive_capacity_bound():
    # substituting the sizing root back in gives the target exactly
    eps = cone_eps_for_target_size(100, 2, 2)
    assert archive_capacity_bound([eps, eps], [2.0, 2.0], 2) == pytest.approx(100.0, abs=1e-6)
    assert archive_capacity_bound([0.5, 0.5], [2.0, 2.0], 2) == pytest.approx(3.0)
    eps3 = cone_eps_for_target_size(100, 2, 3)
    assert archive_capacity_bound([eps3] * 3, [2.0] * 3, 3) == pytest.approx(100.0, abs=1.0)


def test_containment_chain():
    # pareto => cone-eps => eps, for random pairs and cone parameters
    rng = np.random.default_rng(21)
    for _ in range(2000):
        m = int(rng.integers(2, 4))
        a = rng.uniform(0, 1, m)
        b = rng.uniform(0, 1, m)
        eps = rng.uniform(0.01, 0.3, m)
        kappa = float(rng.uniform(0, 1))
        cone = build_cone_matrix(eps, kappa)
        if pareto_dominates(a, b):
            assert cone_eps_dominates(a, b, cone)
        if cone_eps_dominates(a, b, cone):
            assert eps_dominates(a, b, eps)


def test_kappa_zero_degeneration_sample():
    rng = np.random.default_rng(22)
    for _ in range(10_000):
        m = int(rng.integers(2, 4))
        a = rng.uniform(0, 1, m)
        b = rng.uniform(0, 1, m)
        eps = rng.uniform(0.01, 0.3, m)
        cone = build_cone_matrix(eps, 0.0)
        assert cone_eps_dominates(a, b, cone) == eps_dominates(a, b, eps)


def test_kappa_monotonicity_m2():
    # a wider cone (smaller kappa) dominates everything a narrower one does
    rng = np.random.default_rng(23)
    for _ in range(2000):
        a = rng.uniform(0, 1, 2)
        b = rng.uniform(0, 1, 2)
        eps = rng.uniform(0.02, 0.3, 2)
        k1, k2 = sorted(rng.uniform(0, 1, 2))
        if cone_eps_dominates(a, b, build_cone_matrix(eps, k2)):
            assert cone_eps_dominates(a, b, build_cone_matrix(eps, k1))


def test_kappa_monotonicity_m3_report_only():
    # not asserted for m >= 3; violations are counted and reported
    rng = np.random.default_rng(24)
    violations = 0
    for _ in range(2000):
        a = rng.uniform(0, 1, 3)
        b = rng.uniform(0, 1, 3)
        eps = rng.uniform(0.02, 0.3, 3)
        k1, k2 = sorted(rng.uniform(0, 1, 2))
        if cone_eps_dominates(a, b, build_cone_matrix(eps, k2)):
            if not cone_eps_dominates(a, b, build_cone_matrix(eps, k1)):
                violations += 1
    print(f"kappa-monotonicity violations for m=3: {violations}/2000")


def test_generator_sign_oracle_m2_sample():
    rng = np.random.default_rng(25)
    for _ in range(2000):
        a = rng.uniform(0, 1, 2)
        b = rng.uniform(0, 1, 2)
        eps = rng.uniform(0.02, 0.3, 2)
        kappa = float(rng.uniform(0, 0.99))
        cone = build_cone_matrix(eps, kappa)
        expect = pareto_dominates(a, b) or generators_supports(a, b, eps, kappa)
        assert cone_eps_dominates(a, b, cone) == expect
