import numpy as np
import pytest

from maxspec import (
    condense,
    dist_eigenvector,
    local_r,
    local_r_at,
    local_rho,
    local_rho_at,
    max_cycle_mean,
    max_eigenvector,
    max_mul,
    max_vec_mul,
    perron_root,
    spectrum,
)
from maxspec.oracles import (
    GeneratorSpec,
    generate,
    oracle_local_r_enumerate,
    oracle_mcgm_enumerate,
    oracle_reachability,
    oracle_scc_partition,
)


def test_lower_triangular_family():
    # [[1,0],[1/k,2]] keeps a path from vertex 1 into vertex 0, so both local
    # radii are 2 for every k; the k -> inf limit diag(1,2) splits them.
    for k in range(1, 6):
        a = np.array([[1.0, 0.0], [1.0 / k, 2.0]])
        prof = spectrum(a)
        assert prof.sigma_max == (2.0,)
        assert prof.sigma_dist == (2.0,)
    prof = spectrum(np.diag([1.0, 2.0]))
    assert prof.sigma_max == (1.0, 2.0)
    assert prof.sigma_dist == (1.0, 2.0)


def test_product_order_changes_local_radii():
    a = np.array([[1.0, 0.0], [0.0, 0.0]])
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    ab = max_mul(a, b)
    ba = max_mul(b, a)
    assert local_r(ab, 0) == 1.0
    assert local_r(ab, 1) == 1.0
    assert local_r(ba, 0) == 1.0
    assert local_r(ba, 1) == 0.0


def test_max_cycle_mean_fixtures():
    assert max_cycle_mean([[0.0, 1.0], [0.25, 0.0]]) == 0.5
    assert max_cycle_mean(np.triu(np.ones((4, 4)), 1)) == 0.0
    assert max_cycle_mean(np.zeros((3, 3))) == 0.0
    # single log/exp round trip, so exact up to one ulp
    assert max_cycle_mean(np.diag([2.0, 7.0, 3.0])) == pytest.approx(7.0, rel=1e-15)


def test_condense_matches_scc_oracle():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = generate(GeneratorSpec(n=6, density=0.4), int(rng.integers(2**63)))
        cond = condense(a)
        assert list(cond.classes) == oracle_scc_partition(a)
        reach = oracle_reachability(a)
        # classes are mutually reachable, so class access equals vertex reach
        for u in range(6):
            for v in range(6):
                assert cond.access[cond.class_of[u], cond.class_of[v]] == reach[u, v]


def test_perron_root_matches_numpy():
    rng = np.random.default_rng(4)
    for _ in range(30):
        a = generate(GeneratorSpec(n=5, density=0.7, structure="irreducible"),
                     int(rng.integers(2**63)))
        expected = max(np.linalg.eigvals(a).real)
        assert perron_root(a) == pytest.approx(expected, rel=1e-10)


def test_perron_root_requires_irreducible():
    with pytest.raises(ValueError):
        perron_root(np.triu(np.ones((3, 3))))


def test_local_r_matches_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a = generate(GeneratorSpec(n=5, density=0.4), int(rng.integers(2**63)))
        for i in range(5):
            assert local_r(a, i) == pytest.approx(
                oracle_local_r_enumerate(a, i), rel=1e-12, abs=0.0
            )


def test_local_radius_at_vector_support():
    a = np.diag([1.0, 3.0, 2.0])
    assert local_r_at(a, [1.0, 0.0, 0.0]) == pytest.approx(1.0, rel=1e-15)
    assert local_r_at(a, [1.0, 0.0, 1.0]) == pytest.approx(2.0, rel=1e-15)
    assert local_rho_at(a, [0.0, 1.0, 1.0]) == pytest.approx(3.0, rel=1e-15)
    with pytest.warns(UserWarning):
        assert local_r_at(a, [0.0, 0.0, 0.0]) == 0.0
    with pytest.warns(UserWarning):
        assert local_rho_at(a, [0.0, 0.0, 0.0]) == 0.0


def test_sandwich_between_radii():
    rng = np.random.default_rng(6)
    for _ in range(50):
        n = int(rng.integers(2, 8))
        a = generate(GeneratorSpec(n=n, density=0.5), int(rng.integers(2**63)))
        for i in range(n):
            r = local_r(a, i)
            rho = local_rho(a, i)
            assert r <= rho * (1 + 1e-12) + 1e-300
            assert rho <= n * r * (1 + 1e-12) + 1e-300


def test_zero_matrix_spectrum():
    prof = spectrum(np.zeros((3, 3)))
    assert prof.sigma_max == (0.0,)
    assert prof.sigma_dist == (0.0,)


def test_spectrum_out_of_range_index():
    with pytest.raises(IndexError):
        local_r(np.eye(2), 5)


def test_max_eigenvector_residuals():
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        a = generate(GeneratorSpec(n=n, density=0.5), int(rng.integers(2**63)))
        prof = spectrum(a)
        for lam in prof.sigma_max:
            i = int(np.argmin(np.abs(prof.r - lam)))
            v = max_eigenvector(a, lam, i)
            assert np.any(v > 0)
            resid = np.max(np.abs(max_vec_mul(a, v) - lam * v))
            assert resid <= 1e-9 * max(lam, 1e-300) * np.max(v)


def test_dist_eigenvector_residuals():
    rng = np.random.default_rng(8)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        a = generate(GeneratorSpec(n=n, density=0.5), int(rng.integers(2**63)))
        prof = spectrum(a)
        for lam in prof.sigma_dist:
            i = int(np.argmin(np.abs(prof.rho - lam)))
            v = dist_eigenvector(a, lam, i)
            assert np.any(v > 0)
            resid = np.max(np.abs(a @ v - lam * v))
            assert resid <= 1e-9 * max(lam, 1e-300) * np.max(v)


def test_eigenvector_rejects_wrong_value():
    a = np.diag([1.0, 2.0])
    with pytest.raises(ValueError):
        max_eigenvector(a, 3.0, 0)
    with pytest.raises(ValueError):
        dist_eigenvector(a, 0.5, 1)


def test_zero_eigenvalue_eigenvector():
    # vertex 0 has no incoming edge, so e_0 is an eigenvector for 0
    a = np.array([[0.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 1.0, 3.0]])
    prof = spectrum(a)
    assert 0.0 in prof.sigma_max
    v = max_eigenvector(a, 0.0, 0)
    assert np.array_equal(max_vec_mul(a, v), np.zeros(3))
    w = dist_eigenvector(a, 0.0, 0)
    assert np.array_equal(a @ w, np.zeros(3))
