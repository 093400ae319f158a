import numpy as np
import pytest

from maxspec import local_r, local_rho, max_cycle_mean, max_mul
from maxspec.oracles import (
    GeneratorSpec,
    generate,
    oracle_local_r_enumerate,
    oracle_local_r_limit,
    oracle_local_rho_limit,
    oracle_mcgm_enumerate,
    oracle_reachability,
    oracle_scc_partition,
)


def test_generate_is_deterministic():
    spec = GeneratorSpec(n=5, density=0.5)
    assert np.array_equal(generate(spec, 42), generate(spec, 42))
    assert not np.array_equal(generate(spec, 42), generate(spec, 43))


def test_permutation_structure():
    for seed in range(10):
        a = generate(GeneratorSpec(n=4, structure="permutation"), seed)
        assert np.all((a > 0).sum(axis=0) == 1)
        assert np.all((a > 0).sum(axis=1) == 1)


def test_irreducible_structure_has_one_class():
    for seed in range(10):
        a = generate(GeneratorSpec(n=5, density=0.2, structure="irreducible"), seed)
        assert len(oracle_scc_partition(a)) == 1


def test_diagonal_and_symmetric_structures():
    d = generate(GeneratorSpec(n=4, structure="diagonal"), 0)
    assert np.array_equal(d, np.diag(np.diag(d)))
    s = generate(GeneratorSpec(n=5, structure="symmetric"), 0)
    assert np.array_equal(s, s.T)


def test_block_structure_is_lower_block_triangular():
    for seed in range(10):
        a = generate(GeneratorSpec(n=6, density=0.9, structure="block", blocks=3),
                     seed)
        classes = oracle_scc_partition(a)
        assert len(classes) >= 2  # reducible by construction


def test_reachability_fixture():
    a = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
    reach = oracle_reachability(a)
    expected = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
    assert np.array_equal(reach, expected)


def test_mcgm_enumeration_fixtures():
    assert oracle_mcgm_enumerate([[0.0, 1.0], [0.25, 0.0]]) == pytest.approx(0.5)
    assert oracle_mcgm_enumerate(np.triu(np.ones((4, 4)), 1)) == 0.0
    with pytest.raises(ValueError):
        oracle_mcgm_enumerate(np.ones((10, 10)))


def test_mcgm_enumeration_matches_karp():
    rng = np.random.default_rng(9)
    for _ in range(100):
        a = generate(GeneratorSpec(n=6, density=0.5), int(rng.integers(2**63)))
        assert max_cycle_mean(a) == pytest.approx(
            oracle_mcgm_enumerate(a), rel=1e-12, abs=0.0
        )


def test_local_r_limit_fixtures():
    a = np.array([[1.0, 0.0], [0.0, 0.0]])
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    # finite-k estimate carries a path-prefix factor 2^(1/64)
    assert oracle_local_r_limit(max_mul(a, b), 1, 64) == pytest.approx(1.0, rel=5e-2)
    d = np.diag([2.0, 5.0])
    assert oracle_local_r_limit(d, 0, 16) == pytest.approx(2.0, rel=1e-12)
    with pytest.raises(ValueError):
        oracle_local_r_limit(d, 0, 1)


def test_local_rho_limit_fixtures():
    a = np.array([[0.0, 1.0 / 3.0], [1.0 / 3.0, 0.0]])
    assert oracle_local_rho_limit(a, 0, 64) == pytest.approx(1.0 / 3.0, rel=1e-12)
    d = np.diag([2.0, 5.0])
    assert oracle_local_rho_limit(d, 1, 16) == pytest.approx(5.0, rel=1e-12)


def test_limit_oracles_bracket_engine_values():
    rng = np.random.default_rng(10)
    for _ in range(30):
        n = 5
        # moderate magnitudes keep the path-prefix factor inside the 5e-2 band
        a = generate(GeneratorSpec(n=n, density=0.5, low=0.5, high=2.0),
                     int(rng.integers(2**63)))
        i = int(rng.integers(n))
        k_max = 64 * n
        est_r = oracle_local_r_limit(a, i, k_max)
        r = local_r(a, i)
        # sub-unit path prefixes can pull the estimate slightly below the
        # limit, so the bracket is only guaranteed up to the band
        assert r <= est_r * (1 + 5e-2) + 1e-300
        assert est_r == pytest.approx(r, rel=5e-2, abs=1e-300)
        est_rho = oracle_local_rho_limit(a, i, k_max)
        assert est_rho == pytest.approx(local_rho(a, i), rel=5e-2, abs=1e-300)


def test_enumeration_handles_duplicated_values():
    a = np.array([[2.0, 2.0], [2.0, 2.0]])
    assert oracle_mcgm_enumerate(a) == pytest.approx(2.0)
    assert oracle_local_r_enumerate(a, 0) == pytest.approx(2.0)
