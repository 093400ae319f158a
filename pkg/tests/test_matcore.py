import json

import numpy as np
import pytest

from maxspec import matcore


def test_as_matrix_accepts_lists():
    a = matcore.as_matrix([[1, 2], [3, 4]])
    assert a.dtype == np.float64
    assert a.shape == (2, 2)


@pytest.mark.parametrize("bad", [
    [[1, 2, 3], [4, 5, 6]],
    [1, 2, 3],
    [[1, -2], [3, 4]],
    [[1, np.inf], [3, 4]],
    [[1, np.nan], [3, 4]],
    np.zeros((0, 0)),
])
def test_as_matrix_rejects_invalid(bad):
    with pytest.raises(ValueError):
        matcore.as_matrix(bad)


def test_as_vector_checks_length_and_sign():
    v = matcore.as_vector([1, 0, 2], 3)
    assert v.shape == (3,)
    with pytest.raises(ValueError):
        matcore.as_vector([1, 2], 3)
    with pytest.raises(ValueError):
        matcore.as_vector([1, -2])


def test_max_mul_small_example():
    a = np.array([[1.0, 0.0], [0.0, 0.0]])
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(matcore.max_mul(a, b), [[1.0, 2.0], [0.0, 0.0]])
    assert np.array_equal(matcore.max_mul(b, a), [[1.0, 0.0], [3.0, 0.0]])


def test_max_identity_is_neutral():
    rng = np.random.default_rng(0)
    a = rng.random((4, 4))
    e = matcore.max_identity(4)
    assert np.array_equal(matcore.max_mul(a, e), a)
    assert np.array_equal(matcore.max_mul(e, a), a)


def test_max_power_zero_gives_identity():
    a = np.array([[2.0, 1.0], [0.5, 3.0]])
    assert np.array_equal(matcore.max_power(a, 0), matcore.max_identity(2))
    assert np.array_equal(matcore.max_power(a, 1), a)
    p3 = matcore.max_mul(matcore.max_mul(a, a), a)
    assert np.allclose(matcore.max_power(a, 3), p3)
    with pytest.raises(ValueError):
        matcore.max_power(a, -1)


def test_max_mul_associativity_random():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b, c = (rng.random((5, 5)) for _ in range(3))
        left = matcore.max_mul(matcore.max_mul(a, b), c)
        right = matcore.max_mul(a, matcore.max_mul(b, c))
        assert np.allclose(left, right, rtol=1e-15)


def test_hadamard_power_edge_cases():
    a = np.array([[0.0, 4.0], [9.0, 0.0]])
    half = matcore.hadamard_power(a, 0.5)
    assert np.array_equal(half, [[0.0, 2.0], [3.0, 0.0]])
    with pytest.raises(ValueError):
        matcore.hadamard_power(a, 0.0)
    with pytest.raises(OverflowError):
        matcore.hadamard_power(np.array([[1e300]]), 2.0)


def test_norm_and_transpose():
    a = np.array([[1.0, 5.0], [2.0, 0.0]])
    assert matcore.norm_max(a) == 5.0
    assert np.array_equal(matcore.transpose(a), a.T)


def test_classical_power_matches_numpy():
    rng = np.random.default_rng(2)
    a = rng.random((4, 4))
    assert np.allclose(matcore.classical_power(a, 3), np.linalg.matrix_power(a, 3))
    assert np.array_equal(matcore.classical_power(a, 0), np.eye(4))


def test_csv_round_trip(tmp_path):
    a = np.array([[1.5, 0.0], [0.25, 2.0]])
    path = tmp_path / "m.csv"
    matcore.save_matrix(str(path), a)
    assert np.array_equal(matcore.load_matrix(str(path)), a)


def test_json_round_trip(tmp_path):
    a = np.array([[1.0, 2.0, 0.0], [0.0, 0.5, 1.0], [3.0, 0.0, 0.0]])
    path = tmp_path / "m.json"
    matcore.save_matrix(str(path), a)
    loaded = matcore.load_matrix(str(path))
    assert np.array_equal(loaded, a)
    raw = json.loads(path.read_text())
    assert raw["n"] == 3


def test_load_rejects_negative_entries(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,-2\n3,4\n")
    with pytest.raises(ValueError):
        matcore.load_matrix(str(path))
