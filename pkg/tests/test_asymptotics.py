import numpy as np
import pytest

from maxspec import (
    bapat_trace,
    classical_power_trace,
    local_r,
    local_rho,
    max_cycle_mean,
    max_power_trace,
    schur_trace,
    spectrum,
)
from maxspec.oracles import GeneratorSpec, generate


def test_schur_trace_constant_on_diagonal():
    trace = schur_trace(np.diag([2.0, 3.0]), 1)
    assert trace.limit == pytest.approx(3.0, rel=1e-15)
    for v in trace.values:
        assert v == pytest.approx(3.0, rel=1e-12)
    assert trace.ok()


def test_classical_trace_constant_on_balanced_pair():
    a = np.array([[0.0, 1.0 / 3.0], [1.0 / 3.0, 0.0]])
    trace = classical_power_trace(a, 0, k_max=16)
    assert trace.limit == pytest.approx(1.0 / 3.0, rel=1e-12)
    for v in trace.values:
        assert v == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert trace.ok()


def test_schur_values_nonincreasing_and_bracketing():
    rng = np.random.default_rng(11)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        a = generate(GeneratorSpec(n=n, density=0.6), int(rng.integers(2**63)))
        i = int(rng.integers(n))
        trace = schur_trace(a, i)
        flags = trace.check()
        assert all(flags.values()), flags
        assert trace.limit == pytest.approx(local_r(a, i), rel=1e-12, abs=0.0)


def test_max_power_trace_limit():
    rng = np.random.default_rng(12)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        a = generate(GeneratorSpec(n=n, density=0.6), int(rng.integers(2**63)))
        i = int(rng.integers(n))
        trace = max_power_trace(a, i)
        assert trace.ok()
        assert trace.limit == pytest.approx(local_r(a, i), rel=1e-12, abs=0.0)


def test_classical_power_trace_limit():
    rng = np.random.default_rng(13)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        a = generate(GeneratorSpec(n=n, density=0.6), int(rng.integers(2**63)))
        i = int(rng.integers(n))
        trace = classical_power_trace(a, i)
        assert trace.ok()
        assert trace.limit == pytest.approx(local_rho(a, i), rel=1e-12, abs=0.0)


def test_bapat_trace_limit_is_spectral_radius():
    rng = np.random.default_rng(14)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        a = generate(GeneratorSpec(n=n, density=0.6), int(rng.integers(2**63)))
        trace = bapat_trace(a)
        assert trace.ok()
        assert trace.limit == pytest.approx(max(spectrum(a).rho), rel=1e-12, abs=0.0)


def test_traces_survive_extreme_magnitudes():
    # entries spanning 1e-3..1e3 with t up to 1024 would overflow without the
    # log-domain evaluation
    rng = np.random.default_rng(15)
    a = generate(GeneratorSpec(n=4, density=0.8, low=1e-3, high=1e3),
                 int(rng.integers(2**63)))
    trace = schur_trace(a, 0)
    assert trace.grid[-1] == 1024.0
    assert np.isfinite(trace.values).all()
    assert trace.ok()
    assert classical_power_trace(a, 0, k_max=64).ok()


def test_zero_matrix_traces():
    z = np.zeros((3, 3))
    for trace in (schur_trace(z, 0), max_power_trace(z, 1),
                  classical_power_trace(z, 2), bapat_trace(z)):
        assert trace.limit == 0.0
        assert set(trace.values) == {0.0}
        assert trace.ok()


def test_grid_validation():
    a = np.eye(2)
    with pytest.raises(ValueError):
        schur_trace(a, 0, t_grid=[])
    with pytest.raises(ValueError):
        schur_trace(a, 0, t_grid=[1.0, 1.0])
    with pytest.raises(ValueError):
        schur_trace(a, 0, t_grid=[-1.0, 2.0])
    with pytest.raises(ValueError):
        max_power_trace(a, 0, k_max=0)
    with pytest.raises(ValueError):
        classical_power_trace(a, 0, k_max=-2)


def test_schur_equals_mcgm_for_full_index_max():
    a = np.array([[0.0, 2.0], [8.0, 0.0]])
    trace = schur_trace(a, 0)
    assert trace.limit == pytest.approx(max_cycle_mean(a), rel=1e-12)
