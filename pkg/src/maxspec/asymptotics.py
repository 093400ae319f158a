"""Asymptotic bridges between max-algebra and distinguished eigenvalues.

Four trace builders, each producing the sequence of a limit formula together
with its n-corrected companion and the claimed limit:

* Hadamard-power trace    rho_{e_i}(A^(t))^(1/t)         -> r_{e_i}(A)
* max-power trace         rho_{e_i}(A^k_(x))^(1/k)       -> r_{e_i}(A)
* classical-power trace   r_{e_i}(A^k)^(1/k)             -> rho_{e_i}(A)
* cycle-mean power trace  r_(x)(A^k)^(1/k)               -> rho(A)

Everything is evaluated in the log domain (Hadamard powers as t * log A,
classical powers with per-step rescaling in extended precision), so the grids
t <= 2^10 and k <= 64 cannot overflow regardless of entry magnitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import as_matrix
from .specgraph import (
    NEG_INF,
    _condense_log,
    _local_log,
    _structure_log,
    log_weights,
    maxplus_mul,
)

__all__ = [
    "LimitTrace",
    "DEFAULT_T_GRID",
    "schur_trace",
    "max_power_trace",
    "classical_power_trace",
    "bapat_trace",
]

DEFAULT_T_GRID = tuple(float(2**j) for j in range(11))
DEFAULT_K_MAX = 64


def _leq(a: float, b: float, slack: float = 1e-12) -> bool:
    return a <= b + slack * max(abs(a), abs(b))


@dataclass(frozen=True)
class LimitTrace:
    """A limit formula evaluated on a grid.

    ``values`` bound ``limit`` from ``bound`` ("above" or "below");
    ``scaled_values`` is the n-corrected companion bounding from the other
    side.  ``monotone`` is "nonincreasing" when the formula proves it, else
    "none".
    """

    kind: str
    grid: tuple[float, ...]
    values: tuple[float, ...]
    scaled_values: tuple[float, ...]
    limit: float
    bound: str
    monotone: str
    dim: int

    def check(self, conv_rtol: float = 5e-2, mono_slack: float = 1e-12) -> dict:
        """Verify convergence, tightening, monotonicity and the two-sided
        grid-point brackets; returns one boolean per property."""
        v = self.values
        s = self.scaled_values
        lim = self.limit
        if lim > 0:
            converged = abs(v[-1] - lim) <= conv_rtol * lim
            mid = v[len(v) // 2]
            tightening = abs(v[-1] - lim) <= abs(mid - lim) + 1e-12 * lim
        else:
            converged = v[-1] == 0.0
            tightening = True
        monotone = True
        if self.monotone == "nonincreasing":
            monotone = all(
                _leq(v[j + 1], v[j], mono_slack) for j in range(len(v) - 1)
            )
        if self.bound == "above":
            bracket = all(_leq(lim, vj) for vj in v) and all(_leq(sj, lim) for sj in s)
        else:
            bracket = all(_leq(vj, lim) for vj in v) and all(_leq(lim, sj) for sj in s)
        return {
            "converged": converged,
            "tightening": tightening,
            "monotone": monotone,
            "bracket": bracket,
        }

    def ok(self) -> bool:
        return all(self.check().values())


def _validate_grid(grid) -> tuple[float, ...]:
    g = tuple(float(t) for t in grid)
    if not g or any(t <= 0 for t in g) or any(b <= a for a, b in zip(g, g[1:])):
        raise ValueError("grid must be nonempty, positive and strictly increasing")
    return g


def _exp_or_zero(lv: float) -> float:
    return float(np.exp(lv)) if lv > NEG_INF else 0.0


def schur_trace(a, i: int, t_grid=DEFAULT_T_GRID) -> LimitTrace:
    """Trace of rho_{e_i}(A^(t))^(1/t) over a t-grid; the limit is r_{e_i}(A).

    The sequence is nonincreasing in t; the companion (n^-1 rho)^(1/t)
    approaches the same limit from below.
    """
    a = as_matrix(a)
    grid = _validate_grid(t_grid)
    n = a.shape[0]
    l = log_weights(a)
    cond = _condense_log(l)
    limit = _exp_or_zero(_local_log(cond, cond.log_mcgm, i))
    values, scaled = [], []
    for t in grid:
        cond_t = _condense_log(t * l)
        log_rho = _local_log(cond_t, cond_t.log_perron, i)
        values.append(_exp_or_zero(log_rho / t))
        scaled.append(
            _exp_or_zero((log_rho - np.log(n)) / t) if log_rho > NEG_INF else 0.0
        )
    return LimitTrace(
        kind="schur", grid=grid, values=tuple(values), scaled_values=tuple(scaled),
        limit=limit, bound="above", monotone="nonincreasing", dim=n,
    )


def max_power_trace(a, i: int, k_max: int = DEFAULT_K_MAX) -> LimitTrace:
    """Trace of rho_{e_i}(A^k_(x))^(1/k) for k = 1..k_max; limit r_{e_i}(A)."""
    a = as_matrix(a)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    n = a.shape[0]
    l = log_weights(a)
    cond = _condense_log(l)
    limit = _exp_or_zero(_local_log(cond, cond.log_mcgm, i))
    values, scaled = [], []
    lk = l
    for k in range(1, k_max + 1):
        cond_k = _condense_log(lk)
        log_rho = _local_log(cond_k, cond_k.log_perron, i)
        values.append(_exp_or_zero(log_rho / k))
        scaled.append(
            _exp_or_zero((log_rho - np.log(n)) / k) if log_rho > NEG_INF else 0.0
        )
        if k < k_max:
            lk = maxplus_mul(lk, l)
    return LimitTrace(
        kind="maxpow", grid=tuple(float(k) for k in range(1, k_max + 1)),
        values=tuple(values), scaled_values=tuple(scaled),
        limit=limit, bound="above", monotone="none", dim=n,
    )


def _scaled_classical_powers(a: np.ndarray, k_max: int):
    """Yield (k, log-weight matrix of A^k) with per-step rescaling in extended
    precision; works for any entry magnitudes up to k_max ~ hundreds."""
    am = a.astype(np.longdouble)
    bk = am.copy()
    log_scale = 0.0
    for k in range(1, k_max + 1):
        top = float(np.max(bk))
        if top == 0.0:
            yield k, np.full(a.shape, NEG_INF)
            continue
        bk /= top
        log_scale += np.log(top)
        with np.errstate(divide="ignore"):
            lk = np.log(bk).astype(float)  # log(0) -> -inf
        yield k, lk + log_scale
        bk = bk @ am


def _local_r_log_from(l: np.ndarray, i: int) -> float:
    classes, class_of, access, log_mcgm = _structure_log(l)
    acc = access[:, class_of[i]]
    return float(np.max(log_mcgm[acc])) if np.any(acc) else NEG_INF


def classical_power_trace(a, i: int, k_max: int = DEFAULT_K_MAX) -> LimitTrace:
    """Trace of r_{e_i}(A^k)^(1/k) for k = 1..k_max; the limit is rho_{e_i}(A).

    The sequence approaches the limit from below; the companion
    (n r_{e_i}(A^k))^(1/k) from above.
    """
    a = as_matrix(a)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    n = a.shape[0]
    cond = _condense_log(log_weights(a))
    limit = _exp_or_zero(_local_log(cond, cond.log_perron, i))
    values, scaled = [], []
    for k, lk in _scaled_classical_powers(a, k_max):
        log_r = _local_r_log_from(lk, i)
        values.append(_exp_or_zero(log_r / k))
        scaled.append(
            _exp_or_zero((log_r + np.log(n)) / k) if log_r > NEG_INF else 0.0
        )
    return LimitTrace(
        kind="classpow", grid=tuple(float(k) for k in range(1, k_max + 1)),
        values=tuple(values), scaled_values=tuple(scaled),
        limit=limit, bound="below", monotone="none", dim=n,
    )


def bapat_trace(a, k_max: int = DEFAULT_K_MAX) -> LimitTrace:
    """Trace of r_(x)(A^k)^(1/k), the max cycle mean of classical powers; the
    limit is rho(A).  The sequence need not be monotone."""
    a = as_matrix(a)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    n = a.shape[0]
    cond = _condense_log(log_weights(a))
    log_rho_a = float(np.max(cond.log_perron)) if cond.num_classes else NEG_INF
    limit = _exp_or_zero(log_rho_a)
    values, scaled = [], []
    for k, lk in _scaled_classical_powers(a, k_max):
        _, _, _, log_mcgm = _structure_log(lk)
        log_r = float(np.max(log_mcgm)) if log_mcgm.size else NEG_INF
        values.append(_exp_or_zero(log_r / k))
        scaled.append(
            _exp_or_zero((log_r + np.log(n)) / k) if log_r > NEG_INF else 0.0
        )
    return LimitTrace(
        kind="bapat", grid=tuple(float(k) for k in range(1, k_max + 1)),
        values=tuple(values), scaled_values=tuple(scaled),
        limit=limit, bound="below", monotone="none", dim=n,
    )
