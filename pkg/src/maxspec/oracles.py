"""Brute-force reference implementations and structured random generators.

Every headline quantity of the package has a second, independent computation
path here: cycle enumeration instead of Karp, Floyd-Warshall closure instead
of boolean squaring, raw power limits instead of class analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .matcore import as_matrix
from .specgraph import NEG_INF, log_weights

__all__ = [
    "GeneratorSpec",
    "generate",
    "oracle_reachability",
    "oracle_scc_partition",
    "oracle_mcgm_enumerate",
    "oracle_local_r_enumerate",
    "oracle_local_r_limit",
    "oracle_local_rho_limit",
]


def oracle_reachability(a) -> np.ndarray:
    """Reflexive-transitive closure by the classic Floyd-Warshall sweep."""
    a = as_matrix(a)
    n = a.shape[0]
    reach = (a > 0) | np.eye(n, dtype=bool)
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    return reach


def oracle_scc_partition(a) -> list[tuple[int, ...]]:
    """SCCs as mutual-reachability equivalence classes, ordered by smallest
    member vertex."""
    reach = oracle_reachability(a)
    n = reach.shape[0]
    mutual = reach & reach.T
    seen: set[int] = set()
    classes = []
    for v in range(n):
        if v in seen:
            continue
        cls = tuple(u for u in range(n) if mutual[v, u])
        seen.update(cls)
        classes.append(cls)
    return classes


def _simple_cycles_log(a: np.ndarray):
    """Yield (cycle vertices, log geometric mean) for every simple cycle."""
    l = log_weights(a)
    g = nx.DiGraph((int(u), int(v)) for u, v in zip(*np.nonzero(a > 0)))
    for cyc in nx.simple_cycles(g):
        total = 0.0
        for s, u in enumerate(cyc):
            total += l[u, cyc[(s + 1) % len(cyc)]]
        yield cyc, total / len(cyc)


def oracle_mcgm_enumerate(a) -> float:
    """Maximum cycle geometric mean by exhaustive simple-cycle enumeration."""
    a = as_matrix(a)
    if a.shape[0] > 9:
        raise ValueError("cycle enumeration oracle is limited to n <= 9")
    best = NEG_INF
    for _, mean in _simple_cycles_log(a):
        best = max(best, mean)
    return float(np.exp(best)) if best > NEG_INF else 0.0


def oracle_local_r_enumerate(a, i: int) -> float:
    """r_{e_i}(A) by enumerating simple cycles and requiring a directed path
    from the cycle to i (Floyd-Warshall closure)."""
    a = as_matrix(a)
    if a.shape[0] > 9:
        raise ValueError("cycle enumeration oracle is limited to n <= 9")
    reach = oracle_reachability(a)
    best = NEG_INF
    for cyc, mean in _simple_cycles_log(a):
        if any(reach[u, i] for u in cyc):
            best = max(best, mean)
    return float(np.exp(best)) if best > NEG_INF else 0.0


def oracle_local_r_limit(a, i: int, k_max: int) -> float:
    """Convergent estimate ||A^k_(x) (x) e_i||^(1/k) at k = k_max, evaluated as
    a max-plus vector iteration in the log domain."""
    a = as_matrix(a)
    n = a.shape[0]
    if k_max < n:
        raise ValueError("k_max must be at least the dimension")
    l = log_weights(a)
    w = np.full(n, NEG_INF)
    w[i] = 0.0
    for _ in range(k_max):
        w = np.max(l + w[None, :], axis=1)
    top = float(np.max(w))
    return float(np.exp(top / k_max)) if top > NEG_INF else 0.0


def oracle_local_rho_limit(a, i: int, k_max: int) -> float:
    """limsup estimate max over k in [k_max/2, k_max] of ||A^k e_i||^(1/k).

    The window maximum rides out imprimitivity oscillation (period <= n).
    Runs in extended precision with per-step rescaling so k_max in the
    hundreds cannot overflow.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if k_max < n:
        raise ValueError("k_max must be at least the dimension")
    am = a.astype(np.longdouble)
    v = np.zeros(n, dtype=np.longdouble)
    v[i] = 1.0
    log_scale = 0.0
    best = NEG_INF
    for k in range(1, k_max + 1):
        v = am @ v
        top = float(np.max(v))
        if top == 0.0:
            return 0.0
        v /= top
        log_scale += np.log(top)
        if k >= k_max // 2:
            best = max(best, log_scale / k)
    return float(np.exp(best))


@dataclass(frozen=True)
class GeneratorSpec:
    """Random matrix recipe: dimension, fill density, log-uniform magnitude
    range and a structural constraint tag."""

    n: int
    density: float = 0.5
    low: float = 1e-3
    high: float = 1e3
    structure: str = "general"  # general | irreducible | diagonal |
    #                             permutation | block | symmetric
    blocks: int = 2


def generate(spec: GeneratorSpec, seed) -> np.ndarray:
    """Deterministic random matrix honoring the spec's structure tag."""
    rng = np.random.default_rng(seed)
    n = spec.n
    mags = np.exp(rng.uniform(np.log(spec.low), np.log(spec.high), size=(n, n)))
    mask = rng.random((n, n)) < spec.density

    if spec.structure == "diagonal":
        return np.diag(np.diag(mags))
    if spec.structure == "permutation":
        perm = rng.permutation(n)
        a = np.zeros((n, n))
        a[np.arange(n), perm] = mags[np.arange(n), perm]
        return a

    a = np.where(mask, mags, 0.0)
    if spec.structure == "general":
        return a
    if spec.structure == "irreducible":
        cyc = rng.permutation(n)
        for s in range(n):
            u, v = cyc[s], cyc[(s + 1) % n]
            if a[u, v] == 0.0:
                a[u, v] = spec.low
        return a
    if spec.structure == "block":
        cuts = sorted(rng.choice(np.arange(1, n), size=min(spec.blocks - 1, n - 1),
                                 replace=False)) if n > 1 and spec.blocks > 1 else []
        bounds = [0, *cuts, n]
        block_of = np.zeros(n, dtype=int)
        for b in range(len(bounds) - 1):
            block_of[bounds[b]:bounds[b + 1]] = b
        # lower block triangular: kill entries pointing to a later block
        for u in range(n):
            for v in range(n):
                if block_of[v] > block_of[u]:
                    a[u, v] = 0.0
        return a
    if spec.structure == "symmetric":
        return np.triu(a) + np.triu(a, 1).T
    raise ValueError(f"unknown structure tag {spec.structure!r}")
