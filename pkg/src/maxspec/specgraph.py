"""Graph-theoretic spectral engine for nonnegative matrices.

Strongly connected components of the weighted digraph of A (edge u -> v iff
a[u,v] > 0), the reflexive-transitive access relation between classes, the
maximum cycle geometric mean and the Perron root of every class, the local
spectral radii r_{e_i} and rho_{e_i}, the spectra sigma_max / sigma_dist and
constructive eigenvectors for both.

All heavy numerics run in the log domain: cycle means via Karp's algorithm on
log weights, Perron roots via Collatz-Wielandt power iteration with log-sum-exp
matrix-vector products.  This keeps everything finite even for entrywise powers
A^(t) with t in the thousands.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .matcore import as_matrix, max_vec_mul, norm_max

__all__ = [
    "Condensation",
    "SpectralProfile",
    "condense",
    "max_cycle_mean",
    "perron_root",
    "local_r",
    "local_rho",
    "local_r_at",
    "local_rho_at",
    "spectrum",
    "max_eigenvector",
    "dist_eigenvector",
]

NEG_INF = float("-inf")

#: relative tolerance for merging floating spectral values into sets
VALUE_MERGE_RTOL = 1e-9

#: relative bracket width at which the Perron power iteration stops
PERRON_TOL = 1e-13

PERRON_MAX_ITER = 10**6


def log_weights(a: np.ndarray) -> np.ndarray:
    """Log-domain weight matrix: ln a[u,v], with -inf for absent edges."""
    with np.errstate(divide="ignore"):
        return np.where(a > 0, np.log(np.where(a > 0, a, 1.0)), NEG_INF)


def maxplus_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Max-plus matrix product of log-domain weight matrices."""
    return np.max(x[:, :, None] + y[None, :, :], axis=1)


def _logsumexp_rows(mat: np.ndarray) -> np.ndarray:
    """Row-wise log-sum-exp tolerating -inf entries and -inf rows."""
    hi = np.max(mat, axis=1)
    out = np.full(mat.shape[0], NEG_INF)
    ok = hi > NEG_INF
    if np.any(ok):
        shifted = mat[ok] - hi[ok, None]
        out[ok] = hi[ok] + np.log(np.sum(np.exp(shifted), axis=1))
    return out


def _karp_log(l_sub: np.ndarray) -> float:
    """Log of the maximum cycle mean of a strongly connected log-weight block.

    Karp's algorithm run for the maximum mean: with F[k][v] the best walk of
    length k from a fixed source, the answer is
    max_v min_k (F[s][v] - F[k][v]) / (s - k).
    Returns -inf when the block is a single vertex without a self-loop.
    """
    s = l_sub.shape[0]
    if s == 1:
        return float(l_sub[0, 0])
    f = np.full((s + 1, s), NEG_INF)
    f[0, 0] = 0.0
    for k in range(1, s + 1):
        f[k] = np.max(f[k - 1][:, None] + l_sub, axis=0)
    best = NEG_INF
    for v in range(s):
        if f[s, v] == NEG_INF:
            continue
        worst = np.inf
        for k in range(s):
            if f[k, v] > NEG_INF:
                worst = min(worst, (f[s, v] - f[k, v]) / (s - k))
        best = max(best, worst)
    return float(best)


def _logsumexp_square(lm: np.ndarray) -> np.ndarray:
    """Log-domain square of an exp-weight matrix, tolerating -inf entries."""
    t = lm[:, :, None] + lm[None, :, :]
    hi = np.max(t, axis=1)
    base = np.where(hi > NEG_INF, hi, 0.0)
    with np.errstate(divide="ignore"):
        body = np.log(np.sum(np.exp(t - base[:, None, :]), axis=1))
    return np.where(hi > NEG_INF, base + body, NEG_INF)


def _perron_log(l_block: np.ndarray, log_shift: float,
                tol: float = PERRON_TOL, max_iter: int = PERRON_MAX_ITER):
    """Log Perron root and log eigenvector of an irreducible log-weight block.

    Power iteration on B + c*I (primitive for irreducible B, c = exp(log_shift)
    > 0) with Collatz-Wielandt brackets; in the log domain the bracket width is
    a relative error bound.  The operator is squared between steps, so the
    bracket width at least halves per step regardless of the subdominant
    eigenvalue ratio, and sixty-odd steps always reach the rounding floor.
    Returns (log rho(B), log eigenvector).
    """
    s = l_block.shape[0]
    if s == 1:
        return float(l_block[0, 0]), np.zeros(1)
    shifted = l_block.copy()
    d = np.arange(s)
    shifted[d, d] = np.logaddexp(shifted[d, d], log_shift)
    # each step carries rounding noise proportional to the magnitude of the
    # log weights, so the bracket cannot narrow below that spacing
    finite = shifted[shifted > NEG_INF]
    scale = max(1.0, float(np.max(np.abs(finite)))) if finite.size else 1.0
    x = np.zeros(s)
    lm, weight, offset = shifted, 1.0, 0.0
    lo, hi = NEG_INF, np.inf
    for _ in range(min(max_iter, 64)):
        # lm represents B^weight divided by exp(offset), so the brackets on
        # its Perron root rescale to brackets on log rho(B)
        y = _logsumexp_rows(lm + x[None, :])
        diff = (y - x + offset) / weight
        lo, hi = float(np.min(diff)), float(np.max(diff))
        x = y - np.max(y)
        floor = max(tol, 8.0 * np.spacing(scale),
                    4.0 * np.spacing(max(abs(lo), abs(hi), 1.0)))
        if hi - lo < floor:
            mid = 0.5 * (lo + hi)
            # log(exp(mid) - exp(log_shift)); rho >= shift keeps this stable
            log_rho = mid + np.log1p(-np.exp(log_shift - mid))
            return float(log_rho), x
        lm = _logsumexp_square(lm)
        top = float(np.max(lm))
        lm = lm - top
        offset = 2.0 * offset + top
        weight *= 2.0
    raise RuntimeError(
        f"Perron iteration did not converge: bracket [{lo}, {hi}] "
        f"after {min(max_iter, 64)} squaring steps"
    )


def _reachability(pattern: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of the edge pattern by boolean squaring."""
    n = pattern.shape[0]
    r = pattern | np.eye(n, dtype=bool)
    while True:
        r2 = r | ((r.astype(np.uint8) @ r.astype(np.uint8)) > 0)
        if np.array_equal(r2, r):
            return r
        r = r2


@dataclass(frozen=True)
class Condensation:
    """SCC decomposition with per-class spectral data.

    Classes are ordered by their smallest member vertex.  ``access[u][v]`` is
    true iff some vertex of class u has a (possibly empty) directed path to
    some vertex of class v.  ``mcgm`` is the maximum cycle geometric mean of
    the class (0 for a trivial class), ``perron`` the Perron root of its
    diagonal block.  Log-domain copies are kept for overflow-free asymptotics.
    """

    n: int
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    access: np.ndarray
    mcgm: np.ndarray
    perron: np.ndarray
    log_mcgm: np.ndarray
    log_perron: np.ndarray

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def classes_accessing(self, i: int) -> list[int]:
        """Indices of classes with access to vertex i."""
        ci = self.class_of[i]
        return [m for m in range(self.num_classes) if self.access[m, ci]]


def _structure_log(l: np.ndarray):
    """Classes, class map, class access matrix and per-class log cycle means
    of a log-domain weight matrix (no Perron roots)."""
    n = l.shape[0]
    pattern = l > NEG_INF
    _, labels = connected_components(
        csr_matrix(pattern), directed=True, connection="strong"
    )
    order = {}
    for v in range(n):
        order.setdefault(labels[v], len(order))
    class_of = tuple(order[labels[v]] for v in range(n))
    c = len(order)
    classes = tuple(
        tuple(v for v in range(n) if class_of[v] == m) for m in range(c)
    )
    reach = _reachability(pattern)
    member = np.zeros((c, n), dtype=np.uint8)
    for m, cls in enumerate(classes):
        member[m, list(cls)] = 1
    access = (member @ reach.astype(np.uint8) @ member.T) > 0
    log_mcgm = np.array([_karp_log(l[np.ix_(cls, cls)]) for cls in classes])
    return classes, class_of, access, log_mcgm


def _condense_log(l: np.ndarray) -> Condensation:
    """Condensation built from a log-domain weight matrix."""
    n = l.shape[0]
    classes, class_of, access, log_mcgm = _structure_log(l)
    log_perron = np.full(len(classes), NEG_INF)
    for m, cls in enumerate(classes):
        if len(cls) == 1:
            log_perron[m] = log_mcgm[m]
        else:
            log_perron[m], _ = _perron_log(l[np.ix_(cls, cls)], log_mcgm[m])
    with np.errstate(over="ignore"):
        mcgm = np.exp(log_mcgm)
        perron = np.exp(log_perron)
    return Condensation(
        n=n, classes=classes, class_of=class_of, access=access,
        mcgm=mcgm, perron=perron, log_mcgm=log_mcgm, log_perron=log_perron,
    )


@lru_cache(maxsize=512)
def _condense_cached(n: int, data: bytes) -> Condensation:
    a = np.frombuffer(data, dtype=float).reshape(n, n)
    return _condense_log(log_weights(a))


def condense(a) -> Condensation:
    """SCC condensation of the digraph of A with per-class spectral data.

    Results are memoized on the matrix bytes; repeated queries against the
    same matrix (all local radii, both spectra) cost one decomposition.
    """
    a = as_matrix(a)
    return _condense_cached(a.shape[0], a.tobytes())


def max_cycle_mean(a) -> float:
    """Maximum over all simple cycles of the geometric mean of entry products."""
    cond = condense(a)
    lm = np.max(cond.log_mcgm) if cond.num_classes else NEG_INF
    return float(np.exp(lm)) if lm > NEG_INF else 0.0


def perron_root(b) -> float:
    """Spectral radius of an irreducible (or 1x1) nonnegative matrix.

    Power iteration on B + c*I with Collatz-Wielandt bracketing, where the
    shift c is the maximum cycle geometric mean of B.
    """
    b = as_matrix(b)
    if b.shape[0] == 1:
        return float(b[0, 0])
    l = log_weights(b)
    ncomp, _ = connected_components(
        csr_matrix(l > NEG_INF), directed=True, connection="strong"
    )
    if ncomp != 1:
        raise ValueError("matrix is not irreducible")
    log_rho, _ = _perron_log(l, _karp_log(l))
    return float(np.exp(log_rho))


def _local_log(cond: Condensation, logvals: np.ndarray, i: int) -> float:
    if not 0 <= i < cond.n:
        raise IndexError(f"index {i} out of range for dimension {cond.n}")
    acc = cond.access[:, cond.class_of[i]]
    return float(np.max(logvals[acc])) if np.any(acc) else NEG_INF


def _from_log(lv: float) -> float:
    return float(np.exp(lv)) if lv > NEG_INF else 0.0


def local_r(a, i: int) -> float:
    """Local max-algebra spectral radius r_{e_i}(A): the largest cycle
    geometric mean among classes with access to i."""
    cond = condense(a)
    return _from_log(_local_log(cond, cond.log_mcgm, i))


def local_rho(a, i: int) -> float:
    """Local classical spectral radius rho_{e_i}(A): the largest Perron root
    among classes with access to i."""
    cond = condense(a)
    return _from_log(_local_log(cond, cond.log_perron, i))


def _support(x: np.ndarray) -> np.ndarray:
    return np.nonzero(x > 0)[0]


def local_r_at(a, x) -> float:
    """r_x(A) = max of r_{e_i}(A) over the support of x; 0 for x = 0."""
    a = as_matrix(a)
    x = np.asarray(x, dtype=float)
    if x.shape != (a.shape[0],):
        raise ValueError("vector dimension mismatch")
    sup = _support(x)
    if sup.size == 0:
        warnings.warn("local radius at the zero vector is 0 by convention")
        return 0.0
    cond = condense(a)
    return _from_log(max(_local_log(cond, cond.log_mcgm, int(i)) for i in sup))


def local_rho_at(a, x) -> float:
    """rho_x(A) = max of rho_{e_i}(A) over the support of x; 0 for x = 0."""
    a = as_matrix(a)
    x = np.asarray(x, dtype=float)
    if x.shape != (a.shape[0],):
        raise ValueError("vector dimension mismatch")
    sup = _support(x)
    if sup.size == 0:
        warnings.warn("local radius at the zero vector is 0 by convention")
        return 0.0
    cond = condense(a)
    return _from_log(max(_local_log(cond, cond.log_perron, int(i)) for i in sup))


def merge_values(values) -> tuple[float, ...]:
    """Sorted distinct values, merging floats equal to relative 1e-9."""
    vals = sorted(float(v) for v in values)
    out: list[float] = []
    for v in vals:
        if out and abs(v - out[-1]) <= VALUE_MERGE_RTOL * max(abs(v), abs(out[-1]), 1e-300):
            continue
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class SpectralProfile:
    """Per-index local radii, the two spectra, and witness classes.

    ``r_witness[i]`` (resp. ``rho_witness[i]``) is the lowest-index class
    achieving r[i] (resp. rho[i]) among classes with access to i.
    """

    r: np.ndarray
    rho: np.ndarray
    sigma_max: tuple[float, ...]
    sigma_dist: tuple[float, ...]
    r_witness: tuple[int, ...]
    rho_witness: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "r": self.r.tolist(),
            "rho": self.rho.tolist(),
            "sigma_max": list(self.sigma_max),
            "sigma_dist": list(self.sigma_dist),
            "r_witness": list(self.r_witness),
            "rho_witness": list(self.rho_witness),
        }


def _witness(cond: Condensation, logvals: np.ndarray, i: int) -> int:
    acc = [m for m in range(cond.num_classes) if cond.access[m, cond.class_of[i]]]
    best = max(logvals[m] for m in acc)
    for m in acc:
        if logvals[m] == best:
            return m
    raise AssertionError("unreachable")


def spectrum(a) -> SpectralProfile:
    """Full spectral profile: all local radii, sigma_max, sigma_dist, witnesses."""
    a = as_matrix(a)
    cond = condense(a)
    n = a.shape[0]
    r = np.array([_from_log(_local_log(cond, cond.log_mcgm, i)) for i in range(n)])
    rho = np.array([_from_log(_local_log(cond, cond.log_perron, i)) for i in range(n)])
    return SpectralProfile(
        r=r,
        rho=rho,
        sigma_max=merge_values(r),
        sigma_dist=merge_values(rho),
        r_witness=tuple(_witness(cond, cond.log_mcgm, i) for i in range(n)),
        rho_witness=tuple(_witness(cond, cond.log_perron, i) for i in range(n)),
    )


def _close(a: float, b: float, rtol: float = VALUE_MERGE_RTOL) -> bool:
    if a == b:
        return True
    if not (np.isfinite(a) and np.isfinite(b)):
        return False
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)


def _pick_maximal(cond: Condensation, candidates: list[int]) -> int:
    """Lowest-index candidate with no other candidate strictly above it in the
    access preorder."""
    for m in candidates:
        if not any(v != m and cond.access[v, m] for v in candidates):
            return m
    return candidates[0]


def _zero_eigenvector(a: np.ndarray) -> np.ndarray:
    """Eigenvector for the eigenvalue 0 (both semirings): a unit vector at a
    zero column, which exists whenever 0 is a local radius."""
    cols = np.nonzero(~np.any(a > 0, axis=0))[0]
    if cols.size == 0:
        raise ValueError("0 is not an eigenvalue: every column is nonzero")
    v = np.zeros(a.shape[0])
    v[cols[0]] = 1.0
    return v


def max_eigenvector(a, lam: float, witness_index: int) -> np.ndarray:
    """Nonnegative eigenvector v with A (x) v = lam * v, built from the Kleene
    star of A/lam restricted to the ancestors of a maximal spectral class."""
    a = as_matrix(a)
    if lam == 0:
        return _zero_eigenvector(a)
    if not lam > 0:
        raise ValueError("eigenvector construction requires lam >= 0")
    l = log_weights(a)
    cond = _condense_log(l)
    cw = cond.class_of[witness_index]
    log_lam = float(np.log(lam))
    if not _close(_local_log(cond, cond.log_mcgm, witness_index), log_lam):
        raise ValueError("lam is not the local max-algebra radius at the witness index")
    candidates = [
        m for m in range(cond.num_classes)
        if cond.access[m, cw] and _close(cond.log_mcgm[m], log_lam)
    ]
    mu = _pick_maximal(cond, candidates)

    # critical vertex: lies on a cycle of geometric mean lam inside mu
    cls = list(cond.classes[mu])
    w = l[np.ix_(cls, cls)] - log_lam
    crit = None
    p = w.copy()
    for _ in range(len(cls)):
        diag = np.diag(p)
        hits = np.nonzero(diag >= -1e-9)[0]
        if hits.size:
            crit = cls[int(hits[0])]
            break
        p = maxplus_mul(p, w)
    if crit is None:
        raise ArithmeticError("no critical vertex found; class selection defect")

    s_nodes = [u for u in range(cond.n) if cond.access[cond.class_of[u], mu]]
    ws = l[np.ix_(s_nodes, s_nodes)] - log_lam
    star = ws.copy()
    for k in range(len(s_nodes)):  # Floyd-Warshall max-plus closure
        star = np.maximum(star, star[:, k, None] + star[None, k, :])
    d = np.arange(len(s_nodes))
    star[d, d] = np.maximum(star[d, d], 0.0)

    col = star[:, s_nodes.index(crit)]
    col = col - np.max(col)
    v = np.zeros(cond.n)
    v[s_nodes] = np.exp(col)

    resid = norm_max(np.abs(max_vec_mul(a, v) - lam * v))
    if resid > 1e-9 * lam * norm_max(v):
        raise ArithmeticError(f"max eigenvector residual {resid} too large")
    return v


def dist_eigenvector(a, lam: float, witness_index: int) -> np.ndarray:
    """Nonnegative eigenvector v with A v = lam * v.

    The class with Perron root lam is solved by power iteration; the remaining
    classes of its ancestor set are filled in reverse topological order through
    the convergent Neumann fixed point x = (A_nn x + b) / lam.
    """
    a = as_matrix(a)
    if lam == 0:
        return _zero_eigenvector(a)
    if not lam > 0:
        raise ValueError("eigenvector construction requires lam >= 0")
    l = log_weights(a)
    cond = _condense_log(l)
    cw = cond.class_of[witness_index]
    log_lam = float(np.log(lam))
    if not _close(_local_log(cond, cond.log_perron, witness_index), log_lam):
        raise ValueError("lam is not the local distinguished radius at the witness index")
    candidates = [
        m for m in range(cond.num_classes)
        if cond.access[m, cw] and _close(cond.log_perron[m], log_lam)
    ]
    mu = _pick_maximal(cond, candidates)

    v = np.zeros(cond.n)
    cls_mu = list(cond.classes[mu])
    if len(cls_mu) == 1:
        v[cls_mu[0]] = 1.0
    else:
        _, xlog = _perron_log(l[np.ix_(cls_mu, cls_mu)], cond.log_mcgm[mu])
        v[cls_mu] = np.exp(xlog - np.max(xlog))

    s_classes = [m for m in range(cond.num_classes) if cond.access[m, mu]]
    pattern = a > 0
    out_edges = {
        m: {
            cond.class_of[t]
            for u in cond.classes[m]
            for t in np.nonzero(pattern[u])[0]
            if cond.class_of[t] != m and cond.class_of[t] in s_classes
        }
        for m in s_classes
    }
    done = {mu}
    pending = [m for m in s_classes if m != mu]
    while pending:
        ready = [m for m in pending if out_edges[m] <= done]
        if not ready:
            raise AssertionError("cyclic class order in a condensation DAG")
        for m in ready:
            cls = list(cond.classes[m])
            b = a[cls, :] @ v
            block = a[np.ix_(cls, cls)]
            if cond.log_perron[m] >= log_lam - 1e-12:
                raise RuntimeError(
                    "Neumann series does not converge; class selection defect"
                )
            x = b / lam
            for _ in range(500_000):
                x_new = (block @ x + b) / lam
                if np.max(np.abs(x_new - x)) <= 1e-16 * max(1e-300, np.max(x_new)):
                    x = x_new
                    break
                x = x_new
            v[cls] = x
            done.add(m)
            pending.remove(m)

    v /= np.max(v)
    resid = norm_max(np.abs(a @ v - lam * v))
    if resid > 1e-9 * lam * norm_max(v):
        raise ArithmeticError(f"distinguished eigenvector residual {resid} too large")
    return v
