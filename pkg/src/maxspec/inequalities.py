"""Registry of proved spectral inequalities and identities, plus the two
pinned fixtures documenting relations that fail in general.

Notation used in statement strings: ``o`` is the entrywise (Hadamard) product,
``(x)`` the max-times matrix product, juxtaposition the ordinary product,
``A^(t)`` the entrywise power, ``r`` the maximum cycle geometric mean,
``r_x`` / ``rho_x`` the local max-algebra / classical radii at a nonnegative
vector x, and ``||.||`` the maximum entry.

Every evaluator is built only from matcore and specgraph operations.  A check
whose hypothesis fails (wrong parity, exponent out of range, weight sum too
small) reports the verdict ``not-applicable`` rather than evaluating anything.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .matcore import (
    as_matrix,
    as_vector,
    classical_mul,
    hadamard,
    hadamard_power,
    max_mul,
    norm_max,
    transpose,
)
from .oracles import GeneratorSpec, generate
from .report import NEAR_TIGHT_RTOL, NOISE_RTOL, CheckReport, digest_inputs
from .specgraph import local_r, local_r_at, local_rho_at, max_cycle_mean

__all__ = [
    "RegistryRow",
    "REGISTRY",
    "NotApplicable",
    "run_check",
    "run_suite",
    "pinned_counterexamples",
]


class NotApplicable(Exception):
    """Raised by an evaluator whose hypothesis is not satisfied."""


@dataclass(frozen=True)
class RegistryRow:
    """One named relation: key, expected input shape, human-readable formula,
    and which optional inputs (x, alpha, t, i) the evaluator consumes."""

    key: str
    arity: str
    statement: str
    needs: tuple[str, ...] = ()


REGISTRY: dict[str, RegistryRow] = {
    row.key: row
    for row in (
        RegistryRow(
            "humu", "m matrices",
            "r(A1 o...o Am) <= r(P1 o...o Pm)^(1/m) <= r(A1 (x)...(x) Am), "
            "Pj the cyclic max products",
        ),
        RegistryRow(
            "maxmixmax", "pair",
            "r(A o B) <= r((A (x) B) o (B (x) A))^(1/2) <= r(A (x) B)",
        ),
        RegistryRow(
            "kvmax", "pair",
            "r(A o B) <= ||A o B|| <= r(A^T (x) B)",
        ),
        RegistryRow(
            "hadamard_sq", "pair",
            "r((A (x) B) o (B (x) A)) <= r(A^2_(x) (x) B^2_(x))",
        ),
        RegistryRow(
            "remark_fixpoint", "pair",
            "if r(A (x) B) <= max_i a_ii b_ii then "
            "r(A (x) B) = r(A o B) = max_i a_ii b_ii",
        ),
        RegistryRow(
            "wgm_local_max", "m matrices",
            "r_{e_i}(A1^(a1) o...o Am^(am)) <= prod_j r_{e_i}(Aj)^aj, aj > 0",
            needs=("alpha", "i"),
        ),
        RegistryRow(
            "had_local_max", "m matrices",
            "r_{e_i}(A1 o...o Am) <= prod_j r_{e_i}(Aj)",
            needs=("i",),
        ),
        RegistryRow(
            "pj_local_max", "m matrices",
            "r_{e_i}(A1 o...o Am) <= r_{e_i}(P1 o...o Pm)^(1/m) "
            "<= prod_j r_{e_i}(Pj)^(1/m), Pj the cyclic max products",
            needs=("i",),
        ),
        RegistryRow(
            "pair_local_max", "pair",
            "r_{e_i}(A o B) <= r_{e_i}((A (x) B) o (B (x) A))^(1/2) "
            "<= (r_{e_i}(A (x) B) r_{e_i}(B (x) A))^(1/2)",
            needs=("i",),
        ),
        RegistryRow(
            "lradius_bundle", "m matrices",
            "at arbitrary x >= 0: r_x(A^(t)) = r_x(A)^t; the weighted, plain, "
            "cyclic and pair Hadamard bounds for r_x",
            needs=("x", "alpha", "t"),
        ),
        RegistryRow(
            "rho_schur_t", "single",
            "rho_x(A^(t)) <= rho_x(A)^t, t >= 1",
            needs=("x", "t"),
        ),
        RegistryRow(
            "rho_t_chain", "m matrices",
            "rho_x(A1^(t)...Am^(t)) <= rho_x((A1...Am)^(t)) "
            "<= rho_x(A1...Am)^t, t >= 1",
            needs=("x", "t"),
        ),
        RegistryRow(
            "rho_wgm", "m matrices",
            "rho_x(A1^(a1) o...o Am^(am)) <= prod_j rho_x(Aj)^aj, "
            "aj > 0 with sum aj >= 1",
            needs=("x", "alpha"),
        ),
        RegistryRow(
            "rho_B_chain", "l x m grid of matrices",
            "rho_x(B) <= rho_x((A_11...A_l1)^(a1) o...o (A_1m...A_lm)^(am)) "
            "<= prod_j rho_x(A_1j...A_lj)^aj where "
            "B = (A_11^(a1) o...o A_1m^(am))...(A_l1^(a1) o...o A_lm^(am)), "
            "sum aj >= 1",
            needs=("x", "alpha"),
        ),
        RegistryRow(
            "rho_hadamard", "m matrices",
            "rho_x(A1 o...o Am) <= prod_j rho_x(Aj)",
            needs=("x",),
        ),
        RegistryRow(
            "rho_pj", "m matrices",
            "rho_x(A1 o...o Am) <= rho_x(P1 o...o Pm)^(1/m) "
            "<= prod_j rho_x(Pj)^(1/m), Pj the cyclic ordinary products",
            needs=("x",),
        ),
        RegistryRow(
            "norm_sq_identity", "single",
            "||A||^2 = r(A^T (x) A) = r(A (x) A^T)",
        ),
        RegistryRow(
            "jordan_pair_refined", "pair",
            "||A o B|| <= r((A^T (x) B) o (B^T (x) A))^(1/2) <= r(A^T (x) B)",
        ),
        RegistryRow(
            "th5_even", "m matrices, m even",
            "||A1 o...o Am||^2 <= r(A1^T (x) A2 (x)...(x) A_{m-1}^T (x) Am) "
            "* r(A1 (x) A2^T (x)...(x) A_{m-1} (x) Am^T)",
        ),
        RegistryRow(
            "th5_odd", "m matrices, m odd",
            "||A1 o...o Am||^2 <= r(A1 (x) A2^T (x)...(x) Am "
            "(x) A1^T (x) A2 (x)...(x) Am^T)",
        ),
        RegistryRow(
            "jordan_triple", "pair",
            "||A o B^T o A|| <= ||A (x) B (x) A||",
        ),
    )
}


def _hadamard_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = hadamard(out, m)
    return out


def _chain_all(mats, mul):
    out = mats[0]
    for m in mats[1:]:
        out = mul(out, m)
    return out


def _cyclic_products(mats, mul):
    """P_j = A_j A_{j+1} ... A_m A_1 ... A_{j-1} for j = 1..m."""
    m = len(mats)
    return [_chain_all([mats[(j + s) % m] for s in range(m)], mul) for j in range(m)]


def _wgm(mats, alpha):
    return _hadamard_all([hadamard_power(a, t) for a, t in zip(mats, alpha)])


def _need_pair(mats):
    if len(mats) != 2:
        raise NotApplicable("this relation takes exactly two matrices")
    return mats


def _need_alpha(mats, alpha):
    if alpha is None or len(alpha) != len(mats):
        raise NotApplicable("needs one positive weight per matrix")
    alpha = [float(v) for v in alpha]
    if any(v <= 0 for v in alpha):
        raise NotApplicable("weights must be positive")
    return alpha


# --- evaluators; each returns a list of (label, chain, is_identity) items ---

def _ev_humu(mats, **_):
    m = len(mats)
    ps = _cyclic_products(mats, max_mul)
    chain = [
        max_cycle_mean(_hadamard_all(mats)),
        max_cycle_mean(_hadamard_all(ps)) ** (1.0 / m),
        max_cycle_mean(_chain_all(mats, max_mul)),
    ]
    return [("chain", chain, False)]


def _ev_maxmixmax(mats, **_):
    a, b = _need_pair(mats)
    mixed = hadamard(max_mul(a, b), max_mul(b, a))
    chain = [
        max_cycle_mean(hadamard(a, b)),
        math.sqrt(max_cycle_mean(mixed)),
        max_cycle_mean(max_mul(a, b)),
    ]
    return [("chain", chain, False)]


def _ev_kvmax(mats, **_):
    a, b = _need_pair(mats)
    had = hadamard(a, b)
    chain = [
        max_cycle_mean(had),
        norm_max(had),
        max_cycle_mean(max_mul(transpose(a), b)),
    ]
    return [("chain", chain, False)]


def _ev_hadamard_sq(mats, **_):
    a, b = _need_pair(mats)
    lhs = max_cycle_mean(hadamard(max_mul(a, b), max_mul(b, a)))
    rhs = max_cycle_mean(max_mul(max_mul(a, a), max_mul(b, b)))
    return [("chain", [lhs, rhs], False)]


def _ev_remark_fixpoint(mats, **_):
    a, b = _need_pair(mats)
    r_prod = max_cycle_mean(max_mul(a, b))
    diag_best = float(np.max(np.diag(a) * np.diag(b)))
    if r_prod > diag_best * (1.0 + NOISE_RTOL) + NOISE_RTOL:
        raise NotApplicable("r(A (x) B) exceeds every diagonal product")
    chain = [r_prod, max_cycle_mean(hadamard(a, b)), diag_best]
    return [("identity", chain, True)]


def _ev_wgm_local_max(mats, alpha=None, i=0, **_):
    alpha = _need_alpha(mats, alpha)
    lhs = local_r(_wgm(mats, alpha), i)
    rhs = math.prod(local_r(a, i) ** t for a, t in zip(mats, alpha))
    return [("chain", [lhs, rhs], False)]


def _ev_had_local_max(mats, i=0, **_):
    lhs = local_r(_hadamard_all(mats), i)
    rhs = math.prod(local_r(a, i) for a in mats)
    return [("chain", [lhs, rhs], False)]


def _ev_pj_local_max(mats, i=0, **_):
    m = len(mats)
    ps = _cyclic_products(mats, max_mul)
    chain = [
        local_r(_hadamard_all(mats), i),
        local_r(_hadamard_all(ps), i) ** (1.0 / m),
        math.prod(local_r(p, i) for p in ps) ** (1.0 / m),
    ]
    return [("chain", chain, False)]


def _ev_pair_local_max(mats, i=0, **_):
    a, b = _need_pair(mats)
    ab, ba = max_mul(a, b), max_mul(b, a)
    chain = [
        local_r(hadamard(a, b), i),
        math.sqrt(local_r(hadamard(ab, ba), i)),
        math.sqrt(local_r(ab, i) * local_r(ba, i)),
    ]
    return [("chain", chain, False)]


def _ev_lradius_bundle(mats, x=None, alpha=None, t=None, **_):
    if x is None:
        raise NotApplicable("needs a nonnegative vector x")
    alpha = _need_alpha(mats, alpha)
    if t is None or not float(t) > 0:
        raise NotApplicable("needs an exponent t > 0")
    t = float(t)
    a = mats[0]
    m = len(mats)
    ps = _cyclic_products(mats, max_mul)
    items = [
        ("power_identity",
         [local_r_at(hadamard_power(a, t), x), local_r_at(a, x) ** t], True),
        ("weighted",
         [local_r_at(_wgm(mats, alpha), x),
          math.prod(local_r_at(b, x) ** v for b, v in zip(mats, alpha))], False),
        ("hadamard",
         [local_r_at(_hadamard_all(mats), x),
          math.prod(local_r_at(b, x) for b in mats)], False),
        ("cyclic",
         [local_r_at(_hadamard_all(mats), x),
          local_r_at(_hadamard_all(ps), x) ** (1.0 / m),
          math.prod(local_r_at(p, x) for p in ps) ** (1.0 / m)], False),
    ]
    if m >= 2:
        b, c = mats[0], mats[1]
        bc, cb = max_mul(b, c), max_mul(c, b)
        items.append((
            "pair",
            [local_r_at(hadamard(b, c), x),
             math.sqrt(local_r_at(hadamard(bc, cb), x)),
             math.sqrt(local_r_at(bc, x) * local_r_at(cb, x))], False,
        ))
    return items


def _need_t_ge1(t):
    if t is None or float(t) < 1.0:
        raise NotApplicable("needs an exponent t >= 1")
    return float(t)


def _ev_rho_schur_t(mats, x=None, t=None, **_):
    t = _need_t_ge1(t)
    a = mats[0]
    chain = [local_rho_at(hadamard_power(a, t), x), local_rho_at(a, x) ** t]
    return [("chain", chain, False)]


def _ev_rho_t_chain(mats, x=None, t=None, **_):
    t = _need_t_ge1(t)
    prod = _chain_all(mats, classical_mul)
    chain = [
        local_rho_at(_chain_all([hadamard_power(a, t) for a in mats],
                                classical_mul), x),
        local_rho_at(hadamard_power(prod, t), x),
        local_rho_at(prod, x) ** t,
    ]
    return [("chain", chain, False)]


def _need_alpha_sum1(mats, alpha):
    alpha = _need_alpha(mats, alpha)
    if sum(alpha) < 1.0 - NOISE_RTOL:
        raise NotApplicable("weights must sum to at least 1")
    return alpha


def _ev_rho_wgm(mats, x=None, alpha=None, **_):
    alpha = _need_alpha_sum1(mats, alpha)
    lhs = local_rho_at(_wgm(mats, alpha), x)
    rhs = math.prod(local_rho_at(a, x) ** t for a, t in zip(mats, alpha))
    return [("chain", [lhs, rhs], False)]


def _ev_rho_b_chain(mats, x=None, alpha=None, **_):
    # mats is an l x m grid: list of rows, each a list of m matrices
    if not mats or not isinstance(mats[0], (list, tuple)):
        raise NotApplicable("needs an l x m grid of matrices")
    grid = [list(row) for row in mats]
    alpha = _need_alpha_sum1(grid[0], alpha)
    b = _chain_all([_wgm(row, alpha) for row in grid], classical_mul)
    col_prods = [
        _chain_all([row[j] for row in grid], classical_mul)
        for j in range(len(alpha))
    ]
    chain = [
        local_rho_at(b, x),
        local_rho_at(_wgm(col_prods, alpha), x),
        math.prod(local_rho_at(p, x) ** t for p, t in zip(col_prods, alpha)),
    ]
    return [("chain", chain, False)]


def _ev_rho_hadamard(mats, x=None, **_):
    lhs = local_rho_at(_hadamard_all(mats), x)
    rhs = math.prod(local_rho_at(a, x) for a in mats)
    return [("chain", [lhs, rhs], False)]


def _ev_rho_pj(mats, x=None, **_):
    m = len(mats)
    ps = _cyclic_products(mats, classical_mul)
    chain = [
        local_rho_at(_hadamard_all(mats), x),
        local_rho_at(_hadamard_all(ps), x) ** (1.0 / m),
        math.prod(local_rho_at(p, x) for p in ps) ** (1.0 / m),
    ]
    return [("chain", chain, False)]


def _ev_norm_sq_identity(mats, **_):
    a = mats[0]
    chain = [
        norm_max(a) ** 2,
        max_cycle_mean(max_mul(transpose(a), a)),
        max_cycle_mean(max_mul(a, transpose(a))),
    ]
    return [("identity", chain, True)]


def _ev_jordan_pair_refined(mats, **_):
    a, b = _need_pair(mats)
    atb = max_mul(transpose(a), b)
    bta = max_mul(transpose(b), a)
    chain = [
        norm_max(hadamard(a, b)),
        math.sqrt(max_cycle_mean(hadamard(atb, bta))),
        max_cycle_mean(atb),
    ]
    return [("chain", chain, False)]


def _alternating_chain(mats, transpose_odd: bool):
    """Max product of the matrices with every odd-position (resp. even-
    position) factor transposed; positions count from one."""
    factors = [
        transpose(a) if (j % 2 == 0) == transpose_odd else a
        for j, a in enumerate(mats)
    ]
    return _chain_all(factors, max_mul)


def _ev_th5_even(mats, **_):
    if len(mats) % 2 != 0:
        raise NotApplicable("needs an even number of matrices")
    lhs = norm_max(_hadamard_all(mats)) ** 2
    rhs = (max_cycle_mean(_alternating_chain(mats, transpose_odd=True))
           * max_cycle_mean(_alternating_chain(mats, transpose_odd=False)))
    return [("chain", [lhs, rhs], False)]


def _ev_th5_odd(mats, **_):
    if len(mats) % 2 != 1:
        raise NotApplicable("needs an odd number of matrices")
    lhs = norm_max(_hadamard_all(mats)) ** 2
    long_chain = max_mul(
        _alternating_chain(mats, transpose_odd=False),
        _alternating_chain(mats, transpose_odd=True),
    )
    return [("chain", [lhs, max_cycle_mean(long_chain)], False)]


def _ev_jordan_triple(mats, **_):
    a, b = _need_pair(mats)
    lhs = norm_max(_hadamard_all([a, transpose(b), a]))
    rhs = norm_max(max_mul(max_mul(a, b), a))
    return [("chain", [lhs, rhs], False)]


_EVALUATORS = {
    "humu": _ev_humu,
    "maxmixmax": _ev_maxmixmax,
    "kvmax": _ev_kvmax,
    "hadamard_sq": _ev_hadamard_sq,
    "remark_fixpoint": _ev_remark_fixpoint,
    "wgm_local_max": _ev_wgm_local_max,
    "had_local_max": _ev_had_local_max,
    "pj_local_max": _ev_pj_local_max,
    "pair_local_max": _ev_pair_local_max,
    "lradius_bundle": _ev_lradius_bundle,
    "rho_schur_t": _ev_rho_schur_t,
    "rho_t_chain": _ev_rho_t_chain,
    "rho_wgm": _ev_rho_wgm,
    "rho_B_chain": _ev_rho_b_chain,
    "rho_hadamard": _ev_rho_hadamard,
    "rho_pj": _ev_rho_pj,
    "norm_sq_identity": _ev_norm_sq_identity,
    "jordan_pair_refined": _ev_jordan_pair_refined,
    "th5_even": _ev_th5_even,
    "th5_odd": _ev_th5_odd,
    "jordan_triple": _ev_jordan_triple,
}


def _flatten(mats):
    if mats and isinstance(mats[0], (list, tuple)):
        return [m for row in mats for m in row]
    return list(mats)


def _aggregate(key: str, items, digest: str, statement: str) -> CheckReport:
    """Combine the per-item chains into one report.  The reported lhs/rhs pair
    is the link of smallest slack; any violated link makes the row violated."""
    worst = None  # (slack, lhs, rhs)
    violated = False
    near_tight = False
    chains = {}
    for label, chain, is_identity in items:
        chains[label] = [float(v) for v in chain]
        for lo, hi in zip(chain, chain[1:]):
            tol = NOISE_RTOL * max(1.0, abs(hi))
            scale = max(1.0, abs(lo), abs(hi))
            slack = hi - lo
            if (abs(slack) > tol) if is_identity else (lo > hi + tol):
                violated = True
            elif not is_identity and slack < NEAR_TIGHT_RTOL * scale:
                near_tight = True
            if worst is None or slack < worst[0]:
                worst = (slack, float(lo), float(hi))
    verdict = "violated" if violated else ("near-tight" if near_tight else "holds")
    return CheckReport(
        name=key, lhs=worst[1], rhs=worst[2], slack=worst[0], verdict=verdict,
        digest=digest, detail={"statement": statement, "chains": chains},
    )


def run_check(key: str, mats, *, x=None, alpha=None, t=None, i=None) -> CheckReport:
    """Evaluate one registry row on the given inputs into a CheckReport."""
    if key not in REGISTRY:
        raise KeyError(f"unknown registry key {key!r}")
    row = REGISTRY[key]
    checked = [as_matrix(m) for m in _flatten(mats)]
    if mats and isinstance(mats[0], (list, tuple)):
        width = len(mats[0])
        mats = [checked[r * width:(r + 1) * width] for r in range(len(mats))]
    else:
        mats = checked
    if x is not None:
        x = as_vector(x, checked[0].shape[0])
    digest = digest_inputs(key, checked, x, alpha, t, i)
    try:
        items = _EVALUATORS[key](mats, x=x, alpha=alpha, t=t,
                                 i=0 if i is None else int(i))
    except NotApplicable as exc:
        return CheckReport(
            name=key, lhs=0.0, rhs=0.0, slack=0.0, verdict="not-applicable",
            digest=digest, detail={"statement": row.statement, "reason": str(exc)},
        )
    return _aggregate(key, items, digest, row.statement)


def pinned_counterexamples() -> list[CheckReport]:
    """The two documented failures of tempting non-theorems.

    First: for the pair A = [[1,0],[0,0]], B = [[1,2],[3,4]] the product
    analogue of the local Hadamard bound fails, r_{e_2}(A (x) B) = 1 while
    r_{e_2}(A) r_{e_2}(B) = 0 (and also r_{e_2}(B (x) A) = 0).

    Second: for A = [[0,1],[1,0]], B = [[0,1],[1/4,0]] the transpose-product
    bound fails per index, r_{e_1}(A o B) = 1/2 while r_{e_1}(A^T (x) B) = 1/4.
    """
    reports = []

    a = np.array([[1.0, 0.0], [0.0, 0.0]])
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    lhs = local_r(max_mul(a, b), 1)
    rhs = local_r(a, 1) * local_r(b, 1)
    reports.append(CheckReport(
        name="ce_local_product", lhs=lhs, rhs=rhs, slack=rhs - lhs,
        verdict="violated" if lhs > rhs + NOISE_RTOL * max(1.0, rhs) else "holds",
        digest=digest_inputs("ce_local_product", a, b),
        detail={
            "statement": "r_{e_i}(A (x) B) <= r_{e_i}(A) r_{e_i}(B) fails",
            "also": {"r_e2(BA)": local_r(max_mul(b, a), 1)},
        },
    ))

    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    b = np.array([[0.0, 1.0], [0.25, 0.0]])
    lhs = local_r(hadamard(a, b), 0)
    rhs = local_r(max_mul(transpose(a), b), 0)
    reports.append(CheckReport(
        name="ce_local_transpose", lhs=lhs, rhs=rhs, slack=rhs - lhs,
        verdict="violated" if lhs > rhs + NOISE_RTOL * max(1.0, rhs) else "holds",
        digest=digest_inputs("ce_local_transpose", a, b),
        detail={"statement": "r_{e_i}(A o B) <= r_{e_i}(A^T (x) B) fails"},
    ))
    return reports


def _sample_x(rng, n: int) -> np.ndarray:
    """Nonnegative vector with full, singleton, or half support."""
    mode = int(rng.integers(3))
    if mode == 0:
        sup = np.arange(n)
    elif mode == 1:
        sup = np.array([rng.integers(n)])
    else:
        sup = rng.choice(n, size=max(1, n // 2), replace=False)
    x = np.zeros(n)
    x[sup] = rng.uniform(0.5, 2.0, size=sup.size)
    return x


def _sample_alpha(rng, m: int) -> list[float]:
    """Positive weights scaled so the sum is 1, 1.5 or 3."""
    total = float(rng.choice([1.0, 1.5, 3.0]))
    raw = rng.dirichlet(np.ones(m))
    raw = np.maximum(raw, 1e-3)
    return list(raw / raw.sum() * total)


def _boosted_pair(rng, a: np.ndarray, b: np.ndarray):
    """Copy of (A, B) with one dominant shared diagonal entry, guaranteeing
    the fixed-point identity's hypothesis."""
    a = a.copy()
    b = b.copy()
    i = int(rng.integers(a.shape[0]))
    big = max(1.0, norm_max(a), norm_max(b)) * a.shape[0] * 10.0
    a[i, i] = big
    b[i, i] = big
    return a, b


def run_suite(trials: int = 500, seed: int = 0, dump_path: str | None = None,
              sizes=(2, 3, 4, 5, 6), densities=(0.3, 0.7, 1.0),
              ms=(2, 3, 4)) -> list[CheckReport]:
    """Evaluate every registry row on random tuples; returns all reports.

    Any violated report for a proved row gets its inputs dumped as one JSON
    line {key, matrices, x, alpha, lhs, rhs} to dump_path, when given.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    reports: list[CheckReport] = []
    dump = open(dump_path, "w") if dump_path else None
    try:
        for _ in range(trials):
            n = int(rng.choice(sizes))
            density = float(rng.choice(densities))
            m = int(rng.choice(ms))
            spec = GeneratorSpec(n=n, density=density)
            mats = [generate(spec, int(rng.integers(2**63))) for _ in range(4)]
            row2 = [generate(spec, int(rng.integers(2**63))) for _ in range(4)]
            x = _sample_x(rng, n)
            alpha = _sample_alpha(rng, m)
            i = int(rng.integers(n))
            t_any = float(rng.choice([0.5, 1.0, 1.7, 2.0, 3.0]))
            t_ge1 = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
            even_m = m if m % 2 == 0 else m + 1
            calls = [
                ("humu", mats[:m], {}),
                ("maxmixmax", mats[:2], {}),
                ("kvmax", mats[:2], {}),
                ("hadamard_sq", mats[:2], {}),
                ("remark_fixpoint", list(_boosted_pair(rng, *mats[:2])), {}),
                ("wgm_local_max", mats[:m], {"alpha": alpha, "i": i}),
                ("had_local_max", mats[:m], {"i": i}),
                ("pj_local_max", mats[:m], {"i": i}),
                ("pair_local_max", mats[:2], {"i": i}),
                ("lradius_bundle", mats[:m], {"x": x, "alpha": alpha, "t": t_any}),
                ("rho_schur_t", mats[:1], {"x": x, "t": t_ge1}),
                ("rho_t_chain", mats[:m], {"x": x, "t": t_ge1}),
                ("rho_wgm", mats[:m], {"x": x, "alpha": alpha}),
                ("rho_B_chain", [mats[:m], row2[:m]], {"x": x, "alpha": alpha}),
                ("rho_hadamard", mats[:m], {"x": x}),
                ("rho_pj", mats[:m], {"x": x}),
                ("norm_sq_identity", mats[:1], {}),
                ("jordan_pair_refined", mats[:2], {}),
                ("th5_even", mats[:even_m], {}),
                ("th5_odd", mats[:3], {}),
                ("jordan_triple", mats[:2], {}),
            ]
            for key, key_mats, kwargs in calls:
                rep = run_check(key, key_mats, **kwargs)
                reports.append(rep)
                if rep.verdict == "violated" and dump is not None:
                    dump.write(json.dumps({
                        "key": key,
                        "matrices": [np.asarray(v).tolist()
                                     for v in _flatten(key_mats)],
                        "x": None if kwargs.get("x") is None
                        else np.asarray(kwargs["x"]).tolist(),
                        "alpha": kwargs.get("alpha"),
                        "lhs": rep.lhs,
                        "rhs": rep.rhs,
                    }) + "\n")
    finally:
        if dump is not None:
            dump.close()
    return reports
