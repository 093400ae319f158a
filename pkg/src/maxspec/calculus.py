"""Power-series functional calculus in both semirings and multivariate max
polynomials, with verifiers for the spectral mapping and commuting-family
statements.

Series are specified by generator tag (``exp``, ``cosh``, ``sinh``,
``geom:<lam>``) or by an explicit coefficient prefix (``coeffs:a0,a1,...``).
Tagged series carry exact radii; a long custom prefix gets a conservative
radius estimate and inputs within 5% of it are rejected.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .matcore import (
    as_matrix,
    classical_power,
    max_identity,
    max_mul,
    max_power,
    norm_max,
    oplus,
)
from .report import CheckReport, digest_inputs
from .specgraph import (
    condense,
    log_weights,
    max_cycle_mean,
    maxplus_mul,
    merge_values,
    spectrum,
)

__all__ = [
    "PowerSeries",
    "MaxPolynomial",
    "parse_series",
    "eval_scalar_max",
    "eval_scalar_classical",
    "eval_matrix_max",
    "eval_matrix_classical",
    "eval_max_multipoly",
    "eval_classical_multipoly",
    "check_spectral_map_max",
    "check_spectral_map_dist",
    "check_commuting_family",
]

#: radius-margin below which inputs against an estimated radius are rejected
RADIUS_MARGIN = 0.05


@dataclass(frozen=True)
class PowerSeries:
    """A power series given by generator tag or stored coefficient prefix.

    ``tag``: exp | cosh | sinh | geom | coeffs.  For ``geom`` the series is
    sum_j (z/lam)^j with radius lam.  A coefficient prefix shorter than nine
    terms is treated as a polynomial (infinite radius); longer prefixes get
    the conservative estimate min_{j>=8} a_j^(-1/j).
    """

    tag: str
    lam: float = 0.0
    coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        if self.tag not in ("exp", "cosh", "sinh", "geom", "coeffs"):
            raise ValueError(f"unknown series tag {self.tag!r}")
        if self.tag == "geom" and not self.lam > 0:
            raise ValueError("geometric series needs a positive radius")
        if self.tag == "coeffs" and not self.coeffs:
            raise ValueError("coefficient series needs at least one term")

    @property
    def nonnegative(self) -> bool:
        if self.tag == "coeffs":
            return all(c >= 0 for c in self.coeffs)
        return True

    @property
    def radius(self) -> float:
        if self.tag == "geom":
            return self.lam
        if self.tag == "coeffs":
            if len(self.coeffs) <= 8:
                return math.inf
            est = math.inf
            for j, c in enumerate(self.coeffs):
                if j >= 8 and c != 0:
                    est = min(est, abs(c) ** (-1.0 / j))
            return est

        return math.inf

    @property
    def radius_estimated(self) -> bool:
        return self.tag == "coeffs" and len(self.coeffs) > 8

    def coeff(self, j: int) -> float:
        if self.tag == "exp":
            return 1.0 / math.factorial(j)
        if self.tag == "cosh":
            return 1.0 / math.factorial(j) if j % 2 == 0 else 0.0
        if self.tag == "sinh":
            return 1.0 / math.factorial(j) if j % 2 == 1 else 0.0
        if self.tag == "geom":
            return self.lam ** (-j)
        return self.coeffs[j] if j < len(self.coeffs) else 0.0

    def admits(self, value: float) -> bool:
        """True when the argument is safely inside the convergence radius."""
        r = self.radius
        if self.radius_estimated:
            r = r * (1.0 - RADIUS_MARGIN)
        return value < r


def parse_series(text: str) -> PowerSeries:
    """Parse ``exp | cosh | sinh | geom:<lam> | coeffs:a0,a1,...``."""
    text = text.strip()
    if text in ("exp", "cosh", "sinh"):
        return PowerSeries(tag=text)
    if text.startswith("geom:"):
        return PowerSeries(tag="geom", lam=float(text.split(":", 1)[1]))
    if text.startswith("coeffs:"):
        vals = tuple(float(v) for v in text.split(":", 1)[1].split(","))
        return PowerSeries(tag="coeffs", coeffs=vals)
    raise ValueError(f"cannot parse series specification {text!r}")


def _term_cap(f: PowerSeries, value: float) -> int:
    if f.tag == "coeffs":
        return len(f.coeffs)
    # factorial/geometric tails decay fast once j passes the argument
    return max(64, int(4 * value) + 64)


def _log_coeff(f: PowerSeries, j: int) -> float:
    """ln a_j, with -inf for vanishing coefficients; exact enough for the
    sup-accumulation to stay overflow-free at any magnitude."""
    neg_inf = float("-inf")
    if f.tag == "exp":
        return -math.lgamma(j + 1)
    if f.tag == "cosh":
        return -math.lgamma(j + 1) if j % 2 == 0 else neg_inf
    if f.tag == "sinh":
        return -math.lgamma(j + 1) if j % 2 == 1 else neg_inf
    if f.tag == "geom":
        return -j * math.log(f.lam)
    c = f.coeffs[j] if j < len(f.coeffs) else 0.0
    return math.log(c) if c > 0 else neg_inf


def eval_scalar_max(f: PowerSeries, t: float) -> float:
    """f_(x)(t) = sup_j a_j t^j for a nonnegative series and t < R_f."""
    if not f.nonnegative:
        raise ValueError("max-algebra evaluation needs nonnegative coefficients")
    if t < 0:
        raise ValueError("argument must be nonnegative")
    if not f.admits(t):
        raise ValueError("argument is not inside the series radius")
    if t == 0:
        return f.coeff(0)
    lt = math.log(t)
    best = float("-inf")
    for j in range(_term_cap(f, t)):
        best = max(best, _log_coeff(f, j) + j * lt)
    return math.exp(best) if best > float("-inf") else 0.0


def eval_scalar_classical(f: PowerSeries, t: float) -> float:
    """Ordinary sum of the series at t (exact for tagged generators)."""
    if f.tag == "exp":
        return math.exp(t)
    if f.tag == "cosh":
        return math.cosh(t)
    if f.tag == "sinh":
        return math.sinh(t)
    if f.tag == "geom":
        if not abs(t) < f.lam:
            raise ValueError("argument is not inside the series radius")
        return 1.0 / (1.0 - t / f.lam)
    if not f.admits(abs(t)):
        raise ValueError("argument is not inside the series radius")
    total = 0.0
    power = 1.0
    for c in f.coeffs:
        total += c * power
        power *= t
    return total


def eval_matrix_max(f: PowerSeries, a) -> np.ndarray:
    """f_(x)(A): max-plus accumulation of a_j A^j_(x); needs r_(x)(A) < R_f.

    Truncates once j >= n and n consecutive increments change no entry by
    more than relative 1e-15, with a hard cap of 64n terms.
    """
    if not f.nonnegative:
        raise ValueError("max-algebra evaluation needs nonnegative coefficients")
    a = as_matrix(a)
    n = a.shape[0]
    if not f.admits(max_cycle_mean(a)):
        raise ValueError("max cycle mean is not inside the series radius")
    # accumulate sup_j ln(a_j) + ln(A^j_(x)) in the log domain; max-times
    # powers become max-plus powers, so nothing overflows mid-series
    l = log_weights(a)
    lid = np.full((n, n), float("-inf"))
    np.fill_diagonal(lid, 0.0)
    lacc = _log_coeff(f, 0) + lid
    lpow = lid
    stable = 0
    cap = 64 * n if f.tag != "coeffs" else len(f.coeffs)
    for j in range(1, cap + 1):
        lpow = maxplus_mul(lpow, l)
        nxt = np.maximum(lacc, _log_coeff(f, j) + lpow)
        changed = bool(np.any(nxt > lacc))
        lacc = nxt
        if j >= n:
            stable = 0 if changed else stable + 1
            if stable >= n:
                break
    else:
        if f.tag != "coeffs":
            raise RuntimeError("max series did not stabilize within the term cap")
    with np.errstate(over="raise"):
        try:
            return np.exp(lacc)
        except FloatingPointError:
            raise OverflowError("max series value overflowed float64") from None


def eval_matrix_classical(f: PowerSeries, a) -> np.ndarray:
    """f(A) by truncated classical summation; needs rho(A) < R_f and a
    nonnegative result.  Tiny negative round-off is clamped at 1e-12 relative;
    anything beyond 1e-9 relative fails the nonnegativity hypothesis."""
    a = as_matrix(a)
    n = a.shape[0]
    cond = condense(a)
    rho = float(np.max(cond.perron)) if cond.num_classes else 0.0
    if not f.admits(rho):
        raise ValueError("spectral radius is not inside the series radius")
    acc = f.coeff(0) * np.eye(n)
    power = np.eye(n)
    quiet = 0
    cap = len(f.coeffs) if f.tag == "coeffs" else 100_000
    for j in range(1, cap + 1):
        power = power @ a
        term = f.coeff(j) * power
        acc = acc + term
        if f.tag != "coeffs":
            if np.max(np.abs(term)) <= 1e-16 * (1.0 + np.max(np.abs(acc))):
                quiet += 1
                if quiet >= 8:
                    break
            else:
                quiet = 0
    else:
        if f.tag != "coeffs":
            raise RuntimeError("classical series did not converge within the term cap")
    scale = max(1.0, float(np.max(np.abs(acc))))
    low = float(np.min(acc))
    if low < -1e-9 * scale:
        raise ArithmeticError("series value is not a nonnegative matrix")
    return np.maximum(acc, 0.0)


@dataclass(frozen=True)
class MaxPolynomial:
    """Multivariate polynomial as (exponent multi-index, coefficient) terms.

    In the max semiring it evaluates as the maximum over terms; the same term
    table doubles as an ordinary polynomial for the classical checks.
    """

    terms: tuple[tuple[tuple[int, ...], float], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("polynomial needs at least one term")
        arity = len(self.terms[0][0])
        for expo, coeff in self.terms:
            if len(expo) != arity:
                raise ValueError("inconsistent term arity")
            if coeff < 0:
                raise ValueError("coefficients must be nonnegative")

    @property
    def arity(self) -> int:
        return len(self.terms[0][0])

    def eval_scalars(self, xs, semiring: str = "max") -> float:
        vals = []
        for expo, coeff in self.terms:
            v = coeff
            for x, k in zip(xs, expo):
                v *= x**k
            vals.append(v)
        return max(vals) if semiring == "max" else sum(vals)


def eval_max_multipoly(p: MaxPolynomial, mats) -> np.ndarray:
    """p_(x)(A_1, ..., A_m): max over terms of coeff (x) A_1^{k_1} (x) ..."""
    mats = [as_matrix(m) for m in mats]
    if len(mats) != p.arity:
        raise ValueError("arity mismatch")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ValueError("dimension mismatch")
    acc = np.zeros((n, n))
    for expo, coeff in p.terms:
        term = coeff * max_identity(n)
        for m, k in zip(mats, expo):
            if k:
                term = max_mul(term, max_power(m, k))
        acc = oplus(acc, term)
    return acc


def eval_classical_multipoly(p: MaxPolynomial, mats) -> np.ndarray:
    """Ordinary p(A_1, ..., A_m) from the same term table."""
    mats = [as_matrix(m) for m in mats]
    if len(mats) != p.arity:
        raise ValueError("arity mismatch")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ValueError("dimension mismatch")
    acc = np.zeros((n, n))
    for expo, coeff in p.terms:
        term = coeff * np.eye(n)
        for m, k in zip(mats, expo):
            if k:
                term = term @ classical_power(m, k)
        acc = acc + term
    return acc


def _sets_match(left, right, rtol: float) -> bool:
    """Greedy nearest pairing of two value sets under a relative threshold."""
    left = sorted(left)
    right = sorted(right)
    if len(left) != len(right):
        return False
    return all(
        abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)
        for a, b in zip(left, right)
    )


def check_spectral_map_max(f: PowerSeries, a) -> CheckReport:
    """Verify r_{e_j}(f_(x)(A)) = f_(x)(r_{e_j}(A)) per index and as sets."""
    a = as_matrix(a)
    prof = spectrum(a)
    fa = eval_matrix_max(f, a)
    prof_f = spectrum(fa)
    worst = 0.0
    worst_idx = 0
    for j in range(a.shape[0]):
        expect = eval_scalar_max(f, prof.r[j])
        got = prof_f.r[j]
        err = abs(got - expect) / max(abs(expect), abs(got), 1e-300)
        if err > worst:
            worst, worst_idx = err, j
    sets_ok = _sets_match(
        prof_f.sigma_max,
        merge_values(eval_scalar_max(f, v) for v in prof.sigma_max),
        1e-9,
    )
    ok = worst <= 1e-9 and sets_ok
    return CheckReport(
        name="spectral_map_max", lhs=worst, rhs=1e-9, slack=1e-9 - worst,
        verdict="holds" if ok else "violated",
        digest=digest_inputs(f.tag, f.lam, f.coeffs, a),
        detail={"worst_index": worst_idx, "sets_match": sets_ok},
    )


def check_spectral_map_dist(f: PowerSeries, a) -> CheckReport:
    """Verify sigma_dist(f(A)) = f(sigma_dist(A)) by nearest set pairing."""
    a = as_matrix(a)
    prof = spectrum(a)
    fa = eval_matrix_classical(f, a)
    prof_f = spectrum(fa)
    mapped = merge_values(eval_scalar_classical(f, v) for v in prof.sigma_dist)
    ok = _sets_match(prof_f.sigma_dist, mapped, 1e-7)
    worst = 0.0
    if len(mapped) == len(prof_f.sigma_dist):
        for x, y in zip(sorted(mapped), sorted(prof_f.sigma_dist)):
            worst = max(worst, abs(x - y) / max(abs(x), abs(y), 1e-300))
    else:
        worst = float("inf")
    return CheckReport(
        name="spectral_map_dist", lhs=worst, rhs=1e-7, slack=1e-7 - worst,
        verdict="holds" if ok else "violated",
        digest=digest_inputs(f.tag, f.lam, f.coeffs, a),
        detail={
            "sigma_dist_image": list(mapped),
            "sigma_dist_of_image": list(prof_f.sigma_dist),
        },
    )


def _commute_max(a, b) -> bool:
    ab = max_mul(a, b)
    ba = max_mul(b, a)
    return np.max(np.abs(ab - ba)) <= 1e-12 * max(1.0, norm_max(ab), norm_max(ba))


def _commute_classical(a, b) -> bool:
    ab = a @ b
    ba = b @ a
    return np.max(np.abs(ab - ba)) <= 1e-12 * max(1.0, norm_max(ab), norm_max(ba))


def _is_irreducible(a) -> bool:
    return condense(a).num_classes == 1


def check_commuting_family(p: MaxPolynomial, mats, semiring: str = "max") -> CheckReport:
    """Verify eigenvalue decomposition of p over a pairwise-commuting family.

    Set-level: every spectrum element of p(A_1..A_m) decomposes through the
    factor spectra and every factor eigenvalue extends to a decomposition.
    Per-index equality is additionally checked when some family member (or the
    value) is irreducible, or when every factor has distinct class values.
    """
    mats = [as_matrix(m) for m in mats]
    if semiring not in ("max", "classical"):
        raise ValueError("semiring must be 'max' or 'classical'")
    commute = _commute_max if semiring == "max" else _commute_classical
    for x, y in itertools.combinations(mats, 2):
        if not commute(x, y):
            raise ValueError("family is not pairwise commuting")

    if semiring == "max":
        value = eval_max_multipoly(p, mats)
        spectra = [spectrum(m).sigma_max for m in mats]
        value_sigma = spectrum(value).sigma_max
        locals_of = [spectrum(m).r for m in mats]
        value_locals = spectrum(value).r
    else:
        value = eval_classical_multipoly(p, mats)
        if np.min(value) < -1e-9 * max(1.0, norm_max(np.abs(value))):
            raise ValueError("polynomial value is not nonnegative")
        value = np.maximum(value, 0.0)
        spectra = [spectrum(m).sigma_dist for m in mats]
        value_sigma = spectrum(value).sigma_dist
        locals_of = [spectrum(m).rho for m in mats]
        value_locals = spectrum(value).rho

    rtol = 1e-9 if semiring == "max" else 1e-7

    def close(x, y):
        return abs(x - y) <= rtol * max(abs(x), abs(y), 1e-300)

    combos = [
        p.eval_scalars(tup, semiring)
        for tup in itertools.product(*spectra)
    ]
    decomposes = all(any(close(lam, c) for c in combos) for lam in value_sigma)

    def _extends() -> bool:
        for i in range(len(mats)):
            for lam_i in spectra[i]:
                hit = False
                for tup in itertools.product(*spectra):
                    if not close(tup[i], lam_i):
                        continue
                    val = p.eval_scalars(tup, semiring)
                    if any(close(val, lam) for lam in value_sigma):
                        hit = True
                        break
                if not hit:
                    return False
        return True

    extends = _extends()

    cond_i = any(_is_irreducible(m) for m in mats) or _is_irreducible(value)
    cond_ii = all(
        len(merge_values(
            condense(m).mcgm if semiring == "max" else condense(m).perron
        )) == condense(m).num_classes
        for m in mats
    )
    per_index_ok = None
    if cond_i:
        per_index_ok = all(
            close(value_locals[i], p.eval_scalars([lv[i] for lv in locals_of], semiring))
            for i in range(mats[0].shape[0])
        )
    elif cond_ii:
        per_index_ok = all(
            any(
                close(value_locals[i], p.eval_scalars([lv[k] for lv in locals_of], semiring))
                for k in range(mats[0].shape[0])
            )
            for i in range(mats[0].shape[0])
        )

    set_ok = decomposes and extends
    if per_index_ok is None:
        verdict = "holds" if set_ok else "violated"
        applicable = False
    else:
        verdict = "holds" if set_ok and per_index_ok else "violated"
        applicable = True
    return CheckReport(
        name=f"commuting_family_{semiring}",
        lhs=0.0 if verdict == "holds" else 1.0,
        rhs=0.0,
        slack=0.0,
        verdict=verdict,
        digest=digest_inputs(*mats),
        detail={
            "decomposes": decomposes,
            "extends": extends,
            "per_index_checked": applicable,
            "per_index_ok": per_index_ok,
            "condition_irreducible": cond_i,
            "condition_distinct": cond_ii,
        },
    )
