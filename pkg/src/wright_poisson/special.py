"""Scalar special functions: gamma helpers, generalized Wright series,
and the Mittag-Leffler family.

All series are evaluated term-by-term in log space and accumulated in
linear space with a running rescale, so very large normalizers stay
representable through their logarithm even when the linear value would
overflow. Terms whose lower gamma argument sits on a pole of the gamma
function contribute exactly zero.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

from scipy import special as sc

__all__ = [
    "DomainError",
    "exp_saturating",
    "NonConvergenceError",
    "SeriesDivergenceWarning",
    "WrightSpec",
    "SeriesControl",
    "SeriesResult",
    "log_gamma",
    "reciprocal_gamma",
    "pochhammer",
    "wright_convergence_index",
    "wright_term",
    "wright_series",
    "mittag_leffler",
    "mittag_leffler2",
    "mittag_leffler3",
]

# absolute tolerance for snapping a gamma argument onto a pole
_POLE_ATOL = 1e-12

# rescale thresholds for the linear accumulator
_ACC_LIMIT = 1e280
_LOG_EXP_LIMIT = 690.0


class DomainError(ValueError):
    """Argument outside the supported domain."""


class NonConvergenceError(RuntimeError):
    """Series truncation criterion not met within max_terms."""


class SeriesDivergenceWarning(UserWarning):
    """Convergence index at or below the standard -1 boundary."""


def exp_saturating(x: float) -> float:
    """exp(x) that returns inf instead of raising OverflowError."""
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _is_gamma_pole(x: float) -> bool:
    r = round(x)
    return r <= 0 and abs(x - r) <= _POLE_ATOL


@dataclass(frozen=True)
class WrightSpec:
    """Parameters of a generalized Wright series: gamma-weight pairs for
    numerator and denominator, and the series argument."""

    upper: tuple  # ((a, alpha), ...)
    lower: tuple  # ((b, beta), ...)
    z: float

    def __init__(self, upper, lower, z):
        upper = tuple((float(a), float(al)) for a, al in upper)
        lower = tuple((float(b), float(be)) for b, be in lower)
        for _, w in upper + lower:
            if not math.isfinite(w):
                raise DomainError("gamma-argument weights must be finite")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "z", float(z))


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy shared by every series in the package."""

    rel_tol: float = 1e-15
    min_terms: int = 8
    max_terms: int = 10000
    consecutive_small: int = 3

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError("rel_tol must be in (0, 1)")
        if not (1 <= self.min_terms <= self.max_terms):
            raise DomainError("need 1 <= min_terms <= max_terms")


@dataclass(frozen=True)
class SeriesResult:
    value: float
    log_value: float  # nan when value <= 0
    terms_used: int
    converged: bool


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"log_gamma requires finite x > 0, got {x}")
    return float(sc.gammaln(x))


def reciprocal_gamma(x: float) -> float:
    """1/Gamma(x), exactly 0 at nonpositive-integer poles."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"reciprocal_gamma requires finite x, got {x}")
    if _is_gamma_pole(x):
        return 0.0
    return float(sc.rgamma(x))


def pochhammer(gamma: float, n: int) -> float:
    """Rising factorial (gamma)_n by the explicit product, so nonpositive
    gamma is exact."""
    if n < 0:
        raise DomainError("pochhammer requires n >= 0")
    out = 1.0
    for i in range(int(n)):
        out *= gamma + i
    return out


def wright_convergence_index(spec: WrightSpec) -> float:
    """Sum of lower weights minus sum of upper weights; the series is
    entire when this exceeds the standard -1 boundary."""
    return sum(w for _, w in spec.lower) - sum(w for _, w in spec.upper)


def _log_gamma_signed(x: float):
    """(log|Gamma(x)|, sign) away from poles; caller handles poles."""
    return float(sc.gammaln(x)), float(sc.gammasgn(x))


def _wright_term_log(spec: WrightSpec, k: int):
    """Log-magnitude and sign of term k, or None when a lower-gamma pole
    zeroes the term. Raises DomainError on an upper-gamma pole."""
    if spec.z == 0.0 and k > 0:
        return None
    sign = 1.0
    upper_sum = 0.0
    for a, al in spec.upper:
        arg = a + al * k
        if _is_gamma_pole(arg):
            raise DomainError(
                f"upper gamma argument {arg} hits a pole at term k={k}"
            )
        lg, sg = _log_gamma_signed(arg)
        upper_sum += lg
        sign *= sg
    # subtract the k! log right after the upper sum: for the common
    # (1, 1) upper row the two cancel exactly, term by term
    logmag = upper_sum - float(sc.gammaln(k + 1))
    if spec.z != 0.0:
        logmag += k * math.log(abs(spec.z))
        if spec.z < 0.0 and k % 2 == 1:
            sign = -sign
    for b, be in spec.lower:
        arg = b + be * k
        if _is_gamma_pole(arg):
            return None
        lg, sg = _log_gamma_signed(arg)
        logmag -= lg
        sign *= sg
    return logmag, sign


def wright_term(spec: WrightSpec, k: int) -> float:
    """Single series term; exactly 0.0 when a lower gamma pole kills it."""
    t = _wright_term_log(spec, k)
    if t is None:
        return 0.0
    logmag, sign = t
    return sign * math.exp(logmag)


def _sum_series(
    term_log: Callable[[int], Optional[tuple]], ctrl: SeriesControl
) -> SeriesResult:
    """Accumulate sign*exp(logmag) terms with running rescale and the
    consecutive-small-terms stop rule."""
    acc = 0.0
    offset = 0.0
    small = 0
    for k in range(ctrl.max_terms):
        t = term_log(k)
        if t is None:
            term = 0.0
        else:
            logmag, sign = t
            if logmag - offset > _LOG_EXP_LIMIT:
                shift = logmag - offset
                offset = logmag
                acc *= math.exp(-shift)
            term = sign * math.exp(logmag - offset)
        acc += term
        if abs(acc) > _ACC_LIMIT:
            bump = math.log(abs(acc))
            offset += bump
            acc = math.copysign(1.0, acc)
            term *= math.exp(-bump)
        if abs(term) <= ctrl.rel_tol * abs(acc):
            small += 1
        else:
            small = 0
        if small >= ctrl.consecutive_small and k + 1 >= ctrl.min_terms:
            if acc > 0.0:
                log_value = math.log(acc) + offset
                # derive the linear value from the log so the two views
                # agree to the last ulp even after rescaling
                value = exp_saturating(log_value)
            else:
                log_value = math.nan
                value = acc * math.exp(offset) if offset != 0.0 else acc
            return SeriesResult(value, log_value, k + 1, True)
    raise NonConvergenceError(
        f"series did not meet the stop criterion within {ctrl.max_terms} terms"
    )


def wright_series(spec: WrightSpec, ctrl: SeriesControl = SeriesControl()) -> SeriesResult:
    """Evaluate the generalized Wright series at spec.z."""
    if wright_convergence_index(spec) <= -1.0:
        warnings.warn(
            "convergence index <= -1: series may diverge",
            SeriesDivergenceWarning,
            stacklevel=2,
        )
    return _sum_series(lambda k: _wright_term_log(spec, k), ctrl)


def mittag_leffler(
    alpha: float, z: float, ctrl: SeriesControl = SeriesControl()
) -> SeriesResult:
    """One-parameter Mittag-Leffler: sum z^k / Gamma(1 + alpha k)."""
    if not (alpha > 0.0):
        raise DomainError("mittag_leffler requires alpha > 0")
    return mittag_leffler2(alpha, 1.0, z, ctrl)


def mittag_leffler2(
    alpha: float, beta: float, z: float, ctrl: SeriesControl = SeriesControl()
) -> SeriesResult:
    """Two-parameter Mittag-Leffler: sum z^k / Gamma(alpha k + beta).

    beta may be any finite real; pole terms vanish.
    """
    if not (alpha > 0.0):
        raise DomainError("mittag_leffler2 requires alpha > 0")
    if not math.isfinite(beta):
        raise DomainError("beta must be finite")
    z = float(z)
    logz = math.log(abs(z)) if z != 0.0 else 0.0

    def term(k):
        if z == 0.0 and k > 0:
            return None
        arg = alpha * k + beta
        if _is_gamma_pole(arg):
            return None
        lg, sg = _log_gamma_signed(arg)
        sign = sg if z >= 0.0 or k % 2 == 0 else -sg
        return k * logz - lg, sign

    return _sum_series(term, ctrl)


def mittag_leffler3(
    alpha: float,
    beta: float,
    gamma: float,
    z: float,
    ctrl: SeriesControl = SeriesControl(),
) -> SeriesResult:
    """Three-parameter (Prabhakar) Mittag-Leffler:
    sum (gamma)_k z^k / (Gamma(alpha k + beta) k!)."""
    if not (alpha > 0.0):
        raise DomainError("mittag_leffler3 requires alpha > 0")
    if not (math.isfinite(beta) and math.isfinite(gamma)):
        raise DomainError("beta and gamma must be finite")
    z = float(z)
    logz = math.log(abs(z)) if z != 0.0 else 0.0
    # incremental log|(gamma)_k / k!| via the ratio (gamma+i)/(1+i), so
    # the factor is exactly 0 in log space when gamma = 1
    state = {"logw": 0.0, "sign": 1.0, "dead": False, "k": 0}

    def term(k):
        # advance the weight product to index k (calls are sequential)
        while state["k"] < k:
            f = (gamma + state["k"]) / (1.0 + state["k"])
            if f == 0.0:
                state["dead"] = True
            elif not state["dead"]:
                state["logw"] += math.log(abs(f))
                if f < 0.0:
                    state["sign"] = -state["sign"]
            state["k"] += 1
        if state["dead"] or (z == 0.0 and k > 0):
            return None
        arg = alpha * k + beta
        if _is_gamma_pole(arg):
            return None
        lg, sg = _log_gamma_signed(arg)
        sign = state["sign"] * sg
        if z < 0.0 and k % 2 == 1:
            sign = -sign
        return state["logw"] + k * logz - lg, sign

    return _sum_series(term, ctrl)
