"""Wright-type Poisson distribution.

pmf(r) = m^r / (Gamma(alpha r + beta) * Z) with normalizer
Z = sum_k m^k / Gamma(alpha k + beta), the two-parameter Mittag-Leffler
series at m (equivalently a 1Psi1 Wright series). alpha = beta = 1
recovers the classical Poisson law.

Moments come in three flavors each: a brute-force series over the pmf,
and two closed forms (Wright-series differences, and shifted
Mittag-Leffler combinations). The closed-form "second moment" routines
return the raw E[X^2]; variance is derived as E[X^2] - mean^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import special as sc

from .special import (
    DomainError,
    exp_saturating,
    NonConvergenceError,
    SeriesControl,
    SeriesResult,
    WrightSpec,
    mittag_leffler2,
    wright_series,
)

__all__ = [
    "WrightPoisson",
    "MomentReport",
    "SampleBatch",
    "new_wright_poisson",
]

# mass-based truncation of sums over the support
_MASS_TOL = 1e-13
_LOOKAHEAD = 16
_TAIL_ATOL = 1e-15
_SUPPORT_CAP = 10**6


@dataclass(frozen=True)
class MomentReport:
    mean_series: float
    mean_closed_i: float
    mean_closed_ii: float
    m2_series: float
    m2_closed_i: float
    m2_closed_ii: float
    variance: float
    max_method_spread: float


@dataclass(frozen=True)
class SampleBatch:
    values: np.ndarray  # nonneg integers
    seed: int
    n: int


def _ratio(num: SeriesResult, den: SeriesResult) -> float:
    """num/den with a log-space path when both values are positive, so
    huge normalizers cancel before exponentiation."""
    if num.value > 0.0 and not math.isnan(num.log_value):
        return exp_saturating(num.log_value - den.log_value)
    return num.value / den.value


@dataclass(frozen=True)
class WrightPoisson:
    """Validated parameters plus the precomputed log-normalizer.

    Immutable; build through :func:`new_wright_poisson`.
    """

    alpha: float
    beta: float
    m: float
    log_normalizer: float
    ctrl: SeriesControl

    # -- pmf / cdf ----------------------------------------------------

    def log_pmf(self, r: int) -> float:
        if r < 0:
            raise DomainError("r must be a nonnegative integer")
        return (
            r * math.log(self.m)
            - float(sc.gammaln(self.alpha * r + self.beta))
            - self.log_normalizer
        )

    def pmf(self, r: int) -> float:
        return math.exp(self.log_pmf(r))

    def pmf_recurrence_step(self, r: int, pmf_r: float) -> float:
        """pmf(r+1) from pmf(r): multiply by m*Gamma(ar+b)/Gamma(ar+a+b).

        Gamma arguments use the same expression as log_pmf so that
        chained steps telescope against the direct evaluation.
        """
        a, b = self.alpha, self.beta
        # difference first: the two lgamma values are large and close,
        # and their rounding errors telescope across chained steps
        dlg = float(sc.gammaln(a * r + b)) - float(sc.gammaln(a * (r + 1) + b))
        return math.exp(dlg + math.log(self.m)) * pmf_r

    def cdf(self, r: int) -> float:
        if r < 0:
            raise DomainError("r must be a nonnegative integer")
        p = self.pmf(0)
        total = p
        for k in range(int(r)):
            p = self.pmf_recurrence_step(k, p)
            total += p
        return total

    def quantile(self, p: float) -> int:
        if not (0.0 <= p < 1.0):
            raise DomainError("quantile requires p in [0, 1)")
        prob = self.pmf(0)
        total = prob
        r = 0
        while total < p:
            prob = self.pmf_recurrence_step(r, prob)
            total += prob
            r += 1
            if r > _SUPPORT_CAP:
                raise NonConvergenceError("quantile walk exceeded support cap")
        return r

    # -- support walks ------------------------------------------------

    def support_pmf(self, mass_tol: float = _MASS_TOL) -> np.ndarray:
        """pmf values 0..R where R is the 1 - mass_tol cutoff (with a
        16-term lookahead confirming the tail is dead)."""
        vals = [self.pmf(0)]
        total = vals[0]
        r = 0
        while True:
            if total >= 1.0 - mass_tol:
                tail = 0.0
                p = vals[-1]
                for j in range(_LOOKAHEAD):
                    p = self.pmf_recurrence_step(r + j, p)
                    tail += p
                if tail < _TAIL_ATOL:
                    return np.asarray(vals)
            p = self.pmf_recurrence_step(r, vals[-1])
            vals.append(p)
            total += p
            r += 1
            if r > _SUPPORT_CAP:
                raise NonConvergenceError("support walk exceeded cap")

    def expectation(self, weight: Callable[[int], float]) -> float:
        """sum_r weight(r) * pmf(r), stopped once the cumulative mass is
        complete and the last window of contributions is negligible.

        The window guard matters for growing weights like e^{tr}: the
        sum continues well past the mass cutoff until the weighted
        contributions themselves die out.
        """
        partial = 0.0
        mass = 0.0
        p = self.pmf(0)
        window: list = []
        r = 0
        while True:
            c = weight(r) * p
            partial += c
            mass += p
            window.append(abs(c))
            if len(window) > _LOOKAHEAD:
                window.pop(0)
            if (
                r >= _LOOKAHEAD
                and mass >= 1.0 - _MASS_TOL
                and sum(window) <= self.ctrl.rel_tol * max(abs(partial), 1.0)
            ):
                return partial
            p = self.pmf_recurrence_step(r, p)
            r += 1
            if r > self.ctrl.max_terms:
                raise NonConvergenceError("moment series exceeded max_terms")

    # -- moments ------------------------------------------------------

    def mean_series(self) -> float:
        return self.expectation(lambda r: float(r))

    def second_moment_series(self) -> float:
        return self.expectation(lambda r: float(r) * r)

    def _normalizer_result(self) -> SeriesResult:
        return mittag_leffler2(self.alpha, self.beta, self.m, self.ctrl)

    def mean_closed_i(self) -> float:
        """Wright-series difference: (Psi[(2,1)] - Psi[(1,1)]) / Psi[(1,1)]."""
        num = wright_series(
            WrightSpec([(2.0, 1.0)], [(self.beta, self.alpha)], self.m), self.ctrl
        )
        return math.exp(num.log_value - self.log_normalizer) - 1.0

    def mean_closed_ii(self) -> float:
        """Shifted Mittag-Leffler form:
        (E_{a,b-1}(m) + (1-b) E_{a,b}(m)) / (a E_{a,b}(m))."""
        den = self._normalizer_result()
        s1 = mittag_leffler2(self.alpha, self.beta - 1.0, self.m, self.ctrl)
        return (_ratio(s1, den) + (1.0 - self.beta)) / self.alpha

    def second_moment_closed_i(self) -> float:
        """E[X^2] from the 2Psi2 + 1Psi1 difference form. The 2Psi2's
        k = 0, 1 terms vanish at gamma poles by construction."""
        a, b, m = self.alpha, self.beta, self.m
        psi22 = wright_series(
            WrightSpec([(1.0, 1.0), (1.0, 1.0)], [(-1.0, 1.0), (b, a)], m),
            self.ctrl,
        )
        psi21 = wright_series(WrightSpec([(2.0, 1.0)], [(b, a)], m), self.ctrl)
        den = self._normalizer_result()
        return (
            _ratio(psi22, den)
            + math.exp(psi21.log_value - self.log_normalizer)
            - 1.0
        )

    def second_moment_closed_ii(self) -> float:
        """E[X^2] from shifted Mittag-Leffler terms:
        (E_{a,b-2} + (3-2b) E_{a,b-1} + (1-b)^2 E_{a,b}) / (a^2 E_{a,b})."""
        a, b, m = self.alpha, self.beta, self.m
        den = self._normalizer_result()
        s2 = mittag_leffler2(a, b - 2.0, m, self.ctrl)
        s1 = mittag_leffler2(a, b - 1.0, m, self.ctrl)
        return (
            _ratio(s2, den) + (3.0 - 2.0 * b) * _ratio(s1, den) + (1.0 - b) ** 2
        ) / (a * a)

    def moment_report(self) -> MomentReport:
        mean_s = self.mean_series()
        mean_i = self.mean_closed_i()
        mean_ii = self.mean_closed_ii()
        m2_s = self.second_moment_series()
        m2_i = self.second_moment_closed_i()
        m2_ii = self.second_moment_closed_ii()
        spread = max(
            abs(mean_s - mean_i),
            abs(mean_s - mean_ii),
            abs(mean_i - mean_ii),
            abs(m2_s - m2_i),
            abs(m2_s - m2_ii),
            abs(m2_i - m2_ii),
        )
        return MomentReport(
            mean_series=mean_s,
            mean_closed_i=mean_i,
            mean_closed_ii=mean_ii,
            m2_series=m2_s,
            m2_closed_i=m2_i,
            m2_closed_ii=m2_ii,
            variance=m2_s - mean_s * mean_s,
            max_method_spread=spread,
        )

    # -- mgf / sampling -----------------------------------------------

    def mgf(self, t: float) -> float:
        """E[e^{tX}] = E_{a,b}(e^t m) / E_{a,b}(m)."""
        if not math.isfinite(t):
            raise DomainError("t must be finite")
        num = mittag_leffler2(self.alpha, self.beta, math.exp(t) * self.m, self.ctrl)
        return exp_saturating(num.log_value - self.log_normalizer)

    def sample(self, n: int, seed: int) -> SampleBatch:
        """n i.i.d. draws by CDF inversion; deterministic given seed."""
        if n < 1:
            raise DomainError("sample requires n >= 1")
        pmf = self.support_pmf()
        cdf = np.cumsum(pmf)
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        # u above the tabulated mass clamps to the last support point
        values = np.searchsorted(cdf, u, side="left")
        values = np.minimum(values, len(cdf) - 1)
        return SampleBatch(values=values.astype(np.int64), seed=int(seed), n=int(n))


def new_wright_poisson(
    alpha: float, beta: float, m: float, ctrl: Optional[SeriesControl] = None
) -> WrightPoisson:
    """Validate parameters and precompute the log-normalizer."""
    if ctrl is None:
        ctrl = SeriesControl()
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha) and alpha > 0):
        raise DomainError("alpha must be > 0")
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0):
        raise DomainError("beta must be > 0")
    if not (isinstance(m, (int, float)) and math.isfinite(m) and m > 0):
        raise DomainError("m must be > 0")
    norm = mittag_leffler2(float(alpha), float(beta), float(m), ctrl)
    if not (norm.value > 0.0) or math.isnan(norm.log_value):
        raise DomainError("normalizer is not positive and finite")
    return WrightPoisson(
        alpha=float(alpha),
        beta=float(beta),
        m=float(m),
        log_normalizer=norm.log_value,
        ctrl=ctrl,
    )
