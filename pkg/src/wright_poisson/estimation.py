"""Maximum-likelihood fitting of the Wright-type Poisson distribution to
observed counts, plus delimited-text ingestion.

Optimization is derivative-free: golden-section search over the rate
parameter m, and a shrinking log-scale grid over (alpha, beta) with the
m-search nested inside.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import special as sc

from .special import (
    DomainError,
    NonConvergenceError,
    SeriesControl,
    mittag_leffler2,
)

__all__ = [
    "ParseError",
    "DegenerateDataError",
    "CountData",
    "FitResult",
    "load_counts",
    "log_likelihood",
    "fit_m",
    "fit_full",
]

M_FLOOR = 1e-8
SHAPE_BOX = (0.1, 10.0)  # search box for alpha and beta
_GRID_POINTS = 7
_REFINE_ROUNDS = 3
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_ITER = 200


class ParseError(ValueError):
    """Input text could not be parsed as count data."""


class DegenerateDataError(ValueError):
    """Data carries no information about the shape parameters."""


@dataclass(frozen=True)
class CountData:
    counts: np.ndarray
    n: int
    sum: int
    sum_sq: int

    @classmethod
    def from_counts(cls, counts) -> "CountData":
        arr = np.asarray(counts, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ParseError("need at least one observation")
        if np.any(arr < 0):
            raise ParseError("counts must be nonnegative")
        return cls(
            counts=arr,
            n=int(arr.size),
            sum=int(arr.sum()),
            sum_sq=int((arr * arr).sum()),
        )

    @property
    def mean(self) -> float:
        return self.sum / self.n


@dataclass(frozen=True)
class FitResult:
    alpha: float
    beta: float
    m: float
    log_likelihood: float
    iterations: int
    converged: bool
    profile: str  # "m_only" or "full"


def _parse_int(token: str, lineno: int) -> int:
    token = token.strip()
    try:
        val = int(token)
    except ValueError:
        try:
            f = float(token)
        except ValueError:
            raise ParseError(f"line {lineno}: {token!r} is not an integer") from None
        if not f.is_integer():
            raise ParseError(f"line {lineno}: {token!r} is not an integer") from None
        val = int(f)
    if val < 0:
        raise ParseError(f"line {lineno}: negative count {val}")
    return val


def load_counts(path: str, column: Optional[Union[str, int]] = None) -> CountData:
    """Read counts from plain text (one integer per line) or delimited
    text with a header; delimiter auto-detected among comma/tab."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = [ln for ln in text.splitlines()]
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise ParseError("empty input")

    first = stripped[0][1]
    delim = None
    if "," in first:
        delim = ","
    elif "\t" in first:
        delim = "\t"

    if delim is None and column is None:
        counts = [_parse_int(tok, lineno) for lineno, tok in stripped]
        return CountData.from_counts(counts)

    if delim is None:
        delim = ","
    reader = csv.reader(io.StringIO(text), delimiter=delim)
    rows = [(i + 1, row) for i, row in enumerate(reader) if any(c.strip() for c in row)]
    header = [c.strip() for c in rows[0][1]]
    has_header = not all(_looks_numeric(c) for c in header)
    idx = 0
    if column is not None:
        if isinstance(column, int) or (isinstance(column, str) and column.isdigit()):
            idx = int(column)
        elif has_header:
            if column not in header:
                raise ParseError(f"column {column!r} not found in header {header}")
            idx = header.index(column)
        else:
            raise ParseError(f"column {column!r} requested but file has no header")
    data_rows = rows[1:] if has_header else rows
    if not data_rows:
        raise ParseError("empty input")
    counts = []
    for lineno, row in data_rows:
        if idx >= len(row):
            raise ParseError(f"line {lineno}: missing column {idx}")
        counts.append(_parse_int(row[idx], lineno))
    return CountData.from_counts(counts)


def _looks_numeric(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def log_likelihood(
    data: CountData,
    alpha: float,
    beta: float,
    m: float,
    ctrl: Optional[SeriesControl] = None,
) -> float:
    """sum_i log pmf(r_i), via sufficient statistics and the unique
    observed counts."""
    if ctrl is None:
        ctrl = SeriesControl()
    if not (alpha > 0 and beta > 0 and m > 0):
        raise DomainError("alpha, beta, m must all be > 0")
    uniq, wts = np.unique(data.counts, return_counts=True)
    norm = mittag_leffler2(alpha, beta, m, ctrl)
    gam = float(np.dot(wts, sc.gammaln(alpha * uniq + beta)))
    return data.sum * math.log(m) - gam - data.n * norm.log_value


def fit_m(
    data: CountData,
    alpha: float,
    beta: float,
    ctrl: Optional[SeriesControl] = None,
) -> FitResult:
    """Maximize the likelihood over m alone, alpha and beta held fixed:
    geometric bracketing from the sample mean, then golden section."""
    if ctrl is None:
        ctrl = SeriesControl()
    if data.n < 1:
        raise DomainError("need at least one observation")

    uniq, wts = np.unique(data.counts, return_counts=True)
    glog = sc.gammaln(alpha * uniq + beta)
    gam = float(np.dot(wts, glog))

    def ll(m: float) -> float:
        norm = mittag_leffler2(alpha, beta, m, ctrl)
        return data.sum * math.log(m) - gam - data.n * norm.log_value

    iters = 0
    m0 = max(data.mean, M_FLOOR)

    # expand upward while the likelihood keeps improving
    hi = m0
    f_hi = ll(hi)
    while iters < _MAX_ITER:
        cand = hi * 2.0
        f_cand = ll(cand)
        iters += 1
        improving = f_cand > f_hi
        hi, f_hi = cand, f_cand
        if not improving:
            break
    else:
        raise NonConvergenceError("bracketing up exceeded iteration cap")

    # expand downward toward the floor while improving
    lo = m0
    f_lo = ll(lo)
    while lo > M_FLOOR and iters < _MAX_ITER:
        cand = max(lo / 2.0, M_FLOOR)
        f_cand = ll(cand)
        iters += 1
        improving = f_cand > f_lo
        lo, f_lo = cand, f_cand
        if not improving:
            break
    if iters >= _MAX_ITER:
        raise NonConvergenceError("bracketing down exceeded iteration cap")

    # golden-section search on [lo, hi]
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = ll(c), ll(d)
    converged = False
    while iters < _MAX_ITER:
        iters += 1
        if b - a <= 1e-8 * (1.0 + 0.5 * (a + b)):
            converged = True
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = ll(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = ll(d)
    m_hat = 0.5 * (a + b)
    if m_hat <= 2.0 * M_FLOOR:
        m_hat = M_FLOOR
        converged = False  # boundary solution
    return FitResult(
        alpha=float(alpha),
        beta=float(beta),
        m=float(m_hat),
        log_likelihood=log_likelihood(data, alpha, beta, m_hat, ctrl),
        iterations=iters,
        converged=converged,
        profile="m_only",
    )


def fit_full(data: CountData, ctrl: Optional[SeriesControl] = None) -> FitResult:
    """Maximize over (alpha, beta, m) by shrinking log-scale grid search
    on the shape box with the m-search nested at each grid point."""
    if ctrl is None:
        ctrl = SeriesControl()
    if np.all(data.counts == data.counts[0]):
        raise DegenerateDataError("all counts equal: shape parameters unidentified")

    lo, hi = SHAPE_BOX
    a_lo, a_hi = math.log(lo), math.log(hi)
    b_lo, b_hi = math.log(lo), math.log(hi)
    best = None  # (ll, alpha, beta, m, iters)
    total_iters = 0

    for rnd in range(_REFINE_ROUNDS + 1):
        alphas = np.exp(np.linspace(a_lo, a_hi, _GRID_POINTS))
        betas = np.exp(np.linspace(b_lo, b_hi, _GRID_POINTS))
        round_best = None
        for al in alphas:
            for be in betas:
                try:
                    res = fit_m(data, float(al), float(be), ctrl)
                except NonConvergenceError:
                    continue
                total_iters += res.iterations
                key = (res.log_likelihood, -res.alpha, -res.beta, -res.m)
                # deterministic tie-break: highest ll, then smallest params
                if round_best is None or key > round_best[0]:
                    round_best = (key, res)
        if round_best is None:
            raise NonConvergenceError("no grid point converged")
        prev_ll = best[1].log_likelihood if best is not None else -math.inf
        if best is None or round_best[1].log_likelihood > best[1].log_likelihood:
            best = round_best
        improvement = best[1].log_likelihood - prev_ll
        if rnd == _REFINE_ROUNDS:
            converged = improvement < 1e-6
            break
        # shrink the box by a factor of 2 around the incumbent, clamped
        ctr_a = math.log(best[1].alpha)
        ctr_b = math.log(best[1].beta)
        half_a = (a_hi - a_lo) / 4.0
        half_b = (b_hi - b_lo) / 4.0
        a_lo = max(math.log(lo), ctr_a - half_a)
        a_hi = min(math.log(hi), ctr_a + half_a)
        b_lo = max(math.log(lo), ctr_b - half_b)
        b_hi = min(math.log(hi), ctr_b + half_b)

    res = best[1]
    return FitResult(
        alpha=res.alpha,
        beta=res.beta,
        m=res.m,
        log_likelihood=res.log_likelihood,
        iterations=total_iters,
        converged=converged,
        profile="full",
    )
