"""One-sample and paired Student t-tests with exact two-tailed p-values.

The two-tailed tail probability comes from the identity
P(|T_df| >= t) = I_x(df/2, 1/2) with x = df/(df + t^2), where I_x is the
regularized incomplete beta function, evaluated here with a modified Lentz
continued fraction. Absolute accuracy is far below 1e-10 over the degrees
of freedom this package encounters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConfigError, DegenerateSampleError, InputError

_MAX_ITER = 300
_CF_EPS = 1e-15
_TINY = 1e-300


@dataclass(frozen=True)
class TTestResult:
    """Outcome of a two-tailed t-test.

    reject_at holds the significance level at which the null hypothesis was
    rejected, or None when it was not rejected (or no level was requested).
    """

    t_stat: float
    df: int
    p_value: float
    sample_mean: float
    std_err: float
    reject_at: Optional[float] = None


def _betacf(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the incomplete beta continued fraction.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        coeff = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coeff * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + coeff / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coeff * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + coeff / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # The continued fraction converges fast only on one side of the mean;
    # use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) for the other side.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: int) -> float:
    """Two-tailed tail probability P(|T_df| >= |t|)."""
    if not isinstance(df, int) or df < 1:
        raise ConfigError(f"degrees of freedom must be an integer >= 1, got {df!r}")
    x = df / (df + t * t)
    return regularized_incomplete_beta(0.5 * df, 0.5, x)


def one_sample_ttest(
    values: Sequence[float], mu0: float = 0.0, alpha: Optional[float] = None
) -> TTestResult:
    """Two-tailed t-test of the null hypothesis that the true mean equals mu0.

    A zero-variance sample sitting exactly on mu0 yields the degenerate
    result t = 0, p = 1; a zero-variance sample anywhere else makes the
    outcome certain and raises DegenerateSampleError instead of faking p = 0.
    """
    vals = [float(v) for v in values]
    n = len(vals)
    if n < 2:
        raise InputError(f"t-test needs at least 2 observations, got {n}")
    df = n - 1
    # Constancy is checked on the values themselves: the rounded mean of a
    # constant sample need not equal the constant, so a variance test alone
    # would let a zero-spread sample through with an absurd t statistic.
    if all(v == vals[0] for v in vals):
        if vals[0] == mu0:
            return TTestResult(0.0, df, 1.0, vals[0], 0.0, None)
        raise DegenerateSampleError(
            f"all {n} observations equal {vals[0]!r} while the null mean is {mu0!r}; "
            "the sample has no variance and the outcome is certain"
        )
    mean = math.fsum(vals) / n
    variance = math.fsum((v - mean) ** 2 for v in vals) / (n - 1)
    if variance == 0.0:
        raise DegenerateSampleError(
            f"sample spread is below floating-point resolution around {mean!r}; "
            "the sample has no variance and the outcome is certain"
        )
    std_err = math.sqrt(variance / n)
    t_stat = (mean - mu0) / std_err
    p_value = student_t_sf(t_stat, df)
    reject_at = alpha if alpha is not None and p_value < alpha else None
    return TTestResult(t_stat, df, p_value, mean, std_err, reject_at)


def paired_ttest(
    a: Sequence[float], b: Sequence[float], alpha: Optional[float] = None
) -> TTestResult:
    """Two-tailed paired t-test: one-sample test on the per-position differences."""
    if len(a) != len(b):
        raise InputError(f"paired samples differ in length: {len(a)} vs {len(b)}")
    return one_sample_ttest([x - y for x, y in zip(a, b)], 0.0, alpha)
