"""The logarithmic-derivative constant c = (pi/3) xi'(2)/xi(2).

Three independent computations of the same number:

* closed form in classical constants,
      c = (pi/3) ((1/2)(gamma + log 4 pi + 3) - 12 log A),
  with A the Glaisher-Kinkelin constant;
* the linear functional of the Li-Keiper coefficients,
      c = (pi/3) sum_{n>=1} lambda_n 2^-(n+1),
  truncated with a certified geometric tail estimate;
* the binary-digit series
      c = (pi/3) (1 + (3/2) log 2 + 12 zeta'(-1)
                  + sum_{n>=2} N_0(n) / ((2n)(2n+1)(2n+2))),
  where N_0(n) counts zero bits of n.

Also: the split of c into the factor-wise log-derivative parts at s = 2
(archimedean factor (1/2) s pi^(-s/2) Gamma(s/2) versus the zeta factor
(s-1) zeta(s)), and a direct series-evaluation cross-check of
xi'(2)/xi(2) from the Taylor coefficients.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from mpmath import mp, mpf, workdps

from .errors import PrecisionError, UsageError
from .mpseries import BigReal
from .xifactory import (
    MIN_CONSTANT_DIGITS,
    ConstantCache,
    XiTaylor,
    euler_gamma,
    zeta_prime_values,
)


class Route(enum.Enum):
    """How a ConstantReport's value was obtained."""

    EXACT = "exact"
    LAMBDA_SERIES = "lambda_series"
    BINARY_SERIES = "binary_series"
    TREND_TINY = "trend_tiny"


@dataclass(frozen=True)
class ConstantReport:
    """One computation of c: the route taken, the value, how many series
    terms went in (0 for closed forms), and an error estimate that must
    bound the true distance to the exact route at equal precision."""

    route: Route
    value: BigReal
    terms_used: int
    est_error: BigReal
    digits: int


def _require_digits(digits: int) -> None:
    if not isinstance(digits, int) or digits < MIN_CONSTANT_DIGITS:
        raise PrecisionError(
            f"constant routes need digits >= {MIN_CONSTANT_DIGITS}, "
            f"got {digits!r}"
        )


def _rounding_allowance(digits: int) -> BigReal:
    # Closed-form routes are limited only by the working precision of
    # their inputs; allow a wide margin over the final rounding.
    return BigReal(f"1e-{digits - 5}", digits)


def _gamma_and_log_a(digits: int, cache: Optional[ConstantCache]
                     ) -> Tuple[mpf, mpf]:
    if cache is not None and cache.covers(order=1, digits=digits):
        return cache.stieltjes[0].value, cache.log_A.value
    gamma = euler_gamma(digits + 10).value
    _, _, log_a = zeta_prime_values(digits)
    return gamma, log_a.value


# --------------------------------------------------------------------------
# Exact route
# --------------------------------------------------------------------------

def c_exact(digits: int = 60, cache: Optional[ConstantCache] = None
            ) -> ConstantReport:
    """c = (pi/3) ((1/2)(gamma + log 4 pi + 3) - 12 log A)."""
    _require_digits(digits)
    gamma, log_a = _gamma_and_log_a(digits, cache)
    with workdps(digits + 10):
        value = mp.pi / 3 * ((gamma + mp.log(4 * mp.pi) + 3) / 2 - 12 * log_a)
    return ConstantReport(
        route=Route.EXACT,
        value=BigReal(value, digits),
        terms_used=0,
        est_error=_rounding_allowance(digits),
        digits=digits,
    )


def c_series_oracle(xi: XiTaylor) -> BigReal:
    """(pi/3) xi'(2)/xi(2) straight from the Taylor series: the shift
    s = 2 puts the expansion variable at 1, so the ratio is
    (sum n a_n) / (sum a_n) over the stored coefficients.  Truncation
    error follows the coefficient decay (|a_n| shrinks by ~1.4 digits
    per index), far below working precision for order >= 40."""
    with workdps(xi.digits + 10):
        num = mp.mpf(0)
        den = mp.mpf(0)
        for n in range(xi.order + 1):
            a = xi.coeff(n).value
            den += a
            num += n * a
        value = mp.pi / 3 * num / den
    return BigReal(value, xi.digits)


# --------------------------------------------------------------------------
# Lambda-series route
# --------------------------------------------------------------------------

def c_from_lambda(lambdas: Sequence[BigReal], terms: int) -> ConstantReport:
    """(pi/3) sum_{n=1}^{terms} lambda_n 2^-(n+1).

    All lambda_n are positive, so the partial sums increase to c from
    below.  The tail estimate majorizes lambda_n by the quadratic
    lambda_terms (n/terms)^2 over a 399-term geometric window — the
    growth is ~(1/2) n log n, so the quadratic dominates every later
    ratio while staying within a small factor of the true tail."""
    if not isinstance(terms, int) or terms < 1:
        raise UsageError(f"terms must be a positive integer, got {terms!r}")
    if len(lambdas) < terms:
        raise UsageError(
            f"need lambda_1..lambda_{terms}, got only {len(lambdas)} values"
        )
    digits = min(v.digits for v in lambdas[:terms])
    with workdps(digits + 10):
        acc = mp.mpf(0)
        for n in range(1, terms + 1):
            acc += lambdas[n - 1].value / mpf(2) ** (n + 1)
        value = mp.pi / 3 * acc
        window = sum(mpf(n) ** 2 / mpf(2) ** (n + 1)
                     for n in range(terms + 1, terms + 400))
        est = mp.pi / 3 * lambdas[terms - 1].value / terms ** 2 * window
    return ConstantReport(
        route=Route.LAMBDA_SERIES,
        value=BigReal(value, digits),
        terms_used=terms,
        est_error=BigReal(est, digits),
        digits=digits,
    )


# --------------------------------------------------------------------------
# Binary-series route
# --------------------------------------------------------------------------

def n_zero_count(n: int) -> int:
    """Zero bits in the standard binary representation of n (no leading
    zeros): n = 4 -> '100' -> 2."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"bit counts need a positive integer, got {n!r}")
    return bin(n).count("0", 2)


def n_one_count(n: int) -> int:
    """One bits in the binary representation of n."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"bit counts need a positive integer, got {n!r}")
    return n.bit_count()


def c_from_binary(cutoff: int, digits: int = 60,
                  cache: Optional[ConstantCache] = None) -> ConstantReport:
    """(pi/3) (1 + (3/2) log 2 + 12 zeta'(-1)
    + sum_{n=2}^{cutoff} N_0(n)/((2n)(2n+1)(2n+2))).

    The tail estimate sums the majorant floor(log2 n) exactly out to
    max(4 cutoff, 4096) and closes with an integral bound; it runs about
    a factor two above the true gap."""
    if not isinstance(cutoff, int) or cutoff < 2:
        raise UsageError(f"the binary route needs cutoff >= 2, "
                         f"got {cutoff!r}")
    _require_digits(digits)
    if cache is not None and cache.covers(order=1, digits=digits):
        zpm1 = cache.zeta_prime_minus1().value
    else:
        _, zpm1_big, _ = zeta_prime_values(digits)
        zpm1 = zpm1_big.value
    with workdps(digits + 10):
        acc = mp.mpf(0)
        for n in range(2, cutoff + 1):
            zeros = bin(n).count("0", 2)
            if zeros:
                acc += mpf(zeros) / (2 * n) / (2 * n + 1) / (2 * n + 2)
        value = mp.pi / 3 * (1 + mpf(3) / 2 * mp.log(2) + 12 * zpm1 + acc)
        tail = mp.mpf(0)
        far = max(4 * cutoff, 4096)
        for n in range(cutoff + 1, far + 1):
            tail += mpf(n.bit_length() - 1) / (2 * n) / (2 * n + 1) / (
                2 * n + 2)
        ln2 = mp.log(2)
        remainder = (mp.log(far) / ln2 + 1) / (16 * mpf(far) ** 2) \
            + 1 / (32 * ln2 * mpf(far) ** 2)
        est = mp.pi / 3 * (tail + remainder)
    return ConstantReport(
        route=Route.BINARY_SERIES,
        value=BigReal(value, digits),
        terms_used=cutoff,
        est_error=BigReal(est, digits),
        digits=digits,
    )


def binary_zero_series_partial(cutoff: int) -> float:
    """Partial sum sum_{n=1}^{cutoff} N_0(n)/((2n)(2n+1)(2n+2)) in
    double precision (exactly summed with math.fsum); convergence is
    ~log2(N)/(8 N^2), so double precision carries the check to cutoffs
    far past 10^6."""
    if not isinstance(cutoff, int) or cutoff < 1:
        raise UsageError(f"cutoff must be a positive integer, "
                         f"got {cutoff!r}")
    return math.fsum(
        bin(n).count("0", 2) / ((2 * n) * (2 * n + 1) * (2 * n + 2))
        for n in range(1, cutoff + 1)
    )


def binary_zero_series_limit(digits: int = 60) -> BigReal:
    """The closed form of the full zero-bit series:
    (1/2)(gamma + log(pi/2) - 1)."""
    _require_digits(digits)
    gamma = euler_gamma(digits + 10).value
    with workdps(digits + 10):
        value = (gamma + mp.log(mp.pi / 2) - 1) / 2
    return BigReal(value, digits)


# --------------------------------------------------------------------------
# Factor split
# --------------------------------------------------------------------------

def trend_tiny_split(digits: int = 60,
                     cache: Optional[ConstantCache] = None
                     ) -> Tuple[BigReal, BigReal]:
    """The two log-derivative contributions to c at s = 2, one per
    factor of xi = [(1/2) s pi^(-s/2) Gamma(s/2)] * [(s-1) zeta(s)]:

        archimedean part  (pi/6)(1 - gamma - log pi)   (negative)
        zeta part         (pi/3)(1 + zeta'(2)/zeta(2)) (positive)

    Returned in that order; their sum is c.  The names follow the
    factors, not the magnitude of the parts."""
    _require_digits(digits)
    if cache is not None and cache.covers(order=1, digits=digits):
        gamma = cache.stieltjes[0].value
        zp2 = cache.zeta_prime_2.value
    else:
        gamma = euler_gamma(digits + 10).value
        zp2_big, _, _ = zeta_prime_values(digits)
        zp2 = zp2_big.value
    with workdps(digits + 10):
        archimedean = mp.pi / 6 * (1 - gamma - mp.log(mp.pi))
        zeta_two = mp.pi ** 2 / 6
        zeta_part = mp.pi / 3 * (1 + zp2 / zeta_two)
    return BigReal(archimedean, digits), BigReal(zeta_part, digits)


def c_trend_tiny(digits: int = 60,
                 cache: Optional[ConstantCache] = None) -> ConstantReport:
    """The factor-split route packaged as a report: value is the sum of
    the two parts of trend_tiny_split."""
    archimedean, zeta_part = trend_tiny_split(digits, cache)
    return ConstantReport(
        route=Route.TREND_TINY,
        value=archimedean + zeta_part,
        terms_used=0,
        est_error=_rounding_allowance(digits),
        digits=digits,
    )
