"""Li-Keiper coefficients and their cluster-expansion structure.

The generating identity behind everything here: with z = 1 - 1/s mapping
the half-plane to the unit disk,

    2 xi(z) = exp( sum_{n>=1} (lambda_n / n) z^n ) = sum_{n>=0} phi_n z^n,

so the phi_n are binomial transforms of the xi Taylor coefficients
(phi_n = sum_k C(n-1,k) 2 a_{k+1}), the lambda_n are n times the
log-series coefficients of the phi series, and truncating the
exponential's cluster expansion after m = 1 or m = 2 blocks yields the
upper/lower bounds n phi_n and n phi_n - n sum w_p phi_p phi_{n-p}.

Also here: the alternating-binomial equilibrium identity relating the
phi ladder back to 2 a_n, the delta/epsilon decomposition
phi_n = n lambda_1 + epsilon_n, the Koebe-function lower bound obtained
by pretending all lambda are equal to lambda_1 (the constant-slope
solution), a complete-Bell-polynomial determinant cross-check for
phi_n, and integer-partition utilities (enumeration, the pentagonal
recurrence for p(n), and the Hardy-Ramanujan asymptotic).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from mpmath import mp, workdps

from .errors import LikeiperError, UsageError
from .mpseries import (
    DEFAULT_DIGITS,
    BigReal,
    PowerSeries,
    binomial,
    series_exp,
    series_log,
)
from .xifactory import XiTaylor

PARTITION_ENUMERATION_CAP = 40
BELL_CAP = 12


# --------------------------------------------------------------------------
# Partitions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """An integer partition, parts stored non-increasing."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise UsageError("a partition needs at least one part")
        if any((not isinstance(p, int)) or p < 1 for p in self.parts):
            raise UsageError(f"partition parts must be positive integers, "
                             f"got {self.parts!r}")
        object.__setattr__(self, "parts",
                           tuple(sorted(self.parts, reverse=True)))

    @property
    def n(self) -> int:
        """The partitioned integer: sum of the parts."""
        return sum(self.parts)

    @property
    def k(self) -> int:
        """Number of parts."""
        return len(self.parts)

    @property
    def multiplicities(self) -> Dict[int, int]:
        """Map part-value -> how many times it occurs."""
        out: Dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def ascending(self) -> Tuple[int, ...]:
        """The parts smallest-first (the display/enumeration order)."""
        return tuple(reversed(self.parts))


def partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of n, ordered by part count and then
    lexicographically on the ascending part tuples:
    (n), (1, n-1), (2, n-2), ..., (1, 1, ..., 1)."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"partitions need a positive integer, got {n!r}")
    if n > PARTITION_ENUMERATION_CAP:
        raise UsageError(
            f"partition enumeration supported up to "
            f"n = {PARTITION_ENUMERATION_CAP}, got {n}"
        )
    found: List[Tuple[int, ...]] = []

    def descend(remaining: int, cap: int, prefix: List[int]) -> None:
        if remaining == 0:
            found.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            descend(remaining - part, part, prefix)
            prefix.pop()

    descend(n, n, [])
    found.sort(key=lambda parts: (len(parts), tuple(reversed(parts))))
    return tuple(Partition(parts) for parts in found)


def partition_count(n: int) -> int:
    """p(n) by the Euler pentagonal-number recurrence
    p(n) = sum_{k>=1} (-1)^(k-1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]."""
    if not isinstance(n, int) or n < 0:
        raise UsageError(f"partition_count needs n >= 0, got {n!r}")
    table = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 == 1 else -1
            total += sign * table[m - g1]
            if g2 <= m:
                total += sign * table[m - g2]
            k += 1
        table[m] = total
    return table[n]


def hr_estimate(n: int, digits: int = DEFAULT_DIGITS) -> BigReal:
    """Hardy-Ramanujan leading asymptotic for the partition count:
    p(n) ~ exp(2 pi sqrt(n/6)) / (4 n sqrt(3))."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"hr_estimate needs a positive integer, got {n!r}")
    with workdps(digits + 10):
        value = mp.exp(2 * mp.pi * mp.sqrt(mp.mpf(n) / 6)) / (
            4 * n * mp.sqrt(3))
        return BigReal(+value, digits)


# --------------------------------------------------------------------------
# Cluster weights
# --------------------------------------------------------------------------

def cluster_weight(p: Partition) -> Fraction:
    """Unsigned weight of one partition's product in the expansion of
    lambda_n = n [z^n] log(1 + sum phi_k z^k):

        a = n (k-1)! / prod_j (m_j!)

    over the part multiplicities m_j.  The signed contribution to
    lambda_n is (-1)^(k-1) a prod_i phi_{p_i}.  Exact rational."""
    weight = Fraction(p.n) * math.factorial(p.k - 1)
    for count in p.multiplicities.values():
        weight /= math.factorial(count)
    return weight


def weight_sum_check(n: int, k: int) -> int:
    """Sum of cluster weights over all partitions of n with exactly k
    parts.  Equals C(n, k) — asserted by the test suite, returned here
    for inspection."""
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n, got k={k}, n={n}")
    total = sum((cluster_weight(p) for p in partitions(n) if p.k == k),
                Fraction(0))
    if total.denominator != 1:
        raise LikeiperError(
            f"cluster weights of {k}-part partitions of {n} summed to the "
            f"non-integer {total}"
        )
    return int(total)


# --------------------------------------------------------------------------
# phi / lambda conversions
# --------------------------------------------------------------------------

def _phi_accumulate(xi: XiTaylor, n: int, tag_digits: int) -> BigReal:
    if xi.order < n:
        raise UsageError(
            f"phi_{n} needs xi coefficients up to a_{n}, but the series "
            f"was built to order {xi.order}; rebuild with order >= {n}"
        )
    # Accumulate in one raw pass well above the target precision: the
    # binomial weights reach ~4e11 by n = 40, so per-step rounding at the
    # target precision would be amplified by later consumers of phi.
    with workdps(tag_digits + 15):
        total = mp.mpf(0)
        for k in range(n):
            total += xi.coeff(k + 1).value * (2 * binomial(n - 1, k))
        value = +total
    return BigReal(value, tag_digits)


def phi_from_xi(xi: XiTaylor, n: int) -> BigReal:
    """phi_n = sum_{k=0}^{n-1} C(n-1, k) 2 a_{k+1}."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"phi index must be a positive integer, got {n!r}")
    return _phi_accumulate(xi, n, xi.digits)


def phi_ladder(xi: XiTaylor, max_n: int, guard: int = 0
               ) -> Tuple[BigReal, ...]:
    """phi_1..phi_max_n.  A nonzero ``guard`` widens the precision tag by
    that many digits; the alternating binomial sum of the equilibrium
    identity amplifies phi rounding by ~2^(n-1), so consumers feeding phi
    into it should request guard digits and round their own outputs."""
    if not isinstance(max_n, int) or max_n < 1:
        raise UsageError(f"max_n must be a positive integer, got {max_n!r}")
    tag = xi.digits + guard
    return tuple(_phi_accumulate(xi, n, tag) for n in range(1, max_n + 1))


def phi_series(xi: XiTaylor, max_n: int) -> PowerSeries:
    """The series 1 + sum_{n=1}^{max_n} phi_n z^n."""
    coeffs = (BigReal(1, xi.digits),) + phi_ladder(xi, max_n)
    return PowerSeries(coeffs)


def phi_from_lambda(lambdas: Sequence[BigReal], order: int
                    ) -> Tuple[BigReal, ...]:
    """phi_0..phi_order from lambda_1..lambda_order via the exponential:
    sum phi_n z^n = exp(sum (lambda_n / n) z^n), so phi_0 = 1."""
    if len(lambdas) < order:
        raise UsageError(
            f"need lambda_1..lambda_{order}, got only {len(lambdas)} values"
        )
    digits = min((v.digits for v in lambdas[:order]),
                 default=DEFAULT_DIGITS)
    coeffs = [BigReal(0, digits)]
    coeffs += [lambdas[n - 1] / n for n in range(1, order + 1)]
    return series_exp(PowerSeries(tuple(coeffs))).coeffs


def lambdas_from_phis(phis: Sequence[BigReal], order: int
                      ) -> Tuple[BigReal, ...]:
    """lambda_1..lambda_order = n [z^n] log(1 + sum phi_k z^k)."""
    if len(phis) < order:
        raise UsageError(
            f"need phi_1..phi_{order}, got only {len(phis)} values"
        )
    digits = min((v.digits for v in phis[:order]), default=DEFAULT_DIGITS)
    coeffs = [BigReal(1, digits)] + list(phis[:order])
    logs = series_log(PowerSeries(tuple(coeffs)))
    return tuple(logs.coeff(n) * n for n in range(1, order + 1))


def lambda_from_phi(phis: Sequence[BigReal], n: int) -> BigReal:
    """lambda_n from phi_1..phi_n (log-series route, the production path)."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"lambda index must be a positive integer, "
                         f"got {n!r}")
    return lambdas_from_phis(phis, n)[n - 1]


def lambda_partition_sum(phis: Sequence[BigReal], n: int) -> BigReal:
    """lambda_n by the explicit weighted-partition sum

        lambda_n = sum_k (-1)^(k-1) sum_{k-part partitions p of n}
                   cluster_weight(p) prod_i phi_{p_i}.

    Exponentially many terms; kept as a cross-check for the log-series
    route, which must agree to working precision."""
    if len(phis) < n:
        raise UsageError(f"need phi_1..phi_{n}, got only {len(phis)} values")
    digits = min(v.digits for v in phis[:n])
    total = BigReal(0, digits)
    for p in partitions(n):
        product = BigReal(1, digits)
        for part in p.parts:
            product = product * phis[part - 1]
        weight = cluster_weight(p)
        if weight.denominator != 1:
            raise LikeiperError(f"non-integer cluster weight {weight} "
                                f"for partition {p.parts}")
        signed = int(weight) if p.k % 2 == 1 else -int(weight)
        total = total + product * signed
    return total


def cluster_blocks(phis: Sequence[BigReal], n: int) -> Tuple[BigReal, ...]:
    """The signed per-m partial sums of the partition expansion of
    lambda_n: element m-1 is (-1)^(m-1) times the total weighted product
    over all m-part partitions of n.  Their sum is lambda_n; the blocks
    alternate in sign and decay rapidly."""
    if len(phis) < n:
        raise UsageError(f"need phi_1..phi_{n}, got only {len(phis)} values")
    digits = min(v.digits for v in phis[:n])
    blocks = [BigReal(0, digits) for _ in range(n)]
    for p in partitions(n):
        product = BigReal(1, digits)
        for part in p.parts:
            product = product * phis[part - 1]
        weight = int(cluster_weight(p))
        signed = weight if p.k % 2 == 1 else -weight
        blocks[p.k - 1] = blocks[p.k - 1] + product * signed
    return tuple(blocks)


# --------------------------------------------------------------------------
# Equilibrium identity, delta/epsilon decomposition
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EquilibriumSides:
    """Both sides of the alternating-binomial identity at one index:
    lhs = sum_{k=0}^{n-1} (-1)^k C(n-1,k) phi_{n-k},  rhs = 2 a_n."""

    n: int
    lhs: BigReal
    rhs: BigReal

    @property
    def residual(self) -> BigReal:
        return self.lhs - self.rhs


def equilibrium_sides(n: int, xi: XiTaylor,
                      phis: Sequence[BigReal]) -> EquilibriumSides:
    """Evaluate both sides of the equilibrium identity for index n.  The
    left side is accumulated at the precision the phi values carry (plus
    working guard), so phi computed with guard digits yields a residual
    far below the phi tag; phi rounded to the display precision leaves
    residual noise of order 2^(n-1) ulp."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"index must be a positive integer, got {n!r}")
    if len(phis) < n:
        raise UsageError(f"need phi_1..phi_{n}, got only {len(phis)} values")
    phi_digits = min(v.digits for v in phis[:n])
    with workdps(phi_digits + 10):
        acc = mp.mpf(0)
        for k in range(n):
            term = phis[n - k - 1].value * binomial(n - 1, k)
            acc = (acc + term) if k % 2 == 0 else (acc - term)
        lhs = BigReal(+acc, phi_digits)
    rhs = xi.coeff(n) * 2
    return EquilibriumSides(n=n, lhs=lhs, rhs=rhs)


def equilibrium_residual(n: int, xi: XiTaylor,
                         phis: Sequence[BigReal]) -> BigReal:
    """lhs - rhs of the equilibrium identity; vanishes identically for
    exact data, so the measured value is pure rounding noise."""
    return equilibrium_sides(n, xi, phis).residual


def delta_epsilon(n: int, xi: XiTaylor) -> Tuple[BigReal, BigReal]:
    """(delta_n, epsilon_n) of the decomposition phi_n = n lambda_1 +
    epsilon_n, where delta_2 = 2 a_2 - phi_1, delta_m = 2 a_m for m >= 3,
    and epsilon_n = sum_{k=1}^{n-1} C(n-1,k) delta_{k+1}."""
    if not isinstance(n, int) or n < 2:
        raise UsageError(
            f"the delta/epsilon decomposition starts at index 2, got {n!r}"
        )
    if xi.order < n:
        raise UsageError(
            f"delta_{n} needs xi coefficients up to a_{n}, but the series "
            f"was built to order {xi.order}; rebuild with order >= {n}"
        )
    phi_1 = xi.coeff(1) * 2

    def delta(m: int) -> BigReal:
        if m == 2:
            return xi.coeff(2) * 2 - phi_1
        return xi.coeff(m) * 2

    epsilon = BigReal(0, xi.digits)
    for k in range(1, n):
        epsilon = epsilon + delta(k + 1) * binomial(n - 1, k)
    return delta(n), epsilon


# --------------------------------------------------------------------------
# Bounds
# --------------------------------------------------------------------------

def bounds(n: int, phis: Sequence[BigReal]) -> Tuple[BigReal, BigReal]:
    """(lower, upper) for lambda_n from the one- and two-cluster
    truncations:

        upper = n phi_n
        lower = n phi_n - n sum_{p=1}^{floor(n/2)} w_p phi_p phi_{n-p}

    with w_p = 1 except w_{n/2} = 1/2 when n is even (each unordered
    pair {p, n-p} counts once; the even middle pair is its own mirror).
    """
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"index must be a positive integer, got {n!r}")
    if len(phis) < n:
        raise UsageError(f"need phi_1..phi_{n}, got only {len(phis)} values")
    digits = min(v.digits for v in phis[:n])
    upper = phis[n - 1] * n
    correction = BigReal(0, digits)
    for p in range(1, n // 2 + 1):
        term = phis[p - 1] * phis[n - p - 1]
        if n % 2 == 0 and p == n // 2:
            term = term / 2
        correction = correction + term
    lower = upper - correction * n
    return lower, upper


def rwb_lower(n: int, lambda1: BigReal) -> BigReal:
    """The constant-slope lower estimate: n times the z^n coefficient of
    log(1 + lambda_1 K(z)) with the Koebe function
    K(z) = z/(1-z)^2 = z + 2 z^2 + 3 z^3 + ...

    This is the lambda ladder that would result if every coefficient
    equalled lambda_1 (phi_k = k lambda_1)."""
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"index must be a positive integer, got {n!r}")
    digits = lambda1.digits
    coeffs = [BigReal(1, digits)]
    coeffs += [lambda1 * m for m in range(1, n + 1)]
    logs = series_log(PowerSeries(tuple(coeffs)))
    return logs.coeff(n) * n


# --------------------------------------------------------------------------
# Bell-determinant cross-check
# --------------------------------------------------------------------------

def bell_phi(n: int, lambdas: Sequence[BigReal]) -> BigReal:
    """phi_n = B_n(a_1, ..., a_n)/n! with a_j = (j-1)! lambda_j, the
    complete Bell polynomial evaluated as the determinant of the n x n
    Hessenberg matrix M[i][j] = C(n-i, j-i) a_{j-i+1} (j >= i) with -1
    on the subdiagonal.  A cross-check for the exponential route, kept
    to small n where the determinant is exact and cheap."""
    if not isinstance(n, int) or not 1 <= n <= BELL_CAP:
        raise UsageError(
            f"the Bell-determinant route supports 1 <= n <= {BELL_CAP}, "
            f"got {n!r}"
        )
    if len(lambdas) < n:
        raise UsageError(f"need lambda_1..lambda_{n}, "
                         f"got only {len(lambdas)} values")
    digits = min(v.digits for v in lambdas[:n])
    a = [lambdas[j - 1] * math.factorial(j - 1) for j in range(1, n + 1)]
    # Leading principal minors of the Hessenberg matrix: expanding along
    # the last column, the -1 subdiagonal signs cancel the cofactor signs.
    minors = [BigReal(1, digits)]
    for m in range(1, n + 1):
        acc = BigReal(0, digits)
        for i in range(1, m + 1):
            acc = acc + minors[i - 1] * a[m - i] * binomial(n - i, m - i)
        minors.append(acc)
    factorial_n = math.factorial(n)
    return minors[n] / factorial_n


# --------------------------------------------------------------------------
# Per-index records
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LiRecord:
    """Everything the table view reports about one index n."""

    n: int
    phi: BigReal
    lam: BigReal
    lower: BigReal
    upper: BigReal
    rwb_lower: BigReal
    residual: BigReal
    delta: BigReal
    epsilon: BigReal


def build_li_records(xi: XiTaylor, max_n: int) -> Tuple[LiRecord, ...]:
    """Compute the full ladder of records for n = 1..max_n from one xi
    series.  The index-1 row has no delta/epsilon decomposition (it
    starts at 2); both render as zero there."""
    if not isinstance(max_n, int) or max_n < 1:
        raise UsageError(f"max_n must be a positive integer, got {max_n!r}")
    if xi.order < max_n:
        raise UsageError(
            f"a table to n = {max_n} needs xi coefficients up to "
            f"a_{max_n}, but the series was built to order {xi.order}; "
            f"rebuild with order >= {max_n}"
        )
    digits = xi.digits
    phis = phi_ladder(xi, max_n, guard=15)
    lambdas = lambdas_from_phis(phis, max_n)
    lambda1 = lambdas[0]
    koebe = [BigReal(1, lambda1.digits)]
    koebe += [lambda1 * m for m in range(1, max_n + 1)]
    koebe_log = series_log(PowerSeries(tuple(koebe)))
    zero = BigReal(0, digits)
    records = []
    for n in range(1, max_n + 1):
        lower, upper = bounds(n, phis)
        if n >= 2:
            delta, epsilon = delta_epsilon(n, xi)
        else:
            delta, epsilon = zero, zero
        records.append(LiRecord(
            n=n,
            phi=phis[n - 1].with_digits(digits),
            lam=lambdas[n - 1].with_digits(digits),
            lower=lower.with_digits(digits),
            upper=upper.with_digits(digits),
            rwb_lower=(koebe_log.coeff(n) * n).with_digits(digits),
            residual=equilibrium_residual(n, xi, phis).with_digits(digits),
            delta=delta,
            epsilon=epsilon,
        ))
    return tuple(records)
