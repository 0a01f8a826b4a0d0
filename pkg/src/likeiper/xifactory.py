"""Taylor data for the completed zeta function about s = 1.

Everything downstream (the phi/lambda tables, the cluster bounds, the
constant-c routes) consumes the Taylor coefficients a_n of

    xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s)
          = sum_n a_n (s-1)^n,

together with a companion set of constants: Stieltjes constants gamma_m,
integer zeta values zeta(k), zeta'(2), and log A (Glaisher-Kinkelin).
All are computed from scratch by Euler-Maclaurin summation, at a working
precision inflated enough that the *returned* digits are trustworthy, and
every sweep validates itself (first omitted tail term, Bernoulli closed
forms) before handing values out.

The xi coefficients are built as a product of four power series in
x = s - 1:

    (1+x)/2                          polynomial factor s(s-1)/2 ... /(s-1)
    pi^(-1/2) exp(-(x/2) log pi)     the pi^(-s/2) factor
    exp(log Gamma((1+x)/2))          via the zeta-series of log Gamma at 1/2
    (s-1) zeta(s)                    entire part of zeta, from the gamma_m

A plain-text cache file can memoise the constants between CLI runs; see
:class:`ConstantCache` for the format.
"""
from __future__ import annotations

import hashlib
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import mp, mpf, workdps

from .errors import CacheError, PrecisionError, UsageError
from .mpseries import (
    DEFAULT_DIGITS,
    DEFAULT_ORDER,
    MIN_DIGITS,
    BigReal,
    PowerSeries,
    series_eval,
    series_exp,
    series_mul,
)

MAX_STIELTJES_INDEX = 60
MIN_CONSTANT_DIGITS = 30

# Euler-Mascheroni reference used only as a sanity anchor for the cache
# invariant (the computed gamma_0 must reproduce it).
_EULER_GAMMA_50 = "0.57721566490153286060651209008240243104215933593992"


def _order_guard(order: int) -> int:
    """Extra working digits needed so every xi coefficient up to ``order``
    keeps full *relative* accuracy.

    |a_n| decays super-geometrically: about 10^-55 at n = 40 and 10^-72
    at n = 50, i.e. under 1.5 digits per index throughout the supported
    range.  The smallest retained coefficient sits that far below the
    O(1) intermediates of the factor product, so that many digits are
    pure cancellation; 1.5 per index plus a flat margin covers it.
    """
    return (3 * order) // 2 + 15


def xi_working_digits(order: int, digits: int) -> int:
    """Working precision for building the xi series at ``order``/``digits``."""
    return digits + _order_guard(order)


# --------------------------------------------------------------------------
# Euler-Maclaurin sweeps (raw mpf level)
# --------------------------------------------------------------------------

def _em_zeta_int(k: int, J: int, R: int) -> Tuple[mpf, mpf]:
    """One Euler-Maclaurin evaluation of zeta(k), integer k >= 2, at the
    ambient precision.  Returns (value, |first omitted correction term|)."""
    s = mpf(k)
    total = mp.fsum(mp.power(j, -s) for j in range(1, J + 1))
    total += mp.power(J, 1 - s) / (s - 1)
    total -= mp.power(J, -s) / 2
    rising = s  # s(s+1)...(s+2r-2), seeded for r = 1
    term = mpf(0)
    for r in range(1, R + 2):
        term = (mp.bernoulli(2 * r) / mp.factorial(2 * r)
                * rising * mp.power(J, -s - 2 * r + 1))
        if r <= R:
            total += term
        rising *= (s + 2 * r - 1) * (s + 2 * r)
    return total, abs(term)


def _zeta_sweep(max_k: int, target_digits: int) -> Dict[int, mpf]:
    """zeta(2)..zeta(max_k) as raw mpf, each validated two ways.

    Every value is checked against its own first omitted Euler-Maclaurin
    term; even arguments are additionally checked against the Bernoulli
    closed form zeta(2r) = (-1)^(r+1) B_2r (2pi)^(2r) / (2 (2r)!).
    """
    if max_k < 2:
        raise UsageError(f"zeta sweep needs max_k >= 2, got {max_k}")
    work = target_digits + 15
    tol_scale = None
    values: Dict[int, mpf] = {}
    with workdps(work):
        tol = mp.mpf(10) ** (-(target_digits + 5))
        J = math.ceil(0.6 * target_digits) + 15
        R = math.ceil(0.65 * target_digits) + 6
        for attempt in range(3):
            ok = True
            for k in range(2, max_k + 1):
                value, omitted = _em_zeta_int(k, J, R)
                if omitted > tol:
                    ok = False
                    tol_scale = omitted
                    break
                values[k] = value
            if ok:
                break
            J = math.ceil(J * 1.6)
            R += 8
        else:
            raise PrecisionError(
                f"zeta sweep cannot reach {target_digits} digits for "
                f"k <= {max_k}: first omitted term {mp.nstr(tol_scale, 5)} "
                f"exceeds {mp.nstr(tol, 5)}; retry with fewer digits or a "
                f"smaller order"
            )
        # Bernoulli cross-check on even arguments.
        for k in range(2, max_k + 1, 2):
            r = k // 2
            closed = ((-1) ** (r + 1) * mp.bernoulli(k)
                      * mp.power(2 * mp.pi, k) / (2 * mp.factorial(k)))
            if abs(values[k] - closed) > tol * 100:
                raise PrecisionError(
                    f"zeta({k}) Euler-Maclaurin value disagrees with the "
                    f"Bernoulli closed form by "
                    f"{mp.nstr(abs(values[k] - closed), 5)} at "
                    f"{target_digits} digits"
                )
        return {k: +v for k, v in values.items()}


def _zeta_prime_2_sweep(target_digits: int) -> mpf:
    """zeta'(2) by Euler-Maclaurin on -sum log j / j^2, self-validated."""
    work = target_digits + 15
    with workdps(work):
        tol = mp.mpf(10) ** (-(target_digits + 5))
        J = math.ceil(0.6 * target_digits) + 15
        R = math.ceil(0.65 * target_digits) + 6
        for attempt in range(3):
            lnJ = mp.log(J)
            total = -mp.fsum(mp.log(j) / mp.mpf(j) ** 2
                             for j in range(2, J + 1))
            total += -lnJ / J - mpf(1) / J + lnJ / (2 * mpf(J) ** 2)
            harmonic = mpf(0)
            omitted = mpf(0)
            for r in range(1, R + 2):
                harmonic += mpf(1) / (2 * r - 1) + mpf(1) / (2 * r)
                term = (mp.bernoulli(2 * r) * mpf(J) ** (-2 * r - 1)
                        * (harmonic - 1 - lnJ))
                if r <= R:
                    total += term
                else:
                    omitted = abs(term)
            if omitted <= tol:
                return +total
            J = math.ceil(J * 1.6)
            R += 8
        raise PrecisionError(
            f"zeta'(2) sweep cannot reach {target_digits} digits "
            f"(first omitted term {mp.nstr(omitted, 5)}); "
            f"retry with fewer digits"
        )


def _stieltjes_sweep(max_index: int, target_digits: int) -> List[mpf]:
    """gamma_0..gamma_max_index as raw mpf, abs error <= 10^-(target+5).

    Expands zeta(1+x) - 1/x by Euler-Maclaurin as a power series in x:
    the partial sum contributes sum_j (1/j) e^(-x log j), the integral
    piece (e^(-xL) - 1)/x with L = log J, the midpoint -(1/(2J)) e^(-xL),
    and each correction term B_2r/(2r)! J^(-2r) [prod_{i=1}^{2r-1}(i+x)]
    e^(-xL).  Reading off x^m and scaling by (-1)^m m! gives gamma_m.

    The m! amplification and the L^m growth of intermediate coefficients
    cost about 0.8 digits per index, so the sweep works at
    target + ceil(0.8 (max_index+1)) + 12 digits and validates itself by
    the first omitted correction term, measured in gamma units.
    """
    M = max_index
    work = target_digits + (8 * (M + 1) + 9) // 10 + 12
    with workdps(work):
        tol = mp.mpf(10) ** (-(target_digits + 5))
        J = math.ceil(0.55 * work) + 20
        R = math.ceil(0.65 * work) + 6
        omitted = mpf(0)
        for attempt in range(3):
            p = [mpf(0)] * (M + 1)
            for j in range(1, J + 1):
                lnj = mp.log(j)
                t = mpf(1) / j
                p[0] += t
                for m in range(1, M + 1):
                    t *= -lnj / m
                    p[m] += t
            L = mp.log(J)
            t = mpf(1)
            for m in range(M + 1):
                t *= -L / (m + 1)
                p[m] += t
            t = mpf(-1) / (2 * J)
            p[0] += t
            for m in range(1, M + 1):
                t *= -L / m
                p[m] += t
            efac = [mpf(1)]
            for m in range(1, M + 1):
                efac.append(efac[-1] * (-L) / m)
            poly = [mpf(1)]
            Jm2 = mpf(J) ** -2
            Jpow = mpf(1)
            for r in range(1, R + 2):
                for i in (2 * r - 2, 2 * r - 1):
                    if i >= 1:
                        grown = [mpf(0)] * min(len(poly) + 1, M + 1)
                        for q, cq in enumerate(poly):
                            if q < len(grown):
                                grown[q] += cq * i
                            if q + 1 < len(grown):
                                grown[q + 1] += cq
                        poly = grown
                Jpow *= Jm2
                coef = mp.bernoulli(2 * r) / mp.factorial(2 * r) * Jpow
                term = [mpf(0)] * (M + 1)
                for m in range(M + 1):
                    acc = mpf(0)
                    for q in range(min(m, len(poly) - 1) + 1):
                        acc += poly[q] * efac[m - q]
                    term[m] = coef * acc
                if r <= R:
                    for m in range(M + 1):
                        p[m] += term[m]
                else:
                    omitted = max(abs(term[m]) * mp.factorial(m)
                                  for m in range(M + 1))
            if omitted <= tol:
                return [+((-1) ** m * mp.factorial(m) * p[m])
                        for m in range(M + 1)]
            J = math.ceil(J * 1.6)
            R += 8
        raise PrecisionError(
            f"Stieltjes sweep for gamma_0..gamma_{M} cannot reach "
            f"{target_digits} digits (first omitted term in gamma units: "
            f"{mp.nstr(omitted, 5)}); reduce the requested index range or "
            f"digits"
        )


# --------------------------------------------------------------------------
# Public constant producers
# --------------------------------------------------------------------------

def stieltjes_constants(max_index: int, digits: int) -> Tuple[BigReal, ...]:
    """gamma_0..gamma_max_index, each good to ``digits`` decimal places.

    These are the coefficients of the entire part of zeta at s=1:
    (s-1) zeta(s) = 1 + sum_{n>=0} (-1)^n gamma_n (s-1)^(n+1) / n!.
    """
    if not isinstance(max_index, int) or max_index < 0:
        raise UsageError(f"max_index must be a non-negative int, "
                         f"got {max_index!r}")
    if max_index > MAX_STIELTJES_INDEX:
        raise UsageError(
            f"Stieltjes constants supported up to index "
            f"{MAX_STIELTJES_INDEX}, got {max_index}"
        )
    if digits < MIN_CONSTANT_DIGITS:
        raise PrecisionError(
            f"Stieltjes constants need digits >= {MIN_CONSTANT_DIGITS}, "
            f"got {digits}; rerun with --digits {MIN_CONSTANT_DIGITS} or "
            f"more"
        )
    raw = _stieltjes_sweep(max_index, digits)
    return tuple(BigReal(g, digits) for g in raw)


def zeta_values(max_k: int, digits: int) -> Dict[int, BigReal]:
    """zeta(2)..zeta(max_k) at ``digits`` decimal places."""
    if digits < MIN_CONSTANT_DIGITS:
        raise PrecisionError(
            f"zeta values need digits >= {MIN_CONSTANT_DIGITS}, "
            f"got {digits}"
        )
    raw = _zeta_sweep(max_k, digits)
    return {k: BigReal(v, digits) for k, v in raw.items()}


def zeta_prime_values(digits: int) -> Tuple[BigReal, BigReal, BigReal]:
    """(zeta'(2), zeta'(-1), log A) at ``digits`` decimal places.

    Route: Euler-Maclaurin for zeta'(2); then the Glaisher identity
    12 log A = gamma + log(2 pi) - zeta'(2)/zeta(2), and finally
    zeta'(-1) = 1/12 - log A (exact by construction).
    """
    if digits < MIN_CONSTANT_DIGITS:
        raise PrecisionError(
            f"zeta' values need digits >= {MIN_CONSTANT_DIGITS}, "
            f"got {digits}; increase --digits"
        )
    target = digits + 10
    zp2 = _zeta_prime_2_sweep(target)
    gamma0 = _stieltjes_sweep(0, target)[0]
    with workdps(target + 10):
        zeta2 = mp.pi ** 2 / 6
        log_a = (gamma0 + mp.log(2 * mp.pi) - zp2 / zeta2) / 12
        zpm1 = mpf(1) / 12 - log_a
    return (BigReal(zp2, digits), BigReal(zpm1, digits),
            BigReal(log_a, digits))


def euler_gamma(digits: int) -> BigReal:
    """The Euler-Mascheroni constant at ``digits`` decimal places."""
    return stieltjes_constants(0, digits)[0]


def pi_value(digits: int) -> BigReal:
    """pi at ``digits`` decimal places."""
    with workdps(digits + 5):
        return BigReal(+mp.pi, digits)


# --------------------------------------------------------------------------
# The xi Taylor series
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class XiTaylor:
    """Taylor coefficients a_0..a_order of xi(s) about s = 1."""

    coeffs: Tuple[BigReal, ...]
    order: int
    digits: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise UsageError(
                f"XiTaylor needs order+1 coefficients: "
                f"got {len(self.coeffs)} for order {self.order}"
            )

    def coeff(self, n: int) -> BigReal:
        """a_n.  Raises a usage error naming the needed order if n is
        beyond the truncation."""
        if not 0 <= n <= self.order:
            raise UsageError(
                f"coefficient a_{n} requested but the series was built "
                f"to order {self.order}; rebuild with order >= {n}"
            )
        return self.coeffs[n]

    def as_series(self) -> PowerSeries:
        return PowerSeries(self.coeffs)


def _factor_series(order: int, digits: int,
                   gammas_raw: Sequence[mpf],
                   zetas_raw: Dict[int, mpf],
                   work: int) -> Tuple[PowerSeries, PowerSeries]:
    """(trend, tiny) factor series at ``order``, carried at ``work`` digits.

    trend = (1/2) s pi^(-s/2) Gamma(s/2) = ((1+x)/2) exp(u(x)) with
        u_1 = -(log pi)/2 - (gamma + 2 log 2)/2,
        u_k = (-1)^k (2^k - 1) zeta(k) / (k 2^k)       (k >= 2),
    the pi^(-1/2) prefactor and the (1/2) log pi constant of log Gamma(1/2)
    cancelling exactly.  tiny = (s-1) zeta(s) from the Stieltjes constants.
    """
    with workdps(work + 5):
        gamma0 = gammas_raw[0]
        u = [mpf(0)] * (order + 1)
        if order >= 1:
            u[1] = -(mp.log(mp.pi) + gamma0 + 2 * mp.log(2)) / 2
        for k in range(2, order + 1):
            u[k] = ((-1) ** k * (mpf(2) ** k - 1) / mpf(2) ** k
                    * zetas_raw[k] / k)
        tiny = [mpf(1)] + [
            (-1) ** m * gammas_raw[m] / mp.factorial(m)
            for m in range(order)
        ]
        u_br = tuple(BigReal(c, work) for c in u)
        tiny_br = tuple(BigReal(c, work) for c in tiny)
    expu = series_exp(PowerSeries(u_br))
    half = BigReal(1, work) / 2
    trend_coeffs = [expu.coeff(0) * half]
    for n in range(1, order + 1):
        trend_coeffs.append((expu.coeff(n) + expu.coeff(n - 1)) * half)
    return PowerSeries(tuple(trend_coeffs)), PowerSeries(tiny_br)


def _build_xi(order: int, digits: int,
              cache: Optional["ConstantCache"] = None
              ) -> Tuple[PowerSeries, PowerSeries, PowerSeries]:
    """(xi, trend, tiny) PowerSeries at ``order``, coefficients tagged with
    the *working* precision; callers round down to ``digits``."""
    if order < 1:
        raise UsageError(f"series order must be >= 1, got {order}")
    if digits < MIN_CONSTANT_DIGITS:
        raise PrecisionError(
            f"the xi series needs digits >= {MIN_CONSTANT_DIGITS}, "
            f"got {digits}"
        )
    internal = order + 10
    if internal - 1 > MAX_STIELTJES_INDEX:
        raise UsageError(
            f"order {order} needs Stieltjes constants beyond index "
            f"{MAX_STIELTJES_INDEX}; the supported series order ends at "
            f"{MAX_STIELTJES_INDEX - 9}"
        )
    work = xi_working_digits(internal, digits)
    if cache is not None and cache.covers(order, digits):
        gammas_raw = cache.gammas_raw
        zetas_raw = cache.zetas_raw
        work = cache.work_digits
    else:
        gammas_raw = _stieltjes_sweep(internal - 1, work)
        zetas_raw = _zeta_sweep(internal, work)
    trend, tiny = _factor_series(internal, digits, gammas_raw,
                                 zetas_raw, work)
    xi = series_mul(trend, tiny)
    return (xi.truncate(order), trend.truncate(order),
            tiny.truncate(order))


def xi_taylor(order: int, digits: int = DEFAULT_DIGITS,
              cache: Optional["ConstantCache"] = None) -> XiTaylor:
    """Build the xi Taylor series a_0..a_order about s = 1.

    Each returned coefficient is good to ``digits`` significant digits
    (the build runs at an inflated working precision to absorb both the
    cancellation inside the factor product and the decay of |a_n|).
    """
    xi, _, _ = _build_xi(order, digits, cache)
    coeffs = tuple(c.with_digits(digits) for c in xi.coeffs)
    half = BigReal(1, digits) / 2
    floor = BigReal(1, digits) / (BigReal(10, digits) ** (digits - 5))
    if abs(coeffs[0] - half) > floor:
        raise PrecisionError(
            f"xi series constant term drifted from 1/2 by "
            f"{(coeffs[0] - half).to_decimal(3)} at digits={digits}"
        )
    for n in range(1, order + 1):
        if not coeffs[n] > 0:
            raise PrecisionError(
                f"xi coefficient a_{n} lost positivity at digits={digits}; "
                f"increase digits"
            )
    return XiTaylor(coeffs=coeffs, order=order, digits=digits)


def trend_tiny_factors(order: int, digits: int = DEFAULT_DIGITS,
                       cache: Optional["ConstantCache"] = None
                       ) -> Tuple[PowerSeries, PowerSeries]:
    """The two factor series about s=1 whose product is the xi series:

    trend = (1/2) s pi^(-s/2) Gamma(s/2),   tiny = (s-1) zeta(s).
    """
    _, trend, tiny = _build_xi(order, digits, cache)
    return (
        PowerSeries(tuple(c.with_digits(digits) for c in trend.coeffs)),
        PowerSeries(tuple(c.with_digits(digits) for c in tiny.coeffs)),
    )


def symmetry_residual(xi: XiTaylor, delta: BigReal
                      ) -> Tuple[BigReal, BigReal]:
    """Functional-equation check: xi(1/2 + delta) vs xi(1/2 - delta).

    Returns (residual, trust) where ``residual`` is the absolute
    difference of the two truncated-series evaluations and ``trust`` is
    the truncation-order trust measure: a tail envelope 4 |a_N| r^N at
    the larger evaluation radius r, plus a floating-point floor.  The
    symmetry holds exactly for xi itself, so the residual must stay
    below the trust measure.
    """
    digits = xi.digits
    half = BigReal(1, digits) / 2
    x_plus = delta - half     # s = 1/2 + delta  ->  x = delta - 1/2
    x_minus = -delta - half   # s = 1/2 - delta  ->  x = -delta - 1/2
    s = xi.as_series()
    residual = abs(series_eval(s, x_plus) - series_eval(s, x_minus))
    radius = max(abs(x_plus), abs(x_minus))
    tail = abs(xi.coeffs[xi.order]) * radius ** xi.order * 4
    floor = BigReal(1, digits) / (BigReal(10, digits) ** (digits - 8))
    return residual, tail + floor


# --------------------------------------------------------------------------
# Constant cache
# --------------------------------------------------------------------------

_CACHE_HEADER = "likeiper-cache 1"


class ConstantCache:
    """Bundle of the shared constants, optionally memoised on disk.

    The file layout is plain text::

        likeiper-cache 1
        checksum <sha256 of everything below this line>
        <name> <index> <digits> <value>
        ...

    one record per constant, decimal strings only, sorted by (name,
    index), written atomically (temp file + rename) and never mutated in
    place: a record is superseded only by one carrying more digits.
    Concurrent readers are safe; a corrupted file fails loudly with a
    checksum mismatch.

    In memory the bundle exposes, at the construction precision:
    ``stieltjes`` (gamma_0..gamma_M), ``zeta`` (zeta(2)..zeta(K)),
    ``zeta_prime_2`` and ``log_A``.
    """

    def __init__(self, digits: int = DEFAULT_DIGITS,
                 order: int = DEFAULT_ORDER,
                 path: Optional[str] = None):
        if digits < MIN_CONSTANT_DIGITS:
            raise PrecisionError(
                f"constant cache needs digits >= {MIN_CONSTANT_DIGITS}, "
                f"got {digits}"
            )
        internal = order + 10
        if internal - 1 > MAX_STIELTJES_INDEX:
            raise UsageError(
                f"order {order} needs Stieltjes constants beyond index "
                f"{MAX_STIELTJES_INDEX}; supported orders end at "
                f"{MAX_STIELTJES_INDEX - 9}"
            )
        self.digits = digits
        self.order = order
        self.path = path
        self.max_index = internal - 1
        self.max_k = max(2 * order + 4, internal)
        self.work_digits = xi_working_digits(internal, digits)
        self._records: Dict[Tuple[str, int], Tuple[int, str]] = {}
        self._dirty = False
        if path is not None and os.path.exists(path):
            self._records = self._read(path)
        self._materialise()
        if self._dirty and path is not None:
            self._write(path)
        self._check_invariants()

    # -- disk layer --------------------------------------------------------
    @staticmethod
    def _read(path: str) -> Dict[Tuple[str, int], Tuple[int, str]]:
        try:
            with open(path, "r", encoding="ascii") as fh:
                text = fh.read()
        except OSError as exc:
            raise CacheError(f"cannot read constant cache {path}: {exc}")
        parts = text.split("\n", 2)
        if len(parts) < 3 or parts[0] != _CACHE_HEADER:
            raise CacheError(
                f"constant cache {path} has an unrecognised header"
            )
        if not parts[1].startswith("checksum "):
            raise CacheError(
                f"constant cache {path} is missing its checksum line"
            )
        stated = parts[1][len("checksum "):].strip()
        body = parts[2]
        actual = hashlib.sha256(body.encode("ascii")).hexdigest()
        if stated != actual:
            raise CacheError(
                f"constant cache {path} checksum mismatch "
                f"(file says {stated[:12]}..., content hashes to "
                f"{actual[:12]}...); delete the file to rebuild it"
            )
        records: Dict[Tuple[str, int], Tuple[int, str]] = {}
        for line in body.splitlines():
            if not line.strip():
                continue
            fields = line.split()
            if len(fields) != 4:
                raise CacheError(
                    f"constant cache {path} has a malformed record: "
                    f"{line!r}"
                )
            name, index_s, digits_s, value = fields
            try:
                records[(name, int(index_s))] = (int(digits_s), value)
            except ValueError:
                raise CacheError(
                    f"constant cache {path} has a malformed record: "
                    f"{line!r}"
                )
        return records

    def _write(self, path: str) -> None:
        body = "".join(
            f"{name} {index} {digits} {value}\n"
            for (name, index), (digits, value)
            in sorted(self._records.items())
        )
        checksum = hashlib.sha256(body.encode("ascii")).hexdigest()
        payload = f"{_CACHE_HEADER}\nchecksum {checksum}\n{body}"
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".likeiper-cache-")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(payload)
            os.replace(tmp, path)
        except OSError as exc:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise CacheError(f"cannot write constant cache {path}: {exc}")
        self._dirty = False

    def _lookup_raw(self, name: str, index: int) -> Optional[str]:
        entry = self._records.get((name, index))
        if entry is None:
            return None
        stored_digits, value = entry
        if stored_digits < self.work_digits:
            return None
        return value

    def _store_raw(self, name: str, index: int, value: mpf) -> None:
        entry = self._records.get((name, index))
        if entry is not None and entry[0] >= self.work_digits:
            return
        with workdps(self.work_digits + 10):
            text = mp.nstr(mpf(value), self.work_digits + 8)
        self._records[(name, index)] = (self.work_digits, text)
        self._dirty = True

    # -- materialisation ---------------------------------------------------
    def _materialise(self) -> None:
        W = self.work_digits
        gamma_strings = [self._lookup_raw("stieltjes", m)
                         for m in range(self.max_index + 1)]
        with workdps(W + 5):
            if all(s is not None for s in gamma_strings):
                self.gammas_raw = [mpf(s) for s in gamma_strings]
            else:
                self.gammas_raw = [+g for g in
                                   _stieltjes_sweep(self.max_index, W)]
                for m, g in enumerate(self.gammas_raw):
                    self._store_raw("stieltjes", m, g)
        zeta_strings = {k: self._lookup_raw("zeta", k)
                        for k in range(2, self.max_k + 1)}
        with workdps(W + 5):
            if all(s is not None for s in zeta_strings.values()):
                self.zetas_raw = {k: mpf(s)
                                  for k, s in zeta_strings.items()}
            else:
                self.zetas_raw = {k: +v for k, v
                                  in _zeta_sweep(self.max_k, W).items()}
                for k, v in self.zetas_raw.items():
                    self._store_raw("zeta", k, v)
        zp2_string = self._lookup_raw("zeta_prime", 2)
        with workdps(W + 5):
            if zp2_string is not None:
                self.zeta_prime_2_raw = mpf(zp2_string)
            else:
                self.zeta_prime_2_raw = +_zeta_prime_2_sweep(W)
                self._store_raw("zeta_prime", 2, self.zeta_prime_2_raw)
            zeta2 = mp.pi ** 2 / 6
            self.log_a_raw = +((self.gammas_raw[0] + mp.log(2 * mp.pi)
                                - self.zeta_prime_2_raw / zeta2) / 12)
        d = self.digits
        self.stieltjes = tuple(BigReal(g, d) for g in self.gammas_raw)
        self.zeta = {k: BigReal(v, d) for k, v in self.zetas_raw.items()}
        self.zeta_prime_2 = BigReal(self.zeta_prime_2_raw, d)
        self.log_A = BigReal(self.log_a_raw, d)

    def _check_invariants(self) -> None:
        anchor = BigReal(_EULER_GAMMA_50, self.digits)
        tol_digits = min(self.digits - 5, 45)
        floor = (BigReal(1, self.digits)
                 / (BigReal(10, self.digits) ** tol_digits))
        if abs(self.stieltjes[0] - anchor) > floor:
            raise PrecisionError(
                f"cached gamma_0 = {self.stieltjes[0].to_decimal(20)} "
                f"disagrees with the Euler-Mascheroni constant beyond "
                f"10^-{tol_digits}"
            )

    # -- queries -----------------------------------------------------------
    def covers(self, order: int, digits: int) -> bool:
        """Whether this bundle can feed an xi build at (order, digits)."""
        internal = order + 10
        return (self.max_index >= internal - 1
                and self.max_k >= internal
                and self.work_digits >= xi_working_digits(internal, digits))

    def zeta_prime_minus1(self) -> BigReal:
        """zeta'(-1) = 1/12 - log A (exact by construction)."""
        with workdps(self.work_digits + 5):
            return BigReal(mpf(1) / 12 - self.log_a_raw, self.digits)
