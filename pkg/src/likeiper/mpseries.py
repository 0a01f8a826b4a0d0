"""Fixed-precision real scalars and truncated power series.

This is the arithmetic kernel everything else sits on.  A :class:`BigReal`
is an mpmath float tagged with a decimal precision; binary operations
propagate the *minimum* precision of their operands and are carried out at
that precision, so a result can never silently claim more accuracy than its
weakest input.  A :class:`PowerSeries` is a dense coefficient vector
c_0..c_N in one formal variable, truncated at order N.

The series routines (`series_mul`, `series_exp`, `series_log`) are the
classical O(N^2) coefficient recurrences.  `series_exp`/`series_log` are
exact term inverses of each other, which the test suite exercises as a
round-trip property.

Backed by mpmath for the scalar arithmetic; the series algebra, precision
model and rendering rules are all local to this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from mpmath import mp, mpf, workdps

from .errors import DomainError, UsageError

MIN_DIGITS = 20
DEFAULT_DIGITS = 60
DEFAULT_ORDER = 40

Realish = Union["BigReal", int, str]


class BigReal:
    """An arbitrary-precision real with an explicit decimal precision tag.

    ``digits`` is the number of decimal digits the value is considered good
    for; all arithmetic on the instance happens at that many digits.
    Instances are immutable.
    """

    __slots__ = ("value", "digits")

    def __init__(self, value: Union[int, str, float, mpf], digits: int = DEFAULT_DIGITS):
        if not isinstance(digits, int) or digits < MIN_DIGITS:
            raise UsageError(
                f"BigReal requires digits >= {MIN_DIGITS}, got {digits!r}"
            )
        if isinstance(value, float) and not float(value).is_integer():
            # Accepting raw floats would quietly inject binary noise well
            # above the requested precision.
            raise UsageError(
                "construct BigReal from str/int/mpf, not float "
                f"(got {value!r})"
            )
        with workdps(digits):
            object.__setattr__(self, "value", mpf(value))
        object.__setattr__(self, "digits", digits)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("BigReal is immutable")

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other: Realish) -> "BigReal":
        if isinstance(other, BigReal):
            return other
        if isinstance(other, (int, str)):
            return BigReal(other, self.digits)
        return NotImplemented  # type: ignore[return-value]

    def _binop(self, other: Realish, op: Callable) -> "BigReal":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented  # type: ignore[return-value]
        digits = min(self.digits, other.digits)
        with workdps(digits):
            return BigReal(op(self.value, other.value), digits)

    def __add__(self, other: Realish) -> "BigReal":
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other: Realish) -> "BigReal":
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other: Realish) -> "BigReal":
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other: Realish) -> "BigReal":
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other: Realish) -> "BigReal":
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other: Realish) -> "BigReal":
        return self._binop(other, lambda a, b: b / a)

    def __pow__(self, exponent: int) -> "BigReal":
        if not isinstance(exponent, int):
            raise UsageError("BigReal ** only supports integer exponents")
        with workdps(self.digits):
            return BigReal(self.value ** exponent, self.digits)

    def __neg__(self) -> "BigReal":
        # mpf unary ops round to the *ambient* precision, so they need
        # the same working-precision guard as the binary ops.
        with workdps(self.digits):
            return BigReal(-self.value, self.digits)

    def __abs__(self) -> "BigReal":
        with workdps(self.digits):
            return BigReal(abs(self.value), self.digits)

    # -- comparisons (on the underlying values) ---------------------------
    def _cmp_value(self, other: Realish):
        if isinstance(other, BigReal):
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, str):
            with workdps(self.digits):
                return mpf(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value == v

    def __lt__(self, other) -> bool:
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value < v

    def __le__(self, other) -> bool:
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value <= v

    def __gt__(self, other) -> bool:
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value > v

    def __ge__(self, other) -> bool:
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value >= v

    def __hash__(self):
        return hash((self.value, self.digits))

    # -- conversions -------------------------------------------------------
    def with_digits(self, digits: int) -> "BigReal":
        """Re-tag (and re-round) the value at a new precision."""
        with workdps(digits if digits >= MIN_DIGITS else MIN_DIGITS):
            return BigReal(mpf(self.value), digits)

    def to_decimal(self, sig: int | None = None) -> str:
        """Deterministic decimal rendering with exactly ``sig`` significant
        digits (default: all tagged digits).  Fixed-point notation for
        exponents in [-5, 13), scientific otherwise; never locale-dependent.
        """
        sig = self.digits if sig is None else sig
        if sig < 1:
            raise UsageError(f"need at least 1 significant digit, got {sig}")
        if self.value == 0:
            return "0." + "0" * (sig - 1)
        with workdps(self.digits + 10):
            return mp.nstr(self.value, sig, strip_zeros=False,
                           min_fixed=-5, max_fixed=13)

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"BigReal({self.to_decimal(min(self.digits, 20))!r}, digits={self.digits})"


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); 0 when k > n."""
    if not isinstance(n, int) or not isinstance(k, int):
        raise UsageError("binomial requires integer arguments")
    if n < 0 or k < 0:
        raise UsageError(f"binomial requires n, k >= 0, got n={n}, k={k}")
    if k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series: coefficients c_0..c_N of a formal variable.

    ``digits`` is the weakest coefficient precision; operations between two
    series require equal truncation orders so that every output coefficient
    is fully determined by the inputs.
    """

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise UsageError("PowerSeries needs at least the constant term")
        if not all(isinstance(c, BigReal) for c in self.coeffs):
            raise UsageError("PowerSeries coefficients must be BigReal")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def digits(self) -> int:
        return min(c.digits for c in self.coeffs)

    def coeff(self, n: int) -> BigReal:
        if not 0 <= n <= self.order:
            raise UsageError(f"coefficient index {n} outside 0..{self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise UsageError(
                f"cannot extend a series of order {self.order} to {order}"
            )
        return PowerSeries(self.coeffs[: order + 1])

    def with_digits(self, digits: int) -> "PowerSeries":
        return PowerSeries(tuple(c.with_digits(digits) for c in self.coeffs))

    def __repr__(self) -> str:
        head = ", ".join(c.to_decimal(min(8, c.digits)) for c in self.coeffs[:4])
        tail = ", ..." if self.order >= 4 else ""
        return f"PowerSeries([{head}{tail}], order={self.order})"


def series(values: Iterable[Union[BigReal, int, str]], digits: int = DEFAULT_DIGITS) -> PowerSeries:
    """Build a PowerSeries, coercing ints/strings to BigReal at ``digits``."""
    return PowerSeries(tuple(
        v if isinstance(v, BigReal) else BigReal(v, digits) for v in values
    ))


def _require_equal_orders(a: PowerSeries, b: PowerSeries) -> None:
    if a.order != b.order:
        raise UsageError(
            f"series orders differ ({a.order} vs {b.order}); truncate first"
        )


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the common order."""
    _require_equal_orders(a, b)
    digits = min(a.digits, b.digits)
    n = a.order
    with workdps(digits):
        av = [c.value for c in a.coeffs]
        bv = [c.value for c in b.coeffs]
        out = [mpf(0)] * (n + 1)
        for i, ai in enumerate(av):
            if ai == 0:
                continue
            for j in range(0, n + 1 - i):
                out[i + j] += ai * bv[j]
        return PowerSeries(tuple(BigReal(v, digits) for v in out))


def series_exp(a: PowerSeries) -> PowerSeries:
    """exp of a series with zero constant term, via b' = a' b.

    b_m = (1/m) sum_{k=1..m} k a_k b_{m-k};  b_0 = 1.
    """
    if a.coeffs[0].value != 0:
        raise DomainError(
            "series_exp requires constant term 0 "
            f"(got {a.coeffs[0].to_decimal(8)})"
        )
    digits = a.digits
    n = a.order
    with workdps(digits):
        av = [c.value for c in a.coeffs]
        bv = [mpf(1)] + [mpf(0)] * n
        for m in range(1, n + 1):
            acc = mpf(0)
            for k in range(1, m + 1):
                if av[k] != 0:
                    acc += k * av[k] * bv[m - k]
            bv[m] = acc / m
        return PowerSeries(tuple(BigReal(v, digits) for v in bv))


def series_log(a: PowerSeries) -> PowerSeries:
    """log of a series with constant term 1; inverse of series_exp.

    c_m = a_m - (1/m) sum_{k=1..m-1} k c_k a_{m-k};  c_0 = 0.
    """
    if a.coeffs[0].value != 1:
        raise DomainError(
            "series_log requires constant term 1 "
            f"(got {a.coeffs[0].to_decimal(8)})"
        )
    digits = a.digits
    n = a.order
    with workdps(digits):
        av = [c.value for c in a.coeffs]
        cv = [mpf(0)] * (n + 1)
        for m in range(1, n + 1):
            acc = av[m]
            for k in range(1, m):
                if cv[k] != 0 and av[m - k] != 0:
                    acc -= mpf(k) / m * cv[k] * av[m - k]
            cv[m] = acc
        return PowerSeries(tuple(BigReal(v, digits) for v in cv))


def series_eval(a: PowerSeries, x: BigReal) -> BigReal:
    """Evaluate the truncated series at a point by Horner's scheme."""
    digits = min(a.digits, x.digits)
    with workdps(digits):
        acc = mpf(0)
        for c in reversed(a.coeffs):
            acc = acc * x.value + c.value
        return BigReal(acc, digits)


def prefix_delta(a: PowerSeries, b: PowerSeries) -> BigReal:
    """Max absolute coefficient difference over the common prefix.

    The double-evaluation trust measure: recompute at higher order/digits
    and compare prefixes; the result bounds the reproducibility error of
    the cheaper run.
    """
    digits = min(a.digits, b.digits)
    upto = min(a.order, b.order)
    with workdps(digits + 10):
        worst = mpf(0)
        for i in range(upto + 1):
            d = abs(a.coeffs[i].value - b.coeffs[i].value)
            if d > worst:
                worst = d
        return BigReal(worst, digits)
