"""Independent reference computations used only by the tests.

Everything here deliberately avoids the package's own code paths:
convolution by the definition, Euler's constant by Euler-Maclaurin on
the harmonic sum, partition counts by the coin-change recurrence, xi
Taylor coefficients by a contour integral over mpmath's zeta/gamma,
and the log-derivative constant by numerical differentiation.
"""
from __future__ import annotations

from typing import List, Sequence

from mpmath import mp, workdps


def convolve(a: Sequence, b: Sequence) -> List:
    """Cauchy product by the definition, at the ambient precision."""
    out = []
    for m in range(len(a)):
        acc = mp.mpf(0)
        for k in range(m + 1):
            acc += a[k] * b[m - k]
        out.append(acc)
    return out


def em_gamma(cutoff: int, dps: int = 40):
    """Euler's constant from H_N - log N with Euler-Maclaurin corrections.

    Good to roughly N^-10, i.e. ~20 digits at cutoff 100 and ~30 at
    cutoff 1000; enough to cross-check a frozen 36-digit value's head.
    """
    with workdps(dps + 10):
        n = mp.mpf(cutoff)
        harmonic = mp.mpf(0)
        for k in range(1, cutoff + 1):
            harmonic += mp.mpf(1) / k
        # B_2/2 = 1/12, B_4/4 = -1/120, B_6/6 = 1/252, B_8/8 = -1/240
        value = harmonic - mp.log(n) - 1 / (2 * n)
        value += mp.mpf(1) / 12 / n**2
        value -= mp.mpf(1) / 120 / n**4
        value += mp.mpf(1) / 252 / n**6
        value -= mp.mpf(1) / 240 / n**8
        return +value


def partition_counts_dp(limit: int) -> List[int]:
    """p(0..limit) by the coin-change recurrence (no pentagonal numbers)."""
    ways = [0] * (limit + 1)
    ways[0] = 1
    for part in range(1, limit + 1):
        for total in range(part, limit + 1):
            ways[total] += ways[total - part]
    return ways


def xi_closed(s):
    """xi(s) = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s), via mpmath."""
    s = mp.mpf(s) if not isinstance(s, mp.mpc) else s
    return mp.mpf("0.5") * s * (s - 1) * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


def xi_coeff_cauchy(n: int, dps: int = 50, points: int = 96):
    """Taylor coefficient of xi at s = 1 by a contour integral.

    Trapezoidal rule on |s - 1| = 2 is spectrally accurate for an
    entire integrand; 96 points leave the quadrature error far below
    the 10^-40 comparisons made against it.
    """
    with workdps(dps):
        radius = mp.mpf(2)
        total = mp.mpc(0)
        for j in range(points):
            theta = 2 * mp.pi * j / points
            z = radius * mp.e ** (1j * theta)
            s = 1 + z
            total += xi_closed(s) / z**n
        return +(total / points).real


def c_diff_oracle(dps: int = 50):
    """c = (pi/3) xi'(2)/xi(2) by numerical differentiation of xi."""
    with workdps(dps):
        derivative = mp.diff(xi_closed, mp.mpf(2))
        return +(mp.pi / 3 * derivative / xi_closed(mp.mpf(2)))
