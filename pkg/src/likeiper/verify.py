"""Self-verification suite: every runtime-checkable invariant, with
measured margins.

Each check reports the quantity actually measured next to the bound it
must satisfy, so a passing run documents how much headroom the
computation has and a failing run names the first broken identity.
Checks are pure functions of (digits, order, cache); ranges clamp to the
configured series order where an identity needs coefficients past it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from mpmath import mp, mpf, workdps

from . import cluster, constants
from .mpseries import BigReal, binomial, series_eval, series_mul
from .xifactory import (
    ConstantCache,
    euler_gamma,
    symmetry_residual,
    trend_tiny_factors,
    xi_taylor,
)


@dataclass(frozen=True)
class CheckResult:
    """One verification line: what was measured against what bound."""

    name: str
    passed: bool
    measured: str
    bound: str
    note: str = ""


def _fmt(x) -> str:
    if x is None:
        return "n/a"
    with workdps(30):
        return mp.nstr(mpf(x), 6, strip_zeros=True)


def _abs_diff(a: BigReal, b: BigReal, dps: int) -> mpf:
    with workdps(dps):
        return abs(mpf(a.value) - mpf(b.value))


def run_verification(digits: int = 60, order: int = 40,
                     cache: Optional[ConstantCache] = None
                     ) -> Tuple[CheckResult, ...]:
    """Run every invariant check and return the full report.  Raises the
    usual usage/precision errors for invalid inputs; a *failed check*
    does not raise, it comes back with passed=False."""
    results: List[CheckResult] = []
    work = digits + 20

    xi = xi_taylor(order, digits, cache=cache)

    # --- xi series shape ---------------------------------------------------
    half_gap = _abs_diff(xi.coeff(0), BigReal("0.5", digits), work)
    bound = mpf(10) ** -(digits - 5)
    results.append(CheckResult(
        "xi_constant_term", half_gap < bound,
        _fmt(half_gap), f"< {_fmt(bound)}",
        "a_0 = 1/2 exactly; measured gap is arithmetic rounding"))

    with workdps(work):
        min_coeff = min(mpf(xi.coeff(n).value) for n in range(1, order + 1))
    results.append(CheckResult(
        "xi_coefficient_positivity", min_coeff > 0,
        _fmt(min_coeff), "> 0",
        f"smallest of a_1..a_{order}"))

    # --- symmetry about the critical point ---------------------------------
    worst_ratio = mpf(0)
    for delta_str in ("0.1", "0.3", "0.5"):
        resid, trust = symmetry_residual(xi, BigReal(delta_str, digits))
        with workdps(work):
            ratio = abs(mpf(resid.value)) / mpf(trust.value)
        worst_ratio = max(worst_ratio, ratio)
    results.append(CheckResult(
        "xi_symmetry", worst_ratio < 1,
        _fmt(worst_ratio), "< 1",
        "max |xi(1/2+d) - xi(1/2-d)| / trust over d in {0.1, 0.3, 0.5}"))

    # --- factorisation ------------------------------------------------------
    trend, tiny = trend_tiny_factors(order, digits, cache=cache)
    product = series_mul(trend, tiny)
    with workdps(work):
        worst = max(
            abs(mpf(product.coeff(n).value) - mpf(xi.coeff(n).value))
            for n in range(order + 1))
    bound = mpf(10) ** -(digits - 5)
    results.append(CheckResult(
        "trend_tiny_product", worst < bound,
        _fmt(worst), f"< {_fmt(bound)}",
        "coefficientwise trend*tiny vs xi"))

    one = BigReal(1, digits)
    with workdps(digits + 10):
        pi_six = BigReal(+(mp.pi / 6), digits)
    eval_gap_big = series_eval(product, one) - pi_six
    with workdps(work):
        eval_gap = abs(mpf(eval_gap_big.value))
        trust_gap = 4 * abs(mpf(xi.coeff(order).value)) \
            + mpf(10) ** -(digits - 8)
    results.append(CheckResult(
        "trend_tiny_at_one", eval_gap < trust_gap,
        _fmt(eval_gap), f"< {_fmt(trust_gap)}",
        "trend(1)*tiny(1) vs pi/6, within the truncation trust measure"))

    # --- equilibrium identity ----------------------------------------------
    top = min(order, 40)
    phis = cluster.phi_ladder(xi, top, guard=15)
    with workdps(work):
        worst = max(
            abs(mpf(cluster.equilibrium_residual(n, xi, phis).value))
            for n in range(1, top + 1))
    bound = mpf(10) ** -(digits - 10)
    results.append(CheckResult(
        "equilibrium_residuals", worst < bound,
        _fmt(worst), f"< {_fmt(bound)}",
        f"alternating binomial sum vs 2 a_n, n <= {top}"))

    # --- lambda routes ------------------------------------------------------
    lambdas = cluster.lambdas_from_phis(phis, top)
    dual_top = min(top, 20)
    with workdps(work):
        worst = max(
            abs(mpf(cluster.lambda_partition_sum(phis, n).value)
                - mpf(lambdas[n - 1].value))
            for n in range(1, dual_top + 1))
    bound = mpf(10) ** -(digits - 12)
    results.append(CheckResult(
        "lambda_dual_route", worst < bound,
        _fmt(worst), f"< {_fmt(bound)}",
        f"series_log vs weighted partition sums, n <= {dual_top}"))

    phis_back = cluster.phi_from_lambda(lambdas, top)
    with workdps(work):
        worst = max(
            abs(mpf(phis_back[n].value) - mpf(phis[n - 1].value))
            for n in range(1, top + 1))
    results.append(CheckResult(
        "phi_lambda_roundtrip", worst < bound,
        _fmt(worst), f"< {_fmt(bound)}",
        f"phi -> lambda -> phi, n <= {top}"))

    # --- sandwich and Koebe bounds -------------------------------------------
    sandwich_top = min(order, 15)
    strict_margin = None
    equality_gap = None
    ok = True
    for n in range(2, sandwich_top + 1):
        low, up = cluster.bounds(n, phis)
        with workdps(work):
            lam_v = mpf(lambdas[n - 1].value)
            low_gap = lam_v - mpf(low.value)
            up_gap = mpf(up.value) - lam_v
        if n == 2:
            # The two-block truncation at n = 2 is the whole expansion
            # (only two partitions exist), so the lower bound coincides
            # with lambda_2 identically; require it, and strictness above.
            equality_gap = abs(low_gap)
            ok = ok and equality_gap < mpf(10) ** -(digits - 12) \
                and up_gap > 0
            continue
        ok = ok and low_gap > 0 and up_gap > 0
        margin = min(low_gap, up_gap)
        strict_margin = margin if strict_margin is None \
            else min(strict_margin, margin)
    results.append(CheckResult(
        "cluster_sandwich", ok,
        f"min gap {_fmt(strict_margin)}; n=2 coincidence "
        f"{_fmt(equality_gap)}",
        "strict for 3..15; lower_2 = lambda_2 identically",
        f"lower < lambda < upper, 2 <= n <= {sandwich_top}"))

    worst_koebe = None
    ok = True
    for n in range(1, sandwich_top + 1):
        rwb = cluster.rwb_lower(n, lambdas[0])
        with workdps(work):
            gap = mpf(lambdas[n - 1].value) - mpf(rwb.value)
        ok = ok and gap >= 0
        worst_koebe = gap if worst_koebe is None else min(worst_koebe, gap)
    results.append(CheckResult(
        "koebe_under_lambda", ok,
        _fmt(worst_koebe), ">= 0",
        f"lambda_n minus the constant-slope estimate, n <= {sandwich_top}"))

    # --- growth decomposition -----------------------------------------------
    ok = True
    min_eps = None
    prev = None
    increasing = True
    with workdps(work):
        lam1 = mpf(lambdas[0].value)
        for n in range(2, top + 1):
            eps = mpf(phis[n - 1].value) - n * lam1
            ok = ok and eps > 0
            min_eps = eps if min_eps is None else min(min_eps, eps)
            if prev is not None:
                increasing = increasing and eps > prev
            prev = eps
    results.append(CheckResult(
        "phi_above_linear", ok and increasing,
        f"min epsilon {_fmt(min_eps)}", "> 0 and increasing",
        f"phi_n - n lambda_1, 2 <= n <= {top}"))

    # --- combinatorics --------------------------------------------------------
    ok = all(
        cluster.weight_sum_check(n, k) == binomial(n, k)
        for n in range(1, 13) for k in range(1, n + 1))
    results.append(CheckResult(
        "cluster_weight_sums", ok, "exact", "= C(n,k)",
        "integer identity over all 1 <= k <= n <= 12"))

    bell_top = min(order, 12)
    with workdps(work):
        worst = max(
            abs(mpf(cluster.bell_phi(n, lambdas).value)
                - mpf(phis[n - 1].value))
            for n in range(1, bell_top + 1))
    results.append(CheckResult(
        "bell_determinant", worst < bound,
        _fmt(worst), f"< {_fmt(bound)}",
        f"Hessenberg-determinant phi vs exponential route, n <= {bell_top}"))

    ok = all(len(cluster.partitions(n)) == cluster.partition_count(n)
             for n in range(1, 41))
    results.append(CheckResult(
        "partition_enumeration", ok, "exact", "= p(n)",
        "enumeration length vs pentagonal recurrence, n <= 40"))

    # --- the constant c --------------------------------------------------------
    exact = constants.c_exact(digits, cache=cache)
    oracle = constants.c_series_oracle(xi)
    with workdps(work):
        oracle_gap = abs(mpf(oracle.value) - mpf(exact.value.value))
        oracle_trust = 2 * (order + 1) * abs(mpf(xi.coeff(order).value)) \
            + mpf(10) ** -(digits - 8)
    results.append(CheckResult(
        "c_series_oracle", oracle_gap < oracle_trust,
        _fmt(oracle_gap), f"< {_fmt(oracle_trust)}",
        "closed form vs xi'(2)/xi(2) from the series"))

    lam_terms = min(order, 40)
    lam_report = constants.c_from_lambda(lambdas, lam_terms)
    with workdps(work):
        lam_gap = abs(mpf(lam_report.value.value) - mpf(exact.value.value))
        lam_est = mpf(lam_report.est_error.value)
    results.append(CheckResult(
        "c_lambda_route", lam_gap <= lam_est,
        _fmt(lam_gap), f"<= est {_fmt(lam_est)}",
        f"{lam_terms}-term lambda series vs exact, within its own "
        "certified tail estimate"))

    bin_report = constants.c_from_binary(100000, digits, cache=cache)
    with workdps(work):
        bin_gap = abs(mpf(bin_report.value.value) - mpf(exact.value.value))
        bin_est = mpf(bin_report.est_error.value)
    results.append(CheckResult(
        "c_binary_route", bin_gap <= bin_est and bin_gap < mpf("1e-9"),
        _fmt(bin_gap), f"<= est {_fmt(bin_est)} and < 1e-9",
        "100000-term binary series vs exact"))

    ok = True
    worst_ratio = mpf(0)
    for terms in (1, 5, 15, min(order, 30), min(order, 40)):
        rep = constants.c_from_lambda(lambdas, terms)
        with workdps(work):
            gap = abs(mpf(rep.value.value) - mpf(exact.value.value))
            est = mpf(rep.est_error.value)
        ok = ok and est >= gap
        if est > 0:
            worst_ratio = max(worst_ratio, gap / est)
    for cutoff in (2, 32, 1024):
        rep = constants.c_from_binary(cutoff, digits, cache=cache)
        with workdps(work):
            gap = abs(mpf(rep.value.value) - mpf(exact.value.value))
            est = mpf(rep.est_error.value)
        ok = ok and est >= gap
        if est > 0:
            worst_ratio = max(worst_ratio, gap / est)
    results.append(CheckResult(
        "estimate_honesty", ok,
        f"worst gap/est {_fmt(worst_ratio)}", "<= 1",
        "est_error bounds the true gap at every tested cutoff"))

    arch, zeta_part = constants.trend_tiny_split(digits, cache=cache)
    with workdps(work):
        split_gap = abs(mpf((arch + zeta_part).value)
                        - mpf(exact.value.value))
    bound = mpf(10) ** -(digits - 5)
    results.append(CheckResult(
        "factor_split_sum", split_gap < bound,
        _fmt(split_gap), f"< {_fmt(bound)}",
        "archimedean part + zeta part vs exact"))

    with workdps(work):
        pi_lam1 = mp.pi * mpf(lambdas[0].value)
        upper_gap = pi_lam1 - mpf(exact.value.value)
    results.append(CheckResult(
        "pi_lambda1_upper_bound",
        mpf("1.5e-4") < upper_gap < mpf("3e-4"),
        _fmt(upper_gap), "in (1.5e-4, 3e-4)",
        "pi lambda_1 exceeds c by about 2e-4"))

    ok = all(
        constants.n_zero_count(n) + constants.n_one_count(n)
        == n.bit_length()
        for n in range(1, 1000001))
    results.append(CheckResult(
        "bit_count_sanity", ok, "exact", "N_0 + N_1 = floor(log2 n) + 1",
        "all n <= 10^6"))

    partial = constants.binary_zero_series_partial(1000000)
    limit = constants.binary_zero_series_limit(digits)
    with workdps(work):
        identity_gap = abs(mpf(repr(partial)) - mpf(limit.value))
    results.append(CheckResult(
        "binary_series_identity", identity_gap < mpf("5e-9"),
        _fmt(identity_gap), "< 5e-9",
        "zero-bit series at 10^6 terms vs (1/2)(gamma + log(pi/2) - 1)"))

    # --- cache health -----------------------------------------------------------
    if cache is not None:
        gamma_gap = _abs_diff(cache.stieltjes[0], euler_gamma(digits + 5),
                              work)
        bound = mpf(10) ** -(digits - 5)
        results.append(CheckResult(
            "cache_gamma_anchor", gamma_gap < bound,
            _fmt(gamma_gap), f"< {_fmt(bound)}",
            "cached gamma_0 vs a freshly computed Euler-Mascheroni value"))

    return tuple(results)


def all_passed(results: Sequence[CheckResult]) -> bool:
    return all(r.passed for r in results)
