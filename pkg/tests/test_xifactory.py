"""Shared constants and the xi Taylor series about s = 1."""
from __future__ import annotations

import glob
import os

import pytest
from mpmath import mp, mpf, workdps

from likeiper import (
    BigReal,
    CacheError,
    ConstantCache,
    PrecisionError,
    UsageError,
    euler_gamma,
    prefix_delta,
    series_eval,
    series_mul,
    stieltjes_constants,
    symmetry_residual,
    trend_tiny_factors,
    xi_taylor,
    zeta_prime_values,
    zeta_values,
)
from oracles import em_gamma, xi_coeff_cauchy

# 36-digit anchors, frozen from independent high-precision runs
GAMMAS = [
    "0.577215664901532860606512090082402431",
    "-0.0728158454836767248605863758749013191",
    "-0.00969036319287231848453038603521252936",
    "0.00205383442030334586616004654275338429",
    "0.00232537006546730005746817017752606800",
    "0.000793323817301062701753334877444444831",
]
GAMMA_10 = "0.000205332814909064794683722289237065303"
GAMMA_20 = "0.000466343561511559449400594824433550525"
GAMMA_44 = "-7.18874588950352728234209482457766422"
ZETAS = {
    2: "1.64493406684822643647241516664602519",
    3: "1.20205690315959428539973816151144999",
    4: "1.08232323371113819151600369654116790",
    5: "1.03692775514336992633136548645703417",
    6: "1.01734306198444913971451792979092053",
    7: "1.00834927738192282683979754984979676",
    8: "1.00407735619794433937868523850865247",
    9: "1.00200839282608221441785276923241206",
    10: "1.00099457512781808533714595890031902",
}
ZETA_PRIME_2 = "-0.937548254315843753702574094567864978"
ZETA_PRIME_M1 = "-0.165421143700450929213919660242780643"
LOG_A = "0.248754477033784262547252993576113976"
XI_COEFFS = {
    0: "0.500000000000000000000000000000000000",
    1: "0.0115478544830605169071551239532476458",
    2: "0.0116719322671130915674411784429052405",
    3: "0.000248991924961474336175585887194744177",
    4: "0.000126590865158263502528060542058186739",
    5: "0.00000252512739610958708479261761250659240",
    6: "0.000000860493520930767788890077486952047066",
    7: "0.0000000161892073094053848017403295983670310",
    8: "0.00000000415798412501386081535438439325738376",
    9: "0.0000000000742620960745947002261291924482185377",
    10: "0.0000000000153278011638166567551397499842380357",
    11: "2.61192036113843980828445350999530303e-13",
    12: "4.51148322488060438017209474390419725e-14",
}
A_40_HEAD = "1.672560952e-55"


def close(computed: BigReal, frozen: str, tol: str) -> bool:
    with workdps(60):
        return abs(computed.value - mpf(frozen)) < mpf(tol)


# -- Euler's constant and the Stieltjes family ------------------------------

def test_euler_gamma_frozen_and_em_oracle():
    g = euler_gamma(60)
    assert close(g, GAMMAS[0], "1e-35")
    # independent Euler-Maclaurin cross-check at two cutoffs
    with workdps(50):
        assert abs(g.value - em_gamma(100)) < mpf("1e-20")
        assert abs(g.value - em_gamma(1000)) < mpf("1e-30")
        assert abs(g.value - mp.euler) < mpf("1e-45")


def test_stieltjes_frozen_head():
    gammas = stieltjes_constants(10, 60)
    for m, frozen in enumerate(GAMMAS):
        assert close(gammas[m], frozen, "1e-34")
    assert close(gammas[10], GAMMA_10, "1e-34")


def test_stieltjes_against_mpmath():
    gammas = stieltjes_constants(5, 40)
    with workdps(50):
        for m in range(6):
            assert abs(gammas[m].value - mp.stieltjes(m)) < mpf("1e-36")


def test_stieltjes_deep_indices():
    # the high-index constants grow and flip sign; gamma_44 ~ -7.2
    gammas = stieltjes_constants(44, 40)
    assert close(gammas[20], GAMMA_20, "1e-30")
    assert close(gammas[44], GAMMA_44, "1e-28")


def test_stieltjes_validation():
    with pytest.raises(UsageError):
        stieltjes_constants(61, 60)
    with pytest.raises(UsageError):
        stieltjes_constants(-1, 60)
    with pytest.raises(PrecisionError):
        stieltjes_constants(5, 25)


# -- zeta values -------------------------------------------------------------

def test_zeta_frozen_values():
    zs = zeta_values(10, 60)
    for k, frozen in ZETAS.items():
        assert close(zs[k], frozen, "1e-34")


def test_zeta_even_bernoulli_closed_form():
    # zeta(2k) = (-1)^(k+1) B_2k (2 pi)^(2k) / (2 (2k)!)
    zs = zeta_values(20, 50)
    with workdps(60):
        for k in range(1, 11):
            closed = ((-1) ** (k + 1) * mp.bernoulli(2 * k)
                      * (2 * mp.pi) ** (2 * k) / (2 * mp.factorial(2 * k)))
            assert abs(zs[2 * k].value - closed) < mpf("1e-45")


def test_zeta_prime_values_frozen():
    zp2, zpm1, log_a = zeta_prime_values(60)
    assert close(zp2, ZETA_PRIME_2, "1e-34")
    assert close(zpm1, ZETA_PRIME_M1, "1e-34")
    assert close(log_a, LOG_A, "1e-34")
    # zeta'(-1) = 1/12 - log A ties the two together exactly
    twelfth = BigReal(1, 60) / 12
    assert abs(zpm1 - (twelfth - log_a)).value < mpf("1e-55")


# -- xi Taylor series ---------------------------------------------------------

def test_xi_constant_term_is_half(xi60):
    assert xi60.coeff(0) * 2 == 1


def test_xi_frozen_coefficients(xi60):
    # the frozen literals carry 36 significant digits; compare relatively
    with workdps(70):
        for n, frozen in XI_COEFFS.items():
            truth = mpf(frozen)
            rel = abs(xi60.coeff(n).value - truth) / abs(truth)
            assert rel < mpf("1e-33")
        a40 = xi60.coeff(40).value
        assert abs(a40 - mpf(A_40_HEAD)) < mpf("1e-64")


def test_xi_positivity(xi60):
    for n in range(1, 41):
        assert xi60.coeff(n) > 0


def test_xi_against_contour_oracle(xi60):
    # a_n by trapezoidal contour integration of the closed xi form; a
    # route that shares no code with the factor-product build
    for n in (1, 2, 3, 4, 5, 6, 12):
        oracle = xi_coeff_cauchy(n)
        with workdps(60):
            assert abs(xi60.coeff(n).value - oracle) < mpf("1e-38")


def test_xi_series_sums_to_pi_sixth_at_two(xi60):
    # sum a_n = xi(2) = pi/6; the order-40 tail sits near 1e-57
    total = series_eval(xi60.as_series(), BigReal(1, 60))
    with workdps(70):
        assert abs(total.value - mp.pi / 6) < mpf("1e-55")


def test_xi_symmetry_within_trust(xi60):
    for delta in ("0.1", "0.3", "0.5"):
        residual, trust = symmetry_residual(xi60, BigReal(delta, 60))
        assert residual <= trust


def test_trend_tiny_product_recovers_xi(xi60):
    trend, tiny = trend_tiny_factors(40, 60)
    product = series_mul(trend, tiny)
    assert prefix_delta(product, xi60.as_series()).value < mpf("1e-55")


def test_xi_coeff_index_bounds(xi60):
    with pytest.raises(UsageError):
        xi60.coeff(41)
    with pytest.raises(UsageError):
        xi60.coeff(-1)


def test_xi_validation():
    # the Stieltjes sweep tops out at index 60, i.e. series order 51
    with pytest.raises(UsageError):
        xi_taylor(order=52, digits=80)
    with pytest.raises(UsageError):
        xi_taylor(order=0, digits=60)
    with pytest.raises(PrecisionError):
        xi_taylor(order=10, digits=25)


def test_xi_determinism():
    a = xi_taylor(order=6, digits=40)
    b = xi_taylor(order=6, digits=40)
    assert all(x.value == y.value for x, y in zip(a.coeffs, b.coeffs))


# -- the on-disk constant bundle ----------------------------------------------

def test_cache_roundtrip(tmp_path):
    path = str(tmp_path / "constants.txt")
    fresh = ConstantCache(digits=30, order=5, path=path)
    assert os.path.exists(path)
    reread = ConstantCache(digits=30, order=5, path=path)
    assert all(a.value == b.value
               for a, b in zip(fresh.stieltjes, reread.stieltjes))
    assert fresh.zeta_prime_2.value == reread.zeta_prime_2.value
    assert fresh.log_A.value == reread.log_A.value
    # no stray temp files from the atomic write
    assert glob.glob(str(tmp_path / ".likeiper-cache-*")) == []


def test_cache_covers(tmp_path):
    cache = ConstantCache(digits=40, order=10, path=None)
    assert cache.covers(order=10, digits=40)
    assert cache.covers(order=5, digits=30)
    assert not cache.covers(order=20, digits=40)
    assert not cache.covers(order=10, digits=80)


def test_cache_supersede_with_more_digits(tmp_path):
    path = str(tmp_path / "constants.txt")
    ConstantCache(digits=30, order=5, path=path)
    small = os.path.getsize(path)
    ConstantCache(digits=45, order=5, path=path)
    grown = os.path.getsize(path)
    assert grown > small
    # the richer records still serve the smaller configuration
    again = ConstantCache(digits=30, order=5, path=path)
    assert close(again.stieltjes[0], GAMMAS[0], "1e-25")


def test_cache_tamper_detection(tmp_path):
    path = str(tmp_path / "constants.txt")
    ConstantCache(digits=30, order=5, path=path)
    lines = open(path).read().splitlines()
    victim = next(i for i, ln in enumerate(lines) if ln.startswith("stieltjes 1 "))
    lines[victim] = lines[victim][:-1] + ("3" if lines[victim][-1] != "3" else "4")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    with pytest.raises(CacheError, match="checksum mismatch"):
        ConstantCache(digits=30, order=5, path=path)


def test_cache_rejects_malformed_files(tmp_path):
    path = str(tmp_path / "constants.txt")
    with open(path, "w") as fh:
        fh.write("something else entirely\n")
    with pytest.raises(CacheError, match="header"):
        ConstantCache(digits=30, order=5, path=path)


def test_cache_zeta_agrees_with_direct_route():
    cache = ConstantCache(digits=40, order=5, path=None)
    direct = zeta_values(10, 40)
    with workdps(50):
        for k in range(2, 11):
            assert abs(cache.zeta[k].value - direct[k].value) < mpf("1e-38")


def test_cache_validation():
    with pytest.raises(PrecisionError):
        ConstantCache(digits=20, order=5)
    with pytest.raises(UsageError):
        ConstantCache(digits=80, order=55)
