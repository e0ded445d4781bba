"""Scalar evaluators, the gap functional, region classification, the
high-precision mirror, and the documented inequality battery.

One test here (``test_psi_two_z_claim``) checks a published comparative
claim that is genuinely false; it is expected to fail and is kept failing
on purpose.  See the README's "Known discrepancies".
"""

import math
import random

import mpmath
import pytest

import _frozen
from conftest import ulps_apart
from subadd.analytic_core import (
    GAP_FUNCTION_HANDLES,
    HighPrecision,
    Order,
    Params,
    Point,
    classify_region,
    eval_C,
    eval_f,
    eval_g,
    eval_h,
    eval_lambda,
    eval_phi,
    eval_psi,
    f_prime,
    gap,
    h_prime,
    h_second,
    order_value,
)
from subadd.errors import DomainError, InputError

TOL = 1e-12


def _sample(rng, lo=-10.0, hi=10.0):
    return rng.uniform(lo, hi)


# ---------------------------------------------------------------------------
# float64 evaluators vs frozen oracle values
# ---------------------------------------------------------------------------


def test_g_at_one_matches_frozen():
    assert ulps_apart(eval_g(1.0), float(_frozen.as_mpf(_frozen.G_AT_1))) <= 2


def test_constant_is_log_nine_eighths_bitwise():
    assert eval_C() == math.log(1.125)
    assert eval_C() == _frozen.C_FLOAT


def test_lambda_at_half_close_to_constant():
    # Different formula paths for the same real number; allow 2 ulps.
    assert ulps_apart(eval_lambda(0.5), eval_C()) <= 2


def test_lambda_at_one_matches_frozen():
    assert ulps_apart(eval_lambda(1.0), float(_frozen.as_mpf(_frozen.LAMBDA_AT_1))) <= 2


def test_phi_at_four_matches_frozen():
    assert ulps_apart(eval_phi(4.0), float(_frozen.as_mpf(_frozen.PHI_AT_4))) <= 2


def test_psi_at_quarter_matches_frozen():
    assert (
        ulps_apart(eval_psi(0.25), float(_frozen.as_mpf(_frozen.PSI_AT_QUARTER))) <= 2
    )


def test_h_at_origin_is_tiny_but_nonzero(cert_params):
    v = eval_h(0.0, cert_params)
    assert v > 0.0
    assert abs(v / float(_frozen.as_mpf(_frozen.H0_CERT)) - 1.0) < 1e-12


def test_f_prime_at_one_matches_frozen(cert_params):
    v = f_prime(1.0, cert_params)
    assert abs(v - float(_frozen.as_mpf(_frozen.F_PRIME_AT_1_CERT))) < 1e-14


def test_h_second_at_one_matches_frozen(cert_params):
    v = h_second(1.0, cert_params)
    assert abs(v / float(_frozen.as_mpf(_frozen.H_SECOND_AT_1_CERT)) - 1.0) < 1e-12


def test_h_prime_bounded_by_closed_form(cert_params):
    sup = float(_frozen.as_mpf(_frozen.HPRIME_SUP_CERT))
    assert abs(math.sqrt(2.0 / math.e) / cert_params.sigma - sup) < 1e-12
    rng = random.Random(7)
    for _ in range(5000):
        x = rng.uniform(1e-9, 10.0)
        assert abs(h_prime(x, cert_params)) <= sup * (1.0 + 1e-12)


# ---------------------------------------------------------------------------
# domains and input validation
# ---------------------------------------------------------------------------


def test_params_validation():
    with pytest.raises(InputError):
        Params(mu=-1.0, sigma=0.05, alpha=0.05)
    with pytest.raises(InputError):
        Params(mu=1.2, sigma=0.0, alpha=0.05)
    with pytest.raises(InputError):
        Params(mu=1.2, sigma=0.05, alpha=math.inf)
    with pytest.raises(InputError):
        Params(mu="wide", sigma=0.05, alpha=0.05)


def test_point_and_order_validation():
    with pytest.raises(InputError):
        Point(x=math.nan, y=0.0)
    with pytest.raises(InputError):
        Order(a=0.0)
    with pytest.raises(InputError):
        Order(a=-2.0)
    assert order_value(2) == 2.0
    assert order_value(Order(a=3.0)) == 3.0


def test_profile_domains():
    with pytest.raises(DomainError):
        eval_phi(-0.1)
    with pytest.raises(DomainError):
        eval_lambda(-0.1)
    with pytest.raises(DomainError):
        eval_psi(-0.1)
    with pytest.raises(DomainError):
        eval_psi(1.0)
    with pytest.raises(DomainError):
        f_prime(0.0, Params(1.2, 0.05, 0.05))
    with pytest.raises(DomainError):
        h_prime(-1.0, Params(1.2, 0.05, 0.05))
    with pytest.raises(DomainError):
        h_second(0.0, Params(1.2, 0.05, 0.05))


def test_gap_handle_validation(cert_params):
    with pytest.raises(InputError):
        gap(2.0, "bogus", 0.1, 0.2, cert_params)
    for handle in ("f", "h", "h-h0"):
        with pytest.raises(InputError):
            gap(2.0, handle, 0.1, 0.2, None)
    # The base profile needs no parameters.
    assert gap(2.0, "g", 0.1, 0.2) == pytest.approx(
        2.0 * eval_g(0.1) + eval_g(0.2) - eval_g(0.4), abs=1e-15
    )
    assert set(GAP_FUNCTION_HANDLES) == {"f", "g", "h", "h-h0"}


def test_gap_overflow_guard(cert_params):
    with pytest.raises(InputError):
        gap(1e308, "g", 1e308, 1e308)


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------


def test_even_symmetry_exact(cert_params):
    rng = random.Random(11)
    for _ in range(10_000):
        x = _sample(rng)
        assert eval_f(x, cert_params) == eval_f(-x, cert_params)
        assert eval_g(x) == eval_g(-x)
        assert eval_h(x, cert_params) == eval_h(-x, cert_params)


def test_normalisation_at_origin(cert_params):
    assert eval_g(0.0) == 0.0
    assert eval_f(0.0, cert_params) == 0.0
    assert gap(2.0, "f", 0.0, 0.0, cert_params) == 0.0


def test_region_cover(cert_params):
    rng = random.Random(13)
    for _ in range(100_000):
        flags = classify_region(_sample(rng), _sample(rng))
        assert flags.in_A or flags.in_B or flags.in_C


def test_region_boundaries_overlap():
    # |x| = 1/2 on the dividing line belongs to the outer region and,
    # depending on y, to one of the others.
    assert classify_region(0.5, 0.0).in_A
    assert classify_region(0.5, 0.0).in_B
    assert classify_region(0.5, 0.5).in_C
    assert classify_region(0.0, 1.0).in_B and classify_region(0.0, 1.0).in_C


def test_gap_decomposition(cert_params):
    """gap through the working function splits exactly into the base-profile
    part plus alpha times the pinned-bump part."""
    rng = random.Random(17)
    a = cert_params.alpha
    for _ in range(10_000):
        x, y = _sample(rng), _sample(rng)
        g2f = gap(2.0, "f", x, y, cert_params)
        g2g = gap(2.0, "g", x, y)
        g2p = gap(2.0, "h-h0", x, y, cert_params)
        assert abs(g2f - g2g - a * g2p) <= TOL
        # The pinned-bump gap equals the raw-bump gap minus 2 h(0).
        g2h = gap(2.0, "h", x, y, cert_params)
        h0 = eval_h(0.0, cert_params)
        assert abs(g2p - (g2h - 2.0 * h0)) <= TOL


# ---------------------------------------------------------------------------
# the inequality battery (sampled at the documented sizes)
# ---------------------------------------------------------------------------


def _pairs_in_region(rng, n, predicate):
    """n random pairs of [-10,10]^2 satisfying predicate(flags)."""
    out = []
    while len(out) < n:
        x, y = _sample(rng), _sample(rng)
        if predicate(classify_region(x, y)):
            out.append((x, y))
    return out


def test_base_profile_order1_gap_nonnegative():
    rng = random.Random(19)
    for _ in range(10_000):
        x, y = _sample(rng), _sample(rng)
        assert gap(1.0, "g", x, y) >= -TOL


def test_base_profile_order2_gap_minorised_by_lambda():
    rng = random.Random(23)
    for _ in range(10_000):
        x, y = _sample(rng), _sample(rng)
        assert gap(2.0, "g", x, y) >= eval_lambda(abs(x)) - TOL


def test_outer_region_gap_minorised_by_constant():
    rng = random.Random(29)
    C = eval_C()
    for x, y in _pairs_in_region(rng, 10_000, lambda f: f.in_A):
        assert gap(2.0, "g", x, y) >= C - TOL


def test_small_and_mixed_region_quadratic_minorant():
    rng = random.Random(31)
    for x, y in _pairs_in_region(rng, 10_000, lambda f: f.in_B or f.in_C):
        assert gap(2.0, "g", x, y) >= 0.375 * x * x - TOL


def test_mixed_region_gap_minorised_by_psi():
    rng = random.Random(37)
    for x, y in _pairs_in_region(rng, 10_000, lambda f: f.in_C):
        assert gap(2.0, "g", x, y) >= eval_psi(abs(x)) - TOL


def test_psi_two_z_claim():
    """EXPECTED FAILURE (kept on purpose; see README "Known discrepancies").

    The published chain continues "... >= 2|x| - 1e-12" after the psi
    minorant on the mixed region.  That comparative claim is false for
    every nonzero |x| <= 1/2: psi(z) = z - (3/2) z^2 + O(z^3) grows
    strictly slower than 2z (counterexample psi(0.25) = 0.1589... < 0.5),
    and with it the end-to-end bound fails too (x = 0.01, y = 1.0 gives a
    base-profile gap of about 0.00995 < 0.02 - 1e-12).  The assertion
    below states the claim exactly as published.
    """
    rng = random.Random(37)  # same sample as the psi-minorant test
    for x, y in _pairs_in_region(rng, 10_000, lambda f: f.in_C):
        assert eval_psi(abs(x)) >= 2.0 * abs(x) - TOL
        assert gap(2.0, "g", x, y) >= 2.0 * abs(x) - TOL


def test_bump_gap_globally_bounded(cert_params):
    rng = random.Random(41)
    others = (Params(2.0, 0.1, 0.117783036), Params(5.0, 0.15, 0.117783036))
    for p in (cert_params,) + others:
        for _ in range(10_000):
            x, y = _sample(rng), _sample(rng)
            v = gap(2.0, "h", x, y, p)
            assert -1.0 - TOL <= v <= 3.0 + TOL


def test_lambda_nondecreasing_on_grid():
    prev = eval_lambda(0.0)
    assert prev == 0.0
    for k in range(1, 10_000):
        cur = eval_lambda(100.0 * k / 9_999)
        assert cur >= prev - TOL
        prev = cur


# ---------------------------------------------------------------------------
# high-precision mirror
# ---------------------------------------------------------------------------


def test_high_precision_requires_128_bits():
    with pytest.raises(InputError):
        HighPrecision(64)
    with pytest.raises(InputError):
        HighPrecision(127)
    with pytest.raises(InputError):
        HighPrecision("lots")


def test_high_precision_frozen_values(cert_params):
    hp = HighPrecision(200)
    assert _frozen.close_to_frozen(hp.eval_g(1.0), _frozen.G_AT_1)
    assert _frozen.close_to_frozen(hp.eval_C(), _frozen.C_EXACT)
    assert _frozen.close_to_frozen(hp.eval_lambda(1.0), _frozen.LAMBDA_AT_1)
    assert _frozen.rel_err(hp.eval_phi(4.0), _frozen.PHI_AT_4) < 1e-22
    assert _frozen.close_to_frozen(hp.eval_psi(0.25), _frozen.PSI_AT_QUARTER)
    assert _frozen.rel_err(hp.eval_h(0.0, cert_params), _frozen.H0_CERT) < 1e-22
    assert _frozen.close_to_frozen(
        hp.f_prime(1.0, cert_params), _frozen.F_PRIME_AT_1_CERT
    )


def test_high_precision_gap_frozen_values(cert_params):
    hp = HighPrecision(200)
    assert _frozen.close_to_frozen(
        hp.gap(3.0, "f", 0.016, 1.137, cert_params), _frozen.GAP3_AT_WITNESS_CERT
    )
    assert _frozen.close_to_frozen(
        hp.gap(2.0, "f", 0.016, 1.137, cert_params), _frozen.GAP2_AT_WITNESS_CERT
    )
    assert _frozen.close_to_frozen(
        hp.gap(2.0, "f", 0.0247, 1.1366, cert_params),
        _frozen.GAP2_AT_MIXED_POINT_CERT,
    )


def test_high_precision_independent_of_extra_bits(cert_params):
    """Raising the precision changes results far below the frozen tolerance
    (i.e. 128 bits is already converged at the comparison scale)."""
    v128 = HighPrecision(128).gap(2.0, "f", 0.0247, 1.1366, cert_params)
    v300 = HighPrecision(300).gap(2.0, "f", 0.0247, 1.1366, cert_params)
    with mpmath.workprec(320):
        assert abs(mpmath.mpf(v128) - mpmath.mpf(v300)) < mpmath.mpf("1e-35")


def test_high_precision_agrees_with_float_path(cert_params):
    hp = HighPrecision(160)
    rng = random.Random(43)
    for _ in range(300):
        x, y = _sample(rng, -3.0, 3.0), _sample(rng, -3.0, 3.0)
        coarse = gap(2.0, "f", x, y, cert_params)
        fine = float(hp.gap(2.0, "f", x, y, cert_params))
        assert abs(coarse - fine) <= 1e-12 * max(1.0, abs(fine))


def test_high_precision_validates_like_float_path(cert_params):
    hp = HighPrecision(128)
    with pytest.raises(InputError):
        hp.gap(2.0, "bogus", 0.1, 0.2, cert_params)
    with pytest.raises(InputError):
        hp.gap(2.0, "f", 0.1, 0.2, None)
    with pytest.raises(DomainError):
        hp.eval_psi(1.0)
    with pytest.raises(DomainError):
        hp.eval_phi(-1.0)
    with pytest.raises(DomainError):
        hp.f_prime(-1.0, cert_params)
