import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from artifact.errors import ConstraintError, PoleError, SingularParamError
from artifact.fourier import (
    UNTRUSTED_CANCELLATION,
    FnASpec,
    FnBSpec,
    PairingParams,
    fn_a,
    fn_a_detail,
    fn_b,
    fn_b_detail,
    i_nk,
    r_nk,
    theorem1_rhs,
    theorem1_rhs_direct,
    theorem2_rhs,
    theorem2_rhs_direct,
    transform_a_closed,
    transform_a_kernel_sum,
    transform_b_closed,
    transform_b_kernel_sum,
    validate_theorem1,
    validate_theorem2,
)

SQRT_PI = math.sqrt(math.pi)


def test_i00_at_zero_is_beta_integral():
    for alpha, beta in ((0.25, 2.0), (0.0, 1.0), (0.4, 0.7), (-1.0, 3.0)):
        expected = math.gamma(0.5 - alpha) * math.gamma(beta + alpha - 0.5) / math.gamma(beta)
        val = i_nk(0.0, alpha, beta, 0, 0)
        assert val.im == 0.0 and val.re == pytest.approx(expected, rel=1e-13)


def test_i00_cosh_collapse():
    # the printed closed form equals pi*cosh(s) at alpha=0, beta=1
    for s in (0.5, 1.0, 2.0, 3.0):
        assert i_nk(s, 0.0, 1.0, 0, 0).re == pytest.approx(math.pi * math.cosh(s), rel=1e-13)
    assert i_nk(1.0, 0.0, 1.0, 0, 0).re == pytest.approx(4.8477307862, rel=1e-10)


@pytest.mark.parametrize("n,k", [(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (4, 2)])
def test_i_nk_against_mpmath(n, k):
    alpha, beta, s = 0.25, 4.5, 1.3
    up, odd = (n + 1) // 2, n % 2
    g1 = mp.mpf(0.5) - alpha - k + up
    g2 = mp.mpf(beta) + alpha + k - 0.5 - up
    val = mp.gamma(g1) * mp.gamma(g2) / mp.gamma(beta) * mp.hyp1f2(g1, 1.5 if odd else 0.5, 1 - g2, s * s / 4)
    if odd:
        val *= s
    got = i_nk(s, alpha, beta, n, k)
    if odd:
        assert got.re == 0.0 and got.im == pytest.approx(-float(val), rel=1e-12)
    else:
        assert got.im == 0.0 and got.re == pytest.approx(float(val), rel=1e-12)


@pytest.mark.parametrize("n,k", [(0, 0), (2, 1), (4, 2), (4, 1)])
def test_i_nk_static_moment(n, k):
    # s = 0, even n: the moment int (1+x^2)^-beta x^{n-2k} |x|^-2alpha dx by brute force
    alpha, beta = 0.25, 4.0
    f = lambda x: 2 * (1 + x * x) ** -beta * x ** (n - 2 * k - 2 * alpha)
    val, _ = integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    assert i_nk(0.0, alpha, beta, n, k).re == pytest.approx(val, rel=1e-9)


def test_i_nk_pole():
    with pytest.raises(PoleError):
        i_nk(1.0, 0.5, 2.0, 0, 0)


def test_odd_kernels_are_imaginary():
    for s in np.linspace(0.1, 3, 7):
        assert i_nk(s, 0.25, 2.0, 1, 0).re == 0.0
        assert r_nk(s, 3.0, 1, 0).re == 0.0
        assert r_nk(s, 3.0, 0, 0).im == 0.0


def test_r00_examples():
    assert r_nk(0.0, 1.0, 0, 0).re == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
    # moment oracle: 2 int_0^inf x^{-2a} e^{-1/(2x^2)} dx
    a = 2.75
    val, _ = integrate.quad(lambda x: 2 * x ** (-2 * a) * math.exp(-0.5 / (x * x)) if x > 0 else 0.0,
                            0, np.inf, epsrel=1e-12, limit=200)
    assert r_nk(0.0, a, 0, 0).re == pytest.approx(val, rel=1e-9)


@pytest.mark.parametrize("n,k", [(0, 0), (1, 0), (2, 1), (3, 1)])
def test_r_nk_against_mpmath(n, k):
    a, s = 4.25, 2.1
    up, odd = (n + 1) // 2, n % 2
    g = mp.mpf(a) + k - 0.5 - up
    val = mp.power(2, g) * mp.gamma(g) * mp.hyper([], [1.5 if odd else 0.5, 1 - g], s * s / 8)
    if odd:
        val *= s
    got = complex(r_nk(s, a, n, k))
    assert (got.imag if odd else got.real) == pytest.approx(float(-val if odd else val), rel=1e-12)


def test_fn_a_examples():
    assert fn_a(FnASpec(0, 0.3, 2.0, 0.0, 4.0), 0.0) == 1.0
    for x in (0.5, 1.0, 2.5):
        assert fn_a(FnASpec(0, 0.0, 1.0, 0.0, 4.0), x) == pytest.approx(math.cosh(x), rel=1e-13)
    assert fn_a(FnASpec(0, 0.0, 1.0, 0.0, 4.0), 1.0) == pytest.approx(1.5430806348152437, rel=1e-14)
    for n in range(1, 4, 2):
        spec = FnASpec(n, 0.25, 2.0, 0.0, 4.0)
        assert fn_a(spec, 0.0) == 0.0
        for x in (0.3, 1.7):
            assert fn_a(spec, -x) == pytest.approx(-fn_a(spec, x), rel=1e-14)


def test_fn_b_examples():
    assert fn_b(FnBSpec(0, 3.25, 4.0), 0.0) == 1.0
    spec = FnBSpec(1, 1.5, 4.0)
    assert fn_b(spec, 0.0) == 0.0
    h = 1e-6
    assert (fn_b(spec, h) - fn_b(spec, -h)) / (2 * h) == pytest.approx(1.0, rel=1e-9)
    # B_1(x) = x 0F2(; 3/2, 5/2 - q1; x^2/8)
    x, q1 = 1.7, 3.25
    assert fn_b(FnBSpec(1, q1, 4.0), x) == pytest.approx(x * float(mp.hyper([], [1.5, 2.5 - q1], x * x / 8)),
                                                         rel=1e-12)
    for x in (0.4, 2.2):
        assert fn_b(FnBSpec(2, 3.25, 4.0), -x) == fn_b(FnBSpec(2, 3.25, 4.0), x)


def test_fn_b_source_toggle_changes_value():
    printed = fn_b(FnBSpec(2, 3.25, 4.0, "printed"), 1.0)
    derived = fn_b(FnBSpec(2, 3.25, 4.0, "derived"), 1.0)
    assert printed != pytest.approx(derived)


def test_cancellation_diagnostics():
    small = fn_a_detail(FnASpec(2, 0.25, 2.0, 0.0, 4.0), 0.5)
    assert small.trusted and small.cancellation_ratio >= 1.0
    assert fn_b_detail(FnBSpec(0, 3.25, 4.0), 0.5).trusted
    # the flag is a pure threshold on the recorded ratio
    for x in (5.0, 40.0, 200.0):
        d = fn_a_detail(FnASpec(3, 0.25, 2.0, 0.0, 4.0), x)
        assert math.isfinite(d.value)
        assert d.trusted == (d.cancellation_ratio <= UNTRUSTED_CANCELLATION)


def test_transform_examples():
    assert transform_a_closed(0, 0.0, 1.0, 0.0, 1.0, 1.0).re == pytest.approx(math.pi * math.cosh(1.0), rel=1e-13)
    assert transform_b_closed(0, 1.0, 4.0, 0.0).re == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
    a2 = transform_a_closed(2, 0.25, 2.0, 0.0, 4.0, 0.5)
    assert complex(a2) == pytest.approx(complex(transform_a_kernel_sum(2, 0.25, 2.0, 0.0, 4.0, 0.5)), rel=1e-10)
    b2 = transform_b_closed(2, 4.0, 4.0, 0.5)
    assert complex(b2) == pytest.approx(complex(transform_b_kernel_sum(2, 4.0, 4.0, 0.5)), rel=1e-10)


@pytest.mark.parametrize("n", range(5))
def test_transform_parity(n):
    for s in (0.3, 1.1, 2.9):
        ta = transform_a_closed(n, 0.25, 6.0, 0.0, 6.0, s)
        tb = transform_b_closed(n, 6.0, 8.0, s)
        for t in (ta, tb):
            assert (t.re == 0.0) if n % 2 else (t.im == 0.0)


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("source", ["printed", "derived"])
def test_closed_form_kernel_sum_consistency(n, source):
    for s in np.linspace(0.0, 3.0, 7):
        ca, ka = transform_a_closed(n, 0.25, 6.0, 0.0, 6.0, s), transform_a_kernel_sum(n, 0.25, 6.0, 0.0, 6.0, s)
        assert abs(complex(ca) - complex(ka)) <= 1e-10 * max(abs(ka), 1e-300)
        cb, kb = transform_b_closed(n, 6.0, 8.0, s, source), transform_b_kernel_sum(n, 6.0, 8.0, s, source)
        assert abs(complex(cb) - complex(kb)) <= 1e-10 * max(abs(kb), 1e-300)


def test_theorem1_rhs_n0():
    alpha, beta, p, q = 0.25, 2.0, 0.0, 4.0
    g = mp.gamma
    expected = (g(beta) * g(q - beta) * g(p + q - 0.5) * g(0.5 - p)
                / (g(q) * g(0.5 - alpha) * g(alpha + beta - 0.5) * g(alpha - p + 0.5) * g(p + q - alpha - beta - 0.5)))
    assert theorem1_rhs(0, alpha, beta, p, q) == pytest.approx(float(expected), rel=1e-13)


@pytest.mark.parametrize("n", range(4))
def test_theorem1_rhs_two_paths(n):
    val = theorem1_rhs(n, 0.25, 2.0, 0.0, 4.0)
    assert math.isfinite(val)
    assert val == pytest.approx(theorem1_rhs_direct(n, 0.25, 2.0, 0.0, 4.0), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.45), st.floats(1.0, 6.0), st.sampled_from([0.0, -1.0, -2.0]), st.floats(0.5, 8.0))
def test_theorem1_rhs_paths_random(alpha, beta, p, dq):
    q = beta + dq
    n = min(3, math.floor(p + q - 0.5))
    if n < 0 or alpha + beta <= 0.5:
        return
    if n == p + q - 0.5:
        # the degree bound is hit exactly: either a Gamma pole or a divergent product
        with pytest.raises((SingularParamError, PoleError)):
            theorem1_rhs(n, alpha, beta, p, q, override=True)
        return
    a = theorem1_rhs(n, alpha, beta, p, q, override=True)
    b = theorem1_rhs_direct(n, alpha, beta, p, q)
    assert a == pytest.approx(b, rel=1e-11, abs=1e-300)


def test_theorem2_rhs_examples():
    assert theorem2_rhs(0, 1.5, 4.0) == pytest.approx(15 * SQRT_PI / 64, rel=1e-14)
    assert theorem2_rhs(0, 1.5, 4.0) == pytest.approx(0.4154189, rel=1e-7)
    # j=1 factor for b=4 is +14/35
    f1 = (2 * (-1) * (1 - 4) + 8) / ((2 - 8 + 1) * (2 - 8 - 1))
    assert f1 == pytest.approx(14 / 35)
    assert math.copysign(1, theorem2_rhs(1, 2.25, 4.0)) == 1.0
    for n in range(4):
        assert theorem2_rhs(n, 2.25, 4.0) == pytest.approx(theorem2_rhs_direct(n, 2.25, 4.0), rel=1e-12)


def test_theorem2_rhs_vanishes_on_gamma_pole():
    # a - 1/2 - floor((n+1)/2) = 0 at a = 3/2, n = 1, 2
    assert theorem2_rhs(1, 1.5, 4.0) == 0.0
    assert theorem2_rhs_direct(1, 1.5, 4.0) == 0.0


def test_off_diagonal_zero():
    assert theorem1_rhs(1, 0.25, 2.0, 0.0, 4.0, m=2) == 0.0
    assert theorem2_rhs(0, 1.5, 4.0, m=3) == 0.0


def test_theorem_constraints():
    with pytest.raises(ConstraintError):
        theorem1_rhs(4, 0.25, 2.0, 0.0, 4.0)
    with pytest.raises(ConstraintError):
        theorem1_rhs(0, 0.0, 2.0, 0.0, 4.0)
    assert math.isfinite(theorem1_rhs(0, 0.1, 2.0, 0.0, 4.0, override=True))
    assert validate_theorem1(0.25, 2.0, 0.0, 4.0, 3).ok
    assert validate_theorem1(0.25, 5.0, 0.0, 4.0, 3).failed() == ["q_beta_order"]
    assert validate_theorem2(1.5, 4.0, 3).ok
    assert validate_theorem2(1.5, 4.0, 4).failed() == ["degree_bound"]
    assert validate_theorem2(3.6, 4.0, 1).failed() == ["a_range"]
    with pytest.raises(ConstraintError):
        theorem2_rhs(0, 1.5, 4.5)


def test_pairing_params():
    pp = PairingParams.theorem1(0.25, 2.0, 0.0, 4.0)
    assert (pp.l, pp.u, pp.c, pp.d) == (-0.25, 2.0, 0.0, 4.0)
    assert pp.is_theorem1
    assert not PairingParams(0.25, 2.0, 0.1, 2.0, 0.0, 4.0, 0.0, 4.0).is_theorem1
