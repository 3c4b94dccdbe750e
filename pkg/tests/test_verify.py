import json
import math

import numpy as np
import pytest

from artifact.errors import ConstraintError
from artifact.fourier import PairingParams, theorem1_rhs, theorem2_rhs
from artifact.sympoly import FamilyAParams, FamilyBParams, norm_sq_a, norm_sq_b
from artifact.verify import (
    DEFAULT_S_GRID,
    WeightedFunction,
    gram_fn,
    gram_weight_direct,
    parseval,
    parseval_pair,
    theorem1_functions,
    theorem1_scale,
    theorem2_functions,
    theorem2_scale,
    transform_compare,
)

SQRT_PI = math.sqrt(math.pi)


def test_weighted_function_evaluation():
    f = WeightedFunction("A", 0.25, 2.0, (0.0, 1.0))
    x = np.array([-2.0, 0.5, 3.0, 1e200])
    expected = np.abs(x[:3]) ** -0.5 * (1 + x[:3] ** 2) ** -2.0 * x[:3]
    np.testing.assert_allclose(f(x)[:3], expected, rtol=1e-14)
    assert f(x)[3] == 0.0
    g = WeightedFunction("B", 4.0, 1.0, (-0.4, 0.0, 1.0))
    assert g(0.0) == 0.0
    assert g(1.3) == pytest.approx(1.3 ** -8 * math.exp(-1 / 1.69) * (1.69 - 0.4), rel=1e-14)
    assert WeightedFunction("A", 0.0, 1.0, (2.0,))(0.0) == 2.0
    assert f.parity == "odd" and g.parity == "even"
    assert f.tail_rate == pytest.approx(0.5 + 4 - 1)


def test_weighted_function_product():
    f = WeightedFunction("A", 0.25, 2.0, (0.0, 1.0))
    g = WeightedFunction("A", -0.25, 2.0, (0.0, 1.0))
    fg = f.times(g)
    assert fg.e == 0.0 and fg.w == 4.0 and fg.coeffs == (0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        f.times(WeightedFunction("B", 1.0, 1.0, (1.0,)))


def test_gram_eq9_example():
    rep = gram_weight_direct("eq9", FamilyAParams(0, 4), 3, 1e-8)
    assert rep.ok and rep.mode == "weight-direct"
    diag = [rep.numeric[i][i] for i in range(4)]
    np.testing.assert_allclose(diag, [5 * math.pi / 16, math.pi / 16, math.pi / 20, math.pi / 4], rtol=1e-8)
    for i in range(4):
        for j in range(4):
            assert rep.numeric[i][j] == rep.numeric[j][i]
            if i != j:
                assert abs(rep.numeric[i][j]) <= 1e-8 * math.sqrt(diag[i] * diag[j])


def test_gram_eq17_example():
    rep = gram_weight_direct("eq17", FamilyBParams(4), 3, 1e-8)
    assert rep.ok
    np.testing.assert_allclose([rep.numeric[i][i] for i in range(3)],
                               [15 * SQRT_PI / 8, 3 * SQRT_PI / 4, SQRT_PI / 5], rtol=1e-8)
    assert rep.numeric[3][3] == pytest.approx(norm_sq_b(4, 3), rel=1e-8)


@pytest.mark.parametrize("a,b", [(-1.0, 3.0), (0.0, 6.5), (-2.0, 5.25)])
def test_gram_eq9_other_parameters(a, b):
    N = min(3, math.floor(a + b - 0.5))
    if N == a + b - 0.5:
        N -= 1
    rep = gram_weight_direct("eq9", FamilyAParams(a, b), N, 1e-8)
    assert rep.ok, rep.notes
    for n in range(N + 1):
        assert rep.theoretical[n][n] == norm_sq_a(a, b, n)


def test_gram_beyond_degree_bound():
    with pytest.raises(ConstraintError):
        gram_weight_direct("eq9", FamilyAParams(0, 4), 4)
    rep = gram_weight_direct("eq9", FamilyAParams(0, 4), 4, override=True)
    assert rep.status[4][4] in ("untrusted", "diverged")
    assert rep.status[0][0] == "match"
    assert not rep.ok
    assert any("degree_bound" in n or "N=4" in n for n in rep.notes)


def test_gram_bad_relation():
    with pytest.raises(ValueError):
        gram_weight_direct("eq9", FamilyBParams(4), 2)
    with pytest.raises(ValueError):
        gram_weight_direct("eq5", FamilyAParams(0, 4), 2)


def test_parseval_self_pair():
    f = WeightedFunction("A", 0.0, 2.0, (1.0,))
    rep = parseval(f, f, 1e-6)
    assert rep.left == pytest.approx(5 * math.pi / 16, rel=1e-12)
    assert rep.ok and rep.rel_dev <= 1e-6
    assert abs(rep.right_imag) <= 1e-10


def test_parseval_mixed_parity_is_zero():
    f = WeightedFunction("A", 0.0, 2.0, (1.0,))
    g = WeightedFunction("A", 0.0, 2.0, (0.0, 1.0))
    rep = parseval(f, g, 1e-6)
    assert rep.right == 0.0
    assert abs(rep.left) <= 1e-14


def test_parseval_theorem1_pairing():
    rep = parseval_pair(PairingParams.theorem1(0.25, 2.0, 0.0, 4.0), 1, 1, 1e-6)
    assert rep.left == pytest.approx(math.pi / 16, rel=1e-10)
    assert rep.ok, rep


def test_parseval_theorem2_pairing():
    rep = parseval_pair((1.5, 4.0), 0, 0, 1e-6)
    # u_0 v_0 = |x|^{-8} e^{-1/x^2}: the family-B weight at a = 4
    assert rep.left == pytest.approx(15 * SQRT_PI / 8, rel=1e-10)
    assert rep.ok, rep


def test_function_pairs():
    g, h = theorem1_functions(0.25, 2.0, 0.0, 4.0, 2, 1)
    assert (g.e, g.w, h.e, h.w) == (0.25, 2.0, -0.25, 2.0)
    assert g.coeffs == pytest.approx((-0.2, 0.0, 1.0)) and h.coeffs == (0.0, 1.0)
    u, v = theorem2_functions(1.5, 4.0, 0, 3)
    assert (u.e, v.e, u.w, v.w) == (1.5, 2.5, 0.5, 0.5)


def test_scales_compose_with_rhs():
    # diagonal: raw Parseval value (a polynomial norm) times the scale is the printed right side
    for n in range(4):
        val = norm_sq_a(0, 4, n) * theorem1_scale(0.25, 2.0, 0.0, 4.0, n, n)
        assert val.imag == 0.0
        assert val.real == pytest.approx(theorem1_rhs(n, 0.25, 2.0, 0.0, 4.0), rel=1e-12)
        valb = norm_sq_b(4, n) * theorem2_scale(1.5, 4.0, n, n)
        assert valb.real == pytest.approx(theorem2_rhs(n, 1.5, 4.0), rel=1e-12, abs=1e-300)


def test_transform_compare_cauchy():
    tc = transform_compare("A", 0, dict(alpha=0.0, beta=1.0, c=0.0, d=1.0), [0.0, 0.5, 1.0, 2.0])
    assert tc.verdict != "agree"
    assert tc.closed[2].real == pytest.approx(math.pi * math.cosh(1.0), rel=1e-12)
    assert tc.numeric[2].real == pytest.approx(math.pi * math.exp(-1.0), rel=1e-9)
    assert tc.rel_dev[0] <= 1e-9
    assert tc.verdict == "analytic-part-only"


@pytest.mark.parametrize("n", range(4))
def test_transform_compare_agrees_at_zero(n):
    tc = transform_compare("A", n, dict(alpha=0.25, beta=2.0, c=0.0, d=4.0), [0.0])
    assert tc.verdict == "agree"
    assert tc.abs_dev[0] <= 1e-9 * max(abs(tc.numeric[0]), 1.0)


def test_transform_compare_family_b_base():
    tc = transform_compare("B", 0, dict(a=1.0, b=4.0), [0.0])
    assert tc.verdict == "agree"
    assert tc.closed[0].real == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
    assert tc.numeric[0].real == pytest.approx(math.sqrt(2 * math.pi), rel=1e-9)


def test_transform_compare_verdict_invariant():
    tc = transform_compare("A", 2, dict(alpha=0.25, beta=2.0, c=0.0, d=4.0), DEFAULT_S_GRID[:5])
    if tc.verdict == "agree":
        assert max(tc.rel_dev) <= tc.tol
    assert len(list(tc.rows())) == 5
    json.dumps(tc.to_dict())


def test_transform_compare_records_errors():
    # alpha = 1/2 puts the closed form on a Gamma pole; the row records it instead of raising
    tc = transform_compare("A", 0, dict(alpha=0.5, beta=2.0, c=0.0, d=4.0), [0.5])
    assert tc.closed == [None] and tc.errors[0] and tc.verdict == "diverge"
    with pytest.raises(ValueError):
        transform_compare("C", 0, {}, [0.0])


def test_gram_fn_closed_form_report_completeness():
    rep = gram_fn("thm1", dict(alpha=0.25, beta=2.0, p=0.0, q=4.0), 3, "closed-form", S=10)
    assert rep.mode == "closed-form"
    assert len(rep.numeric) == 4 and all(len(r) == 4 for r in rep.numeric)
    assert all(st in ("match", "mismatch", "untrusted", "diverged") for row in rep.status for st in row)
    assert any("truncated" in n for n in rep.notes)
    assert sum(rep.counts().values()) == 16
    json.dumps(rep.to_dict())


def test_gram_fn_constraints():
    with pytest.raises(ConstraintError):
        gram_fn("thm1", dict(alpha=0.25, beta=2.0, p=0.0, q=4.0), 4)
    with pytest.raises(ValueError):
        gram_fn("thm3", {}, 1)
    with pytest.raises(ValueError):
        gram_fn("thm2", dict(a=1.5, b=4.0), 1, mode="fast")


@pytest.mark.slow
def test_gram_fn_numeric_matches_weight_direct():
    rep = gram_fn("thm2", dict(a=1.5, b=4.0), 1, "numeric-transform", 1e-6)
    direct = gram_weight_direct("eq17", FamilyBParams(4), 1)
    for n in range(2):
        assert rep.raw[n][n] == pytest.approx(direct.numeric[n][n], rel=1e-6)
    assert rep.ok, rep.notes
    json.dumps(rep.to_dict())


def test_report_json_nonfinite():
    rep = gram_weight_direct("eq9", FamilyAParams(0, 4), 4, override=True)
    text = json.dumps(rep.to_dict())
    assert "NaN" not in text and "Infinity" not in text
