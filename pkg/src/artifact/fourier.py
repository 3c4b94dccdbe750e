"""Closed-form transform kernels, the transformed function families and theorem right sides.

``A_n(x; p1..p4)`` and ``B_n(x; q1, q2)`` are finite sums of 1F2 / 0F2
series. They are evaluated exactly as written; whether they equal the true
Fourier transforms of the weighted polynomials is a question for
:mod:`artifact.verify`, not something assumed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstraintError, SingularParamError
from .quad import TransformValue
from .specfun import HyperSeries, gamma, hyp, log_abs_gamma, pochhammer, rgamma
from .sympoly import (
    BSource,
    FamilyAParams,
    FamilyBParams,
    ValidationReport,
    b_lower_param,
    family_a_hyp,
    family_b_hyp,
    parity_bit,
)

__all__ = [
    "FnASpec",
    "FnBSpec",
    "FnValue",
    "PairingParams",
    "UNTRUSTED_CANCELLATION",
    "fn_a",
    "fn_a_detail",
    "fn_b",
    "fn_b_detail",
    "i_nk",
    "r_nk",
    "theorem1_rhs",
    "theorem1_rhs_direct",
    "theorem2_rhs",
    "theorem2_rhs_direct",
    "transform_a_closed",
    "transform_a_kernel_sum",
    "transform_b_closed",
    "transform_b_kernel_sum",
    "validate_theorem1",
    "validate_theorem2",
]

UNTRUSTED_CANCELLATION = 1e8


def _times_unit(value: float, odd: bool) -> TransformValue:
    # multiply a real number by (-i)^eps, eps in {0, 1}
    return TransformValue(0.0, -value) if odd else TransformValue(value, 0.0)


@dataclass(frozen=True)
class FnASpec:
    n: int
    p1: float
    p2: float
    p3: float
    p4: float


@dataclass(frozen=True)
class FnBSpec:
    n: int
    q1: float
    q2: float
    source: BSource = "printed"


@dataclass(frozen=True)
class FnValue:
    value: float
    cancellation_ratio: float

    @property
    def trusted(self) -> bool:
        return self.cancellation_ratio <= UNTRUSTED_CANCELLATION


@dataclass(frozen=True)
class PairingParams:
    """Exponents of two weighted family-A functions and their polynomial parameters."""

    alpha: float
    beta: float
    l: float
    u: float
    c: float
    d: float
    v: float
    w: float

    @classmethod
    def theorem1(cls, alpha: float, beta: float, p: float, q: float) -> "PairingParams":
        return cls(alpha, beta, p - alpha, q - beta, p, q, p, q)

    @property
    def is_theorem1(self) -> bool:
        return self.c == self.v == self.alpha + self.l and self.d == self.w == self.beta + self.u


def i_nk(s: float, alpha: float, beta: float, n: int, k: int) -> TransformValue:
    """Term-by-term closed form of int e^{-isx} (1+x^2)^{-beta} x^{n-2k} |x|^{-2 alpha} dx."""
    up = (n + 1) // 2
    odd = n % 2 == 1
    g1 = 0.5 - alpha - k + up
    g2 = beta + alpha + k - 0.5 - up
    pref = gamma(g1) * gamma(g2) / gamma(beta)
    val, _ = hyp(HyperSeries([g1], [1.5 if odd else 0.5, 1.0 - g2]), s * s / 4.0)
    return _times_unit(pref * val * (s if odd else 1.0), odd)


def r_nk(s: float, a: float, n: int, k: int) -> TransformValue:
    """Term-by-term closed form of int e^{-isx} e^{-1/(2x^2)} x^{n-2k} |x|^{-2a} dx."""
    up = (n + 1) // 2
    odd = n % 2 == 1
    g = a + k - 0.5 - up
    pref = 2.0 ** g * gamma(g)
    val, _ = hyp(HyperSeries([], [1.5 if odd else 0.5, 1.0 - g]), s * s / 8.0)
    return _times_unit(pref * val * (s if odd else 1.0), odd)


def fn_a_detail(spec: FnASpec, x: float) -> FnValue:
    n = spec.n
    p1, p2, p3, p4 = spec.p1, spec.p2, spec.p3, spec.p4
    half, up = n // 2, (n + 1) // 2
    odd = n % 2 == 1
    total = 0.0
    biggest = 0.0
    for k in range(half + 1):
        den = pochhammer(p3 + p4 - n + 0.5, k) * pochhammer(0.5 + p1 - up, k) * math.factorial(k)
        if den == 0.0:
            raise SingularParamError(f"A_{n}: coefficient denominator vanishes at k={k} for {spec}")
        coef = pochhammer(-half, k) * pochhammer(p3 + 0.5 - up, k) * pochhammer(p1 + p2 - 0.5 - up, k) / den
        if coef == 0.0:
            continue
        series = HyperSeries([0.5 - p1 - k + up], [1.5 if odd else 0.5, -p1 - p2 - k + 1.5 + up])
        val, diag = hyp(series, x * x / 4.0)
        total += coef * val
        biggest = max(biggest, abs(coef) * diag.max_term_magnitude)
    value = total * (x if odd else 1.0)
    ratio = math.inf if total == 0.0 and biggest > 0 else (max(1.0, biggest / abs(total)) if total else 1.0)
    return FnValue(value, ratio)


def fn_a(spec: FnASpec, x: float) -> float:
    """A_n(x; p1, p2, p3, p4)."""
    return fn_a_detail(spec, x).value


def _fn_b_lower(spec: FnBSpec) -> float:
    # (q2 + (-1)^n/2) as printed, or q2 + 1/2 - n from the explicit polynomial
    return b_lower_param(spec.q2, spec.n, spec.source)


def fn_b_detail(spec: FnBSpec, x: float) -> FnValue:
    n, q1 = spec.n, spec.q1
    half, up = n // 2, (n + 1) // 2
    odd = n % 2 == 1
    lower = _fn_b_lower(spec)
    total = 0.0
    biggest = 0.0
    for k in range(half + 1):
        den = pochhammer(lower, k) * math.factorial(k)
        if den == 0.0:
            raise SingularParamError(f"B_{n}: coefficient denominator vanishes at k={k} for {spec}")
        coef = pochhammer(-half, k) * pochhammer(q1 - 0.5 - up, k) / den * 2.0 ** k
        if coef == 0.0:
            continue
        series = HyperSeries([], [1.5 if odd else 0.5, -q1 - k + 1.5 + up])
        val, diag = hyp(series, x * x / 8.0)
        total += coef * val
        biggest = max(biggest, abs(coef) * diag.max_term_magnitude)
    value = total * (x if odd else 1.0)
    ratio = math.inf if total == 0.0 and biggest > 0 else (max(1.0, biggest / abs(total)) if total else 1.0)
    return FnValue(value, ratio)


def fn_b(spec: FnBSpec, x: float) -> float:
    """B_n(x; q1, q2)."""
    return fn_b_detail(spec, x).value


def transform_a_closed(n: int, alpha: float, beta: float, c: float, d: float, s: float) -> TransformValue:
    """Closed form for the transform of |x|^{-2 alpha}(1+x^2)^{-beta} A_n^{(c,d)}(x), via A_n(s; alpha, beta, c, d)."""
    up = (n + 1) // 2
    pref = gamma(0.5 - alpha + up) * gamma(beta + alpha - 0.5 - up) / gamma(beta)
    return _times_unit(pref * fn_a(FnASpec(n, alpha, beta, c, d), s), n % 2 == 1)


def transform_a_kernel_sum(n: int, alpha: float, beta: float, c: float, d: float, s: float) -> TransformValue:
    """Same transform as the coefficient-weighted sum of the term kernels ``i_nk``."""
    poly = family_a_hyp(FamilyAParams(c, d), n)
    re = im = 0.0
    for k in range(n // 2 + 1):
        coef = poly.coefficient(n - 2 * k)
        if coef == 0.0:
            continue
        t = i_nk(s, alpha, beta, n, k)
        re += coef * t.re
        im += coef * t.im
    return TransformValue(re, im)


def transform_b_closed(n: int, a: float, b: float, s: float, source: BSource = "printed") -> TransformValue:
    """Closed form for the transform of |x|^{-2a} e^{-1/(2x^2)} B_n^{(b)}(x), via B_n(s; a, b)."""
    g = a - 0.5 - (n + 1) // 2
    pref = gamma(g) * 2.0 ** g
    return _times_unit(pref * fn_b(FnBSpec(n, a, b, source), s), n % 2 == 1)


def transform_b_kernel_sum(n: int, a: float, b: float, s: float, source: BSource = "printed") -> TransformValue:
    """Same transform as the coefficient-weighted sum of the term kernels ``r_nk``."""
    poly = family_b_hyp(FamilyBParams(b), n, source)
    re = im = 0.0
    for k in range(n // 2 + 1):
        coef = poly.coefficient(n - 2 * k)
        if coef == 0.0:
            continue
        t = r_nk(s, a, n, k)
        re += coef * t.re
        im += coef * t.im
    return TransformValue(re, im)


# ---------------------------------------------------------------------------
# theorem right-hand sides


def validate_theorem1(alpha: float, beta: float, p: float, q: float, N: int) -> ValidationReport:
    rep = ValidationReport("thm1", {"alpha": alpha, "beta": beta, "p": p, "q": q}, N)
    rep.checks["degree_bound"] = N <= p + q - 0.5
    rep.notes["degree_bound"] = f"N={N} > p+q-1/2={p + q - 0.5:g}"
    rep.checks["p_below_half"] = p < 0.5
    rep.notes["p_below_half"] = f"p={p:g} >= 1/2"
    rep.checks["2p_even"] = float(2 * p).is_integer() and int(2 * p) % 2 == 0
    rep.notes["2p_even"] = f"2p={2 * p:g} is not an even integer"
    rep.checks["q_beta_order"] = q > beta > 0
    rep.notes["q_beta_order"] = f"need q > beta > 0, got q={q:g}, beta={beta:g}"
    rep.checks["alpha_range"] = 0 < alpha < 0.5
    rep.notes["alpha_range"] = f"need 0 < alpha < 1/2, got {alpha:g}"
    rep.checks["alpha_beta_sum"] = alpha + beta > 0.5
    rep.notes["alpha_beta_sum"] = f"need alpha+beta > 1/2, got {alpha + beta:g}"
    return rep


def validate_theorem2(a: float, b: float, N: int) -> ValidationReport:
    rep = ValidationReport("thm2", {"a": a, "b": b}, N)
    rep.checks["degree_bound"] = N <= b - 0.5
    rep.notes["degree_bound"] = f"N={N} > b-1/2={b - 0.5:g}"
    rep.checks["2b_even"] = float(2 * b).is_integer() and int(2 * b) % 2 == 0
    rep.notes["2b_even"] = f"2b={2 * b:g} is not an even integer"
    rep.checks["a_range"] = 0.5 < a < b - 0.5
    rep.notes["a_range"] = f"need 1/2 < a < b-1/2, got a={a:g}"
    return rep


def _check(rep: ValidationReport, override: bool) -> None:
    if not override and not rep.ok:
        raise ConstraintError(str(rep), rep)


def _log_ratio(num_args, den_args) -> tuple[float, int]:
    """log|prod Gamma(num) / prod Gamma(den)| and sign; sign 0 when a denominator Gamma is infinite."""
    total, sign = 0.0, 1
    for z in den_args:
        if rgamma(z) == 0.0:
            return -math.inf, 0
    for z in num_args:
        lg, sg = log_abs_gamma(z)  # PoleError propagates
        total += lg
        sign *= sg
    for z in den_args:
        lg, sg = log_abs_gamma(z)
        total -= lg
        sign *= sg
    return total, sign


def theorem1_rhs(n: int, alpha: float, beta: float, p: float, q: float, m: int | None = None,
                 *, override: bool = False) -> float:
    """Right side of the finite orthogonality relation for A_n(x; alpha, beta, p, q)."""
    _check(validate_theorem1(alpha, beta, p, q, max(n, m if m is not None else n)), override)
    if m is not None and m != n:
        return 0.0
    up = (n + 1) // 2
    log_mag, sign = 0.0, 1
    for j in range(1, n + 1):
        odd = 1 - (-1) ** j
        den = (2 * j - 2 * p - 2 * q + 1) * (2 * j - 2 * p - 2 * q - 1)
        if den == 0.0:
            raise SingularParamError(f"norm product diverges at j={j} for p={p:g}, q={q:g}")
        f = (-j + odd * p) * (j - odd * p - 2 * q) / den
        if f == 0.0:
            return 0.0
        log_mag += math.log(abs(f))
        sign *= 1 if f > 0 else -1
    lg, sg = _log_ratio(
        [beta, q - beta, p + q - 0.5, 0.5 - p],
        [q, 0.5 - alpha + up, alpha + beta - 0.5 - up, alpha - p + 0.5 + up, p + q - alpha - beta - 0.5 - up],
    )
    if sg == 0:
        return 0.0
    return sign * sg * math.exp(log_mag + lg)


def theorem1_rhs_direct(n: int, alpha: float, beta: float, p: float, q: float) -> float:
    """Plain-product evaluation of the same right side (cross-check path)."""
    up = (n + 1) // 2
    prod = 1.0
    for j in range(1, n + 1):
        odd = 1 - (-1) ** j
        prod *= (-j + odd * p) * (j - odd * p - 2 * q)
        prod /= (2 * j - 2 * p - 2 * q + 1) * (2 * j - 2 * p - 2 * q - 1)
    num = gamma(beta) * gamma(q - beta) * gamma(p + q - 0.5) * gamma(0.5 - p)
    rden = (rgamma(q) * rgamma(0.5 - alpha + up) * rgamma(alpha + beta - 0.5 - up)
            * rgamma(alpha - p + 0.5 + up) * rgamma(p + q - alpha - beta - 0.5 - up))
    return prod * num * rden


def theorem2_rhs(n: int, a: float, b: float, m: int | None = None, *, override: bool = False) -> float:
    """Right side of the orthogonality relation for B_n(x; a, b).

    The Gamma factors in the denominator can sit on poles (e.g. a - 1/2 -
    floor((n+1)/2) = 0); their reciprocal is then 0 and so is the value.
    """
    _check(validate_theorem2(a, b, max(n, m if m is not None else n)), override)
    if m is not None and m != n:
        return 0.0
    up = (n + 1) // 2
    log_mag, sign = (-b + 1 + 2 * up) * math.log(2.0), 1
    for j in range(1, n + 1):
        den = (2 * j - 2 * b + 1) * (2 * j - 2 * b - 1)
        if den == 0.0:
            raise SingularParamError(f"norm product diverges at j={j} for b={b:g}")
        f = (2 * (-1) ** j * (j - b) + 2 * b) / den
        if f == 0.0:
            return 0.0
        log_mag += math.log(abs(f))
        sign *= 1 if f > 0 else -1
    lg, sg = _log_ratio([b - 0.5], [a - 0.5 - up, b - a - 0.5 - up])
    if sg == 0:
        return 0.0
    return sign * sg * math.exp(log_mag + lg)


def theorem2_rhs_direct(n: int, a: float, b: float) -> float:
    up = (n + 1) // 2
    prod = 2.0 ** (-b + 1 + 2 * up)
    for j in range(1, n + 1):
        prod *= (2 * (-1) ** j * (j - b) + 2 * b) / ((2 * j - 2 * b + 1) * (2 * j - 2 * b - 1))
    return prod * gamma(b - 0.5) * rgamma(a - 0.5 - up) * rgamma(b - a - 0.5 - up)

