"""Symmetric orthogonal polynomials S_n(r, s; p, q) and their two finite families.

Family A has weight |x|^{-2a} (1+x^2)^{-b}, family B has weight
|x|^{-2a} exp(-1/x^2), both on the whole real line. Coefficients come from
the explicit product formula for S_n; the hypergeometric forms are kept as
independent cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import ConstraintError, DegenerateError, SingularParamError
from .specfun import log_abs_gamma, pochhammer

__all__ = [
    "FamilyAParams",
    "FamilyBParams",
    "SymParams",
    "SymPoly",
    "ValidationReport",
    "b_lower_param",
    "cj_a",
    "cj_b",
    "coeffs_s",
    "family_a",
    "family_a_hyp",
    "family_b",
    "family_b_hyp",
    "monic",
    "norm_sq_a",
    "norm_sq_b",
    "ode_residual",
    "parity_bit",
    "validate",
    "weight_a",
    "weight_b",
]

BSource = Literal["printed", "derived"]


def parity_bit(n: int) -> int:
    """floor((n+1)/2) - floor(n/2), i.e. 1 for odd n and 0 for even n."""
    return (n + 1) // 2 - n // 2


def _even_integer(x: float) -> bool:
    return float(x).is_integer() and int(x) % 2 == 0


@dataclass(frozen=True)
class SymParams:
    p: float
    q: float
    r: float
    s: float


@dataclass(frozen=True)
class SymPoly:
    """Polynomial with coefficients c_0..c_n in ascending powers and definite parity."""

    coeffs: tuple[float, ...]
    monic: bool = False

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)
        n = len(coeffs) - 1
        for j, c in enumerate(coeffs):
            if (j - n) % 2 and c != 0.0:
                raise ValueError(f"coefficient of x^{j} must vanish for a symmetric polynomial of degree {n}")
        if self.monic and coeffs[-1] != 1.0:
            raise ValueError("monic flag set but leading coefficient is not 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def parity(self) -> int:
        return self.degree % 2

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out if out.ndim else float(out)

    def deriv(self) -> np.ndarray:
        """Coefficients of the derivative (ascending, no parity invariant)."""
        return np.array([j * c for j, c in enumerate(self.coeffs)][1:] or [0.0])

    def coefficient(self, power: int) -> float:
        return self.coeffs[power] if 0 <= power <= self.degree else 0.0


def coeffs_s(params: SymParams, n: int) -> SymPoly:
    """Coefficients of S_n(r, s; p, q) from the explicit product formula.

    The product ratio is accumulated from the innermost factor outwards, so
    no large factorials appear.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    p, q, r, s = params.p, params.q, params.r, params.s
    half = n // 2
    sgn = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
    coeffs = [0.0] * (n + 1)
    # prod_k = prod_{i=0}^{half-k-1} ratio_i, so prod_half = 1 and prod_k = prod_{k+1} * ratio_{half-k-1}
    prod = 1.0
    for k in range(half, -1, -1):
        if k < half:
            i = half - k - 1
            den = (2 * i + sgn + 2) * q + s
            if den == 0.0:
                raise SingularParamError(f"S_{n}: factor denominator vanishes at i={i} for {params}")
            prod *= ((2 * i + sgn + 2 * half) * p + r) / den
        coeffs[n - 2 * k] = math.comb(half, k) * prod
    return SymPoly(tuple(coeffs))


def monic(poly: SymPoly) -> SymPoly:
    lead = poly.coeffs[-1]
    if lead == 0.0:
        raise DegenerateError(f"leading coefficient of degree-{poly.degree} polynomial is zero")
    coeffs = [c / lead + 0.0 for c in poly.coeffs]
    coeffs[-1] = 1.0
    return SymPoly(tuple(coeffs), monic=True)


@dataclass
class ValidationReport:
    family: str
    params: dict
    N: int
    checks: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def __str__(self):
        if self.ok:
            return f"{self.family} {self.params} N={self.N}: pass"
        return f"{self.family} {self.params} N={self.N}: fail ({', '.join(self.notes[k] for k in self.failed())})"


@dataclass(frozen=True)
class FamilyAParams:
    """Weight |x|^{-2a} (1+x^2)^{-b}."""

    a: float
    b: float

    def sym(self) -> SymParams:
        return SymParams(1.0, 1.0, -2 * self.a - 2 * self.b + 2, -2 * self.a)

    @property
    def max_degree(self) -> float:
        return self.a + self.b - 0.5


@dataclass(frozen=True)
class FamilyBParams:
    """Weight |x|^{-2a} exp(-1/x^2)."""

    a: float

    def sym(self) -> SymParams:
        return SymParams(1.0, 0.0, -2 * self.a + 2, 2.0)

    @property
    def max_degree(self) -> float:
        return self.a - 0.5


def validate(params: FamilyAParams | FamilyBParams, N: int) -> ValidationReport:
    """Check the finite-orthogonality constraints for degrees up to N; never raises."""
    if isinstance(params, FamilyAParams):
        a, b = params.a, params.b
        rep = ValidationReport("A", {"a": a, "b": b}, N)
        rep.checks["degree_bound"] = N <= a + b - 0.5
        rep.notes["degree_bound"] = f"N={N} > a+b-1/2={a + b - 0.5:g}"
        rep.checks["a_below_half"] = a < 0.5
        rep.notes["a_below_half"] = f"a={a:g} >= 1/2"
        rep.checks["b_positive"] = b > 0
        rep.notes["b_positive"] = f"b={b:g} <= 0"
        rep.checks["2a_even"] = _even_integer(2 * a)
        rep.notes["2a_even"] = f"2a={2 * a:g} is not an even integer"
        return rep
    if isinstance(params, FamilyBParams):
        a = params.a
        rep = ValidationReport("B", {"a": a}, N)
        rep.checks["degree_bound"] = N <= a - 0.5
        rep.notes["degree_bound"] = f"N={N} > a-1/2={a - 0.5:g}"
        rep.checks["2a_even"] = _even_integer(2 * a)
        rep.notes["2a_even"] = f"2a={2 * a:g} is not an even integer"
        return rep
    raise TypeError(f"unknown family parameters {params!r}")


def _require(params, n: int, override: bool) -> None:
    if override:
        return
    rep = validate(params, n)
    if not rep.ok:
        raise ConstraintError(str(rep), rep)


def family_a(params: FamilyAParams, n: int, *, override: bool = False) -> SymPoly:
    """Monic A_n^{(a,b)}."""
    _require(params, n, override)
    return monic(coeffs_s(params.sym(), n))


def family_a_hyp(params: FamilyAParams, n: int) -> SymPoly:
    """Monic A_n^{(a,b)} from its terminating 2F1 in -1/x^2 (cross-check path)."""
    a, b = params.a, params.b
    half, up = n // 2, (n + 1) // 2
    num2 = a + 0.5 - up
    den = a + b - n + 0.5
    coeffs = [0.0] * (n + 1)
    for k in range(half + 1):
        d = pochhammer(den, k)
        if d == 0.0:
            raise SingularParamError(f"A_{n}: lower parameter {den:g} hits zero")
        coeffs[n - 2 * k] = pochhammer(-half, k) * pochhammer(num2, k) / (d * math.factorial(k)) * (-1) ** k
    return SymPoly(tuple(coeffs), monic=True)


def b_lower_param(a: float, n: int, source: BSource = "derived") -> float:
    """Lower 1F1 parameter for B_n^{(a)}.

    ``"printed"`` is a + (-1)^n/2 as in the published hypergeometric form;
    ``"derived"`` is a + 1/2 - n, which is what the explicit product formula
    (and the differential equation) gives.
    """
    if source == "printed":
        return a + 0.5 * (-1) ** n
    if source == "derived":
        return a + 0.5 - n
    raise ValueError(f"unknown source {source!r}")


def family_b(params: FamilyBParams, n: int, *, override: bool = False) -> SymPoly:
    """Monic B_n^{(a)}."""
    _require(params, n, override)
    return monic(coeffs_s(params.sym(), n))


def family_b_hyp(params: FamilyBParams, n: int, source: BSource = "derived") -> SymPoly:
    """x^n 1F1(-floor(n/2); lower; 1/x^2) with the lower parameter picked by ``source``."""
    half = n // 2
    lower = b_lower_param(params.a, n, source)
    coeffs = [0.0] * (n + 1)
    for k in range(half + 1):
        d = pochhammer(lower, k)
        if d == 0.0:
            raise SingularParamError(f"B_{n}: lower parameter {lower:g} hits zero")
        coeffs[n - 2 * k] = pochhammer(-half, k) / (d * math.factorial(k))
    return SymPoly(tuple(coeffs), monic=True)


def ode_residual(params: SymParams, poly: SymPoly, x):
    """Residual of x^2(px^2+q)y'' + x(rx^2+s)y' - (n(r+(n-1)p)x^2 + (1-(-1)^n)s/2) y."""
    p, q, r, s = params.p, params.q, params.r, params.s
    n = poly.degree
    c = np.array(poly.coeffs)
    d1 = np.polynomial.polynomial.polyder(c, 1)
    d2 = np.polynomial.polynomial.polyder(c, 2)
    x = np.asarray(x, dtype=float)
    y = np.polynomial.polynomial.polyval(x, c)
    y1 = np.polynomial.polynomial.polyval(x, d1)
    y2 = np.polynomial.polynomial.polyval(x, d2)
    lam = n * (r + (n - 1) * p) * x * x + parity_bit(n) * s
    res = x * x * (p * x * x + q) * y2 + x * (r * x * x + s) * y1 - lam * y
    return res if res.ndim else float(res)


def cj_a(a: float, b: float, j: int) -> float:
    odd = 1 - (-1) ** j
    den = (2 * j - 2 * a - 2 * b + 1) * (2 * j - 2 * a - 2 * b - 1)
    if den == 0:
        raise SingularParamError(f"C_{j}(a={a:g}, b={b:g}) has a vanishing denominator")
    return (j - odd * a) * (j - odd * a - 2 * b) / den


def cj_b(a: float, j: int) -> float:
    den = (2 * j - 2 * a + 1) * (2 * j - 2 * a - 1)
    if den == 0:
        raise SingularParamError(f"C_{j}(a={a:g}) has a vanishing denominator")
    return (-2 * (-1) ** j * (j - a) - 2 * a) / den


def _signed_log_product(factors: Sequence[float]) -> tuple[float, int]:
    log_mag, sign = 0.0, 1
    for f in factors:
        if f == 0.0:
            return -math.inf, 0
        log_mag += math.log(abs(f))
        if f < 0:
            sign = -sign
    return log_mag, sign


def norm_sq_a(a: float, b: float, n: int, *, override: bool = False) -> float:
    """Squared norm of A_n^{(a,b)} under |x|^{-2a}(1+x^2)^{-b}."""
    _require(FamilyAParams(a, b), n, override)
    lp, sp = _signed_log_product([-cj_a(a, b, j) for j in range(1, n + 1)])
    if sp == 0:
        return 0.0
    g1, s1 = log_abs_gamma(b + a - 0.5)
    g2, s2 = log_abs_gamma(0.5 - a)
    g3, s3 = log_abs_gamma(b)
    return sp * s1 * s2 * s3 * math.exp(lp + g1 + g2 - g3)


def norm_sq_b(a: float, n: int, *, override: bool = False) -> float:
    """Squared norm of B_n^{(a)} under |x|^{-2a} exp(-1/x^2)."""
    _require(FamilyBParams(a), n, override)
    lp, sp = _signed_log_product([-cj_b(a, j) for j in range(1, n + 1)])
    if sp == 0:
        return 0.0
    g, sg = log_abs_gamma(a - 0.5)
    return sp * sg * math.exp(lp + g)


def _log_abs(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x))


def weight_a(a: float, b: float):
    """Vectorised |x|^{-2a} (1+x^2)^{-b}."""

    def w(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            lw = -b * np.log1p(x * x)
            if a != 0:
                lw = lw - 2 * a * _log_abs(x)
            return np.exp(lw)

    return w


def weight_b(a: float, *, scale: float = 1.0):
    """Vectorised |x|^{-2a} exp(-scale/x^2); ``scale`` is 1/2 for the transformed functions."""

    def w(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            lx = _log_abs(x)
            lw = -scale * np.exp(-2 * lx) - 2 * a * lx
            return np.where(x == 0, 0.0, np.exp(lw))

    return w
