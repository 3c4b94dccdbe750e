"""Scalar special functions: Gamma family, Pochhammer symbol and pFq series.

Gamma uses a Lanczos approximation (g = 607/128, 15 terms) with the
reflection formula below 1/2. Products of many Gamma values should go
through :func:`log_abs_gamma`, which also reports the sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "HyperSeries",
    "SeriesDiagnostics",
    "beta",
    "gamma",
    "hyp",
    "is_nonpositive_integer",
    "log_abs_gamma",
    "log_gamma",
    "pochhammer",
    "rgamma",
    "sinpi",
]

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

SERIES_TERM_CAP = 10_000
SERIES_REL_STOP = 1e-16


def is_nonpositive_integer(x: float) -> bool:
    x = float(x)
    return x <= 0.0 and x.is_integer()


def sinpi(x: float) -> float:
    """sin(pi x) with exact zeros at the integers."""
    x = float(x)
    if x.is_integer():
        return 0.0
    r = math.fmod(x, 2.0)
    if r < 0:
        r += 2.0
    # r in [0, 2); fold onto [-1/2, 1/2] where sin is well conditioned
    if r <= 0.5:
        return math.sin(math.pi * r)
    if r <= 1.5:
        return math.sin(math.pi * (1.0 - r))
    return math.sin(math.pi * (r - 2.0))


def _lanczos_sum(zm1: float) -> float:
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[k] / (zm1 + k)
    return acc


def _gamma_positive(z: float) -> float:
    # z >= 1/2
    if z.is_integer() and z <= 171:
        return float(math.factorial(int(z) - 1))
    zm1 = z - 1.0
    t = zm1 + _LANCZOS_G + 0.5
    half_pow = t ** (0.5 * (zm1 + 0.5))
    return _SQRT_2PI * half_pow * (half_pow * math.exp(-t)) * _lanczos_sum(zm1)


def gamma(z: float) -> float:
    """Gamma function for real ``z``; raises :class:`PoleError` at 0, -1, -2, ..."""
    z = float(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z:g}")
    if z >= 0.5:
        return _gamma_positive(z)
    return math.pi / (sinpi(z) * _gamma_positive(1.0 - z))


def rgamma(z: float) -> float:
    """Reciprocal Gamma, entire: returns 0 at the poles of Gamma."""
    z = float(z)
    if is_nonpositive_integer(z):
        return 0.0
    if z >= 0.5:
        return 1.0 / _gamma_positive(z)
    return sinpi(z) * _gamma_positive(1.0 - z) / math.pi


def _log_gamma_positive(z: float) -> float:
    if z.is_integer() and z <= 30:
        return math.log(math.factorial(int(z) - 1))
    if z < 0.5:
        # 1/z dominates; shift up once to stay in the accurate range
        return _log_gamma_positive(z + 1.0) - math.log(z)
    zm1 = z - 1.0
    t = zm1 + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm1 + 0.5) * math.log(t) - t + math.log(_lanczos_sum(zm1))


def log_gamma(z: float) -> float:
    """log Gamma(z) for z > 0."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"log_gamma needs z > 0, got {z!r}")
    return _log_gamma_positive(z)


def log_abs_gamma(z: float) -> tuple[float, int]:
    """Return ``(log|Gamma(z)|, sign(Gamma(z)))`` for any non-pole real z."""
    z = float(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z:g}")
    if z > 0:
        return _log_gamma_positive(z), 1
    sp = sinpi(z)
    lg = math.log(math.pi) - math.log(abs(sp)) - _log_gamma_positive(1.0 - z)
    return lg, (1 if sp > 0 else -1)


def pochhammer(r: float, k: int) -> float:
    """Rising factorial (r)_k = r (r+1) ... (r+k-1)."""
    if k < 0:
        raise DomainError("pochhammer needs k >= 0")
    out = 1.0
    for j in range(k):
        out *= r + j
    return out


def beta(l1: float, l2: float) -> float:
    """Beta integral B(l1, l2) = Gamma(l1) Gamma(l2) / Gamma(l1 + l2)."""
    if not (l1 > 0 and l2 > 0):
        raise DomainError(f"beta needs positive arguments, got ({l1!r}, {l2!r})")
    if l1 + l2 < 150:
        return gamma(l1) * gamma(l2) / gamma(l1 + l2)
    return math.exp(log_gamma(l1) + log_gamma(l2) - log_gamma(l1 + l2))


@dataclass(frozen=True)
class HyperSeries:
    """Parameter lists of a generalized hypergeometric series pFq."""

    numerator_params: tuple[float, ...] = ()
    denominator_params: tuple[float, ...] = ()

    def __init__(self, numerator_params: Sequence[float] = (), denominator_params: Sequence[float] = ()):
        object.__setattr__(self, "numerator_params", tuple(float(a) for a in numerator_params))
        object.__setattr__(self, "denominator_params", tuple(float(b) for b in denominator_params))

    @property
    def p(self) -> int:
        return len(self.numerator_params)

    @property
    def q(self) -> int:
        return len(self.denominator_params)

    @property
    def termination_index(self) -> int | None:
        """Largest k with a nonzero term when the series terminates, else None."""
        ns = [int(-a) for a in self.numerator_params if is_nonpositive_integer(a)]
        return min(ns) if ns else None

    @property
    def terminating(self) -> bool:
        return self.termination_index is not None

    def check_poles(self) -> None:
        last = self.termination_index
        for b in self.denominator_params:
            if is_nonpositive_integer(b) and (last is None or last > -b):
                raise PoleError(f"denominator parameter {b:g} hits zero before the series terminates")


@dataclass
class SeriesDiagnostics:
    terms_used: int
    max_term_magnitude: float
    cancellation_ratio: float
    trusted: bool = field(default=True)


class _Kahan:
    __slots__ = ("total", "comp")

    def __init__(self):
        self.total = 0.0
        self.comp = 0.0

    def add(self, x: float) -> None:
        y = x - self.comp
        t = self.total + y
        self.comp = (t - self.total) - y
        self.total = t


def hyp(series: HyperSeries, z: float) -> tuple[float, SeriesDiagnostics]:
    """Sum ``pFq(series; z)`` and report how much cancellation occurred."""
    z = float(z)
    series.check_poles()
    p, q = series.p, series.q
    last = series.termination_index
    if last is None:
        if p > q + 1:
            raise DomainError(f"{p}F{q} diverges for every z != 0")
        if p == q + 1 and abs(z) >= 1:
            raise DomainError(f"{p}F{q} needs |z| < 1 unless it terminates")

    acc = _Kahan()
    term = 1.0
    acc.add(term)
    max_term = 1.0
    small_run = 0
    k = 0
    cap = last if last is not None else SERIES_TERM_CAP
    while k < cap:
        num = 1.0
        for a in series.numerator_params:
            num *= a + k
        den = float(k + 1)
        for b in series.denominator_params:
            den *= b + k
        term *= num / den * z
        k += 1
        acc.add(term)
        mag = abs(term)
        if mag > max_term:
            max_term = mag
        if last is not None:
            continue
        if mag <= SERIES_REL_STOP * abs(acc.total):
            small_run += 1
            if small_run >= 2:
                break
        else:
            small_run = 0
    else:
        if last is None:
            raise ConvergenceError(f"series not converged after {SERIES_TERM_CAP} terms (z = {z:g})")

    value = acc.total
    if value != 0.0:
        ratio = max(1.0, max_term / abs(value))
    else:
        ratio = math.inf
    return value, SeriesDiagnostics(terms_used=k + 1, max_term_magnitude=max_term, cancellation_ratio=ratio)
