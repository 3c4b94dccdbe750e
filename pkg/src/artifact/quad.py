"""Quadrature oracle: double-exponential rules and oscillatory Fourier integrals.

Integrands are vectorised callables ``f(x: ndarray) -> ndarray``. Infinite
ranges use the exp-sinh map ``x = exp(pi/2 sinh t)``; finite ranges with an
endpoint singularity use tanh-sinh. Fourier transforms of even/odd functions
are cosine/sine integrals summed over half-periods of the oscillator, with the
alternating partial sums accelerated by iterated Aitken extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, NonConvergence, ParityViolation

__all__ = [
    "Integrand",
    "QuadResult",
    "TransformValue",
    "aitken_iterated",
    "fourier_numeric",
    "integrate_interval",
    "integrate_line",
    "integrate_semi",
]

DEFAULT_TOL = 1e-10
LEVEL_CAP = 12
_MIN_LEVEL = 3
_EPS = np.finfo(float).eps
_ROUNDOFF_FACTOR = 50.0
_HALF_PI = 0.5 * math.pi

# |t| bounds keeping the mapped nodes representable (x in roughly [1e-226, 1e226])
_T_MAX_EXPSINH = 6.5
_T_MAX_TANHSINH = 6.0


@dataclass(frozen=True)
class Integrand:
    """A real function on the line plus the metadata the oracle relies on.

    ``singular_exponent`` is sigma with f ~ |x|**sigma near 0 (sigma > -1).
    ``decay`` is ``"polynomial"`` (|f| ~ |x|**-decay_rate) or
    ``"super-exponential"``.
    """

    func: Callable[[np.ndarray], np.ndarray]
    singular_exponent: float = 0.0
    decay: str = "polynomial"
    decay_rate: float | None = None

    def __post_init__(self):
        if not self.singular_exponent > -1:
            raise DomainError(f"singular exponent must exceed -1, got {self.singular_exponent}")
        if self.decay not in ("polynomial", "super-exponential"):
            raise DomainError(f"unknown decay class {self.decay!r}")

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    def tail_exponent(self, x0: float = 1e4, x1: float = 1e6) -> float:
        """Sampled log-log slope of |f| between x0 and x1 (positive = decaying)."""
        f0, f1 = abs(float(self(np.array([x0]))[0])), abs(float(self(np.array([x1]))[0]))
        if f0 == 0.0 or f1 == 0.0:
            return math.inf
        return -(math.log(f1) - math.log(f0)) / (math.log(x1) - math.log(x0))

    def check_tails(self, slack: float = 0.05) -> bool:
        """Whether the declared decay rate is consistent with sampled tails."""
        if self.decay == "super-exponential":
            return self.tail_exponent() > 20
        if self.decay_rate is None:
            return True
        return abs(self.tail_exponent() - self.decay_rate) <= slack * max(1.0, abs(self.decay_rate))

    def mirrored(self) -> "Integrand":
        f = self.func
        return Integrand(lambda x: f(-x), self.singular_exponent, self.decay, self.decay_rate)


def as_integrand(f) -> Integrand:
    return f if isinstance(f, Integrand) else Integrand(f)


@dataclass
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool
    levels: int = 0

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            self.value + other.value,
            self.abs_error_estimate + other.abs_error_estimate,
            self.evaluations + other.evaluations,
            self.converged and other.converged,
            max(self.levels, other.levels),
        )

    def scaled(self, c: float) -> "QuadResult":
        return QuadResult(c * self.value, abs(c) * self.abs_error_estimate, self.evaluations, self.converged, self.levels)


@dataclass(frozen=True)
class TransformValue:
    """Complex value of a Fourier transform at one frequency."""

    re: float
    im: float

    def __complex__(self):
        return complex(self.re, self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)


def _requested(value: float, tol: float, abs_tol: float | None) -> float:
    return max(tol * abs(value), tol if abs_tol is None else abs_tol)


# ---------------------------------------------------------------------------
# double-exponential node tables


@lru_cache(maxsize=None)
def _expsinh_level(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes new at ``level`` (all nodes for level 0): t, x, dx/dt."""
    h = 2.0 ** -level
    if level == 0:
        t = np.arange(-int(_T_MAX_EXPSINH / h), int(_T_MAX_EXPSINH / h) + 1) * h
    else:
        t = (np.arange(-int(_T_MAX_EXPSINH / h), int(_T_MAX_EXPSINH / h)) + 0.5) * (2 * h)
        t = t[np.abs(t) <= _T_MAX_EXPSINH]
    u = _HALF_PI * np.sinh(t)
    x = np.exp(u)
    w = _HALF_PI * np.cosh(t) * x
    for arr in (t, x, w):
        arr.setflags(write=False)
    return t, x, w


@lru_cache(maxsize=None)
def _tanhsinh_level(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Standard nodes on [0, 1]: t, distance to 0, distance to 1, dx/dt."""
    h = 2.0 ** -level
    if level == 0:
        t = np.arange(-int(_T_MAX_TANHSINH / h), int(_T_MAX_TANHSINH / h) + 1) * h
    else:
        t = (np.arange(-int(_T_MAX_TANHSINH / h), int(_T_MAX_TANHSINH / h)) + 0.5) * (2 * h)
        t = t[np.abs(t) <= _T_MAX_TANHSINH]
    u = _HALF_PI * np.sinh(t)
    d0 = 1.0 / (1.0 + np.exp(-2.0 * u))
    d1 = 1.0 / (1.0 + np.exp(2.0 * u))
    w = 0.5 * _HALF_PI * np.cosh(t) / np.cosh(u) ** 2
    for arr in (t, d0, d1, w):
        arr.setflags(write=False)
    return t, d0, d1, w


def _de_sum(node_fn, tol, abs_tol, level_cap, what):
    """Run level doubling on a DE rule.

    ``node_fn(level)`` returns ``(t, weighted_values)`` for nodes new at that
    level; values outside the truncation window are dropped after level 0.
    """
    t0, wf0 = node_fn(0)
    absw = np.abs(wf0)
    peak = absw.max() if absw.size else 0.0
    if not np.all(np.isfinite(wf0)):
        raise DomainError(f"{what}: integrand not finite at level-0 nodes")
    if peak == 0.0:
        return QuadResult(0.0, 0.0, len(t0), True, 0)
    keep = np.nonzero(absw > peak * _EPS * 1e-6)[0]
    t_lo = t0[max(keep[0] - 1, 0)]
    t_hi = t0[min(keep[-1] + 1, len(t0) - 1)]
    window = (t0 >= t_lo) & (t0 <= t_hi)
    total = float(np.sum(wf0[window]))
    total_abs = float(np.sum(absw[window]))
    edge = float(max(absw[t0 == t_lo].max(initial=0.0), absw[t0 == t_hi].max(initial=0.0)))
    evals = len(t0)
    h = 1.0
    estimate = h * total
    prev = None
    err = math.inf
    for level in range(1, level_cap + 1):
        t, wf = node_fn(level, t_lo, t_hi)
        if not np.all(np.isfinite(wf)):
            raise DomainError(f"{what}: integrand not finite at level-{level} nodes")
        h *= 0.5
        total += float(np.sum(wf))
        total_abs += float(np.sum(np.abs(wf)))
        evals += len(t)
        prev, estimate = estimate, h * total
        discretisation = abs(estimate - prev)
        roundoff = _ROUNDOFF_FACTOR * _EPS * h * total_abs
        err = discretisation + roundoff + h * edge
        target = _requested(estimate, tol, abs_tol)
        if level >= _MIN_LEVEL and err <= target:
            return QuadResult(float(estimate), float(err), evals, True, level)
        if level >= _MIN_LEVEL + 1 and discretisation <= roundoff and err > target:
            break  # roundoff-limited: finer levels cannot help
    res = QuadResult(float(estimate), float(err), evals, False, level)
    return res


def _finish(res: QuadResult, tol, abs_tol, strict: bool, what: str) -> QuadResult:
    if strict and not res.converged:
        raise NonConvergence(
            f"{what}: error estimate {res.abs_error_estimate:.3g} above requested "
            f"{_requested(res.value, tol, abs_tol):.3g} after {res.levels} levels",
            res,
        )
    return res


def integrate_semi(f, tol: float = DEFAULT_TOL, *, abs_tol: float | None = None,
                   level_cap: int = LEVEL_CAP, strict: bool = True) -> QuadResult:
    """Integral of ``f`` over [0, inf) by the exp-sinh rule."""
    f = as_integrand(f)

    def nodes(level, lo=-np.inf, hi=np.inf):
        t, x, w = _expsinh_level(level)
        if level:
            m = (t > lo) & (t < hi)
            t, x, w = t[m], x[m], w[m]
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            return t, w * f(x)

    res = _de_sum(nodes, tol, abs_tol, level_cap, "integrate_semi")
    return _finish(res, tol, abs_tol, strict, "integrate_semi")


def integrate_line(f, tol: float = DEFAULT_TOL, *, abs_tol: float | None = None,
                   level_cap: int = LEVEL_CAP, strict: bool = True) -> QuadResult:
    """Integral of ``f`` over the real line, split at 0 into two exp-sinh halves."""
    f = as_integrand(f)
    half_abs = 0.5 * (tol if abs_tol is None else abs_tol)
    right = integrate_semi(f, 0.5 * tol, abs_tol=half_abs, level_cap=level_cap, strict=False)
    left = integrate_semi(f.mirrored(), 0.5 * tol, abs_tol=half_abs, level_cap=level_cap, strict=False)
    res = right + left
    res.converged = res.abs_error_estimate <= _requested(res.value, tol, abs_tol)
    return _finish(res, tol, abs_tol, strict, "integrate_line")


def integrate_interval(f, a: float, b: float, tol: float = DEFAULT_TOL, *, abs_tol: float | None = None,
                       level_cap: int = LEVEL_CAP, strict: bool = True) -> QuadResult:
    """Integral over the finite interval [a, b] by tanh-sinh (endpoint singularities allowed)."""
    f = as_integrand(f)
    a, b = float(a), float(b)
    if a == b:
        return QuadResult(0.0, 0.0, 0, True, 0)
    if b < a:
        return integrate_interval(f, b, a, tol, abs_tol=abs_tol, level_cap=level_cap, strict=strict).scaled(-1.0)
    width = b - a

    def nodes(level, lo=-np.inf, hi=np.inf):
        t, d0, d1, w = _tanhsinh_level(level)
        if level:
            m = (t > lo) & (t < hi)
            t, d0, d1, w = t[m], d0[m], d1[m], w[m]
        # take each node from its nearer endpoint to keep the offset exact
        x = np.where(t < 0, a + width * d0, b - width * d1)
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            wf = width * w * f(x)
        # nodes that rounded onto an endpoint carry negligible weight; drop them
        return t, np.where((x == a) | (x == b), 0.0, wf)

    res = _de_sum(nodes, tol, abs_tol, level_cap, "integrate_interval")
    return _finish(res, tol, abs_tol, strict, "integrate_interval")


# ---------------------------------------------------------------------------
# oscillatory integrals


def aitken_iterated(seq) -> tuple[float, float]:
    """Iterated Aitken delta-squared limit of ``seq`` with a crude error estimate.

    Returns the last element of the deepest transformed row and the gap to the
    last element of the row above it.
    """
    row = [float(v) for v in seq]
    if len(row) < 3:
        last = row[-1]
        return last, abs(row[-1] - row[-2]) if len(row) > 1 else math.inf
    prev_best = row[-1]
    while len(row) >= 3:
        nxt = []
        for j in range(len(row) - 2):
            a, b, c = row[j], row[j + 1], row[j + 2]
            den = c - 2.0 * b + a
            if den == 0.0 or not math.isfinite(den):
                nxt.append(c)
            else:
                nxt.append(c - (c - b) ** 2 / den)
        prev_best, row = row[-1], nxt
    return row[-1], abs(row[-1] - prev_best)


@lru_cache(maxsize=None)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


_GL_LO, _GL_HI = 12, 24


def _panels(f: Integrand, osc, s: float, starts: np.ndarray, ends: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Integrals of osc(s x) f(x) over each [start, end] with a two-rule error estimate."""
    mid = 0.5 * (starts + ends)[:, None]
    half = 0.5 * (ends - starts)[:, None]
    out = []
    for n in (_GL_LO, _GL_HI):
        xi, wi = _gauss_legendre(n)
        x = mid + half * xi[None, :]
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            vals = f(x) * osc(s * x)
        out.append(half[:, 0] * (vals @ wi))
    hi, lo = out[1], out[0]
    if not np.all(np.isfinite(hi)):
        raise DomainError("fourier_numeric: integrand not finite on a panel")
    return hi, np.abs(hi - lo)


def _geometric_cuts(a: float, b: float) -> np.ndarray:
    """Breakpoints a = c0 < c1 < ... = b with consecutive ratio <= 2."""
    if b <= 2.0 * a:
        return np.array([a, b])
    n = int(math.ceil(math.log2(b / a)))
    return np.geomspace(a, b, n + 1)


def check_parity(f: Integrand, parity: str, rtol: float = 1e-12) -> None:
    sign = 1.0 if parity == "even" else -1.0
    x = np.geomspace(1e-3, 1e3, 13) * 1.37
    fp, fm = f(x), f(-x)
    scale = np.maximum(np.abs(fp), np.abs(fm))
    bad = np.abs(fm - sign * fp) > rtol * np.maximum(scale, 1e-300)
    if np.any(bad & (scale > 0)):
        raise ParityViolation(f"integrand is not {parity}: f(-x) != {'+' if sign > 0 else '-'}f(x)")


@dataclass
class _OscResult:
    value: float
    error: float
    evaluations: int
    panels: int


def _half_line_oscillatory(f: Integrand, parity: str, s: float, tol: float, abs_tol: float | None,
                           core: float, direct_panels: int, chunk: int, max_panels: int) -> _OscResult:
    """int_0^inf osc(s x) f(x) dx with osc = cos (even) or sin (odd), s > 0."""
    osc = np.cos if parity == "even" else np.sin
    half_period = math.pi / s
    offset = 0.5 if parity == "even" else 1.0
    # zeros of the oscillator: z_k = (k - 1 + offset) * pi / s, k >= 1
    z1 = offset * half_period

    # head: [0, z1], singular part by tanh-sinh, remainder in geometric panels
    head_end = min(z1, core)
    head = integrate_interval(lambda x: f(x) * osc(s * x), 0.0, head_end, tol * 1e-2,
                              abs_tol=None if abs_tol is None else abs_tol * 1e-2, strict=False)
    total = head.value
    error = head.abs_error_estimate
    evals = head.evaluations
    if z1 > head_end:
        cuts = _geometric_cuts(head_end, z1)
        vals, errs = _panels(f, osc, s, cuts[:-1], cuts[1:])
        total += float(np.sum(vals))
        error += float(np.sum(errs))
        evals += (len(cuts) - 1) * (_GL_LO + _GL_HI)

    def panel_block(k0: int, k1: int) -> np.ndarray:
        # half-period panels k0..k1-1; each split geometrically if wide
        nonlocal error, evals
        ks = np.arange(k0, k1, dtype=float)
        a = (ks - 1.0 + offset) * half_period
        b = a + half_period
        ratio = b / a
        if np.all(ratio <= 2.0):
            vals, errs = _panels(f, osc, s, a, b)
            error += float(np.sum(errs))
            evals += len(ks) * (_GL_LO + _GL_HI)
            return vals
        out = np.empty(len(ks))
        for i, (ai, bi) in enumerate(zip(a, b)):
            cuts = _geometric_cuts(ai, bi)
            vals, errs = _panels(f, osc, s, cuts[:-1], cuts[1:])
            out[i] = np.sum(vals)
            error += float(np.sum(errs))
            evals += (len(cuts) - 1) * (_GL_LO + _GL_HI)
        return out

    terms = panel_block(1, 1 + direct_panels)
    total += float(np.sum(terms))
    partial = [total]
    k = 1 + direct_panels
    best, best_err = total, math.inf
    history = []
    while k - 1 < max_panels:
        new = panel_block(k, k + chunk)
        k += chunk
        for v in new:
            partial.append(partial[-1] + float(v))
        seq = partial[-(2 * chunk + 1):] if len(partial) > 2 * chunk + 1 else partial
        est, gap = aitken_iterated(seq)
        est2, _ = aitken_iterated(seq[:-2])
        history.append(est)
        spread = max(abs(est - est2), gap if len(history) < 2 else abs(est - history[-2]))
        if spread < best_err:
            best, best_err = est, spread
        if spread <= _requested(est, tol, abs_tol):
            return _OscResult(est, error + spread, evals, k - 1)
    raise NonConvergence(
        f"fourier_numeric: tail acceleration stalled at s={s:g} (spread {best_err:.3g})",
        QuadResult(best, error + best_err, evals, False),
    )


def fourier_numeric(f, parity: str, s: float, tol: float = DEFAULT_TOL, *, abs_tol: float | None = None,
                    core: float = 1.0, direct_panels: int = 30, chunk: int = 12,
                    max_panels: int = 600, check: bool = True) -> TransformValue:
    """Fourier transform F(s) = int e^{-isx} f(x) dx of an even or odd ``f``.

    Even ``f`` gives ``2 int_0^inf cos(sx) f dx`` (real); odd ``f`` gives
    ``-2i int_0^inf sin(sx) f dx`` (imaginary). Conditionally convergent
    tails (f decaying slower than 1/x, or even tending to a constant) are
    summed in the Abel sense by the Aitken extrapolation.
    """
    f = as_integrand(f)
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if check:
        check_parity(f, parity)
    s = float(s)
    if s == 0.0:
        if parity == "odd":
            return TransformValue(0.0, 0.0)
        return TransformValue(integrate_line(f, tol, abs_tol=abs_tol).value, 0.0)
    sign = 1.0
    if s < 0:
        s = -s
        if parity == "odd":
            sign = -1.0
    res = _half_line_oscillatory(f, parity, s, tol, abs_tol, core, direct_panels, chunk, max_panels)
    if parity == "even":
        return TransformValue(2.0 * res.value, 0.0)
    return TransformValue(0.0, -2.0 * sign * res.value)
