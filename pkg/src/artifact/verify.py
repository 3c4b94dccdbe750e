"""Verification harness: Gram matrices, Parseval checks and closed-form vs numeric transforms.

Everything here produces report objects rather than raising on disagreement;
a mismatch between a closed form and the quadrature oracle is a finding.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Literal, Sequence

import numpy as np

from . import fourier as fr
from .errors import ArtifactError, ConstraintError, NonConvergence
from .quad import Integrand, TransformValue, fourier_numeric, integrate_interval, integrate_line, integrate_semi
from .sympoly import (
    BSource,
    FamilyAParams,
    FamilyBParams,
    family_a,
    family_b,
    norm_sq_a,
    norm_sq_b,
    validate,
)
from .specfun import gamma, rgamma

__all__ = [
    "GramReport",
    "ParsevalReport",
    "TransformCheck",
    "WeightedFunction",
    "gram_fn",
    "gram_weight_direct",
    "parseval",
    "parseval_pair",
    "theorem1_functions",
    "theorem1_scale",
    "theorem2_functions",
    "theorem2_scale",
    "transform_compare",
]

Status = Literal["match", "mismatch", "untrusted", "diverged"]
DEFAULT_S_GRID = tuple(0.25 * k for k in range(13))
ANALYTIC_PART_TOL = 1e-3
# accuracy of the inner Fourier transforms used inside the Parseval s-integral
_INNER_TOL = 1e-11


# ---------------------------------------------------------------------------
# weighted functions


@dataclass(frozen=True)
class WeightedFunction:
    """``|x|^{-2e} (1+x^2)^{-w} P(x)`` (kind A) or ``|x|^{-2e} exp(-w/x^2) P(x)`` (kind B).

    Plain data so it pickles for process pools; ``coeffs`` ascending.
    """

    kind: Literal["A", "B"]
    e: float
    w: float
    coeffs: tuple[float, ...]
    label: str = ""

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def parity(self) -> str:
        return "even" if self.degree % 2 == 0 else "odd"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            lx = np.log(np.abs(x))
            if self.kind == "A":
                lw = -self.w * np.log1p(x * x) - 2 * self.e * lx
            else:
                lw = -self.w * np.exp(-2 * lx) - 2 * self.e * lx
            # fold x^deg into the exponent for |x| > 1 so huge nodes do not give 0 * inf
            d = self.degree
            big = np.abs(x) > 1
            lead = np.where(big, d * lx, 0.0)
            y = np.where(big, 1.0 / np.where(x == 0, 1.0, x), x)
            poly = np.where(big, np.polynomial.polynomial.polyval(y, self.coeffs[::-1]) * np.sign(x) ** d,
                            np.polynomial.polynomial.polyval(x, self.coeffs))
            out = np.exp(lw + lead) * poly
        if self.kind == "B":
            out = np.where(x == 0, 0.0, out)
        elif self.e == 0:
            out = np.where(x == 0, np.polynomial.polynomial.polyval(0.0, self.coeffs), out)
        return out

    @property
    def tail_rate(self) -> float:
        """|f| ~ |x|^{-rate} at infinity."""
        if self.kind == "A":
            return 2 * self.e + 2 * self.w - self.degree
        return 2 * self.e - self.degree

    def integrand(self) -> Integrand:
        sigma = -2 * self.e if self.kind == "A" else 0.0
        low = next((j for j, c in enumerate(self.coeffs) if c != 0.0), 0)
        return Integrand(self, singular_exponent=sigma + low, decay="polynomial",
                         decay_rate=self.tail_rate)

    def times(self, other: "WeightedFunction") -> "WeightedFunction":
        if self.kind != other.kind:
            raise ValueError("cannot multiply weighted functions of different kinds")
        coeffs = np.polynomial.polynomial.polymul(self.coeffs, other.coeffs)
        return WeightedFunction(self.kind, self.e + other.e, self.w + other.w, tuple(float(c) for c in coeffs),
                                f"({self.label})*({other.label})")

    def transform(self, s: float, tol: float = _INNER_TOL) -> TransformValue:
        return fourier_numeric(self.integrand(), self.parity, s, tol, abs_tol=tol * 1e-2, check=False)


def _poly_a(c: float, d: float, n: int) -> tuple[float, ...]:
    return family_a(FamilyAParams(c, d), n, override=True).coeffs


def _poly_b(b: float, n: int) -> tuple[float, ...]:
    return family_b(FamilyBParams(b), n, override=True).coeffs


def theorem1_functions(alpha: float, beta: float, p: float, q: float, n: int, m: int):
    """g_n = |x|^{-2 alpha}(1+x^2)^{-beta} A_n^{(p,q)}, h_m = |x|^{-2(p-alpha)}(1+x^2)^{-(q-beta)} A_m^{(p,q)}."""
    g = WeightedFunction("A", alpha, beta, _poly_a(p, q, n), f"g_{n}")
    h = WeightedFunction("A", p - alpha, q - beta, _poly_a(p, q, m), f"h_{m}")
    return g, h


def theorem2_functions(a: float, b: float, n: int, m: int):
    """u_n = |x|^{-2a} e^{-1/(2x^2)} B_n^{(b)}, v_m = |x|^{-2(b-a)} e^{-1/(2x^2)} B_m^{(b)}."""
    u = WeightedFunction("B", a, 0.5, _poly_b(b, n), f"u_{n}")
    v = WeightedFunction("B", b - a, 0.5, _poly_b(b, m), f"v_{m}")
    return u, v


# ---------------------------------------------------------------------------
# the prefactor algebra, one function per theorem
#
# Parseval gives  int g h dx = (1/2pi) int F(g) conj F(h) ds, and the closed
# transforms are F(g_n) = (-i)^{eps_n} K_n A_n(s; ...), so
#     (1/2pi) int A_n A_m ds = raw / ((-i)^{eps_n} i^{eps_m} K_n K'_m).
# 1/K is taken through rgamma so that a Gamma pole in K gives 0, matching the
# way those Gammas sit in the denominator of the theorem's right side.


def _unit_phase(n: int, m: int) -> complex:
    return ((-1j) ** (n % 2)) * ((1j) ** (m % 2))


def theorem1_scale(alpha: float, beta: float, p: float, q: float, n: int, m: int) -> complex:
    """Factor mapping the raw Parseval value onto (1/2pi) int A_n(s; alpha, beta, p, q) A_m(s; p-alpha, q-beta, p, q) ds."""
    l, u = p - alpha, q - beta
    upn, upm = (n + 1) // 2, (m + 1) // 2
    inv_k = gamma(beta) * rgamma(0.5 - alpha + upn) * rgamma(beta + alpha - 0.5 - upn)
    inv_k2 = gamma(u) * rgamma(0.5 - l + upm) * rgamma(u + l - 0.5 - upm)
    return inv_k * inv_k2 / _unit_phase(n, m)


def theorem2_scale(a: float, b: float, n: int, m: int) -> complex:
    """Factor mapping the raw Parseval value onto (1/2pi) int B_n(s; a, b) B_m(s; b-a, b) ds."""
    c = b - a
    gn = a - 0.5 - (n + 1) // 2
    gm = c - 0.5 - (m + 1) // 2
    inv = rgamma(gn) * 2.0 ** (-gn) * rgamma(gm) * 2.0 ** (-gm)
    return inv / _unit_phase(n, m)


# ---------------------------------------------------------------------------
# reports


@dataclass
class GramReport:
    relation: str
    params: dict
    N: int
    mode: str
    numeric: list[list[float]]
    theoretical: list[list[float]]
    abs_dev: list[list[float]]
    rel_dev: list[list[float]]
    status: list[list[str]]
    tol: float
    notes: list[str] = field(default_factory=list)
    raw: list[list[float]] | None = None
    raw_expected: list[list[float]] | None = None
    runtime_s: float = 0.0

    @property
    def ok(self) -> bool:
        return all(st == "match" for row in self.status for st in row)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for row in self.status:
            for st in row:
                out[st] = out.get(st, 0) + 1
        return out

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


@dataclass
class TransformCheck:
    kind: str
    n: int
    params: dict
    s_grid: list[float]
    closed: list[complex | None]
    numeric: list[complex | None]
    abs_dev: list[float | None]
    rel_dev: list[float | None]
    verdict: Literal["agree", "analytic-part-only", "diverge"]
    tol: float
    errors: list[str | None] = field(default_factory=list)

    def rows(self):
        for s, c, v, d in zip(self.s_grid, self.closed, self.numeric, self.abs_dev):
            yield s, c, v, d

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


@dataclass
class ParsevalReport:
    pair: str
    left: float
    right: float
    right_imag: float
    rel_dev: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.rel_dev <= self.tol

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    return obj


def _entry_status(value: float, expected: float, scale: float, tol: float) -> tuple[float, float, Status]:
    dev = abs(value - expected)
    rel = dev / abs(expected) if expected != 0 else dev / scale if scale > 0 else dev
    ref = abs(expected) if expected != 0 else scale
    return dev, rel, ("match" if dev <= tol * ref else "mismatch")


# ---------------------------------------------------------------------------
# Gram matrices from the polynomial weights


def _weight_direct_entry(args):
    wf, tol, scale = args
    try:
        res = integrate_line(wf.integrand(), tol, abs_tol=tol * scale)
        return res.value, None
    except NonConvergence as exc:
        return (exc.result.value if exc.result is not None else math.nan), str(exc)


def _map(fn, items, jobs: int):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def gram_weight_direct(relation: str, params: FamilyAParams | FamilyBParams, N: int, tol: float = 1e-8,
                       *, override: bool = False, jobs: int = 1) -> GramReport:
    """Gram matrix int w P_n P_m dx of a polynomial family against its own weight."""
    t0 = time.perf_counter()
    if relation == "eq9" and not isinstance(params, FamilyAParams):
        raise ValueError("eq9 needs FamilyAParams")
    if relation == "eq17" and not isinstance(params, FamilyBParams):
        raise ValueError("eq17 needs FamilyBParams")
    if relation not in ("eq9", "eq17"):
        raise ValueError(f"unknown relation {relation!r}")
    rep = validate(params, N)
    if not rep.ok and not override:
        raise ConstraintError(str(rep), rep)
    bound = params.max_degree

    if relation == "eq9":
        polys = [family_a(params, n, override=True).coeffs for n in range(N + 1)]
        base = WeightedFunction("A", params.a, params.b, (1.0,))
        norms = [norm_sq_a(params.a, params.b, n, override=True) if n <= bound else math.nan for n in range(N + 1)]
    else:
        polys = [family_b(params, n, override=True).coeffs for n in range(N + 1)]
        base = WeightedFunction("B", params.a, 1.0, (1.0,))
        norms = [norm_sq_b(params.a, n, override=True) if n <= bound else math.nan for n in range(N + 1)]

    qtol = min(tol, 1e-10) * 1e-1
    pairs = [(n, m) for n in range(N + 1) for m in range(n, N + 1)]
    items = [(WeightedFunction(base.kind, base.e, base.w,
                               tuple(np.polynomial.polynomial.polymul(polys[n], polys[m]).tolist()), f"P{n}P{m}"), qtol,
              # absolute floor relative to the diagonal scale, so vanishing entries can converge
              math.sqrt(abs(norms[n] * norms[m])) if max(n, m) <= bound else 1.0)
             for n, m in pairs]
    results = dict(zip(pairs, _map(_weight_direct_entry, items, jobs)))

    size = N + 1
    num = [[0.0] * size for _ in range(size)]
    theo = [[0.0] * size for _ in range(size)]
    adev = [[0.0] * size for _ in range(size)]
    rdev = [[0.0] * size for _ in range(size)]
    stat: list[list[str]] = [["match"] * size for _ in range(size)]
    notes = [] if rep.ok else [f"validation: {rep}"]
    for (n, m), (val, err) in results.items():
        expected = norms[n] if n == m else 0.0
        scale = math.sqrt(abs(norms[n] * norms[m])) if n <= bound and m <= bound else abs(val)
        d, r, st = _entry_status(val, expected, scale, tol)
        if max(n, m) > bound:
            st = "untrusted"
            d, r = math.nan, math.nan
        if err is not None:
            st = "diverged"
            notes.append(f"({n},{m}): {err}")
        for i, j in ((n, m), (m, n)):
            num[i][j], theo[i][j], adev[i][j], rdev[i][j], stat[i][j] = val, expected, d, r, st
    pdict = asdict(params)
    return GramReport(relation, pdict, N, "weight-direct", num, theo, adev, rdev, stat, tol, notes,
                      runtime_s=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Parseval


class _TransformCache:
    """Memoised numeric transform of one function on |s| (parity gives s < 0)."""

    def __init__(self, f: WeightedFunction, tol: float):
        self.f = f
        self.tol = tol
        self.values: dict[float, TransformValue] = {}
        self.failures = 0

    def at(self, s: float) -> TransformValue:
        a = abs(s)
        v = self.values.get(a)
        if v is None:
            try:
                v = self.f.transform(a, self.tol)
            except NonConvergence as exc:
                self.failures += 1
                if exc.result is None:
                    raise
                # best available estimate; error accounted for in the outer sum
                r = exc.result.value
                v = TransformValue(2 * r, 0.0) if self.f.parity == "even" else TransformValue(0.0, -2 * r)
            self.values[a] = v
        if s < 0 and self.f.parity == "odd":
            return TransformValue(-v.re, -v.im)
        return v


def _parseval_right(fc: _TransformCache, gc: _TransformCache, tol: float) -> tuple[complex, bool]:
    """(1/2pi) int F(f) conj F(g) ds, as a complex number.

    F(f) conj F(g) is even in s when f and g share a parity (and then real)
    and odd otherwise, so only the half line [0, inf) is integrated.
    """
    if fc.f.parity != gc.f.parity:
        return 0j, True

    def integrand(s):
        out = np.empty(len(s))
        for i, si in enumerate(np.asarray(s, dtype=float)):
            z = complex(fc.at(si)) * complex(gc.at(si)).conjugate()
            out[i] = z.real
        return out

    res = integrate_semi(Integrand(integrand), tol, abs_tol=tol * 1e-3, strict=False)
    return complex(res.value / math.pi, 0.0), res.converged


def parseval(f: WeightedFunction, g: WeightedFunction, tol: float = 1e-8, pair: str | None = None) -> ParsevalReport:
    """Compare int f g dx with (1/2pi) int F(f) conj F(g) ds (numeric transforms on both sides)."""
    left = integrate_line(f.times(g).integrand(), min(tol, 1e-10) * 1e-2).value
    fc, gc = _TransformCache(f, _INNER_TOL), _TransformCache(g, _INNER_TOL)
    right, _ = _parseval_right(fc, gc, tol * 1e-2)
    rv, ri = right.real, right.imag
    scale = abs(left) if left != 0 else 1.0
    return ParsevalReport(pair or f"{f.label}, {g.label}", left, rv, ri, abs(rv - left) / scale, tol)


def parseval_pair(pairing: fr.PairingParams | tuple[float, float], n: int, m: int, tol: float = 1e-6) -> ParsevalReport:
    """Parseval check for a family-A pairing (``PairingParams``) or a family-B pair ``(a, b)``."""
    if isinstance(pairing, fr.PairingParams):
        g = WeightedFunction("A", pairing.alpha, pairing.beta, _poly_a(pairing.c, pairing.d, n), f"g_{n}")
        h = WeightedFunction("A", pairing.l, pairing.u, _poly_a(pairing.v, pairing.w, m), f"h_{m}")
        label = (f"A pair alpha={pairing.alpha:g} beta={pairing.beta:g} l={pairing.l:g} u={pairing.u:g} "
                 f"(c,d)=({pairing.c:g},{pairing.d:g}) (v,w)=({pairing.v:g},{pairing.w:g}) n={n} m={m}")
    else:
        a, b = pairing
        g, h = theorem2_functions(a, b, n, m)
        label = f"B pair a={a:g} c={b - a:g} b={b:g} n={n} m={m}"
    return parseval(g, h, tol, label)


# ---------------------------------------------------------------------------
# transform comparison


def _closed_and_numeric(kind, n, params, s):
    if kind == "A":
        alpha, beta, c, d = params["alpha"], params["beta"], params["c"], params["d"]
        closed = fr.transform_a_closed(n, alpha, beta, c, d, s)
        f = WeightedFunction("A", alpha, beta, _poly_a(c, d, n))
    else:
        a, b = params["a"], params["b"]
        closed = fr.transform_b_closed(n, a, b, s, params.get("source", "printed"))
        f = WeightedFunction("B", a, 0.5, _poly_b(b, n))
    return closed, f


def transform_compare(kind: str, n: int, params: dict, s_grid: Sequence[float] = DEFAULT_S_GRID,
                      tol: float = 1e-8) -> TransformCheck:
    """Printed closed-form transform against the quadrature oracle on an s-grid."""
    if kind not in ("A", "B"):
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    closed_vals, numeric_vals, adev, rdev, errors = [], [], [], [], []
    for s in s_grid:
        err = None
        cv = nv = None
        try:
            c, f = _closed_and_numeric(kind, n, params, s)
            cv = complex(c)
        except (ArtifactError, ValueError, OverflowError) as exc:
            err = f"closed: {exc}"
            f = None
        if f is None:
            f = (WeightedFunction("A", params["alpha"], params["beta"], _poly_a(params["c"], params["d"], n))
                 if kind == "A" else WeightedFunction("B", params["a"], 0.5, _poly_b(params["b"], n)))
        try:
            nv = complex(f.transform(s, 1e-10))
        except ArtifactError as exc:
            err = (err + "; " if err else "") + f"numeric: {exc}"
        closed_vals.append(cv)
        numeric_vals.append(nv)
        errors.append(err)
        if cv is not None and nv is not None:
            d = abs(cv - nv)
            adev.append(d)
            rdev.append(d / abs(nv) if nv != 0 else (0.0 if d == 0 else math.inf))
        else:
            adev.append(None)
            rdev.append(None)

    rel = [r for r in rdev if r is not None]
    if rel and len(rel) == len(rdev) and max(rel) <= tol:
        verdict = "agree"
    else:
        order = sorted((abs(s), r) for s, r in zip(s_grid, rdev) if r is not None)
        grows = len(order) >= 2 and order[-1][1] > order[0][1]
        verdict = "analytic-part-only" if order and order[0][1] <= ANALYTIC_PART_TOL and grows else "diverge"
    return TransformCheck(kind, n, dict(params), [float(s) for s in s_grid], closed_vals, numeric_vals,
                          adev, rdev, verdict, tol, errors)


# ---------------------------------------------------------------------------
# Gram matrices for the transformed function families


_WORKER_CACHES: dict[tuple, _TransformCache] = {}


def _cache_for(f: WeightedFunction) -> _TransformCache:
    key = (f.kind, f.e, f.w, f.coeffs)
    c = _WORKER_CACHES.get(key)
    if c is None:
        c = _WORKER_CACHES[key] = _TransformCache(f, _INNER_TOL)
    return c


def _numeric_entry(args):
    theorem, params, n, m, tol = args
    if theorem == "thm1":
        g, h = theorem1_functions(params["alpha"], params["beta"], params["p"], params["q"], n, m)
        scale = theorem1_scale(params["alpha"], params["beta"], params["p"], params["q"], n, m)
    else:
        g, h = theorem2_functions(params["a"], params["b"], n, m)
        scale = theorem2_scale(params["a"], params["b"], n, m)
    fc, gc = _cache_for(g), _cache_for(h)
    try:
        raw, ok = _parseval_right(fc, gc, tol)
    except ArtifactError as exc:
        return None, None, str(exc)
    err = None if ok and fc.failures == 0 and gc.failures == 0 else "s-integral or inner transform not converged"
    return raw, scale, err


def _closed_entry(args):
    theorem, params, n, m, tol, S = args
    if theorem == "thm1":
        a, b, p, q = params["alpha"], params["beta"], params["p"], params["q"]
        f1, f2 = fr.FnASpec(n, a, b, p, q), fr.FnASpec(m, p - a, q - b, p, q)
        ev = fr.fn_a
    else:
        a, b = params["a"], params["b"]
        f1, f2 = fr.FnBSpec(n, a, b, params.get("source", "printed")), fr.FnBSpec(m, b - a, b, params.get("source", "printed"))
        ev = fr.fn_b
    try:
        def integrand(s):
            return np.array([ev(f1, x) * ev(f2, x) for x in np.asarray(s, dtype=float)])

        probes = np.array([S / 4, S / 2, S])
        mags = np.abs(integrand(probes))
        grows = bool(mags[2] > mags[1] > mags[0] and mags[2] > 1.0)
        res = integrate_interval(integrand, -S, S, tol, abs_tol=tol, strict=False)
        return res.value / (2 * math.pi), grows, None if res.converged else "truncated integral not converged"
    except ArtifactError as exc:
        return None, True, str(exc)


def gram_fn(theorem: str, params: dict, N: int, mode: str = "numeric-transform", tol: float = 1e-6,
            *, S: float = 10.0, override: bool = False, jobs: int = 1) -> GramReport:
    """Gram matrix of the transformed families against the theorem's right side.

    ``numeric-transform``: Parseval with oracle transforms of the explicit
    weighted polynomials, rescaled by :func:`theorem1_scale` /
    :func:`theorem2_scale`. Entries are also compared, unscaled, with the
    polynomial norms they must equal. ``closed-form``: the printed functions
    integrated over ``[-S, S]``.
    """
    t0 = time.perf_counter()
    if theorem == "thm1":
        a, b, p, q = params["alpha"], params["beta"], params["p"], params["q"]
        rep = fr.validate_theorem1(a, b, p, q, N)

        def rhs(n):
            return fr.theorem1_rhs(n, a, b, p, q, override=True)

        def raw_norm(n):
            return norm_sq_a(p, q, n, override=True)
        bound = p + q - 0.5
    elif theorem == "thm2":
        a, b = params["a"], params["b"]
        rep = fr.validate_theorem2(a, b, N)

        def rhs(n):
            return fr.theorem2_rhs(n, a, b, override=True)

        def raw_norm(n):
            return norm_sq_b(b, n, override=True)
        bound = b - 0.5
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    if mode not in ("numeric-transform", "closed-form"):
        raise ValueError(f"unknown mode {mode!r}")
    if not rep.ok and not override:
        raise ConstraintError(str(rep), rep)

    size = N + 1
    notes = [] if rep.ok else [f"validation: {rep}"]
    expected = [rhs(n) for n in range(size)]
    num = [[0.0] * size for _ in range(size)]
    theo = [[expected[n] if n == m else 0.0 for m in range(size)] for n in range(size)]
    adev = [[0.0] * size for _ in range(size)]
    rdev = [[0.0] * size for _ in range(size)]
    stat: list[list[str]] = [["match"] * size for _ in range(size)]
    raw_mat = raw_exp = None
    pairs = [(n, m) for n in range(size) for m in range(size)]
    diag_scale = [abs(e) for e in expected]

    def scale_of(n, m):
        s = math.sqrt(diag_scale[n] * diag_scale[m])
        return s if s > 0 else max(max(diag_scale), 1e-300)

    if mode == "numeric-transform":
        raw_mat = [[0.0] * size for _ in range(size)]
        norms = [raw_norm(n) for n in range(size)]
        raw_exp = [[norms[n] if n == m else 0.0 for m in range(size)] for n in range(size)]
        qtol = min(tol, 1e-6) * 1e-2
        results = _map(_numeric_entry, [(theorem, dict(params), n, m, qtol) for n, m in pairs], jobs)
        for (n, m), (raw, scale, err) in zip(pairs, results):
            if raw is None:
                num[n][m], stat[n][m], adev[n][m], rdev[n][m] = math.nan, "diverged", math.nan, math.nan
                notes.append(f"({n},{m}): {err}")
                continue
            raw_real = raw.real
            raw_mat[n][m] = raw_real
            val = (raw * scale).real
            num[n][m] = val
            d, r, st = _entry_status(val, theo[n][m], scale_of(n, m), tol)
            rscale = math.sqrt(abs(norms[n] * norms[m]))
            _, _, st_raw = _entry_status(raw_real, raw_exp[n][m], rscale, tol)
            if st_raw != "match":
                st = "mismatch"
                notes.append(f"({n},{m}): raw Parseval value {raw_real:.12g} vs polynomial norm {raw_exp[n][m]:.12g}")
            if max(n, m) > bound:
                st = "untrusted"
            if err is not None:
                st = "diverged"
                notes.append(f"({n},{m}): {err}")
            adev[n][m], rdev[n][m], stat[n][m] = d, r, st
        if size > 1:
            notes.append("entries with n - m odd vanish by parity of the transform product (not integrated)")
        for n in range(size):
            if expected[n] == 0.0:
                notes.append(f"({n},{n}): right side vanishes (Gamma pole in its denominator); "
                             "the entry is checked through the raw Parseval value")
    else:
        results = _map(_closed_entry, [(theorem, dict(params), n, m, tol, S) for n, m in pairs], jobs)
        notes.append(f"closed-form integrals truncated to [-{S:g}, {S:g}]")
        for (n, m), (val, grows, err) in zip(pairs, results):
            if val is None:
                num[n][m], stat[n][m], adev[n][m], rdev[n][m] = math.nan, "diverged", math.nan, math.nan
                notes.append(f"({n},{m}): {err}")
                continue
            num[n][m] = val
            d, r, st = _entry_status(val, theo[n][m], scale_of(n, m), tol)
            if grows:
                st = "diverged"
            elif err is not None:
                st = "untrusted"
                notes.append(f"({n},{m}): {err}")
            adev[n][m], rdev[n][m], stat[n][m] = d, r, st
        grown = sum(st == "diverged" for row in stat for st in row)
        if grown:
            notes.append(f"{grown} entries have integrands growing with |s| (marked diverged)")
    return GramReport(theorem, dict(params), N, mode, num, theo, adev, rdev, stat, tol, notes,
                      raw=raw_mat, raw_expected=raw_exp, runtime_s=time.perf_counter() - t0)
