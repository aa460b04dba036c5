"""Self-contained numerical kernel.

Adaptive quadrature (Gauss-Kronrod via QUADPACK, with the t -> s/(1-s) map
for semi-infinite ranges), bracketed 1-D minimization with a global grid
pre-scan, the modified Bessel function I0 in linear and log form, the lowest
eigenpairs of symmetric tridiagonal matrices, and a log-stabilized evaluator
for integrals of the form int exp(g).  Everything here is pure and reentrant.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate as _si
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import minimize_scalar

__all__ = [
    "QuadratureSpec",
    "AccuracyError",
    "integrate",
    "Minimum1D",
    "minimize_1d",
    "bessel_i0",
    "log_bessel_i0",
    "symm_tridiag_lowest",
    "log_integral_exp",
]

_BESSEL_SWITCH = 20.0  # series below, log-asymptotics above


class AccuracyError(RuntimeError):
    """Requested tolerance not reached; carries the best estimate."""

    def __init__(self, msg, estimate=None, error_bound=None):
        super().__init__(msg)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 50
    transform: str = "none"  # "none" | "semi_infinite"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_depth < 10:
            raise ValueError("max_depth must be at least 10")
        if self.transform not in ("none", "semi_infinite"):
            raise ValueError(f"unknown transform {self.transform!r}")


_DEFAULT_SPEC = QuadratureSpec()


def integrate(f, lo, hi, spec=None, return_error=False):
    """Integral of f over (lo, hi); hi may be +inf.

    Semi-infinite ranges go through t = s/(1-s), which concentrates nodes
    near the finite endpoint where every integrand in this package decays.
    """
    spec = spec or _DEFAULT_SPEC
    if not np.isinf(hi) and lo >= hi:
        raise ValueError("need lo < hi")
    if np.isinf(hi) or spec.transform == "semi_infinite":
        s0 = lo / (1.0 + lo)

        def g(s):
            t = s / (1.0 - s)
            return f(t) / (1.0 - s) ** 2

        fn, a, b = g, s0, 1.0
    else:
        fn, a, b = f, lo, hi
    with warnings.catch_warnings():
        warnings.simplefilter("error", _si.IntegrationWarning)
        try:
            val, err = _si.quad(
                fn, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                limit=4 * spec.max_depth,
            )
        except _si.IntegrationWarning:
            warnings.simplefilter("ignore", _si.IntegrationWarning)
            val, err = _si.quad(
                fn, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                limit=4 * spec.max_depth,
            )
            if err > spec.abs_tol + spec.rel_tol * abs(val):
                raise AccuracyError(
                    f"quadrature did not converge (err={err:.2e})",
                    estimate=val, error_bound=err,
                ) from None
    return (val, err) if return_error else val


class Minimum1D(NamedTuple):
    argmin: float
    value: float
    bracket: float


def minimize_1d(f, lo, hi, tol=1e-8, prescan=200, assume_unimodal=False):
    """Bracketed scalar minimization (Brent) with a global grid pre-scan.

    Unless the caller asserts unimodality, a uniform pre-scan of at least
    `prescan` points picks the basin first; ties go to the smallest abscissa
    (np.argmin returns the first hit).
    """
    if lo >= hi:
        raise ValueError("need lo < hi")
    a, b = lo, hi
    if not assume_unimodal:
        xs = np.linspace(lo, hi, max(int(prescan), 200))
        vals = np.array([f(x) for x in xs])
        k = int(np.argmin(vals))
        a = xs[max(k - 1, 0)]
        b = xs[min(k + 1, len(xs) - 1)]
    res = minimize_scalar(f, bounds=(a, b), method="bounded",
                          options={"xatol": 0.25 * tol})
    # endpoint minima sit flush against the pre-scan cell edge
    candidates = [(lo, f(lo)), (float(res.x), float(res.fun)), (hi, f(hi))]
    candidates.sort(key=lambda p: (p[1], p[0]))
    x, fx = candidates[0]
    return Minimum1D(float(x), float(fx), tol)


def _i0_series(z):
    x = np.square(z) / 4.0
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(1, 200):
        term = term * x / (k * k)
        total += term
        if np.all(term <= 1e-17 * total):
            break
    return total


def _i0_asym_factor(z):
    # I0(z) ~ e^z/sqrt(2 pi z) * sum_k ((2k-1)!!)^2 / (k! (8z)^k)
    total = np.ones_like(z)
    term = np.ones_like(z)
    for k in range(1, 40):
        new = term * (2 * k - 1) ** 2 / (8.0 * k * z)
        if np.all(new >= term) and k > 2:
            break  # asymptotic series started diverging
        term = new
        total += term
        if np.all(term <= 1e-17 * total):
            break
    return total


def bessel_i0(z):
    """I0(z) for z >= 0.  Overflows past z ~ 709; use log_bessel_i0 there."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("bessel_i0 requires z >= 0")
    out = np.empty_like(z)
    small = z < _BESSEL_SWITCH
    if small.any():
        out[small] = _i0_series(z[small])
    if (~small).any():
        zl = z[~small]
        out[~small] = np.exp(zl) / np.sqrt(2 * np.pi * zl) * _i0_asym_factor(zl)
    return float(out) if out.ndim == 0 else out


def log_bessel_i0(z):
    """log I0(z) for z >= 0, stable for arbitrarily large z."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("log_bessel_i0 requires z >= 0")
    out = np.empty_like(z)
    small = z < _BESSEL_SWITCH
    if small.any():
        out[small] = np.log(_i0_series(z[small]))
    if (~small).any():
        zl = z[~small]
        out[~small] = zl - 0.5 * np.log(2 * np.pi * zl) + np.log(_i0_asym_factor(zl))
    return float(out) if out.ndim == 0 else out


def symm_tridiag_lowest(diag, offdiag, k):
    """The k algebraically smallest eigenpairs (bisection + inverse iteration)."""
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    n = len(diag)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= dim (k={k}, dim={n})")
    if len(offdiag) != n - 1:
        raise ValueError("offdiag must have length dim - 1")
    vals, vecs = eigh_tridiagonal(diag, offdiag, select="i",
                                  select_range=(0, k - 1))
    return vals, vecs


def log_integral_exp(g, lo, hi, n_scan=400, n_nodes=4001, keep=46.0):
    """log of int_lo^hi exp(g(y)) dy for a vectorized log-integrand g.

    A coarse scan locates the maximum; Simpson integrates exp(g - gmax) on
    the window where g >= gmax - keep (truncation error ~ e^-keep).
    """
    ys = np.linspace(lo, hi, n_scan)
    gs = g(ys)
    k = int(np.argmax(gs))
    gmax = gs[k]
    if not np.isfinite(gmax):
        return -np.inf
    mask = gs > gmax - keep
    y1 = ys[mask][0]
    y2 = ys[mask][-1]
    # pad one scan cell so the window edges sit below the cut
    step = ys[1] - ys[0]
    y1 = max(lo, y1 - step)
    y2 = min(hi, y2 + step)
    yy = np.linspace(y1, y2, n_nodes)
    gg = g(yy)
    gm = gg.max()
    val = _si.simpson(np.exp(gg - gm), x=yy)
    return gm + np.log(val)
