"""Sharp tunneling action via the Laplace phase surface.

The hopping coefficient reduces to a Laplace-type double integral with phase

    Psi(r, t) = d(r) + (r^2 + L^2)(2t + 1)/4
                + (depth/2) ln(1 + 1/t) - L r sqrt(t(t+1)),

whose minimum over [0, a] x (0, inf) sits on the boundary r = a at

    t_a = sqrt(1/4 + s_plus) - 1/2,

with s_plus the larger root of

    (L^2 - a^2)^2 s^2 - (2 (L^2 + a^2) depth + L^2 a^2) s + depth^2 = 0.

The sharp action is S = -F(v0) + Psi(a, t_a); it decomposes as twice the
magnetic Agmon distance d(a) plus an interaction term depending only on
(a, L, depth).  The module also evaluates the four-stage reduction chain
W1..W4 of the hopping integral and the weak-field scaling that recovers
the non-magnetic action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .agmon import AgmonProfile, action_S0, action_Sa, action_Shat
from .numerics import log_integral_exp, log_bessel_i0, minimize_1d

__all__ = [
    "PsiSurface",
    "minimizer_closed_form",
    "psi_global_min",
    "sharp_action",
    "ActionReport",
    "ConsistencyError",
    "w_chain",
    "WChainResult",
    "kernel_g0_log",
    "beta_scaling",
    "nonmagnetic_action",
]


class ConsistencyError(RuntimeError):
    """Numerically violated inequality that theory guarantees."""


class PsiSurface:
    """Evaluator for Psi(r, t) on [0, a] x (0, inf)."""

    def __init__(self, profile):
        self.profile = profile
        self.well = profile.well
        self.L = profile.L

    def psi(self, r, t):
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0):
            raise ValueError("Psi requires t > 0")
        L, depth = self.L, self.well.depth
        val = (self.profile.d(r) + (r * r + L * L) * (2.0 * t + 1.0) / 4.0
               + depth / 2.0 * np.log1p(1.0 / t)
               - L * r * np.sqrt(t * (t + 1.0)))
        return float(val) if val.ndim == 0 else val

    def psi_axis_min(self):
        """Closed-form minimum over t of Psi(0, t): s = t(t+1) = depth/L^2."""
        L, depth = self.L, self.well.depth
        t0 = math.sqrt(0.25 + depth / L**2) - 0.5
        return float(self.psi(0.0, t0)), t0


def minimizer_closed_form(well, L):
    """(t_a, s_plus) from the defining quadratic; validates both necessary
    conditions (larger root, (L^2+a^2) s - depth > 0)."""
    a, depth = well.a, well.depth
    if L <= 2.0 * a:
        raise ValueError("need L > 2a")
    A2 = (L * L - a * a) ** 2
    B = 2.0 * depth * (L * L + a * a) + L * L * a * a
    disc = B * B / (4.0 * A2) - depth * depth
    if disc <= 0:
        raise ConsistencyError("minimizer discriminant not positive")
    s_plus = B / (2.0 * A2) + math.sqrt(disc) / (L * L - a * a)
    if (L * L + a * a) * s_plus - depth <= 0:
        raise ConsistencyError("necessary condition (L^2+a^2)s - depth > 0 failed")
    t_a = math.sqrt(0.25 + s_plus) - 0.5
    return t_a, s_plus


def psi_global_min(surface, n_r=400, n_t=400, t_window=(1e-3, 30.0),
                   refinements=3):
    """Brute-force grid search over [0,a] x log-spaced t, refined by
    coordinate descent; expands the t-window if the optimum hits its edge."""
    a = surface.well.a
    t_lo, t_hi = t_window
    for _ in range(6):
        rs = np.linspace(0.0, a, n_r)
        ts = np.geomspace(t_lo, t_hi, n_t)
        vals = surface.psi(rs[:, None], ts[None, :])
        k = np.unravel_index(np.argmin(vals), vals.shape)
        if 0 < k[1] < n_t - 1:
            break
        t_lo, t_hi = t_lo / 10.0, t_hi * 10.0
    else:
        raise RuntimeError("Psi minimum escaped every t-window tried")
    r_star, t_star = rs[k[0]], ts[k[1]]
    for _ in range(refinements):
        res_t = minimize_1d(lambda t: surface.psi(r_star, t),
                            t_star / 2.0, t_star * 2.0, tol=1e-12)
        t_star = res_t.argmin
        res_r = minimize_1d(lambda r: surface.psi(r, t_star),
                            max(r_star - 0.1 * a, 0.0),
                            min(r_star + 0.1 * a, a), tol=1e-12)
        r_star = res_r.argmin
    # the surface is nearly flat in r along the ridge; always offer the
    # r = a boundary candidate to the descent result
    res_b = minimize_1d(lambda t: surface.psi(a, t), t_star / 3.0,
                        t_star * 3.0, tol=1e-12)
    if res_b.value <= surface.psi(r_star, t_star):
        r_star, t_star = a, res_b.argmin
    return r_star, t_star, float(surface.psi(r_star, t_star))


@dataclass
class ActionReport:
    S: float
    t_a: float
    s_plus: float
    F: float
    psi_min: float
    D_mag: float
    interaction: float
    S_from_fg: float
    S0: float
    Sa: float
    Shat: float
    r0: float

    def corridor_ok(self):
        return self.Sa <= self.S <= self.Shat < self.S0

    def interaction_matrix_ok(self):
        return self.S < 2.0 * self.Shat


def _f_term(a, L, depth, t_a):
    return ((a * a + L * L) / 4.0 * (2.0 * t_a + 1.0)
            + depth / 2.0 * math.log(1.0 + 1.0 / t_a)
            - L * a * math.sqrt(t_a * (t_a + 1.0)))


def _g_term(a, depth):
    root = math.sqrt(a * a + 4.0 * depth)
    return a / 4.0 * root + depth / 2.0 * math.log((root + a) ** 2
                                                   / (4.0 * depth))


def sharp_action(well, L, profile=None, check_corridor=True):
    """S(v0, L) by two independent assemblies, with the action corridor.

    Assembly 1: S = -F(v0) + Psi(a, t_a).
    Assembly 2: S = f(a, L, depth) - g(a, depth) + 2 d(a), where g carries
    the same half-log convention as F (the displayed g with a full log
    coefficient is inconsistent with assembly 1 by construction).
    """
    prof = profile or AgmonProfile(well, L)
    a, depth = well.a, well.depth
    t_a, s_plus = minimizer_closed_form(well, L)
    surface = PsiSurface(prof)
    psi_min = float(surface.psi(a, t_a))
    g_term = _g_term(a, depth)
    F = g_term - prof.d_a
    S = -F + psi_min
    S_fg = _f_term(a, L, depth, t_a) - g_term + 2.0 * prof.d_a
    if abs(S - S_fg) > 1e-8 * abs(S):
        raise ConsistencyError(f"dual assemblies disagree: {S} vs {S_fg}")
    D_mag = prof.d_a
    interaction = S - 2.0 * D_mag
    S0 = action_S0(prof).value
    Sa = action_Sa(prof).value
    shat = action_Shat(prof)
    report = ActionReport(S=S, t_a=t_a, s_plus=s_plus, F=F, psi_min=psi_min,
                          D_mag=D_mag, interaction=interaction,
                          S_from_fg=S_fg, S0=S0, Sa=Sa,
                          Shat=shat.value, r0=shat.r0)
    if check_corridor and not report.corridor_ok():
        raise ConsistencyError(
            f"action corridor violated: Sa={Sa}, S={S}, Shat={shat.value}, "
            f"S0={S0} (a numerics bug: these inequalities always hold)")
    return report


def kernel_g0_log(t, curvature):
    """log of the kernel amplitude g0(t) = t^{-5/4}(t+1)^{-1/4}
    (1+1/t)^{(E1-1)/2} with E1 = sqrt(1+2 v0''(0))."""
    t = np.asarray(t, dtype=float)
    E1 = math.sqrt(1.0 + 2.0 * curvature)
    return (-1.25 * np.log(t) - 0.25 * np.log1p(t)
            + 0.5 * (E1 - 1.0) * np.log1p(1.0 / t))


@dataclass
class WChainResult:
    h: float
    eta: float
    log_W1: float
    log_W2: float
    log_W3: float
    log_W4: float
    log_W4_alt: float

    def ratios(self):
        """(W2/(W1 sqrt h), W3/W2, W4/W3) -- all should trend to 1."""
        return (math.exp(self.log_W2 - self.log_W1 - 0.5 * math.log(self.h)),
                math.exp(self.log_W3 - self.log_W2),
                math.exp(self.log_W4 - self.log_W3))


def _log_gauss_sum(log_terms, weights):
    m = np.max(log_terms)
    return m + math.log(float(np.sum(weights * np.exp(log_terms - m))))


def w_chain(config, h, eta, solution, outer, amplitude, profile,
            constants=None, n_gauss=300):
    """The truncated reduction chain W1..W4 of the hopping integral.

    All four share the r-integral over [eta, a] and a t-integral over
    [eta, inf); they differ in which ingredients are replaced by their
    asymptotic forms (u_h -> WKB profile, C_h -> C_h_asy, I0 -> its
    exponential asymptote, alpha -> its leading term).  W4 is assembled a
    second time from (m, g0, Psi, F) as a consistency check.
    """
    from .wkb import c_h_asymptotic, matching_constants

    well, L = config.well, config.L
    a = well.a
    if not 0.0 < eta < a:
        raise ValueError("need 0 < eta < a")
    consts = constants or matching_constants(well, amplitude=amplitude,
                                        d_a=profile.d_a)
    alpha = outer.alpha
    # alpha0_main / h, the leading-order exponent coefficient
    alpha_main = well.depth / (2.0 * h) \
        - 0.5 * (math.sqrt(1.0 + 2.0 * well.v0_second_deriv_at_0) - 1.0)
    log_ch_asy = c_h_asymptotic(well, h, constants=consts)
    x, wts = np.polynomial.legendre.leggauss(n_gauss)
    r_nodes = eta + 0.5 * (a - eta) * (x + 1.0)
    r_wts = 0.5 * (a - eta) * wts
    v0_abs = np.abs(well.v0(r_nodes))
    log_base = np.log(r_nodes * np.maximum(v0_abs, 1e-320))
    y_lo = math.log(eta)

    def t_integral(log_integrand):
        return np.array([log_integral_exp(log_integrand(ri), y_lo, 15.0)
                         for ri in r_nodes])

    def g_exact(ri, al):
        rho2, c = ri * ri + L * L, L * ri

        def g(y):
            t = np.exp(y)
            return (al * y - al * np.log1p(t) - rho2 * t / (2.0 * h)
                    + log_bessel_i0(c * np.sqrt(t * (t + 1.0)) / h))
        return g

    def g_asy(ri, al):
        rho2, c = ri * ri + L * L, L * ri

        def g(y):
            t = np.exp(y)
            return (-rho2 * t / (2.0 * h) + c * np.sqrt(t * (t + 1.0)) / h
                    - al * np.log1p(1.0 / t) + 0.5 * math.log(h)
                    - 0.5 * math.log(2.0 * math.pi * c)
                    - 1.25 * np.log(t) - 0.25 * np.log1p(t) + y)
        return g

    # W1: numeric u_h and calibrated C_h, exact Bessel kernel
    lt = t_integral(lambda ri: g_exact(ri, alpha))
    log_u = solution.log_u(r_nodes)
    log_W1 = math.log(2.0 * math.pi) + outer.log_C_h + _log_gauss_sum(
        log_base + log_u - (r_nodes**2 + L * L) / (4.0 * h) + lt, r_wts)
    # W2: WKB profile and C_h_asy, exact kernel
    log_wkb = amplitude.log_a0(r_nodes) - profile.d(r_nodes) / h
    log_W2 = math.log(2.0 * math.pi) + log_ch_asy + _log_gauss_sum(
        log_base + log_wkb - (r_nodes**2 + L * L) / (4.0 * h) + lt, r_wts)
    # W3: asymptotic kernel with computed alpha
    lt3 = t_integral(lambda ri: g_asy(ri, alpha))
    log_W3 = math.log(2.0 * math.pi) + log_ch_asy + _log_gauss_sum(
        log_base + log_wkb - (r_nodes**2 + L * L) / (4.0 * h) + lt3, r_wts)
    # W4: asymptotic kernel with the leading-order alpha
    lt4 = t_integral(lambda ri: g_asy(ri, alpha_main))
    log_W4 = math.log(2.0 * math.pi) + log_ch_asy + _log_gauss_sum(
        log_base + log_wkb - (r_nodes**2 + L * L) / (4.0 * h) + lt4, r_wts)
    # W4 rebuilt from (m, g0, Psi, F)
    surface = PsiSurface(profile)

    def g4(ri):
        def g(y):
            t = np.exp(y)
            return (-(surface.psi(ri, t) - consts["F"]) / h
                    + kernel_g0_log(t, well.v0_second_deriv_at_0) + y)
        return g

    lt4b = t_integral(g4)
    # the exact rewrite carries sqrt(r/L), not the bare sqrt(r) of the
    # compact display
    log_rw4 = np.log(np.sqrt(r_nodes / L) * np.maximum(v0_abs, 1e-320)) \
        + amplitude.log_a0(r_nodes)
    log_W4_alt = (math.log(2.0 * math.pi)
                  + math.log(consts["m_matched"])
                  - 0.5 * math.log(2.0 * math.pi * h)
                  + _log_gauss_sum(log_rw4 + lt4b, r_wts))
    return WChainResult(h, eta, log_W1, log_W2, log_W3, log_W4, log_W4_alt)


def nonmagnetic_action(well, L, n=20001):
    """2 int_0^{L/2} sqrt(v0 - v0_min) d rho, the b = 0 tunneling action."""
    from scipy.integrate import simpson

    a = well.a
    rs = np.linspace(0.0, a, n)
    inner = simpson(np.sqrt(np.maximum(well.v0(rs) + well.depth, 0.0)), x=rs)
    return 2.0 * float(inner) + (L - 2.0 * a) * math.sqrt(well.depth)


def beta_scaling(well, L, beta):
    """beta * S(beta^-2 v0, L): the field-strength reduction of the action.

    As beta -> 0 this approaches the non-magnetic action
    2 int_0^{L/2} sqrt(v0 - v0_min).
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    scaled = well.scaled(beta**-2)
    report = sharp_action(scaled, L)
    return beta * report.S
