"""Fourier-space propagator machinery for the tomographic evolution.

Fourier transforming the tomogram over X (conjugate variable k) turns the
kinetic equation into a first-order transport equation in (mu, nu) with a
quadratic damping form.  Its generator is encoded in a symmetric 4x4
matrix Gamma over the vector (p_mu, p_nu, mu, nu), and the propagator is
assembled from four 2x2 matrices Lambda_1..Lambda_4 obeying the linear
system

    dL1/dt = L1 Gxp - L2 Gpp        dL3/dt = L3 Gxp - L4 Gpp
    dL2/dt = L1 Gxx - L2 Gpx        dL4/dt = L3 Gxx - L4 Gpx

with L1 = L4 = identity, L2 = L3 = 0 at t = 0.  For this Gamma the system
solves in closed form:

    L1 = R(t) exp(-kappa t),   L4 = R(t) exp(+kappa t),   L3 = 0,
    L2 = -i k^2 L1 J(t),       J(t) = int_0^t e^{2 kappa s} R(-s) W R(s) ds,

where R is the 2x2 rotation matrix and W = [[|v|^2, -r], [-r, |u|^2]].
J(t) is elementary (exponentially weighted trig integrals) and is regular
at kappa = 0, so no singular constants ever appear.

Applied to a Gaussian tomogram the propagator acts by the substitution
(mu', nu') = L1^{-T} (mu, nu) plus the quadratic L2 phase, which is a pure
covariance update:

    S(t) = L1^{-1} S0 L1^{-T} + (2i/k^2) L1^{-1} L2,
    (lam, delta)(t) = L1^{-1} (lam0, delta0),

with S = [[C, E/2], [E/2, D]].  This reproduces the closed-form
coefficients of :mod:`tomodyn.dynamics` exactly and serves as the
independent cross-route for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DampingParams, GaussianTomogram
from .errors import InvariantViolation, ValidationError

_MAX_ODE_STEP = 0.01

# Residual imaginary parts above this are treated as bugs, not truncated.
_IMAG_TOL = 1e-12


@dataclass(frozen=True)
class GammaMatrix:
    """Generator matrix at Fourier variable k, block order (p_mu, p_nu, mu, nu)."""

    k: float
    entries: np.ndarray  # 4x4 complex

    @property
    def pp(self) -> np.ndarray:
        return self.entries[:2, :2]

    @property
    def px(self) -> np.ndarray:
        return self.entries[:2, 2:]

    @property
    def xp(self) -> np.ndarray:
        return self.entries[2:, :2]

    @property
    def xx(self) -> np.ndarray:
        return self.entries[2:, 2:]


def _damping_form(p: DampingParams) -> np.ndarray:
    u2 = abs(p.u) ** 2
    v2 = abs(p.v) ** 2
    return np.array([[v2, -p.r], [-p.r, u2]])


def gamma_matrix(p: DampingParams, k: float) -> GammaMatrix:
    """Symmetric 4x4 generator; pp block zero, xx block imaginary and ~ k^2."""
    if not math.isfinite(k):
        raise ValidationError(f"k must be finite, got {k!r}")
    ka = p.kappa
    g = np.zeros((4, 4), dtype=complex)
    px = np.array([[-ka, 1.0], [-1.0, -ka]])
    g[:2, 2:] = px
    g[2:, :2] = px.T
    g[2:, 2:] = -1j * k * k * _damping_form(p)
    return GammaMatrix(k=float(k), entries=g)


@dataclass(frozen=True)
class LambdaSet:
    """The four 2x2 propagator blocks at given (k, t)."""

    t: float
    k: float
    L1: np.ndarray
    L2: np.ndarray
    L3: np.ndarray
    L4: np.ndarray


def _rotation(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def lambda_closed_form(p: DampingParams, k: float, t: float) -> LambdaSet:
    """Exact solution of the Lambda system for this generator.

    The weighted integral J(t) is expanded over the identity and the two
    traceless symmetric matrices P = diag(1, -1), Q = antidiag(1, 1),
    which rotate at angular rate 2 under conjugation by R(s).
    """
    if t < 0:
        raise ValidationError(f"t must be nonnegative, got {t}")
    ka = p.kappa
    R = _rotation(t)
    L1 = R * math.exp(-ka * t)
    L4 = R * math.exp(ka * t)

    if abs(ka) > 1e-12:
        f0 = math.expm1(2.0 * ka * t) / (2.0 * ka)
    else:
        f0 = t
    den = 2.0 * (ka * ka + 1.0)
    ex = math.exp(2.0 * ka * t)
    c2t, s2t = math.cos(2.0 * t), math.sin(2.0 * t)
    fc = (ex * (ka * c2t + s2t) - ka) / den
    fs = (ex * (ka * s2t - c2t) + 1.0) / den

    beta = -p.m / 2.0
    gamma = -p.r
    P = np.diag([1.0, -1.0])
    Q = np.array([[0.0, 1.0], [1.0, 0.0]])
    J = (
        0.5 * p.s * f0 * np.eye(2)
        + (beta * fc + gamma * fs) * P
        + (gamma * fc - beta * fs) * Q
    )
    L2 = -1j * k * k * (L1 @ J)
    return LambdaSet(
        t=float(t),
        k=float(k),
        L1=L1.astype(complex),
        L2=L2,
        L3=np.zeros((2, 2), dtype=complex),
        L4=L4.astype(complex),
    )


def lambda_ode_integrate(
    p: DampingParams, k: float, t: float, step: float
) -> LambdaSet:
    """Fixed-step classical Runge-Kutta integration of the Lambda system.

    Serves as the independent numerical oracle for lambda_closed_form.
    The four blocks are packed as L = [[L1, L2], [L3, L4]] so each
    right-hand side is the single product L @ K with the constant matrix
    K = [[Gxp, Gxx], [-Gpp, -Gpx]].
    """
    if t < 0:
        raise ValidationError(f"t must be nonnegative, got {t}")
    if not (0 < step <= _MAX_ODE_STEP):
        raise ValidationError(f"step must be in (0, {_MAX_ODE_STEP}], got {step}")
    g = gamma_matrix(p, k)
    K = np.zeros((4, 4), dtype=complex)
    K[:2, :2] = g.xp
    K[:2, 2:] = g.xx
    K[2:, :2] = -g.pp
    K[2:, 2:] = -g.px
    L = np.eye(4, dtype=complex)
    n = max(1, round(t / step)) if t > 0 else 0
    h = t / n if n else 0.0
    for _ in range(n):
        k1 = L @ K
        k2 = (L + 0.5 * h * k1) @ K
        k3 = (L + 0.5 * h * k2) @ K
        k4 = (L + h * k3) @ K
        L = L + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return LambdaSet(
        t=float(t),
        k=float(k),
        L1=L[:2, :2].copy(),
        L2=L[:2, 2:].copy(),
        L3=L[2:, :2].copy(),
        L4=L[2:, 2:].copy(),
    )


def lambda_max_deviation(a: LambdaSet, b: LambdaSet) -> float:
    """Max entry difference between two LambdaSets, scale-normalized.

    The blocks grow like exp(|kappa| t), so raw entry differences are
    meaningless across parameter sweeps; differences are divided by
    max(1, largest entry magnitude).
    """
    scale = 1.0
    diff = 0.0
    for name in ("L1", "L2", "L3", "L4"):
        x = getattr(a, name)
        y = getattr(b, name)
        scale = max(scale, float(np.max(np.abs(x))), float(np.max(np.abs(y))))
        diff = max(diff, float(np.max(np.abs(x - y))))
    return diff / scale


def green_apply_gaussian(
    g0: GaussianTomogram, p: DampingParams, t: float
) -> GaussianTomogram:
    """Propagate a Gaussian tomogram through the Green function.

    The delta factor is an exact variable substitution linear in L1 (never
    a numerical delta), and the L2 phase is ~ k^2 so it updates the
    covariance; k cancels and is fixed at 1 here.
    """
    lam = lambda_closed_form(p, k=1.0, t=t)
    L1 = lam.L1
    if float(np.max(np.abs(L1.imag))) > _IMAG_TOL:
        raise InvariantViolation("L1 has a nonreal part beyond tolerance")
    L1r = L1.real
    det = L1r[0, 0] * L1r[1, 1] - L1r[0, 1] * L1r[1, 0]
    if abs(det) < 1e-300:
        raise InvariantViolation("L1 is numerically singular")
    L1i = np.linalg.inv(L1r)

    S0 = np.array([[g0.C, g0.E / 2.0], [g0.E / 2.0, g0.D]])
    S = L1i @ S0 @ L1i.T + (2j * (L1i @ lam.L2))
    if float(np.max(np.abs(S.imag))) > _IMAG_TOL * max(1.0, float(np.max(np.abs(S)))):
        raise InvariantViolation("covariance update has a nonreal residue")
    S = 0.5 * (S.real + S.real.T)

    moments = L1i @ np.array([g0.lam, g0.delta])
    return GaussianTomogram(
        lam=float(moments[0]),
        delta=float(moments[1]),
        C=float(S[0, 0]),
        D=float(S[1, 1]),
        E=float(2.0 * S[0, 1]),
    )
