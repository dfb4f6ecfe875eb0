"""Closed-form Gaussian tomogram dynamics of the damped oscillator.

The oscillator has Hamiltonian H = (p^2 + x^2)/2 and a single linear
coupling operator u*x + v*p with complex u, v (units hbar = m = omega = 1).
A coherent state's tomogram stays inside the five-parameter Gaussian family

    w(X, mu, nu) = (pi*Q)^(-1/2) * exp(-(X - lam*mu - delta*nu)^2 / Q),
    Q = C*mu^2 + D*nu^2 + E*mu*nu,

and this module evolves (lam, delta, C, D, E) in closed form.  The second
moments obey the linear system

    dC/dt = 2*kappa*C + E + 2*|v|^2
    dD/dt = 2*kappa*D - E + 2*|u|^2
    dE/dt = 2*(D - C) + 2*kappa*E - 4*r

with kappa = Im(u*conj(v)), r = Re(u*conj(v)); the exact solution is
implemented below, with a dedicated kappa -> 0 limit branch.  Here
C = 2*sigma_xx, D = 2*sigma_pp and E = 4*sigma_xp, so the purity is
1/sqrt(C*D - E^2/4) and the uncertainty bound reads C*D - E^2/4 >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvariantViolation, ValidationError

# Switch to the kappa->0 limit branch below this (relative) size; the
# general formulas contain d = -s/(2*kappa) which diverges at kappa = 0.
KAPPA_BRANCH_TOL = 1e-6

HEISENBERG_TOL = 1e-9


def _require_finite(name: str, z: complex) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"{name} must be finite, got {z!r}")


@dataclass(frozen=True)
class DampingParams:
    """Complex couplings (u, v) plus the derived real invariants.

    kappa = Im(u*conj(v)) is the dissipation rate of phase-space volume,
    r = Re(u*conj(v)), s = |u|^2 + |v|^2, m = |u|^2 - |v|^2.
    """

    u: complex
    v: complex
    kappa: float
    r: float
    s: float
    m: float


def damping_params(u: complex, v: complex) -> DampingParams:
    """Build DampingParams from the two complex couplings."""
    u = complex(u)
    v = complex(v)
    _require_finite("u", u)
    _require_finite("v", v)
    uv = u * v.conjugate()
    return DampingParams(
        u=u,
        v=v,
        kappa=uv.imag,
        r=uv.real,
        s=abs(u) ** 2 + abs(v) ** 2,
        m=abs(u) ** 2 - abs(v) ** 2,
    )


@dataclass(frozen=True)
class GaussianTomogram:
    """Five-parameter Gaussian tomogram (first moments + quadratic form)."""

    lam: float  # <x>
    delta: float  # <p>
    C: float  # 2*sigma_xx
    D: float  # 2*sigma_pp
    E: float  # 4*sigma_xp

    def __post_init__(self) -> None:
        for name in ("lam", "delta", "C", "D", "E"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise InvariantViolation(f"{name} must be finite, got {val!r}")
        if self.C <= 0 or self.D <= 0 or 4 * self.C * self.D - self.E**2 <= 0:
            raise InvariantViolation(
                "quadratic form C*mu^2 + D*nu^2 + E*mu*nu is not positive "
                f"definite: C={self.C}, D={self.D}, E={self.E}"
            )

    def quadratic_form(self, mu: float, nu: float) -> float:
        return self.C * mu * mu + self.D * nu * nu + self.E * mu * nu

    def heisenberg_gap(self) -> float:
        """C*D - E^2/4 - 1; >= 0 (up to tolerance) for physical states."""
        return self.C * self.D - self.E**2 / 4 - 1.0

    def is_physical(self, tol: float = HEISENBERG_TOL) -> bool:
        return self.heisenberg_gap() >= -tol


class KappaZero:
    """Marker returned by constants_cde when Im(u*conj(v)) vanishes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:  # pragma: no cover
        return "KappaZero"


KAPPA_ZERO = KappaZero()


def _kappa_is_small(p: DampingParams) -> bool:
    return abs(p.kappa) <= KAPPA_BRANCH_TOL * max(1.0, p.s)


def constants_cde(p: DampingParams):
    """The constants (c, d, e) of the general coefficient solution.

    Returns the KAPPA_ZERO marker when kappa is (numerically) zero, since
    d = -s/(2*kappa) is undefined there and the limit branch of
    coefficients() applies instead.
    """
    if _kappa_is_small(p):
        return KAPPA_ZERO
    k = p.kappa
    den = 2.0 * (1.0 + k * k)
    c = -(p.m * k - 2.0 * p.r) / den
    d = -p.s / (2.0 * k)
    e = (p.m + 2.0 * p.r * k) / den
    return c, d, e


def coefficients(p: DampingParams, t: float) -> tuple[float, float, float]:
    """Second-moment coefficients (C, D, E) at time t >= 0.

    At t = 0 this is exactly (1, 1, 0), the coherent-state values.
    """
    if t < 0:
        raise ValidationError(f"t must be nonnegative, got {t}")
    if _kappa_is_small(p):
        # Exact kappa -> 0 limit of the general solution.  Note the
        # surviving r = Re(u*conj(v)) cross terms: dephasing along a fixed
        # non-axis quadrature builds x-p correlation even at kappa = 0.
        s2t = math.sin(2.0 * t)
        sin2 = math.sin(t) ** 2
        base = 1.0 + p.s * t
        C = base - 0.5 * p.m * s2t - 2.0 * p.r * sin2
        D = base + 0.5 * p.m * s2t + 2.0 * p.r * sin2
        E = 2.0 * p.m * sin2 - 2.0 * p.r * s2t
        return C, D, E
    c, d, e = constants_cde(p)
    if t == 0.0:
        return 1.0, 1.0, 0.0
    ex = math.exp(2.0 * p.kappa * t)
    c2t = math.cos(2.0 * t)
    s2t = math.sin(2.0 * t)
    C = (1.0 - d + c * c2t - e * s2t) * ex + d - c
    D = (1.0 - d - c * c2t + e * s2t) * ex + d + c
    E = -2.0 * (c * s2t + e * c2t) * ex + 2.0 * e
    return C, D, E


def coefficient_rates(
    p: DampingParams, C: float, D: float, E: float
) -> tuple[float, float, float]:
    """Time derivatives (dC/dt, dD/dt, dE/dt) of the moment system."""
    u2 = abs(p.u) ** 2
    v2 = abs(p.v) ** 2
    return (
        2.0 * p.kappa * C + E + 2.0 * v2,
        2.0 * p.kappa * D - E + 2.0 * u2,
        2.0 * (D - C) + 2.0 * p.kappa * E - 4.0 * p.r,
    )


def covariance_determinant(p: DampingParams, t: float) -> float:
    """C*D - E^2/4 at time t, evaluated in an overflow-safe form.

    For strongly amplifying parameters exp(2*kappa*t) can overflow a
    double when squared; this factors the determinant as a quadratic in
    that exponential so the result degrades to +inf instead of NaN.
    """
    if t < 0:
        raise ValidationError(f"t must be nonnegative, got {t}")
    if _kappa_is_small(p):
        C, D, E = coefficients(p, t)
        return C * D - E * E / 4.0
    c, d, e = constants_cde(p)
    c2t = math.cos(2.0 * t)
    s2t = math.sin(2.0 * t)
    A = 1.0 - d + c * c2t - e * s2t
    B = 1.0 - d - c * c2t + e * s2t
    F = -2.0 * (c * s2t + e * c2t)
    a0, b0, f0 = d - c, d + c, 2.0 * e
    q2 = A * B - F * F / 4.0
    q1 = A * b0 + a0 * B - F * f0 / 2.0
    q0 = a0 * b0 - f0 * f0 / 4.0
    ex = math.exp(2.0 * p.kappa * t)
    return q0 + ex * (q1 + ex * q2)


def first_moments(
    alpha: complex, p: DampingParams, t: float
) -> tuple[float, float]:
    """First moments (lam, delta) = (<x>, <p>) of an evolved coherent state.

    Rotation at unit frequency with an exp(kappa*t) amplitude envelope;
    the initial values are lam0 = sqrt(2)*Re(alpha), delta0 = sqrt(2)*Im(alpha).
    """
    alpha = complex(alpha)
    _require_finite("alpha", alpha)
    if t < 0:
        raise ValidationError(f"t must be nonnegative, got {t}")
    env = math.sqrt(2.0) * math.exp(p.kappa * t)
    ct, st = math.cos(t), math.sin(t)
    lam = (alpha.real * ct + alpha.imag * st) * env
    delta = (alpha.imag * ct - alpha.real * st) * env
    return lam, delta


def evolve_coherent(alpha: complex, p: DampingParams, t: float) -> GaussianTomogram:
    """Tomogram of an initial coherent state |alpha> after time t."""
    lam, delta = first_moments(alpha, p, t)
    C, D, E = coefficients(p, t)
    return GaussianTomogram(lam=lam, delta=delta, C=C, D=D, E=E)


def purity(g: GaussianTomogram) -> float:
    """Purity tr(rho^2) = 1/sqrt(C*D - E^2/4) of a Gaussian tomogram."""
    det = g.C * g.D - g.E**2 / 4.0
    if det <= 0:
        raise InvariantViolation(f"degenerate tomogram: C*D - E^2/4 = {det}")
    return 1.0 / math.sqrt(det)


@dataclass(frozen=True)
class ConstantOne:
    """Purity is identically 1 (no coupling at all)."""


@dataclass(frozen=True)
class DecaysToZero:
    """Purity tends to 0 as t -> +inf."""


@dataclass(frozen=True)
class Limit:
    """Purity tends to a finite positive limit as t -> +inf."""

    value: float


def asymptotic_purity(p: DampingParams):
    """Long-time classification of the purity of an evolved coherent state.

    For kappa < 0 the limit is sqrt(4*kappa^2*(1+kappa^2)/(s^2+4*kappa^4)),
    the purity of the unique Gaussian steady state.  It is <= 1 and equals
    1 exactly when |kappa| = |u||v| and |u| = |v| (equivalently s = 2|kappa|).
    """
    if p.u == 0 and p.v == 0:
        return ConstantOne()
    if p.kappa >= 0:
        return DecaysToZero()
    k2 = p.kappa * p.kappa
    value = math.sqrt(4.0 * k2 * (1.0 + k2) / (p.s * p.s + 4.0 * k2 * k2))
    return Limit(value=value)


def purity_curve(
    alpha: complex, p: DampingParams, times: Sequence[float]
) -> list[tuple[float, float, float, float, float, float, float]]:
    """Rows (t, C, D, E, lam, delta, purity) over an ascending time grid."""
    times = list(times)
    if not times:
        raise ValidationError("times must be nonempty")
    if times[0] < 0:
        raise ValidationError("times must be nonnegative")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValidationError("times must be strictly ascending")
    rows = []
    for t in times:
        g = evolve_coherent(alpha, p, t)
        rows.append((t, g.C, g.D, g.E, g.lam, g.delta, purity(g)))
    return rows
