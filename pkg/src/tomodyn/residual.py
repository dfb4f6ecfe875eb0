"""Pointwise residual of the tomographic evolution equation.

The Gaussian family satisfies

    dw/dt = [ mu d/dnu - nu d/dmu
              + (|u|^2 nu^2 + |v|^2 mu^2) / 2 * d^2/dX^2
              + kappa (mu d/dmu + nu d/dnu)
              - Re(u conj(v)) * mu nu * d^2/dX^2 ] w

and all partial derivatives are available analytically because the
family is closed under the flow: the time dependence enters only through
(lam, delta, C, D, E), whose rates come from dynamics.coefficient_rates.

Residuals are computed on the *ratio* w_t / w etc. so that the check is
meaningful far in the Gaussian tails, where w itself underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import (
    DampingParams,
    GaussianTomogram,
    coefficient_rates,
    evolve_coherent,
)
from .errors import ValidationError

# Smallest tomogram magnitude treated as nonzero; below this the ratio
# forms are still finite but w itself has underflowed to 0.
W_FLOOR = 1e-300


@dataclass(frozen=True)
class ProbePoint:
    """A single (t, X, mu, nu) probe for the residual."""

    t: float
    X: float
    mu: float
    nu: float

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValidationError(f"probe time must be nonnegative, got {self.t}")
        if self.mu == 0.0 and self.nu == 0.0:
            raise ValidationError("probe requires (mu, nu) != (0, 0)")


@dataclass(frozen=True)
class Partials:
    """Ratio-form partial derivatives of the tomogram at one probe."""

    w: float
    w_t: float
    w_X: float
    w_XX: float
    w_mu: float
    w_nu: float


def analytic_partials(
    alpha: complex, p: DampingParams, probe: ProbePoint
) -> Partials:
    """All entries are the ratio (d w / w) except w itself."""
    g = evolve_coherent(alpha, p, probe.t)
    mu, nu, X = probe.mu, probe.nu, probe.X
    C, D, E = g.C, g.D, g.E
    Q = g.quadratic_form(mu, nu)
    Z = X - g.lam * mu - g.delta * nu

    w = math.exp(-Z * Z / Q) / math.sqrt(math.pi * Q)
    w_X = -2.0 * Z / Q
    w_XX = -2.0 / Q + 4.0 * Z * Z / (Q * Q)

    Q_mu = 2.0 * C * mu + E * nu
    Q_nu = 2.0 * D * nu + E * mu
    w_mu = -Q_mu / (2.0 * Q) + 2.0 * Z * g.lam / Q + Z * Z * Q_mu / (Q * Q)
    w_nu = -Q_nu / (2.0 * Q) + 2.0 * Z * g.delta / Q + Z * Z * Q_nu / (Q * Q)

    Cdot, Ddot, Edot = coefficient_rates(p, C, D, E)
    lam_dot = g.delta + p.kappa * g.lam
    delta_dot = -g.lam + p.kappa * g.delta
    Q_dot = Cdot * mu * mu + Ddot * nu * nu + Edot * mu * nu
    w_t = (
        -Q_dot / (2.0 * Q)
        + 2.0 * Z * (lam_dot * mu + delta_dot * nu) / Q
        + Z * Z * Q_dot / (Q * Q)
    )
    return Partials(w=w, w_t=w_t, w_X=w_X, w_XX=w_XX, w_mu=w_mu, w_nu=w_nu)


def pde_residual(alpha: complex, p: DampingParams, probe: ProbePoint) -> float:
    """|lhs - rhs| of the evolution equation in ratio form at one probe."""
    pt = analytic_partials(alpha, p, probe)
    mu, nu = probe.mu, probe.nu
    u2 = abs(complex(p.u)) ** 2
    v2 = abs(complex(p.v)) ** 2
    rhs = (
        mu * pt.w_nu
        - nu * pt.w_mu
        + 0.5 * (u2 * nu * nu + v2 * mu * mu) * pt.w_XX
        + p.kappa * (mu * pt.w_mu + nu * pt.w_nu)
        - p.r * mu * nu * pt.w_XX
    )
    return abs(pt.w_t - rhs)


def residual_sweep(
    alpha: complex, p: DampingParams, probes: list[ProbePoint]
) -> tuple[float, ProbePoint]:
    """Maximum residual over a probe list with its location."""
    if not probes:
        raise ValidationError("residual_sweep needs at least one probe")
    worst = -1.0
    where = probes[0]
    for probe in probes:
        res = pde_residual(alpha, p, probe)
        if res > worst:
            worst, where = res, probe
    return worst, where


def default_probe_lattice() -> list[ProbePoint]:
    """Cross-product lattice avoiding the degenerate (mu, nu) ~ (0, 0) corner."""
    times = (0.0, 0.3, 1.0, 2.5, 5.0)
    Xs = (-2.0, -0.5, 0.0, 1.0, 3.0)
    mus = (-1.5, -0.4, 0.0, 0.7, 2.0)
    nus = (-1.0, -0.3, 0.0, 0.5, 1.8)
    probes = []
    for t in times:
        for X in Xs:
            for mu in mus:
                for nu in nus:
                    if abs(mu) < 0.1 and abs(nu) < 0.1:
                        continue
                    probes.append(ProbePoint(t=t, X=X, mu=mu, nu=nu))
    return probes
