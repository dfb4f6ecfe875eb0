"""Acceptance gate: one test per shipped criterion, one verdict line each.

Criterion 2 carries reference constants that disagree with the exact
second-moment dynamics (see README, "Known red test"); it is kept
verbatim and is expected to fail.
"""

import filecmp
import math
import warnings

import numpy as np
import pytest

from tomodyn import (
    Limit,
    asymptotic_purity,
    covariance_determinant,
    damping_params,
    evolve_coherent,
    gaussian_tomogram_eval,
    green_apply_gaussian,
    lambda_closed_form,
    lambda_max_deviation,
    lambda_ode_integrate,
    purity,
    tomography,
)
from tomodyn.cli import main
from tomodyn.dynamics import GaussianTomogram
from tomodyn.residual import default_probe_lattice, residual_sweep

PAIRS = [(1.0, 1j), (1.0, 1.0), (1.0, 10j), (1.0, 1.0 + 2j), (0.0, 0.0)]

VERDICT_LINES: list[str] = []


def _verdict(number: int, name: str, ok: bool) -> None:
    line = f"criterion {number:2d} ({name}): {'PASS' if ok else 'FAIL'}"
    VERDICT_LINES.append(line)
    print(line)
    assert ok, f"criterion {number} ({name})"


def test_criterion_1_purity_preservation():
    ok = True
    for gamma in (0.5, 1.0, 2.0):
        p = damping_params(math.sqrt(gamma), 1j * math.sqrt(gamma))
        for alpha in (0j, 1.0 + 0j, 1.0 + 1j):
            for t in np.linspace(0.0, 10.0, 50):
                mu = purity(evolve_coherent(alpha, p, float(t)))
                ok = ok and abs(mu - 1.0) <= 1e-12
    _verdict(1, "purity preservation", ok)


def test_criterion_2_asymptotic_purity_values():
    # Reference constants kept verbatim; inconsistent with the exact
    # dynamics, so this criterion is expected red.  See README.
    ok = True
    mu_a = purity(evolve_coherent(0j, damping_params(1.0, 10j), 5.0))
    ok = ok and abs(mu_a - math.sqrt(160400.0 / 170201.0)) <= 1e-6
    mu_b = purity(evolve_coherent(0j, damping_params(1.0, 1.0 + 2j), 5.0))
    ok = ok and abs(mu_b - math.sqrt(272.0 / 292.0)) <= 1e-6
    p = damping_params(1.0, 1.0)
    ok = ok and purity(evolve_coherent(0j, p, 100.0)) < 0.01
    for t in np.linspace(0.1, 10.0, 25):
        mu = purity(evolve_coherent(0j, p, float(t)))
        ok = ok and abs(mu * (1.0 + 2.0 * t) - 1.0) <= 1e-10
    _verdict(2, "asymptotic purity values", ok)


def test_criterion_3_limit_bound_and_equality_cases():
    ok = True
    rng = np.random.default_rng(42)
    draws = 0
    while draws < 1000:
        u = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        v = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        p = damping_params(u, v)
        if p.kappa >= 0:
            continue
        draws += 1
        lim = asymptotic_purity(p)
        ok = ok and isinstance(lim, Limit) and lim.value <= 1.0 + 1e-12
        is_one = abs(lim.value - 1.0) <= 1e-9
        cond = (
            abs(abs(p.kappa) - abs(u) * abs(v)) <= 1e-9
            and abs(abs(u) - abs(v)) <= 1e-9
        )
        ok = ok and (is_one == cond)
    # explicit equality family: v = i*u
    for u in (1.0 + 0j, 0.5 - 1.5j, 2.0 + 0.3j):
        lim = asymptotic_purity(damping_params(u, 1j * u))
        ok = ok and abs(lim.value - 1.0) <= 1e-12
    _verdict(3, "asymptotic limit bound", ok)


def test_criterion_4_propagator_oracle_equivalence():
    # Block entries reach ~1e21 under strong amplification, so the entry
    # difference is measured relative to the largest entry magnitude.
    ok = True
    for u, v in PAIRS:
        p = damping_params(u, v)
        for k in (0.5, 1.0, 2.0):
            for t in (0.5, 1.0, 3.0, 5.0):
                a = lambda_closed_form(p, k, t)
                b = lambda_ode_integrate(p, k, t, step=1e-3)
                ok = ok and lambda_max_deviation(a, b) < 1e-7
                ok = ok and float(np.max(np.abs(a.L3))) == 0.0
                det_prod = np.linalg.det(a.L1) * np.linalg.det(a.L4)
                ok = ok and abs(det_prod - 1.0) <= 1e-10
    _verdict(4, "propagator oracle equivalence", ok)


def test_criterion_5_cross_route_coefficients():
    ok = True
    alpha = 0.7 - 0.2j
    for u, v in PAIRS:
        p = damping_params(u, v)
        g0 = evolve_coherent(alpha, p, 0.0)
        for t in (0.5, 1.0, 3.0, 5.0):
            direct = evolve_coherent(alpha, p, t)
            via = green_apply_gaussian(g0, p, t)
            for a, b in zip(
                (direct.lam, direct.delta, direct.C, direct.D, direct.E),
                (via.lam, via.delta, via.C, via.D, via.E),
            ):
                ok = ok and abs(a - b) <= 1e-8 * max(1.0, abs(a))
        for t1, t2 in ((0.4, 0.6), (1.0, 2.0)):
            one = green_apply_gaussian(g0, p, t1 + t2)
            two = green_apply_gaussian(green_apply_gaussian(g0, p, t1), p, t2)
            for a, b in zip(
                (one.lam, one.delta, one.C, one.D, one.E),
                (two.lam, two.delta, two.C, two.D, two.E),
            ):
                ok = ok and abs(a - b) <= 1e-8 * max(1.0, abs(a))
    _verdict(5, "cross-route coefficients", ok)


def test_criterion_6_kinetic_equation_residual():
    ok = True
    probes = default_probe_lattice()
    for u, v in PAIRS:
        worst, _ = residual_sweep(0.6 + 0.2j, damping_params(u, v), probes)
        ok = ok and worst < 1e-8
    _verdict(6, "kinetic equation residual", ok)


def test_criterion_7_transform_consistency():
    ok = True
    grid = tomography.default_grid()  # n=256, x_max=8
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for u, v in PAIRS:
            p = damping_params(u, v)
            g = evolve_coherent(0.4 + 0.3j, p, 0.9)
            rho = tomography.tomogram_to_density(g, grid)
            for X, mu, nu in ((0.0, 1.0, 0.5), (0.7, 0.8, -0.6), (-1.1, -0.4, 1.2)):
                back = tomography.density_to_tomogram(rho, X, mu, nu)
                ok = ok and abs(back - gaussian_tomogram_eval(g, X, mu, nu)) < 2e-3
            # invariants and purity on a grid wide enough for the state
            half = abs(g.lam) + 10.0 * math.sqrt(g.C / 2.0)
            wide = tomography.CoordinateGrid(x_min=-half, x_max=half, n=512)
            rho_w = tomography.tomogram_to_density(g, wide)
            ok = ok and abs(rho_w.trace() - 1.0) <= 1e-6
            ok = ok and rho_w.min_eigenvalue() >= -1e-8
            mu1 = purity(g)
            ok = ok and abs(tomography.purity_overlap_integral(g) - mu1) <= 1e-10
            ok = ok and abs(tomography.purity_from_density(rho_w) - mu1) <= 1e-4
    _verdict(7, "transform consistency", ok)


def test_criterion_8_star_product_idempotency():
    ok = True
    grid = tomography.default_grid()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for gamma in (0.5, 1.0, 2.0):
            p = damping_params(math.sqrt(gamma), 1j * math.sqrt(gamma))
            g = evolve_coherent(0.5 + 0.1j, p, 1.2)
            sup, idem = tomography.star_product_check(g, grid)
            ok = ok and idem and sup < 5e-3
        mixed = GaussianTomogram(lam=0.0, delta=0.0, C=3.0, D=3.0, E=0.0)
        _, idem_mixed = tomography.star_product_check(mixed, grid)
        ok = ok and not idem_mixed
    _verdict(8, "star-product idempotency", ok)


def test_criterion_9_uncertainty_bound():
    ok = True
    rng = np.random.default_rng(123)
    for _ in range(1000):
        u = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        v = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        t = float(rng.uniform(0, 10))
        det = covariance_determinant(damping_params(u, v), t)
        ok = ok and det >= 1.0 - 1e-9
    _verdict(9, "uncertainty bound", ok)


def test_criterion_10_cli_determinism_and_schema(tmp_path, capsys):
    ok = True
    dir_a = tmp_path / "a"
    dir_b = tmp_path / "b"
    ok = ok and main(["fig2", str(dir_a)]) == 0
    ok = ok and main(["fig2", str(dir_b)]) == 0
    for name in ("fig2a.csv", "fig2b.csv"):
        ok = ok and filecmp.cmp(dir_a / name, dir_b / name, shallow=False)
        header = (dir_a / name).read_text().splitlines()[0]
        ok = ok and header == "t,C,D,E,lambda,delta,purity"
    ok = ok and main(["validate"]) == 0
    capsys.readouterr()
    _verdict(10, "CLI determinism and schema", ok)
