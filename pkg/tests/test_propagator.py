import numpy as np
import pytest

from tomodyn import (
    ValidationError,
    damping_params,
    evolve_coherent,
    gamma_matrix,
    green_apply_gaussian,
    lambda_closed_form,
    lambda_max_deviation,
    lambda_ode_integrate,
)

PAIRS = [(1.0, 1j), (1.0, 1.0), (1.0, 10j), (1.0, 1.0 + 2j), (0.0, 0.0)]


def test_gamma_matrix_blocks():
    p = damping_params(1.0, 1j)  # kappa = -1, r = 0
    gm = gamma_matrix(p, 1.0)
    np.testing.assert_allclose(gm.px, [[1.0, 1.0], [-1.0, 1.0]])
    np.testing.assert_allclose(gm.xx, [[-1j, 0.0], [0.0, -1j]])
    gm2 = gamma_matrix(p, 2.0)
    np.testing.assert_allclose(gm2.xx, 4.0 * gm.xx)


def test_gamma_matrix_cross_term():
    p = damping_params(1.0, 1.0 + 2j)  # r = 1
    gm = gamma_matrix(p, 1.0)
    # off-diagonal of the diffusion block carries -Re(u conj(v))
    assert gm.xx[0, 1] == pytest.approx(1j * 1.0)
    assert gm.xx[1, 0] == pytest.approx(1j * 1.0)


def test_identity_at_time_zero():
    p = damping_params(1.0, 1.0 + 2j)
    lam = lambda_closed_form(p, 1.0, 0.0)
    np.testing.assert_allclose(lam.L1, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(lam.L4, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(lam.L2, 0.0, atol=1e-15)
    np.testing.assert_allclose(lam.L3, 0.0, atol=1e-15)


@pytest.mark.parametrize("u,v", PAIRS)
def test_closed_form_matches_fixed_step_integration(u, v):
    p = damping_params(u, v)
    a = lambda_closed_form(p, 1.0, 1.3)
    b = lambda_ode_integrate(p, 1.0, 1.3, step=1e-3)
    assert lambda_max_deviation(a, b) < 1e-7


def test_ode_step_validation():
    p = damping_params(1.0, 1j)
    with pytest.raises(ValidationError):
        lambda_ode_integrate(p, 1.0, 1.0, step=0.05)
    with pytest.raises(ValidationError):
        lambda_ode_integrate(p, 1.0, 1.0, step=0.0)
    with pytest.raises(ValidationError):
        lambda_ode_integrate(p, 1.0, -1.0, step=1e-3)


def test_block_structure_and_unimodularity():
    for u, v in PAIRS:
        p = damping_params(u, v)
        for t in (0.4, 2.0):
            lam = lambda_closed_form(p, 1.0, t)
            assert np.max(np.abs(lam.L3)) == 0.0
            det_prod = np.linalg.det(lam.L1) * np.linalg.det(lam.L4)
            assert det_prod == pytest.approx(1.0, abs=1e-10)


def test_inhomogeneous_block_scales_with_k_squared():
    p = damping_params(1.0, 1.0 + 2j)
    a = lambda_closed_form(p, 1.0, 0.9)
    b = lambda_closed_form(p, 3.0, 0.9)
    np.testing.assert_allclose(b.L2, 9.0 * a.L2, rtol=1e-12)
    np.testing.assert_allclose(b.L1, a.L1, rtol=1e-12)


@pytest.mark.parametrize("u,v", PAIRS)
def test_green_action_reproduces_direct_evolution(u, v):
    p = damping_params(u, v)
    alpha = 0.6 - 0.9j
    for t in (0.5, 2.0):
        direct = evolve_coherent(alpha, p, t)
        via = green_apply_gaussian(evolve_coherent(alpha, p, 0.0), p, t)
        assert via.lam == pytest.approx(direct.lam, abs=1e-10)
        assert via.delta == pytest.approx(direct.delta, abs=1e-10)
        assert via.C == pytest.approx(direct.C, rel=1e-10)
        assert via.D == pytest.approx(direct.D, rel=1e-10)
        assert via.E == pytest.approx(direct.E, abs=1e-10)


def test_green_action_semigroup_property():
    p = damping_params(1.0, 1.0 + 2j)
    g0 = evolve_coherent(0.3 + 0.4j, p, 0.0)
    one = green_apply_gaussian(g0, p, 1.7)
    two = green_apply_gaussian(green_apply_gaussian(g0, p, 0.7), p, 1.0)
    for a, b in zip(
        (one.lam, one.delta, one.C, one.D, one.E),
        (two.lam, two.delta, two.C, two.D, two.E),
    ):
        assert b == pytest.approx(a, abs=1e-10)


def test_deviation_metric_is_scale_normalized():
    # Strong amplification drives entries to ~1e20; the deviation metric
    # has to compare against that scale or it is meaningless.
    p = damping_params(1.0, 10j)
    a = lambda_closed_form(p, 1.0, 5.0)
    assert np.max(np.abs(a.L1)) > 1e10
    b = lambda_ode_integrate(p, 1.0, 5.0, step=1e-3)
    assert lambda_max_deviation(a, b) < 1e-7
