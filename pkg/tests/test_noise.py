import numpy as np
import pytest
from conftest import rand_density_matrix

from entdistill.noise import (
    NoiseSpec,
    PurifiedCoeffs,
    asymptotic_ratio,
    collective_cnot,
    depolarized_cnot_apply,
    noisy_povm_element,
    purified_coeffs,
    purified_coeffs_gate_noisy,
    purified_coeffs_general,
    purified_povm_element,
)
from entdistill.qmat import I2, conjugate, embed_op, ket, projector, tensor

P_GRID = [0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3]
EPS_GRID = [0.02, 0.05, 0.1, 0.2, 0.3]

# fixed point of the coefficient-ratio recurrence at p = eps = 0.1
S_01_01 = 0.030834852219


def test_noisy_povm_element_values():
    assert np.array_equal(noisy_povm_element(0, 0.0), projector(ket("0")))
    assert np.array_equal(noisy_povm_element(0, 0.1), np.diag([0.95, 0.05]).astype(complex))
    assert np.array_equal(noisy_povm_element(1, 0.2), np.diag([0.1, 0.9]).astype(complex))


def test_noisy_povm_element_domain():
    with pytest.raises(ValueError):
        noisy_povm_element(0, 1.0)
    with pytest.raises(ValueError):
        noisy_povm_element(0, -0.1)
    with pytest.raises(ValueError):
        noisy_povm_element(2, 0.1)


@pytest.mark.parametrize("p", [0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.29, 0.5, 0.8, 0.9, 0.99])
def test_povm_completeness_exact(p):
    total = noisy_povm_element(0, p) + noisy_povm_element(1, p)
    assert np.array_equal(total, I2)


def test_collective_cnot_small_cases():
    assert np.array_equal(collective_cnot(1), I2)
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    assert np.array_equal(collective_cnot(2), cnot)
    np.testing.assert_allclose(collective_cnot(3) @ ket("100"), ket("111"), atol=1e-15)
    np.testing.assert_allclose(collective_cnot(3) @ ket("011"), ket("011"), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_collective_cnot_unitary(n):
    v = collective_cnot(n)
    np.testing.assert_allclose(v @ v.conj().T, np.eye(2 ** n), atol=1e-15)


def test_collective_cnot_domain():
    with pytest.raises(ValueError):
        collective_cnot(0)


def test_depolarized_cnot_noiseless_limit(rng):
    rho = rand_density_matrix(rng, 3)
    v = embed_op(collective_cnot(2), [0, 2], 3)
    np.testing.assert_allclose(
        depolarized_cnot_apply(rho, 0, 2, 0.0), conjugate(v, rho), atol=1e-14)


def test_depolarized_cnot_full_depolarization(rng):
    rho = rand_density_matrix(rng, 2)
    np.testing.assert_allclose(depolarized_cnot_apply(rho, 0, 1, 1.0), np.eye(4) / 4, atol=1e-14)


def test_depolarized_cnot_simple_mixture():
    rho = projector(ket("10"))
    out = depolarized_cnot_apply(rho, 0, 1, 0.1)
    expected = 0.9 * projector(ket("11")) + 0.1 * np.eye(4) / 4
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_depolarized_cnot_preserves_trace_and_rest(rng):
    rho = rand_density_matrix(rng, 3)
    out = depolarized_cnot_apply(rho, 1, 2, 0.23)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
    # the depolarized pair's complement keeps its marginal
    from entdistill.qmat import partial_trace

    np.testing.assert_allclose(partial_trace(out, [0]), partial_trace(rho, [0]), atol=1e-12)


def test_depolarized_cnot_index_collision(rng):
    rho = rand_density_matrix(rng, 2)
    with pytest.raises(ValueError):
        depolarized_cnot_apply(rho, 1, 1, 0.1)


def test_purified_coeffs_examples():
    c = purified_coeffs([0.1], 1)
    assert (c.r0, c.r1) == (0.95, 0.05)
    c = purified_coeffs([0.2, 0.2], 2)
    assert c.r0 == pytest.approx(0.81, abs=1e-15)
    assert c.r1 == pytest.approx(0.01, abs=1e-15)
    c = purified_coeffs([0.05, 0.15], 2)
    assert c.r0 == pytest.approx(0.975 * 0.925, abs=1e-15)
    assert c.r1 == pytest.approx(0.025 * 0.075, abs=1e-15)


def test_purified_coeffs_length_mismatch():
    with pytest.raises(ValueError):
        purified_coeffs([0.1, 0.1], 3)


def test_gate_noisy_reduces_to_products():
    c = purified_coeffs_gate_noisy(0.2, 0.0, 3)
    assert c.r0 == pytest.approx(0.729, abs=1e-15)
    assert c.r1 == pytest.approx(0.001, abs=1e-18)


@pytest.mark.parametrize("eps", [0.0, 0.05, 0.3])
def test_gate_noisy_single_measurement_has_no_cnot(eps):
    c = purified_coeffs_gate_noisy(0.14, eps, 1)
    assert (c.r0, c.r1) == (1 - 0.07, 0.07)


def test_gate_noisy_ratio_converges_to_fixed_point():
    c = purified_coeffs_gate_noisy(0.1, 0.1, 50)
    assert c.r1 / c.r0 == pytest.approx(S_01_01, abs=1e-9)
    assert c.r1 / c.r0 == pytest.approx(asymptotic_ratio(0.1, 0.1), abs=1e-9)


def test_heterogeneous_reduces_to_homogeneous():
    for p in P_GRID:
        for n in (1, 2, 3, 5):
            hom = purified_coeffs_gate_noisy(p, 0.0, n)
            het = purified_coeffs([p] * n, n)
            assert abs(hom.r0 - het.r0) < 1e-12
            assert abs(hom.r1 - het.r1) < 1e-12


def test_purification_fidelity_monotone_and_converging():
    for p in P_GRID:
        fids = [purified_coeffs_gate_noisy(p, 0.0, n).fidelity for n in range(1, 11)]
        # strictly increasing until it saturates at 1.0 in double precision
        assert all(b > a for a, b in zip(fids, fids[1:]) if a < 1.0)
        assert all(b >= a for a, b in zip(fids, fids[1:]))
        assert fids[-1] > 0.9999


def test_acceptance_yield_strictly_decreasing():
    for p in P_GRID:
        yields = [purified_coeffs_gate_noisy(p, 0.0, n).acceptance for n in range(1, 11)]
        assert all(b < a for a, b in zip(yields, yields[1:]))


def test_coeff_invariants_on_grid():
    for p in P_GRID:
        for eps in [0.0] + EPS_GRID:
            for n in (1, 2, 3, 4, 6):
                c = purified_coeffs_gate_noisy(p, eps, n)
                assert 0.0 <= c.r1 <= c.r0 <= 1.0
                assert c.r0 + c.r1 <= 1.0 + 1e-12


def test_asymptotic_ratio_fixed_point_residual():
    for p in P_GRID:
        for eps in EPS_GRID:
            s = asymptotic_ratio(p, eps)
            rhs = ((1 - eps) * s * (p / 2) + eps / 4 * (1 + s)) / (
                (1 - eps) * (1 - p / 2) + eps / 4 * (1 + s))
            assert abs(s - rhs) < 1e-9


def test_asymptotic_ratio_rejects_zero_epsilon():
    with pytest.raises(ValueError):
        asymptotic_ratio(0.1, 0.0)


def test_purified_povm_element_values():
    noiseless = PurifiedCoeffs(r0=1.0, r1=0.0, n=1)
    assert np.array_equal(purified_povm_element(0, noiseless), projector(ket("0")))
    assert np.array_equal(purified_povm_element(1, noiseless), projector(ket("1")))

    c = purified_coeffs_gate_noisy(0.2, 0.0, 3)
    q0 = purified_povm_element(0, c)
    assert q0[0, 0].real == pytest.approx(0.729 / 0.730, abs=1e-12)

    c1 = purified_coeffs_gate_noisy(0.1, 0.0, 1)
    assert np.allclose(purified_povm_element(0, c1), np.diag([0.95, 0.05]), atol=1e-15)


def test_purified_povm_element_completeness(rng):
    for _ in range(5):
        p_list = list(rng.uniform(0.02, 0.3, 3))
        c = purified_coeffs_general(p_list, float(rng.uniform(0.0, 0.2)))
        total = purified_povm_element(0, c) + purified_povm_element(1, c)
        np.testing.assert_allclose(total, I2, atol=1e-12)


def test_purified_povm_element_degenerate():
    with pytest.raises(ValueError):
        purified_povm_element(0, PurifiedCoeffs(r0=0.0, r1=0.0, n=1))


def test_noise_spec_validation():
    NoiseSpec(p_list_a=(0.1, 0.2), p_list_b=(0.1,), epsilon=0.05)
    with pytest.raises(ValueError):
        NoiseSpec(p_list_a=())
    with pytest.raises(ValueError):
        NoiseSpec(p_list_a=(1.0,))
    with pytest.raises(ValueError):
        NoiseSpec(p_list_a=(0.1,), epsilon=1.0)


def test_purified_coeffs_records_its_inputs():
    c = purified_coeffs_general([0.1, 0.2], 0.05)
    assert c.n == 2
    assert c.spec.p_list_a == (0.1, 0.2)
    assert c.spec.epsilon == 0.05
