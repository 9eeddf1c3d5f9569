"""Tests for the closed-form eigensystem, ground-state rules, and the Jacobi oracle."""

import math

import numpy as np
import pytest

from exactspin import (
    HalfInt,
    ModelParams,
    RotationAngles,
    brute_diagonalize,
    energy_values,
    exact_spectrum,
    ground_state,
    model_hamiltonian,
    operator_matrix,
    residual_norm,
)
from exactspin.spectrum import ORACLE_MAX_DIM, _closed_form_quadratic, _scan_minimum


def test_exact_spectrum_trivial_at_theta_zero():
    p = ModelParams.quadratic(1.0, 0.1, theta=0.0)
    pairs = exact_spectrum(p, HalfInt(4))
    assert len(pairs) == 5
    for k, pair in enumerate(pairs):
        expected = np.zeros(5)
        expected[k] = 1.0
        np.testing.assert_allclose(np.abs(pair.vector), expected, atol=1e-12)
    assert [pair.m.twice for pair in pairs] == [-4, -2, 0, 2, 4]


def test_exact_spectrum_even_polynomial_degeneracy():
    p = ModelParams.quadratic(0.0, 1.0, theta=0.4)
    energies = [pair.energy for pair in exact_spectrum(p, HalfInt(2))]
    assert energies == [1.0, 0.0, 1.0]


def test_exact_spectrum_matches_oracle():
    p = ModelParams.quadratic(1.0, 0.01, theta=1.5, phi=0.0)
    j = HalfInt(10)
    w, _ = brute_diagonalize(model_hamiltonian(p, j))
    exact = np.sort([pair.energy for pair in exact_spectrum(p, j)])
    np.testing.assert_allclose(w, exact, atol=1e-10)


def test_exact_spectrum_random_draws_vs_oracle():
    rng = np.random.default_rng(23)
    for _ in range(30):
        order = int(rng.integers(1, 5))
        p = ModelParams(order=order, coeffs=tuple(rng.uniform(-2, 2, order + 1)),
                        angles=RotationAngles(rng.uniform(1e-3, math.pi - 1e-3),
                                              rng.uniform(0, 2 * math.pi)))
        j = HalfInt(int(rng.integers(1, 21)))
        w, _ = brute_diagonalize(model_hamiltonian(p, j))
        exact = np.sort([pair.energy for pair in exact_spectrum(p, j)])
        assert np.max(np.abs(w - exact)) < 1e-9


def test_eigenvector_gram_orthonormal():
    p = ModelParams(order=3, coeffs=(0.1, -0.7, 0.3, 0.05), angles=RotationAngles(1.1, 2.3))
    j = HalfInt(50)
    vecs = np.column_stack([pair.vector for pair in exact_spectrum(p, j)])
    assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(51))) < 1e-9


def test_residual_norm_examples():
    p0 = ModelParams.quadratic(1.0, 0.2, theta=0.0)
    pairs = exact_spectrum(p0, HalfInt(6))
    assert residual_norm(p0, HalfInt(6), pairs[2]) == 0.0  # theta=0 is exact

    p = ModelParams.quadratic(1.0, 0.01, theta=1.5, phi=0.9)
    j = HalfInt(24)
    scale = 1.0 + sum(abs(a) for a in p.coeffs) * (12.0**2)
    for pair in exact_spectrum(p, j):
        assert residual_norm(p, j, pair) <= 1e-9 * scale


def test_ground_state_interior_vertex():
    # vertex at -5/3: nearest integer -2, and E(-2) = -0.8 < E(-1) = -0.7
    result = ground_state(ModelParams.quadratic(1.0, 0.3, theta=0.7), HalfInt(10))
    assert result.m0 == HalfInt(-4)
    assert result.pair.energy == pytest.approx(-0.8, abs=1e-14)
    assert result.method == "closed_form"
    assert not result.degenerate


def test_ground_state_concave_endpoint():
    result = ground_state(ModelParams.quadratic(1.0, -0.5, theta=0.7), HalfInt(8))
    assert result.m0 == HalfInt(-8)
    assert not result.degenerate


def test_ground_state_symmetric_cases():
    r1 = ground_state(ModelParams.quadratic(0.0, 1.0, theta=0.3), HalfInt(2))
    assert r1.m0 == HalfInt(0)
    assert not r1.degenerate
    r2 = ground_state(ModelParams.quadratic(0.0, -1.0, theta=0.3), HalfInt(2))
    assert r2.m0 == HalfInt(-2)  # tie with m=+1 broken toward lower m
    assert r2.degenerate


def test_ground_state_exact_tie_flagged():
    # vertex exactly halfway between m=0 and m=1
    result = ground_state(ModelParams.quadratic(-1.0, 1.0, theta=0.5), HalfInt(6))
    assert result.m0 == HalfInt(0)
    assert result.degenerate


def test_ground_state_clamped_vertex():
    result = ground_state(ModelParams.quadratic(-100.0, 0.01, theta=0.5), HalfInt(6))
    assert result.m0 == HalfInt(6)  # vertex at +5000, clamped to +j
    assert not result.degenerate


def test_ground_state_linear_and_flat():
    assert ground_state(ModelParams.quadratic(2.0, 0.0, theta=1.0), HalfInt(4)).m0 == HalfInt(-4)
    assert ground_state(ModelParams.quadratic(-2.0, 0.0, theta=1.0), HalfInt(4)).m0 == HalfInt(4)
    flat = ground_state(ModelParams.quadratic(0.0, 0.0, theta=1.0), HalfInt(4))
    assert flat.m0 == HalfInt(-4)
    assert flat.degenerate


def test_ground_state_half_integer_grid():
    # j = 7/2 with vertex at 0: grid values are half-integers; +-1/2 tie
    result = ground_state(ModelParams.quadratic(0.0, 1.0, theta=0.9), HalfInt(7))
    assert result.m0 == HalfInt(-1)
    assert result.degenerate


def test_ground_state_scan_method_for_other_orders():
    p = ModelParams(order=3, coeffs=(0.0, 1.0, 0.0, -0.2), angles=RotationAngles(0.8))
    result = ground_state(p, HalfInt(10))
    assert result.method == "scan"
    energies = energy_values(p, HalfInt(10))
    assert result.pair.energy == pytest.approx(float(np.min(energies)), abs=1e-12)


def test_ground_state_energy_is_global_minimum_random():
    rng = np.random.default_rng(31)
    for _ in range(50):
        a1 = float(rng.uniform(-2, 2))
        a2 = float(rng.choice([-1, 0, 1]) * rng.uniform(0, 2))
        twice_j = int(rng.integers(1, 40))
        p = ModelParams.quadratic(a1, a2, theta=float(rng.uniform(0.1, 3.0)))
        result = ground_state(p, HalfInt(twice_j))
        energies = energy_values(p, HalfInt(twice_j))
        assert result.pair.energy <= float(np.min(energies)) + 1e-12


def test_closed_form_vs_scan_internal_helpers():
    # the two routes compared directly across every branch of the classification
    cases = [
        ModelParams.quadratic(1.0, 0.3, 0.5),      # interior vertex
        ModelParams.quadratic(-7.0, 0.25, 0.5),    # clamped above
        ModelParams.quadratic(7.0, 0.25, 0.5),     # clamped below
        ModelParams.quadratic(1.0, -0.5, 0.5),     # concave, a1 > 0
        ModelParams.quadratic(-1.0, -0.5, 0.5),    # concave, a1 < 0
        ModelParams.quadratic(0.0, -0.5, 0.5),     # concave, symmetric tie
        ModelParams.quadratic(1.5, 0.0, 0.5),      # linear
        ModelParams.quadratic(0.0, 0.0, 0.5),      # flat
    ]
    for params in cases:
        for twice_j in (1, 2, 7, 20):
            j = HalfInt(twice_j)
            assert _closed_form_quadratic(params, j) == _scan_minimum(params, j)


def test_brute_diagonalize_examples():
    w, v = brute_diagonalize(np.diag([3.0, 1.0, 2.0]).astype(complex))
    np.testing.assert_allclose(w, [1.0, 2.0, 3.0], atol=1e-12)
    assert np.max(np.abs(v.conj().T @ v - np.eye(3))) < 1e-12

    jx = operator_matrix(HalfInt(2), "Jx")
    w, _ = brute_diagonalize(jx)
    np.testing.assert_allclose(w, [-1.0, 0.0, 1.0], atol=1e-10)


def test_brute_diagonalize_certificates():
    rng = np.random.default_rng(7)
    b = rng.normal(size=(30, 30)) + 1j * rng.normal(size=(30, 30))
    h = (b + b.conj().T) / 2
    w, v = brute_diagonalize(h)
    scale = np.max(np.abs(h))
    assert np.max(np.abs(h @ v - v * w[None, :])) < 1e-9 * scale
    assert np.max(np.abs(v.conj().T @ v - np.eye(30))) < 1e-9
    assert np.all(np.diff(w) >= 0)


def test_brute_diagonalize_midsize_scale():
    # oracle accuracy well inside its dimension cap
    rng = np.random.default_rng(19)
    b = rng.normal(size=(101, 101)) + 1j * rng.normal(size=(101, 101))
    h = 50.0 * (b + b.conj().T) / 2
    w, v = brute_diagonalize(h)
    scale = np.max(np.abs(h))
    assert np.max(np.abs(h @ v - v * w[None, :])) < 1e-9 * scale
    assert np.max(np.abs(v.conj().T @ v - np.eye(101))) < 1e-9
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-9 * scale)


def test_brute_diagonalize_rejects_bad_input():
    with pytest.raises(ValueError):
        brute_diagonalize(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    with pytest.raises(ValueError):
        brute_diagonalize(np.zeros((ORACLE_MAX_DIM + 1, ORACLE_MAX_DIM + 1), dtype=complex))
