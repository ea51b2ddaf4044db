import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropy_bounds.checks import random_density_matrix
from entropy_bounds.errors import InvalidArgument, InvariantViolation, NumericFailure
from entropy_bounds.spectra import harmonic_oscillator
from entropy_bounds.states import (DenseState, SpectralState, binary_entropy, clamp_probabilities,
                                   energy, hermitian_eigenvalues, trace_distance_dense,
                                   trace_distance_spectral, von_neumann_entropy_dense,
                                   von_neumann_entropy_spectral)

# 50-digit mpmath evaluation of -x log2 x - (1-x) log2(1-x) at x = 1/4
G_QUARTER = 0.811278124459132863909695792039


def faddeev_leverrier(a):
    """Characteristic polynomial coefficients without any eigen-decomposition."""
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


# -- construction ------------------------------------------------------------

def test_spectral_state_canonical_order():
    s = SpectralState.from_weights([0.2, 0.5, 0.3], [7, 3, 1])
    assert s.weights.tolist() == [0.5, 0.3, 0.2]
    assert s.labels.tolist() == [3, 1, 7]


@pytest.mark.parametrize("weights,labels", [
    ([0.5, 0.6], [0, 1]),
    ([1.2, -0.2], [0, 1]),
    ([0.5, 0.5], [1, 1]),
    ([0.5, 0.5], [0, -1]),
])
def test_spectral_state_rejects(weights, labels):
    with pytest.raises(InvariantViolation):
        SpectralState.from_weights(weights, labels)


def test_dense_state_rejects():
    with pytest.raises(InvariantViolation):
        DenseState([[0.5, 0.1], [0.2, 0.5]])
    with pytest.raises(InvariantViolation):
        DenseState(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidArgument):
        DenseState(np.eye(65) / 65)


# -- binary entropy ------------------------------------------------------------

def test_binary_entropy_values():
    assert binary_entropy(0) == 0
    assert binary_entropy(1) == 0
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.25) == pytest.approx(G_QUARTER, abs=1e-15)


@pytest.mark.parametrize("eps", [-0.1, 1.1, math.nan])
def test_binary_entropy_domain(eps):
    with pytest.raises(InvalidArgument):
        binary_entropy(eps)


@pytest.mark.parametrize("k", range(0, 1025, 31))
def test_binary_entropy_symmetric(k):
    eps = k / 1024
    assert binary_entropy(eps) == binary_entropy(1 - eps)


# -- entropies -----------------------------------------------------------------

def test_spectral_entropy_examples():
    assert von_neumann_entropy_spectral(SpectralState.from_weights([1.0])) == 0
    assert von_neumann_entropy_spectral(SpectralState.from_weights([0.5, 0.5])) == 1
    assert von_neumann_entropy_spectral(SpectralState.from_weights([0.5, 0.25, 0.25])) == 1.5


def test_dense_entropy_examples(rng):
    assert von_neumann_entropy_dense(DenseState(np.eye(2) / 2)) == pytest.approx(1, abs=1e-14)
    v = rng.normal(size=5) + 1j * rng.normal(size=5)
    assert von_neumann_entropy_dense(DenseState.pure(v)) == pytest.approx(0, abs=1e-10)
    diag = DenseState(np.diag([0.5, 0.25, 0.25]))
    assert von_neumann_entropy_dense(diag) == pytest.approx(1.5, abs=1e-14)


def test_clamping_limits():
    assert clamp_probabilities([-1e-12, 1.0]).tolist() == [0.0, 1.0]
    with pytest.raises(NumericFailure):
        clamp_probabilities([-1e-6, 1.0])


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=16).filter(lambda w: sum(w) > 1e-3))
def test_dense_entropy_of_diagonal_matches_spectral(raw):
    w = np.array(raw) / sum(raw)
    s = SpectralState.from_weights(w)
    assert von_neumann_entropy_dense(s.to_dense()) == pytest.approx(
        von_neumann_entropy_spectral(s), abs=1e-10)


# -- eigensolver -----------------------------------------------------------------

def test_eigenvalues_examples():
    assert hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])).tolist() == [3, 2, 1]
    assert hermitian_eigenvalues([[0, 1], [1, 0]]) == pytest.approx([1, -1], abs=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_eigenvalues_match_characteristic_polynomial(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    a = x + x.conj().T
    roots = np.sort(np.roots(faddeev_leverrier(a)).real)[::-1]
    assert hermitian_eigenvalues(a) == pytest.approx(roots, abs=1e-8)


@pytest.mark.parametrize("d", [1, 7, 16, 40])
def test_eigenvector_reconstruction(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    a = x + x.conj().T
    w, q = hermitian_eigenvalues(a, vectors=True)
    assert np.all(np.diff(w) <= 0)
    resid = np.abs(a - q @ np.diag(w) @ q.conj().T).max()
    assert resid <= 1e-10 * np.abs(a).max()
    assert np.abs(q.conj().T @ q - np.eye(d)).max() < 1e-12


def test_eigenvalues_degenerate_and_zero():
    assert hermitian_eigenvalues(np.zeros((3, 3))).tolist() == [0, 0, 0]
    a = np.ones((4, 4))
    assert hermitian_eigenvalues(a) == pytest.approx([4, 0, 0, 0], abs=1e-13)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(InvalidArgument):
        hermitian_eigenvalues([[0, 1], [0, 0]])
    with pytest.raises(InvalidArgument):
        hermitian_eigenvalues(np.eye(65))


def test_eigenvalues_iteration_cap(rng):
    x = rng.normal(size=(10, 10))
    with pytest.raises(NumericFailure):
        hermitian_eigenvalues(x + x.T, max_sweeps=1)


# -- distances -------------------------------------------------------------------

def test_trace_distance_spectral_examples():
    a = SpectralState.from_weights([0.75, 0.25])
    assert trace_distance_spectral(a, a) == 0
    assert trace_distance_spectral(SpectralState.from_weights([1, 0]),
                                   SpectralState.from_weights([0, 1])) == 0
    assert trace_distance_spectral(SpectralState.from_weights([1, 0]),
                                   SpectralState.from_weights([0.5, 0.5])) == 0.5
    assert trace_distance_spectral(a, SpectralState.from_weights([0.5, 0.5])) == 0.25


def test_trace_distance_zero_padding():
    a = SpectralState.from_weights([1.0])
    b = SpectralState.from_weights([0.5, 0.3, 0.2])
    assert trace_distance_spectral(a, b) == pytest.approx(0.5)


def test_trace_distance_dense_examples():
    a = DenseState.pure([1, 0])
    b = DenseState.pure([0, 1])
    assert trace_distance_dense(a, a) == 0
    assert trace_distance_dense(a, b) == pytest.approx(1.0)
    with pytest.raises(InvalidArgument):
        trace_distance_dense(a, DenseState(np.eye(3) / 3))


def test_commuting_pair_distances_agree(rng):
    for _ in range(50):
        d = int(rng.integers(2, 17))
        p = rng.exponential(size=d)
        q = rng.exponential(size=d)
        a = SpectralState.from_weights(p, normalize=True)
        b = SpectralState.from_weights(q, normalize=True)
        # same basis, same (sorted) order: dense distance is the spectral one
        da = np.diag(np.sort(p / p.sum())[::-1])
        db = np.diag(np.sort(q / q.sum())[::-1])
        assert trace_distance_dense(DenseState(da), DenseState(db)) == pytest.approx(
            trace_distance_spectral(a, b), abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 16))
def test_triangle_inequality(seed, d):
    rng = np.random.default_rng(seed)
    a, b, c = (DenseState(random_density_matrix(rng, d, int(rng.integers(1, d + 1))))
               for _ in range(3))
    assert trace_distance_dense(a, c) <= (trace_distance_dense(a, b)
                                          + trace_distance_dense(b, c) + 1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 10))
def test_mixing_concavity(seed, d):
    rng = np.random.default_rng(seed)
    a = DenseState(random_density_matrix(rng, d, int(rng.integers(1, d + 1))))
    b = DenseState(random_density_matrix(rng, d, int(rng.integers(1, d + 1))))
    sa, sb = von_neumann_entropy_dense(a), von_neumann_entropy_dense(b)
    for lam in np.arange(1, 10) / 10:
        mixed = von_neumann_entropy_dense(a.mix(b, lam))
        # concavity from both sides, and the binary-entropy cap on the gain
        assert mixed >= lam * sa + (1 - lam) * sb - 1e-9
        assert mixed <= lam * sa + (1 - lam) * sb + binary_entropy(lam) + 1e-9


# -- energy -----------------------------------------------------------------------

def test_energy_examples():
    osc = harmonic_oscillator(1.0, 8)
    assert energy(SpectralState.from_weights([1.0]), osc) == 0
    assert energy(SpectralState.from_weights([0.5, 0.5], [0, 2]), osc) == 1.0
    with pytest.raises(InvalidArgument):
        energy(SpectralState.from_weights([1.0], [8]), osc)


def test_json_round_trip():
    s = SpectralState.from_weights([0.25, 0.75], [4, 2])
    back = SpectralState.from_json(s.to_json())
    assert back.weights.tolist() == s.weights.tolist()
    assert back.labels.tolist() == s.labels.tolist()
