"""Density operators, entropies and distances.

Two representations are used.  :class:`SpectralState` stores only the
eigenvalues (``weights``) together with integer labels naming the orthonormal
eigenvectors; label ``k`` is the ``k``-th eigenvector of the Hamiltonian, so
the energy of the state is a weighted average of levels.  :class:`DenseState`
is an explicit Hermitian matrix, kept small, for checks that involve
non-commuting operators.

Entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidArgument, InvariantViolation, NumericFailure
from .spectra import Spectrum

SUM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
DENSE_DIM_CAP = 64


@dataclass(frozen=True, eq=False)
class SpectralState:
    """A state diagonal in a labelled orthonormal family.

    On construction the weights are put in nonincreasing order (stable, so
    ties keep their input order) and the labels are permuted with them.
    """

    weights: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).ravel()
        lab = np.array(self.labels, dtype=np.int64).ravel()
        if w.size == 0:
            raise InvalidArgument("a state needs at least one weight")
        if lab.size != w.size:
            raise InvalidArgument("weights and labels differ in length")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise InvariantViolation("weights must be finite and nonnegative")
        if abs(w.sum() - 1.0) > SUM_TOL:
            raise InvariantViolation(f"weights sum to {w.sum()!r}, not 1")
        if np.any(lab < 0):
            raise InvariantViolation("labels must be nonnegative")
        if np.unique(lab).size != lab.size:
            raise InvariantViolation("labels must be distinct")
        order = np.argsort(-w, kind="stable")
        w, lab = w[order], lab[order]
        w.setflags(write=False)
        lab.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "labels", lab)

    @classmethod
    def from_weights(cls, weights, labels=None, normalize=False) -> "SpectralState":
        w = np.asarray(weights, dtype=float)
        if normalize:
            w = w / w.sum()
        if labels is None:
            labels = np.arange(w.size)
        return cls(w, labels)

    @property
    def dim(self) -> int:
        return int(self.weights.size)

    def relabel(self, labels: Sequence[int]) -> "SpectralState":
        """Same weights attached, in canonical order, to new labels."""
        return SpectralState(self.weights, labels)

    def to_dense(self, dim: Optional[int] = None) -> "DenseState":
        """Diagonal matrix with weight ``w`` at position ``label``."""
        d = int(self.labels.max()) + 1 if dim is None else dim
        if self.labels.max() >= d:
            raise InvalidArgument("dimension too small for the labels")
        m = np.zeros((d, d), dtype=complex)
        m[self.labels, self.labels] = self.weights
        return DenseState(m)

    def to_json(self) -> dict:
        return {"weights": [float(x) for x in self.weights],
                "labels": [int(x) for x in self.labels]}

    @classmethod
    def from_json(cls, data: dict) -> "SpectralState":
        try:
            weights = data["weights"]
        except (KeyError, TypeError):
            raise InvalidArgument("state JSON needs a 'weights' array") from None
        return cls.from_weights(weights, data.get("labels"))


@dataclass(frozen=True, eq=False)
class DenseState:
    matrix: np.ndarray
    dim_cap: int = DENSE_DIM_CAP

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidArgument("matrix must be square")
        if m.shape[0] > self.dim_cap:
            raise InvalidArgument(f"dimension {m.shape[0]} exceeds cap {self.dim_cap}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise InvariantViolation("matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > SUM_TOL:
            raise InvariantViolation("trace is not 1")
        m = 0.5 * (m + m.conj().T)
        if hermitian_eigenvalues(m)[-1] < -PSD_TOL:
            raise InvariantViolation("matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def pure(cls, vector) -> "DenseState":
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    def mix(self, other: "DenseState", lam: float) -> "DenseState":
        """``lam * self + (1 - lam) * other``."""
        return DenseState(lam * self.matrix + (1 - lam) * other.matrix)


# -- eigensolver ------------------------------------------------------------

def hermitian_eigenvalues(matrix, vectors=False, max_sweeps=100, cap=DENSE_DIM_CAP):
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.

    Returns the eigenvalues in nonincreasing order, and with ``vectors=True``
    also the unitary whose columns are the matching eigenvectors.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument("matrix must be square")
    n = a.shape[0]
    if n > cap:
        raise InvalidArgument(f"dimension {n} exceeds cap {cap}")
    scale = np.max(np.abs(a), initial=0.0)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > HERMITIAN_TOL * max(1.0, scale):
        raise InvalidArgument("matrix is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if n and scale > 0:
        a, v = _jacobi(a, v, max_sweeps, scale)
    evals = a.diagonal().real.copy()
    order = np.argsort(-evals, kind="stable")
    if vectors:
        return evals[order], v[:, order]
    return evals[order]


def _jacobi(a, v, max_sweeps, scale):
    n = a.shape[0]
    threshold = 1e-15 * scale
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(a.diagonal()))
        if off.max(initial=0.0) <= threshold:
            return a, v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= threshold:
                    continue
                # phase so the pivot becomes real, then a real Givens rotation
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * math.atan2(2.0 * r, app - aqq)
                c, s = math.cos(theta), math.sin(theta)
                g = np.array([[c, -s], [s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    off = np.abs(a - np.diag(a.diagonal())).max(initial=0.0)
    if off > threshold * 1e3:
        raise NumericFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
    return a, v


# -- entropies ----------------------------------------------------------------

def binary_entropy(eps: float) -> float:
    """``-eps log2 eps - (1-eps) log2 (1-eps)``, zero at both endpoints.

    The same function appears as both ``g`` and ``h`` in the literature.
    """
    if not 0.0 <= eps <= 1.0:
        raise InvalidArgument(f"eps={eps!r} outside [0, 1]")
    # fixed summation order makes g(eps) == g(1 - eps) bit for bit
    # whenever 1 - eps is exact
    a = min(eps, 1.0 - eps)
    return _xlog2x_neg(a) + _xlog2x_neg(1.0 - a)


def _xlog2x_neg(x):
    return 0.0 if x <= 0.0 else -x * math.log2(x)


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy_spectral(state: SpectralState) -> float:
    return shannon_entropy(state.weights)


def clamp_probabilities(evals, tol=PSD_TOL):
    evals = np.asarray(evals, dtype=float)
    if evals.size and (evals.min() < -tol or evals.max() > 1 + tol):
        raise NumericFailure("eigenvalues outside [0, 1] beyond tolerance")
    return np.clip(evals, 0.0, 1.0)


def von_neumann_entropy_dense(state: DenseState) -> float:
    return shannon_entropy(clamp_probabilities(hermitian_eigenvalues(state.matrix)))


# -- distances and energy -------------------------------------------------------

def padded_weights(a: SpectralState, b: SpectralState):
    """Canonically ordered weight vectors zero-padded to a common length."""
    d = max(a.dim, b.dim)
    r = np.zeros(d)
    s = np.zeros(d)
    r[:a.dim] = a.weights
    s[:b.dim] = b.weights
    return r, s


def trace_distance_spectral(a: SpectralState, b: SpectralState) -> float:
    """Half the l1 distance between the ordered spectra."""
    r, s = padded_weights(a, b)
    return float(min(1.0, 0.5 * np.abs(r - s).sum()))


def trace_distance_dense(a: DenseState, b: DenseState) -> float:
    if a.dim != b.dim:
        raise InvalidArgument("states have different dimensions")
    mu = hermitian_eigenvalues(a.matrix - b.matrix)
    return float(min(1.0, 0.5 * np.abs(mu).sum()))


def energy(state: SpectralState, spec: Spectrum) -> float:
    """Mean energy ``sum w_i * levels[label_i]``."""
    if state.labels.max() >= spec.truncation_dim:
        bad = int(state.labels.max())
        raise InvalidArgument(f"label {bad} outside spectrum of size {spec.truncation_dim}")
    return float(np.dot(state.weights, spec.levels[state.labels]))
