"""Alicki-Fannes-Winter coupling of two states given in spectral form.

For ``rho = sum r_i |e_i><e_i|`` and ``sigma = sum s_i |f_i><f_i|`` with both
weight sequences in nonincreasing order, the construction pairs the ``i``-th
eigenvector of ``rho`` with the ``i``-th eigenvector of ``sigma`` and writes

    omega = |phi><phi| + eps * Delta1 (x) Delta2,
    |phi> = sum_i sqrt(min(r_i, s_i)) |e_i>|f_i>,

where ``eps`` is half the l1 distance of the ordered spectra and ``Delta1``,
``Delta2`` are the normalised leftovers ``rho - tr_2 |phi><phi|`` and
``sigma - tr_1 |phi><phi|``.  ``omega`` has marginals ``rho`` and ``sigma``.

``omega`` lives on a ``d**2``-dimensional space but is never built as a
matrix here.  ``|phi><phi|`` only touches the ``d`` paired vectors
``|e_i f_i>``, and ``Delta1 (x) Delta2`` is diagonal in the product basis.  So
the spectrum is that of a ``d x d`` block (rank one plus diagonal) together
with the numbers ``eps * Delta1_i * Delta2_j`` for ``i != j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import HypothesisViolation, InvalidArgument
from .spectra import Spectrum
from .states import (DENSE_DIM_CAP, SpectralState, binary_entropy, clamp_probabilities,
                     energy, hermitian_eigenvalues, padded_weights, shannon_entropy,
                     von_neumann_entropy_spectral)


def _pad_labels(labels: np.ndarray, d: int) -> np.ndarray:
    """Extend ``labels`` to length ``d`` with the smallest unused integers."""
    if labels.size >= d:
        return labels.copy()
    used = set(labels.tolist())
    extra = []
    k = 0
    while len(extra) < d - labels.size:
        if k not in used:
            extra.append(k)
        k += 1
    return np.concatenate([labels, np.array(extra, dtype=np.int64)])


@dataclass(frozen=True, eq=False)
class AfwCoupling:
    """All ingredients of the coupling, index-aligned with the pairing.

    ``delta1_weights[i]`` belongs to ``e_labels[i]`` and ``delta2_weights[i]``
    to ``f_labels[i]``; these arrays are *not* reordered, so the identities
    ``r_i = phi_i + eps * delta1_i`` can be read off position by position.
    The ``delta1`` / ``delta2`` properties give the same operators as
    canonical :class:`SpectralState` objects.

    When the two spectra coincide, ``epsilon == 0`` and there are no deltas.
    """

    rho: SpectralState
    sigma: SpectralState
    phi_weights: np.ndarray
    epsilon: float
    e_labels: np.ndarray
    f_labels: np.ndarray
    delta1_weights: Optional[np.ndarray]
    delta2_weights: Optional[np.ndarray]

    @property
    def degenerate(self) -> bool:
        return self.delta1_weights is None

    @property
    def dim(self) -> int:
        return int(self.phi_weights.size)

    @property
    def phi_trace(self) -> float:
        return float(self.phi_weights.sum())

    @property
    def paired_labels(self) -> List[Tuple[int, int]]:
        return list(zip(self.e_labels.tolist(), self.f_labels.tolist()))

    @property
    def delta1(self) -> Optional[SpectralState]:
        if self.degenerate:
            return None
        return SpectralState(self.delta1_weights, self.e_labels)

    @property
    def delta2(self) -> Optional[SpectralState]:
        if self.degenerate:
            return None
        return SpectralState(self.delta2_weights, self.f_labels)


def build_coupling(rho: SpectralState, sigma: SpectralState) -> AfwCoupling:
    r, s = padded_weights(rho, sigma)
    d = r.size
    e_labels = _pad_labels(rho.labels, d)
    f_labels = _pad_labels(sigma.labels, d)
    overlap = np.minimum(r, s)
    eps = 0.5 * float(np.abs(r - s).sum())
    # min() returns one of its arguments exactly, so one of the two
    # residuals is exactly zero at every index
    res1 = r - overlap
    res2 = s - overlap
    t1, t2 = res1.sum(), res2.sum()
    if eps == 0.0 or t1 == 0.0 or t2 == 0.0:
        return AfwCoupling(rho, sigma, overlap, eps, e_labels, f_labels, None, None)
    # normalise by the realised residual mass so each delta has unit trace
    # to rounding; eps * delta_i still reproduces the residual to ~1e-16
    return AfwCoupling(rho, sigma, overlap, eps, e_labels, f_labels, res1 / t1, res2 / t2)


@dataclass(frozen=True, eq=False)
class OmegaStructure:
    sqrt_phi: np.ndarray
    diag_correction: np.ndarray
    epsilon: float
    delta1_weights: np.ndarray
    delta2_weights: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.sqrt_phi.size)

    @property
    def diag_block(self) -> np.ndarray:
        """Action of omega on span{|e_i f_i>}."""
        return np.outer(self.sqrt_phi, self.sqrt_phi) + np.diag(self.diag_correction)

    @property
    def offdiag_eigs(self) -> np.ndarray:
        """``eps * Delta1_i * Delta2_j`` for ``i != j`` in row-major order."""
        full = self.epsilon * np.outer(self.delta1_weights, self.delta2_weights)
        return full[~np.eye(self.dim, dtype=bool)]

    def trace(self) -> float:
        rest = self.epsilon * (self.delta1_weights.sum() * self.delta2_weights.sum()
                               - np.dot(self.delta1_weights, self.delta2_weights))
        return float(np.sum(self.sqrt_phi ** 2) + self.diag_correction.sum() + rest)


def omega_structure(c: AfwCoupling) -> OmegaStructure:
    if c.degenerate:
        raise InvalidArgument("degenerate coupling (eps = 0) has no omega structure")
    d1, d2 = c.delta1_weights, c.delta2_weights
    return OmegaStructure(np.sqrt(c.phi_weights), c.epsilon * d1 * d2, c.epsilon, d1, d2)


def rank_one_update_eigenvalues(diag, z) -> np.ndarray:
    """Eigenvalues of ``diag(diag) + z z^T`` (real), nonincreasing.

    Deflates zero components and repeated diagonal entries, then finds one
    root of the secular equation ``1 + sum z_k^2 / (c_k - x) = 0`` in each gap.
    """
    c = np.asarray(diag, dtype=float)
    z = np.asarray(z, dtype=float)
    out = list(c[z == 0.0])
    active = z != 0.0
    c, z = c[active], z[active]
    if c.size:
        order = np.argsort(c, kind="stable")
        c, z2 = c[order], z[order] ** 2
        uc, start = np.unique(c, return_index=True)
        counts = np.diff(np.append(start, c.size))
        weights = np.add.reduceat(z2, start)
        for value, k in zip(uc, counts):
            out.extend([value] * (k - 1))

        total = weights.sum()
        for k, lo in enumerate(uc):
            # root written as lo + mu so poles near lo keep full precision
            shifted = uc - lo
            width = shifted[k + 1] if k + 1 < uc.size else total

            def secular(mu, shifted=shifted):
                return 1.0 + np.sum(weights / (shifted - mu))

            a = width * 1e-30
            b = width if k + 1 == uc.size else np.nextafter(width, 0.0)
            if secular(a) >= 0:
                mu = a
            elif secular(b) <= 0:
                mu = b
            else:
                mu = brentq(secular, a, b, xtol=1e-300, rtol=1e-15, maxiter=500)
            out.append(lo + mu)
    return np.sort(np.array(out, dtype=float))[::-1]


def block_eigenvalues(s: OmegaStructure) -> np.ndarray:
    if s.dim <= DENSE_DIM_CAP:
        return hermitian_eigenvalues(s.diag_block)
    return rank_one_update_eigenvalues(s.diag_correction, s.sqrt_phi)


def omega_entropy(s: OmegaStructure) -> float:
    """Von Neumann entropy of omega in bits, from its block structure."""
    block = shannon_entropy(clamp_probabilities(block_eigenvalues(s)))
    # sum over all i, j of x log x for x = eps a_i b_j factorises; the
    # diagonal i == j part belongs to the block and is subtracted
    a, b, eps = s.delta1_weights, s.delta2_weights, s.epsilon
    sa, sb = a.sum(), b.sum()
    full = eps * sa * sb * np.log2(eps) - eps * sb * shannon_entropy(a) - eps * sa * shannon_entropy(b)
    diag = eps * a * b
    diag = diag[diag > 0]
    off = -(full - float(np.sum(diag * np.log2(diag))))
    return float(block + max(off, 0.0))


def delta_energy(c: AfwCoupling, spec: Spectrum) -> Tuple[float, float]:
    """Mean energies of ``Delta1`` and ``Delta2``."""
    if c.degenerate:
        raise InvalidArgument("degenerate coupling (eps = 0) has no deltas")
    return energy(c.delta1, spec), energy(c.delta2, spec)


@dataclass(frozen=True)
class Prop1Report:
    bound_holds: bool
    energy_sum: Optional[float]
    limit: float
    epsilon: float
    degenerate: bool

    @property
    def margin(self) -> Optional[float]:
        return None if self.energy_sum is None else self.limit - self.energy_sum


def check_bounded_labels(state: SpectralState, spec: Spectrum, E: float) -> None:
    """Raise unless every label of ``state`` names a level at most ``E``."""
    labels = state.labels
    if labels.max() >= spec.truncation_dim:
        raise InvalidArgument(f"label {int(labels.max())} outside spectrum")
    over = labels[spec.levels[labels] > E]
    if over.size:
        lab = int(over[0])
        raise HypothesisViolation(
            f"label {lab} has energy {spec.levels[lab]!r} > E = {E!r}", lab)


def check_prop1(rho: SpectralState, sigma: SpectralState, spec: Spectrum,
                E: float, tol: float = 1e-9) -> Prop1Report:
    """Check ``tr(H Delta1) + tr(H Delta2) <= 2E`` for mixtures of level-<=E states."""
    if not E > 0:
        raise InvalidArgument("E must be positive")
    check_bounded_labels(rho, spec, E)
    check_bounded_labels(sigma, spec, E)
    c = build_coupling(rho, sigma)
    if c.degenerate:
        return Prop1Report(True, None, 2 * E, c.epsilon, True)
    e1, e2 = delta_energy(c, spec)
    return Prop1Report(e1 + e2 <= 2 * E + tol, e1 + e2, 2 * E, c.epsilon, False)


def coupling_report(rho: SpectralState, sigma: SpectralState,
                    spec: Optional[Spectrum] = None, tol: float = 1e-9) -> dict:
    """Flat summary of one coupling, as emitted by the ``afw`` subcommand."""
    c = build_coupling(rho, sigma)
    s_rho = von_neumann_entropy_spectral(rho)
    s_sigma = von_neumann_entropy_spectral(sigma)
    report = {"status": "degenerate" if c.degenerate else "ok",
              "epsilon": c.epsilon, "phi_trace": c.phi_trace,
              "delta1_energy": None, "delta2_energy": None,
              "s_rho": s_rho, "s_sigma": s_sigma}
    if c.degenerate:
        report.update(s_omega=0.0, bound_rhs=0.0, holds=True)
        return report
    if spec is not None:
        report["delta1_energy"], report["delta2_energy"] = delta_energy(c, spec)
    s_omega = omega_entropy(omega_structure(c))
    rhs = (c.epsilon * (von_neumann_entropy_spectral(c.delta1)
                        + von_neumann_entropy_spectral(c.delta2))
           + binary_entropy(c.epsilon))
    holds = abs(s_rho - s_sigma) <= s_omega + tol and s_omega <= rhs + tol
    report.update(s_omega=s_omega, bound_rhs=rhs, holds=bool(holds))
    return report
