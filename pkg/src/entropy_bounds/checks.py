"""Seeded property suite, run by the ``check`` subcommand.

Each check returns a :class:`CheckResult` counting the sampled cases and the
violations of its inequality or identity.  Output depends only on the seed
and the sample count.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, List

import numpy as np

from . import afw, bounds, contradiction, maxent, sampling, states
from .spectra import harmonic_oscillator, power_law


@dataclass
class CheckResult:
    name: str
    cases: int
    violations: int
    max_excess: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        data = asdict(self)
        data["passed"] = self.passed
        return data


class _Tally:
    def __init__(self, name, tol):
        self.name, self.tol = name, tol
        self.cases = self.violations = 0
        self.max_excess = -math.inf

    def add(self, excess):
        """Record ``lhs - rhs`` of an inequality ``lhs <= rhs``."""
        self.cases += 1
        self.max_excess = max(self.max_excess, float(excess))
        if excess > self.tol:
            self.violations += 1

    def result(self):
        return CheckResult(self.name, self.cases, self.violations,
                           0.0 if self.cases == 0 else self.max_excess)


def check_gibbs_oracle(rng, n) -> CheckResult:
    t = _Tally("gibbs_oscillator_closed_form", 1e-8)
    spec = harmonic_oscillator(1.0, 64)
    for e in np.sort(rng.uniform(0.05, 50.0, size=max(n // 10, 3))):
        s = maxent.thermal_for_energy(spec, float(e), 1e-12).entropy_bits
        exact = (1 + e) * math.log2(1 + e) - e * math.log2(e)
        t.add(abs(s - exact))
    return t.result()


def check_afw_identities(rng, n) -> CheckResult:
    t = _Tally("afw_identities", 1e-12)
    for d in (2, 5, 20, 200):
        for _ in range(n):
            rho = sampling.random_state(rng, np.arange(d))
            sigma = sampling.random_state(rng, np.arange(d))
            c = afw.build_coupling(rho, sigma)
            r, s = states.padded_weights(rho, sigma)
            t.add(abs(c.phi_trace - (1 - c.epsilon)))
            if c.degenerate:
                continue
            t.add(np.abs(r - c.phi_weights - c.epsilon * c.delta1_weights).max())
            t.add(np.abs(s - c.phi_weights - c.epsilon * c.delta2_weights).max())
            t.add(abs(c.delta1_weights.sum() - 1))
            t.add(abs(c.delta2_weights.sum() - 1))
    return t.result()


def dense_omega(c: afw.AfwCoupling) -> np.ndarray:
    """Explicit ``d**2 x d**2`` coupling in the product basis ``|e_i>|f_j>``."""
    d = c.dim
    phi = np.zeros(d * d)
    phi[np.arange(d) * (d + 1)] = np.sqrt(c.phi_weights)
    return (np.outer(phi, phi)
            + c.epsilon * np.kron(np.diag(c.delta1_weights), np.diag(c.delta2_weights)))


def check_structured_omega(rng, n) -> CheckResult:
    t = _Tally("structured_omega_vs_dense", 1e-9)
    for _ in range(n):
        d = int(rng.integers(2, 9))
        c = afw.build_coupling(sampling.random_state(rng, np.arange(d)),
                               sampling.random_state(rng, np.arange(d)))
        if c.degenerate:
            continue
        ev = np.clip(np.linalg.eigvalsh(dense_omega(c)), 0, 1)
        t.add(abs(afw.omega_entropy(afw.omega_structure(c)) - states.shannon_entropy(ev)))
    return t.result()


def check_central_inequality(rng, n) -> CheckResult:
    t = _Tally("central_inequality", 1e-9)
    for _ in range(n):
        d = int(rng.choice([2, 5, 20]))
        rho = sampling.random_state(rng, np.arange(d), int(rng.integers(1, d + 1)))
        sigma = sampling.random_state(rng, np.arange(d), int(rng.integers(1, d + 1)))
        c = afw.build_coupling(rho, sigma)
        if c.degenerate:
            continue
        s_omega = afw.omega_entropy(afw.omega_structure(c))
        diff = abs(states.von_neumann_entropy_spectral(rho)
                   - states.von_neumann_entropy_spectral(sigma))
        rhs = (c.epsilon * (states.von_neumann_entropy_spectral(c.delta1)
                            + states.von_neumann_entropy_spectral(c.delta2))
               + states.binary_entropy(c.epsilon))
        t.add(diff - s_omega)
        t.add(s_omega - rhs)
    return t.result()


def check_delta_energy(rng, n) -> CheckResult:
    t = _Tally("delta_energy_at_most_2E", 1e-9)
    for spec in (harmonic_oscillator(1.0, 64), power_law(1.0, 2.0, 64)):
        for _ in range(n):
            E = float(rng.uniform(1.0, 30.0))
            rho, sigma = sampling.random_bounded_pair(rng, spec, E)
            rep = afw.check_prop1(rho, sigma, spec, E)
            if not rep.degenerate:
                t.add(rep.energy_sum - rep.limit)
    return t.result()


def check_mixture_bound(rng, n) -> CheckResult:
    t = _Tally("mixture_bound_validity_and_dominance", 1e-9)
    spec = harmonic_oscillator(0.01, 64)
    for E in (0.5, 2.0):
        labels = sampling.bounded_labels(spec, E)
        for eps in (0.05, 0.35, 0.65, 0.95):
            mix = bounds.mixture_bound(eps, E, spec, 1e-10)
            win = bounds.winter_bound(eps, E, spec, 1e-10)
            t.add(mix - win)
            for _ in range(max(n // 20, 2)):
                rho, sigma = sampling.pair_at_distance(rng, labels, eps)
                rep = bounds.compare_bounds(rho, sigma, spec, E, 1e-10)
                t.add(rep.actual_diff - rep.mixture_bound)
    return t.result()


def check_contradiction(rng, n) -> CheckResult:
    t = _Tally("contradiction_threshold_bracket", 1e-9)
    spec = harmonic_oscillator(1.0, 64)
    for s_rho in np.sort(rng.uniform(0.0, 4.0, size=3)):
        cert = contradiction.find_contradiction_energy(spec, 1.0, float(s_rho), 1e-8)
        t.add(cert.target - cert.gamma_entropy_at_threshold)
        t.add(cert.gamma_entropy_at_lower - cert.target)
    return t.result()


def check_mirsky(rng, n) -> CheckResult:
    t = _Tally("mirsky_spectral_le_dense", 1e-10)
    for _ in range(n):
        d = int(rng.integers(2, 17))
        a = states.DenseState(random_density_matrix(rng, d))
        b = states.DenseState(random_density_matrix(rng, d))
        ea = states.SpectralState.from_weights(_probabilities(a))
        eb = states.SpectralState.from_weights(_probabilities(b))
        t.add(states.trace_distance_spectral(ea, eb) - states.trace_distance_dense(a, b))
    return t.result()


def check_maxent_dominance(rng, n) -> CheckResult:
    t = _Tally("max_entropy_dominance", 1e-9)
    spec = harmonic_oscillator(1.0, 64)
    for _ in range(n):
        E = float(rng.uniform(0.5, 10.0))
        state = sampling.random_state(rng, np.arange(32), int(rng.integers(1, 33)))
        e = states.energy(state, spec)
        if e > E:
            # pull mass to the ground state until the energy fits
            lam = E / e
            w = lam * state.weights
            labels = state.labels
            if 0 in labels:
                w[labels == 0] += 1 - lam
            else:
                w = np.append(w, 1 - lam)
                labels = np.append(labels, 0)
            state = states.SpectralState(w / w.sum(), labels)
        t.add(states.von_neumann_entropy_spectral(state) - maxent.gamma_entropy(spec, E, 1e-12))
    return t.result()


def random_density_matrix(rng, d, rank=None) -> np.ndarray:
    """``G G^* / tr`` for a complex Gaussian ``G``."""
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def _probabilities(state: states.DenseState) -> np.ndarray:
    p = states.clamp_probabilities(states.hermitian_eigenvalues(state.matrix))
    return p / p.sum()


CHECKS: List[Callable] = [
    check_gibbs_oracle, check_afw_identities, check_structured_omega,
    check_central_inequality, check_delta_energy, check_mixture_bound, check_contradiction,
    check_mirsky, check_maxent_dominance,
]


def run_all(seed: int = 0, n: int = 100) -> List[CheckResult]:
    """Run every check with its own generator spawned from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(len(CHECKS))
    return [check(np.random.default_rng(ss), n) for check, ss in zip(CHECKS, children)]
