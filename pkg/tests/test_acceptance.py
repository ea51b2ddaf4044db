"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.optimize import brentq

from entropy_bounds import (DenseState, SpectralState, ThresholdNotReached, binary_entropy,
                            build_coupling, check_prop1, compare_bounds,
                            find_contradiction_energy, from_levels, gamma_entropy,
                            harmonic_oscillator,
                            omega_entropy, omega_structure, power_law, thermal_for_energy,
                            trace_distance_dense, trace_distance_spectral,
                            von_neumann_entropy_spectral)
from entropy_bounds.checks import dense_omega, random_density_matrix
from entropy_bounds.maxent import _cached_solve
from entropy_bounds.sampling import (bounded_labels, pair_at_distance, random_bounded_pair,
                                     random_state)
from entropy_bounds.states import padded_weights, shannon_entropy

pytestmark = pytest.mark.acceptance


def report(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if detail:
        line += f" [{detail}]"
    print(line)
    assert ok, line


def oscillator_entropy(E):
    """Closed form for the unit-gap oscillator (geometric distribution)."""
    return (1 + E) * math.log2(1 + E) - E * math.log2(E)


def test_1_oscillator_gibbs_oracle():
    _cached_solve.cache_clear()
    spec = harmonic_oscillator(1.0, 64)
    t0 = time.perf_counter()
    s1 = thermal_for_energy(spec, 1.0, 1e-10)
    s2 = thermal_for_energy(spec, 2.0, 1e-10)
    elapsed = time.perf_counter() - t0
    exact2 = 3 * math.log2(3) - 2
    errs = (abs(s1.beta - math.log(2)), abs(s1.entropy_bits - 2.0),
            abs(s2.entropy_bits - exact2))
    ok = max(errs) <= 1e-8 and elapsed < 1.0
    report(1, "oscillator Gibbs oracle", ok,
           f"max err {max(errs):.2e}, {elapsed:.3f} s")


def test_2_afw_identities():
    rng = np.random.default_rng(2)
    worst, count = 0.0, 0
    t0 = time.perf_counter()
    for d in (2, 5, 20, 200):
        for _ in range(1000):
            rho = random_state(rng, np.arange(d), int(rng.integers(1, d + 1)))
            sigma = random_state(rng, np.arange(d), int(rng.integers(1, d + 1)))
            c = build_coupling(rho, sigma)
            r, s = padded_weights(rho, sigma)
            errs = [abs(np.minimum(r, s).sum() - (1 - c.epsilon)),
                    abs(c.phi_trace - (1 - c.epsilon))]
            if not c.degenerate:
                errs += [np.abs(r - (c.phi_weights + c.epsilon * c.delta1_weights)).max(),
                         np.abs(s - (c.phi_weights + c.epsilon * c.delta2_weights)).max(),
                         abs(c.delta1.weights.sum() - 1), abs(c.delta2.weights.sum() - 1)]
            worst = max(worst, max(errs))
            count += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 10.0
    report(2, "AFW identity suite", ok,
           f"{count} pairs, max err {worst:.2e}, {elapsed:.2f} s")


def test_3_structured_omega_matches_dense():
    rng = np.random.default_rng(3)
    worst, count = 0.0, 0
    while count < 100:
        d = int(rng.integers(2, 9))
        c = build_coupling(random_state(rng, np.arange(d), int(rng.integers(1, d + 1))),
                           random_state(rng, np.arange(d), int(rng.integers(1, d + 1))))
        if c.degenerate:
            continue
        dense = np.clip(np.linalg.eigvalsh(dense_omega(c)), 0.0, 1.0)
        worst = max(worst, abs(omega_entropy(omega_structure(c)) - shannon_entropy(dense)))
        count += 1
    report(3, "structured omega entropy vs dense d^2 x d^2", worst <= 1e-9,
           f"{count} couplings, max err {worst:.2e}")


def test_4_central_inequality():
    rng = np.random.default_rng(4)
    violations, count = 0, 0
    while count < 1000:
        d = int(rng.choice([2, 3, 5, 8, 20, 50]))
        rho = random_state(rng, np.arange(d), int(rng.integers(1, d + 1)))
        sigma = random_state(rng, np.arange(d), int(rng.integers(1, d + 1)))
        c = build_coupling(rho, sigma)
        if c.degenerate:
            continue
        s_omega = omega_entropy(omega_structure(c))
        diff = abs(von_neumann_entropy_spectral(rho) - von_neumann_entropy_spectral(sigma))
        rhs = (c.epsilon * (von_neumann_entropy_spectral(c.delta1)
                            + von_neumann_entropy_spectral(c.delta2))
               + binary_entropy(c.epsilon))
        violations += diff > s_omega + 1e-9
        violations += s_omega > rhs + 1e-9
        count += 1
    report(4, "entropy difference <= S(omega) <= eps S(D1 x D2) + h(eps)",
           violations == 0, f"{count} couplings, {violations} violations")


def test_5_delta_energy_bound():
    rng = np.random.default_rng(5)
    violations = 0
    for spec in (harmonic_oscillator(1.0, 64), power_law(1.0, 2.0, 64)):
        count = 0
        while count < 1000:
            E = float(rng.uniform(1.0, 40.0))
            rho, sigma = random_bounded_pair(rng, spec, E)
            rep = check_prop1(rho, sigma, spec, E)
            if rep.degenerate:
                # identical spectra leave the Delta states undefined
                continue
            violations += rep.energy_sum > 2 * E + 1e-9
            count += 1
    # equality: rho on the level-E label, sigma split between it and the ground state
    spec = harmonic_oscillator(1.0, 64)
    E = 3.0
    rho = SpectralState.from_weights([1.0], [3])
    sigma = SpectralState.from_weights([0.5, 0.5], [0, 3])
    witness = check_prop1(rho, sigma, spec, E)
    equal = abs(witness.energy_sum - 2 * E) <= 1e-12
    report(5, "Delta energies sum to at most 2E", violations == 0 and equal,
           f"2000 pairs, {violations} violations, witness sum {witness.energy_sum!r}")


def test_6_mixture_bound_validity_and_dominance():
    rng = np.random.default_rng(6)
    # spacing 0.01 so that even E = 0.5 has 51 admissible levels and
    # every eps on the grid is attainable
    spec = harmonic_oscillator(0.01, 64)
    eps_grid = [round(0.05 * k, 2) for k in range(1, 20)]
    validity = dominance = rows = 0
    t0 = time.perf_counter()
    for E in (0.5, 1.0, 2.0, 5.0):
        labels = bounded_labels(spec.extended(int(E / 0.01) + 2), E)
        for eps in eps_grid:
            for _ in range(50):
                rho, sigma = pair_at_distance(rng, labels, eps)
                rep = compare_bounds(rho, sigma, spec, E, 1e-10)
                assert abs(rep.epsilon - eps) <= 1e-9
                validity += rep.actual_diff > rep.mixture_bound + 1e-9
                dominance += rep.mixture_bound > rep.winter + 1e-9
                rows += 1
    elapsed = time.perf_counter() - t0
    ok = validity == 0 and dominance == 0 and elapsed < 60.0
    report(6, "mixture bound valid and no larger than Winter's", ok,
           f"{rows} pairs, validity {validity}, dominance {dominance}, {elapsed:.1f} s")


def test_7_contradiction_threshold():
    spec = harmonic_oscillator(1.0, 64)
    cert = find_contradiction_energy(spec, 1.0, 2.0)
    target = 2.0 + 2 * 2.0 + 1.0
    oracle = brentq(lambda x: oscillator_entropy(x) - target, 1.0, 1e4, xtol=1e-12)
    rel = abs(cert.threshold_E_tilde - oracle) / oracle
    finite = from_levels([0.0, 1.0, 2.0])
    with pytest.raises(ThresholdNotReached) as info:
        find_contradiction_energy(finite, 1.0, 2.0)
    stopped = info.value.partial.status == "threshold-not-reached"
    report(7, "contradiction threshold matches closed form", rel <= 0.01 and stopped,
           f"E~={cert.threshold_E_tilde:.8f} oracle={oracle:.8f} rel {rel:.1e}")


def test_8_mirsky_and_max_entropy():
    rng = np.random.default_rng(8)
    worst = -math.inf
    for _ in range(500):
        d = int(rng.integers(2, 17))
        a = DenseState(random_density_matrix(rng, d, int(rng.integers(1, d + 1))))
        b = DenseState(random_density_matrix(rng, d, int(rng.integers(1, d + 1))))
        pa = np.clip(np.linalg.eigvalsh(a.matrix), 0, None)
        pb = np.clip(np.linalg.eigvalsh(b.matrix), 0, None)
        sa = SpectralState.from_weights(pa / pa.sum())
        sb = SpectralState.from_weights(pb / pb.sum())
        worst = max(worst, trace_distance_spectral(sa, sb) - trace_distance_dense(a, b))
    mirsky_ok = worst <= 1e-10

    spec = harmonic_oscillator(1.0, 64)
    excess = -math.inf
    for _ in range(200):
        E = float(rng.uniform(0.2, 10.0))
        w = rng.exponential(size=32)
        w /= w.sum()
        mean = float(np.dot(w, np.arange(32)))
        if mean > E:
            # mix with the ground state to bring the energy down to E
            lam = E / mean
            w = lam * w
            w[0] += 1 - lam
        state = SpectralState.from_weights(w / w.sum())
        bound = gamma_entropy(spec, E, 1e-12)
        assert abs(bound - oscillator_entropy(E)) <= 1e-8
        excess = max(excess, von_neumann_entropy_spectral(state) - bound)
    maxent_ok = excess <= 1e-9
    report(8, "Mirsky and maximum-entropy dominance", mirsky_ok and maxent_ok,
           f"mirsky excess {worst:.1e}, entropy excess {excess:.3f}")


def test_9_check_is_deterministic(tmp_path):
    outputs = []
    for k in range(2):
        out = tmp_path / f"check{k}.csv"
        proc = subprocess.run([sys.executable, "-m", "entropy_bounds.cli", "check",
                               "--seed", "12345", "--set", "sample_count=20",
                               "--out", str(out)], capture_output=True)
        assert proc.returncode == 0, proc.stderr.decode()
        outputs.append(out.read_bytes())
    report(9, "check subcommand is byte-identical across runs",
           outputs[0] == outputs[1] and len(outputs[0]) > 0,
           f"{len(outputs[0])} bytes")
