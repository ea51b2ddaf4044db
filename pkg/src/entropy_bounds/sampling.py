"""Seeded random states for experiments and property checks.

Weights are normalised i.i.d. exponentials (a flat Dirichlet draw) over a
label subset; every draw goes through a ``numpy.random.Generator`` so runs
are reproducible from the seed.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .errors import InvalidArgument
from .maxent import thermal_for_energy
from .spectra import Spectrum
from .states import SpectralState


def random_state(rng: np.random.Generator, labels: Sequence[int],
                 size: int = None) -> SpectralState:
    """Random weights on ``size`` labels drawn without replacement from ``labels``."""
    labels = np.asarray(labels, dtype=np.int64)
    size = labels.size if size is None else size
    chosen = rng.choice(labels, size=size, replace=False)
    w = rng.exponential(size=size)
    return SpectralState(w / w.sum(), chosen)


def bounded_labels(spec: Spectrum, E: float) -> np.ndarray:
    """Labels whose level is at most ``E``."""
    return np.flatnonzero(spec.levels <= E)


def random_bounded_pair(rng: np.random.Generator, spec: Spectrum,
                        E: float) -> Tuple[SpectralState, SpectralState]:
    """Two mixtures of level-<=E eigenvectors with random support sizes."""
    labels = bounded_labels(spec, E)
    if labels.size == 0:
        raise InvalidArgument("no level at or below E")
    k1 = int(rng.integers(1, labels.size + 1))
    k2 = int(rng.integers(1, labels.size + 1))
    return random_state(rng, labels, k1), random_state(rng, labels, k2)


def pair_at_distance(rng: np.random.Generator, labels: Sequence[int],
                     eps: float) -> Tuple[SpectralState, SpectralState]:
    """Random pair on ``labels`` whose spectral distance is exactly ``eps``.

    A random pair is pushed apart (towards a pure state versus the uniform
    state) until its distance reaches ``eps``, then pulled back along the
    straight line, which keeps both weight lists sorted.
    """
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.size
    if not 0.0 <= eps <= 1.0 - 1.0 / n:
        raise InvalidArgument(f"eps={eps} not attainable on {n} labels")
    a = random_state(rng, labels)
    b = random_state(rng, labels)
    ra, sb = a.weights, b.weights
    pure = np.zeros(n)
    pure[0] = 1.0
    flat = np.full(n, 1.0 / n)

    def dist(t):
        return 0.5 * np.abs(((1 - t) * ra + t * pure) - ((1 - t) * sb + t * flat)).sum()

    t = 0.0
    if dist(0.0) < eps:
        lo, hi = 0.0, 1.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if dist(mid) < eps else (lo, mid)
        t = hi
    r = (1 - t) * ra + t * pure
    s = (1 - t) * sb + t * flat
    d0 = 0.5 * np.abs(r - s).sum()
    if d0 > 0:
        s = r + (eps / d0) * (s - r)
    s = np.clip(s, 0.0, None)
    return SpectralState(r / r.sum(), a.labels), SpectralState(s / s.sum(), b.labels)


def random_gibbs_states(rng: np.random.Generator, spec: Spectrum, e_lo: float,
                        e_hi: float, count: int, tol: float = 1e-10) -> List[SpectralState]:
    """Gibbs states at energies drawn uniformly from ``[e_lo, e_hi]``."""
    out = []
    for e in rng.uniform(e_lo, e_hi, size=count):
        solve = thermal_for_energy(spec, float(e), tol)
        w = solve.state.weights
        keep = w > 0
        state = SpectralState(w[keep] / w[keep].sum(), solve.state.labels[keep])
        out.append(state)
    return out
