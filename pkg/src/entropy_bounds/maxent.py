"""Gibbs states and the maximum-entropy curve ``E -> S(gamma(E))``.

``gamma(E)`` is the Gibbs state ``exp(-beta H) / Z`` whose mean energy is
``E``; among all states with mean energy at most ``E`` it has the largest
entropy.  Everything here runs on a finite truncation.  When the spectrum has
a growing tail model the truncation is doubled until the Gibbs mass beyond it
is certified to be below the requested tolerance.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .errors import EnergyOutOfRange, InvalidArgument, NumericFailure, TruncationLimit
from .spectra import Spectrum
from .states import SpectralState

DEFAULT_MAX_DIM = 2 ** 20
MAX_DIM_ENV = "ENTROPY_BOUNDS_MAX_DIM"
_LN2 = math.log(2.0)


def max_dim() -> int:
    """Hard cap on truncation size, overridable through the environment."""
    value = os.environ.get(MAX_DIM_ENV)
    if value is None:
        return DEFAULT_MAX_DIM
    try:
        cap = int(value)
    except ValueError:
        raise InvalidArgument(f"{MAX_DIM_ENV}={value!r} is not an integer") from None
    if cap < 2:
        raise InvalidArgument(f"{MAX_DIM_ENV} must be >= 2")
    return cap


@dataclass(frozen=True, eq=False)
class ThermalSolve:
    beta: float
    partition: float
    state: SpectralState
    mean_energy: float
    entropy_bits: float
    tail_bound: Optional[float]
    spectrum: Spectrum = field(repr=False)

    @property
    def dim(self) -> int:
        return self.spectrum.truncation_dim


def _gibbs_arrays(levels, beta):
    """Probabilities, their natural logs and ``(log Z, Z_shifted)``."""
    x = -beta * levels
    xmax = x.max()
    w = np.exp(x - xmax)
    zs = w.sum()
    logp = x - xmax - math.log(zs)
    return w / zs, logp, xmax + math.log(zs), zs


def _mean_energy(levels, beta):
    x = -beta * levels
    w = np.exp(x - x.max())
    return float(np.dot(w, levels) / w.sum())


def gibbs_state(spec: Spectrum, beta: float) -> ThermalSolve:
    """Gibbs state at inverse temperature ``beta`` on the given truncation."""
    if not math.isfinite(beta):
        raise InvalidArgument("beta must be finite")
    if beta <= 0 and spec.has_infinite_tail:
        raise InvalidArgument("beta <= 0 is not normalizable on an infinite spectrum")
    levels = spec.levels
    p, logp, log_z, zs = _gibbs_arrays(levels, beta)
    mean = float(np.dot(p, levels))
    entropy = float(-np.dot(p, logp)) / _LN2
    tail = None
    t = spec.tail_sum(beta)
    if t is not None:
        # levels[0] = 0 so zs is the truncated partition function itself
        tail = t / (zs + t)
    with np.errstate(over="ignore"):
        partition = math.exp(log_z) if log_z < 709 else math.inf
    state = SpectralState(p, np.arange(levels.size))
    return ThermalSolve(beta, partition, state, mean, max(entropy, 0.0), tail, spec)


def _reachable_interval(spec: Spectrum) -> Tuple[float, float]:
    levels = spec.levels
    if spec.certified_tail:
        return 0.0, math.inf
    if spec.tail_model is None:
        return 0.0, float(levels[-1])
    return 0.0, float(levels.mean())


def _solve_beta(levels, target, tol, allow_negative, gap):
    """Solve ``mean_energy(beta) = target``; mean energy decreases in beta."""
    top = float(levels[-1])
    hi = math.log(1.0 / tol) / gap
    if target <= float(levels.mean()) or not allow_negative:
        lo = tol / (1.0 + top)
    else:
        lo = -hi
    while _mean_energy(levels, hi) > target:
        hi *= 2.0
        if hi > 1e300:
            raise NumericFailure("could not bracket beta from above")
    while _mean_energy(levels, lo) < target:
        if lo > 0:
            lo /= 2.0
            if lo < 1e-300:
                raise NumericFailure("could not bracket beta from below")
        else:
            lo *= 2.0
            if lo < -1e300:
                raise NumericFailure("could not bracket beta from below")
    f = lambda b: _mean_energy(levels, b) - target
    if f(lo) > 0 > f(hi):
        root = optimize.brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps,
                               maxiter=500)
        # bracket the root by one ulp on each side and keep the closer end
        lo, hi = np.nextafter(root, -np.inf), np.nextafter(root, np.inf)
        if abs(f(root)) <= min(abs(f(lo)), abs(f(hi))):
            return root
    e_lo = _mean_energy(levels, lo)
    e_hi = _mean_energy(levels, hi)
    return lo if abs(e_lo - target) <= abs(e_hi - target) else hi


def _check_dim(dim: int, what: str):
    cap = max_dim()
    if dim > cap:
        raise TruncationLimit(f"{what} needs more than {cap} levels "
                              f"(raise {MAX_DIM_ENV} to allow more)")


def thermal_for_energy(spec: Spectrum, target_E: float, tol: float = 1e-10) -> ThermalSolve:
    """The maximum-entropy state ``gamma(target_E)``.

    The returned solve has ``|mean_energy - target_E| <= tol`` and, for spectra
    with a growing tail model, ``tail_bound <= tol`` after automatic extension.
    """
    if not tol > 0:
        raise InvalidArgument("tol must be positive")
    lo_e, hi_e = _reachable_interval(spec)
    if not lo_e < target_E < hi_e:
        raise EnergyOutOfRange(
            f"energy {target_E!r} not reachable; reachable interval is ({lo_e}, {hi_e})",
            (lo_e, hi_e))
    allow_negative = spec.tail_model is None
    if spec.certified_tail:
        while float(spec.levels.mean()) <= 2.0 * target_E:
            _check_dim(2 * spec.truncation_dim, f"energy {target_E!r}")
            spec = spec.extended(2 * spec.truncation_dim)
    elif not allow_negative and target_E >= float(spec.levels.mean()):
        raise EnergyOutOfRange(
            f"energy {target_E!r} not reachable with beta > 0", (lo_e, hi_e))
    gap = spec.min_gap()
    while True:
        beta = _solve_beta(spec.levels, target_E, tol, allow_negative, gap)
        solve = gibbs_state(spec, beta)
        if solve.tail_bound is None or solve.tail_bound <= tol:
            break
        _check_dim(2 * spec.truncation_dim, f"tail bound {tol!r} at energy {target_E!r}")
        spec = spec.extended(2 * spec.truncation_dim)
    if abs(solve.mean_energy - target_E) > tol:
        raise NumericFailure(
            f"bisection reached mean energy {solve.mean_energy!r}, target {target_E!r}")
    return solve


@functools.lru_cache(maxsize=4096)
def _cached_solve(spec: Spectrum, target_E: float, tol: float) -> ThermalSolve:
    return thermal_for_energy(spec, target_E, tol)


def gamma_entropy(spec: Spectrum, E: float, tol: float = 1e-10) -> float:
    """``S(gamma(E))`` in bits, memoized on ``(spec, E, tol)``."""
    return _cached_solve(spec, float(E), float(tol)).entropy_bits


@dataclass
class EntropyCurve:
    energies: List[float]
    entropies: List[float]
    solves: List[ThermalSolve]
    increasing: bool
    concave: bool
    concavity_defects: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def points(self) -> List[Tuple[float, float]]:
        return list(zip(self.energies, self.entropies))


def gamma_entropy_curve(spec: Spectrum, energies: Sequence[float],
                        tol: float = 1e-10) -> EntropyCurve:
    """Solve ``gamma(E)`` along a grid and check monotonicity and midpoint concavity.

    ``concavity_defects`` lists ``(midpoint, shortfall)`` wherever the midpoint
    entropy falls more than 1e-8 below the chord.
    """
    energies = [float(e) for e in energies]
    if any(b <= a for a, b in zip(energies, energies[1:])):
        raise InvalidArgument("energies must be strictly increasing")
    solves = [_cached_solve(spec, e, float(tol)) for e in energies]
    entropies = [s.entropy_bits for s in solves]
    increasing = all(b > a for a, b in zip(entropies, entropies[1:]))
    defects = []
    for (e1, s1), (e2, s2) in zip(zip(energies, entropies), zip(energies[1:], entropies[1:])):
        mid = 0.5 * (e1 + e2)
        s_mid = _cached_solve(spec, mid, float(tol)).entropy_bits
        shortfall = 0.5 * (s1 + s2) - s_mid
        if shortfall > 1e-8:
            defects.append((mid, shortfall))
    return EntropyCurve(energies, entropies, solves, increasing, not defects, defects)
