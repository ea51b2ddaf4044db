"""Three continuity bounds for the von Neumann entropy, side by side.

All share the shape ``|S(rho) - S(sigma)| <= eps * F + g(eps)`` with ``g`` the
binary entropy:

* ``audenaert_bound``: ``eps log2(d-1) + g(eps)``, finite dimension ``d``.
* ``winter_bound``: ``2 eps S(gamma(E/eps)) + g(eps)``, mean energies <= E.
* ``mixture_bound``: ``2 eps S(gamma(E)) + g(eps)``, both states mixtures of
  orthonormal pure states each of energy <= E.

``eps`` is always the spectral distance (half the l1 distance of the ordered
eigenvalue lists).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .afw import check_bounded_labels
from .errors import EnergyOutOfRange, HypothesisViolation, InvalidArgument, TruncationLimit
from .maxent import gamma_entropy
from .spectra import Spectrum
from .states import (SpectralState, binary_entropy, energy, trace_distance_spectral,
                     von_neumann_entropy_spectral)

BOUND_NAMES = ("audenaert", "winter", "mixture")


def audenaert_bound(eps: float, d: int) -> float:
    if int(d) != d or d < 2:
        raise InvalidArgument("dimension must be an integer >= 2")
    g = binary_entropy(eps)
    return eps * math.log2(d - 1) + g


def winter_bound(eps: float, E: float, spec: Spectrum, tol: float = 1e-10) -> float:
    if not 0.0 < eps <= 1.0:
        raise InvalidArgument("winter bound needs 0 < eps <= 1")
    if not E > 0:
        raise InvalidArgument("E must be positive")
    return 2.0 * eps * gamma_entropy(spec, E / eps, tol) + binary_entropy(eps)


def mixture_bound(eps: float, E: float, spec: Spectrum, tol: float = 1e-10) -> float:
    g = binary_entropy(eps)
    if not E > 0:
        raise InvalidArgument("E must be positive")
    if eps == 0.0:
        return 0.0
    return 2.0 * eps * gamma_entropy(spec, E, tol) + g


def _entropy_slope(spec: Spectrum, E: float, tol: float) -> float:
    h = max(1e-4 * E, 1e3 * tol)
    lo = max(E - h, 0.5 * E)
    return abs(gamma_entropy(spec, E + h, tol) - gamma_entropy(spec, lo, tol)) / (E + h - lo)


@dataclass
class BoundReport:
    epsilon: float
    E: float
    actual_diff: float
    audenaert: Optional[float] = None
    winter: Optional[float] = None
    mixture_bound: Optional[float] = None
    tightest: Optional[str] = None
    inapplicable: Dict[str, str] = field(default_factory=dict)
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    uncertainty: Dict[str, float] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def value(self, name: str) -> Optional[float]:
        return {"audenaert": self.audenaert, "winter": self.winter,
                "mixture": self.mixture_bound}[name]

    def violations(self, tol: float = 1e-9) -> List[str]:
        """Names of applicable bounds that the actual difference exceeds."""
        return [n for n in BOUND_NAMES
                if self.value(n) is not None and self.actual_diff > self.value(n) + tol]

    def hypothesis_flags(self) -> str:
        return ";".join(f"{k}={int(v)}" for k, v in sorted(self.hypotheses.items()))


def _support_dim(state: SpectralState) -> int:
    return int(np.count_nonzero(state.weights))


def compare_bounds(rho: SpectralState, sigma: SpectralState, spec: Spectrum,
                   E: float, tol: float = 1e-10) -> BoundReport:
    """Evaluate every bound whose hypotheses hold for the pair.

    Bounds that do not apply are left as None with a reason in
    ``inapplicable``; nothing here raises for a failed hypothesis.
    """
    eps = trace_distance_spectral(rho, sigma)
    actual = abs(von_neumann_entropy_spectral(rho) - von_neumann_entropy_spectral(sigma))
    report = BoundReport(eps, E, actual)
    report.notes.append("eps is the spectral distance of the ordered eigenvalues")

    d = max(_support_dim(rho), _support_dim(sigma), 2)
    report.hypotheses["finite_d"] = True
    report.audenaert = audenaert_bound(eps, d)

    # energies need every label in range; thermal solves keep the caller's
    # spectrum so their cache is shared across pairs
    cover = spec.covering(max(int(rho.labels.max()), int(sigma.labels.max())))
    try:
        energies_ok = energy(rho, cover) <= E and energy(sigma, cover) <= E
    except InvalidArgument:
        energies_ok = False
    report.hypotheses["energy_le_E"] = energies_ok
    if eps == 0.0:
        report.inapplicable["winter"] = "eps-zero"
    elif not energies_ok:
        report.inapplicable["winter"] = "energy-above-E"
    else:
        try:
            report.winter = winter_bound(eps, E, spec, tol)
            report.uncertainty["winter"] = 2 * eps * 2 * tol * _entropy_slope(spec, E / eps, tol)
        except EnergyOutOfRange:
            report.inapplicable["winter"] = "energy-out-of-range"
        except TruncationLimit:
            report.inapplicable["winter"] = "truncation-limit"

    # the mixture bound is gated on the label-wise hypothesis, which is what
    # its derivation uses, not on mean energies alone
    try:
        check_bounded_labels(rho, cover, E)
        check_bounded_labels(sigma, cover, E)
        labels_ok = True
    except (HypothesisViolation, InvalidArgument):
        labels_ok = False
    report.hypotheses["bounded_labels"] = labels_ok
    if not labels_ok:
        report.inapplicable["mixture"] = "label-above-E"
    else:
        try:
            report.mixture_bound = mixture_bound(eps, E, spec, tol)
            if eps > 0:
                report.uncertainty["mixture"] = 2 * eps * 2 * tol * _entropy_slope(spec, E, tol)
        except EnergyOutOfRange:
            report.inapplicable["mixture"] = "energy-out-of-range"
        except TruncationLimit:
            report.inapplicable["mixture"] = "truncation-limit"
    if energies_ok and not labels_ok:
        report.notes.append("mean energies are <= E but some label exceeds E; "
                            "mixture bound withheld")

    candidates = [(report.value(n), i, n) for i, n in
                  enumerate(("mixture", "winter", "audenaert")) if report.value(n) is not None]
    report.tightest = min(candidates)[2] if candidates else None
    return report


def mixture_bound_via_basis(rho: SpectralState, sigma: SpectralState, spec: Spectrum,
                            E: float, basis_labels: Sequence[int],
                            tol: float = 1e-10) -> BoundReport:
    """Bound an arbitrary pair by moving both spectra onto a level-<=E basis.

    The weights of ``rho`` and ``sigma`` are attached to ``basis_labels``
    (which must name distinct levels at most ``E``); entropies and ``eps`` are
    unchanged and the mixture bound then applies to the relabelled pair.
    """
    labels = np.asarray(list(basis_labels), dtype=np.int64)
    need = max(rho.dim, sigma.dim)
    if labels.size < need:
        raise InvalidArgument(f"need at least {need} basis labels, got {labels.size}")
    if np.unique(labels).size != labels.size:
        raise InvalidArgument("basis labels must be distinct (orthonormal family)")
    if labels.max() >= spec.truncation_dim:
        raise InvalidArgument(f"label {int(labels.max())} outside spectrum")
    over = labels[spec.levels[labels] > E]
    if over.size:
        lab = int(over[0])
        raise HypothesisViolation(f"basis label {lab} has energy {spec.levels[lab]!r} > E", lab)
    rho_t = rho.relabel(labels[:rho.dim])
    sigma_t = sigma.relabel(labels[:sigma.dim])
    report = compare_bounds(rho_t, sigma_t, spec, E, tol)
    report.actual_diff = abs(von_neumann_entropy_spectral(rho)
                             - von_neumann_entropy_spectral(sigma))
    report.notes.append("states relabelled onto the supplied level-<=E basis")
    return report
