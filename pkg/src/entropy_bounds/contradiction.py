"""Numerical witness that no orthonormal basis of level-<=E vectors exists.

If such a basis existed, every state ``rho`` could be relabelled onto it, and
the mixture bound would pin ``S(rho)`` within ``2 S(gamma(E)) + 1`` bits of
``S(gamma(E_tilde))`` for *every* ``E_tilde >= E``.  Since ``S(gamma(.))``
grows without limit on a Gibbs-summable spectrum, some ``E_tilde`` breaks the
sandwich.  :func:`find_contradiction_energy` locates the first such
``E_tilde`` by doubling and then bisection.

This demonstrates the argument on truncated spectra; it is not a proof.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

from .errors import EnergyOutOfRange, ThresholdNotReached, TruncationLimit
from .maxent import _cached_solve, gamma_entropy
from .spectra import Spectrum
from .states import SpectralState, energy, von_neumann_entropy_spectral

MAX_BINARY_ENTROPY = 1.0


@dataclass
class ContradictionCertificate:
    E: float
    s_rho: float
    slack: Optional[float] = None
    threshold_E_tilde: Optional[float] = None
    gamma_entropy_at_threshold: Optional[float] = None
    lower_E_tilde: Optional[float] = None
    gamma_entropy_at_lower: Optional[float] = None
    achieved_max_entropy: Optional[float] = None
    truncation_note: str = ""
    status: str = "ok"

    @property
    def target(self) -> Optional[float]:
        return None if self.slack is None else self.s_rho + self.slack

    def to_json(self) -> dict:
        data = asdict(self)
        data["target"] = self.target
        return data

    def summary(self) -> str:
        if self.status != "ok":
            return (f"E={self.E:g} S(rho)={self.s_rho:.6f}: {self.status}"
                    f" ({self.truncation_note})")
        return (f"E={self.E:g} S(rho)={self.s_rho:.6f}: S(gamma(E~)) exceeds "
                f"{self.target:.6f} bits at E~={self.threshold_E_tilde:.9g} "
                f"(numerical witness of the contradiction)")


def _not_reached(cert: ContradictionCertificate, why: str):
    cert.status = "threshold-not-reached"
    cert.truncation_note = why
    raise ThresholdNotReached(why, cert)


def find_contradiction_energy(spec: Spectrum, E: float, s_rho: float,
                              tol: float = 1e-8) -> ContradictionCertificate:
    """Smallest ``E_tilde`` (to relative precision ``tol``) with
    ``S(gamma(E_tilde)) > s_rho + 2 S(gamma(E)) + 1``.

    Raises :class:`ThresholdNotReached` carrying the partial certificate when
    the truncation saturates first.
    """
    s_e = gamma_entropy(spec, E, tol)
    cert = ContradictionCertificate(E=float(E), s_rho=float(s_rho),
                                    slack=2.0 * s_e + MAX_BINARY_ENTROPY)
    target = cert.target
    cert.achieved_max_entropy = s_e
    if not spec.certified_tail and target >= math.log2(spec.truncation_dim):
        _not_reached(cert, f"entropy is capped at log2({spec.truncation_dim}) = "
                           f"{math.log2(spec.truncation_dim):.6f} bits without a tail model")

    def entropy_at(x):
        try:
            s = gamma_entropy(spec, x, tol)
        except (EnergyOutOfRange, TruncationLimit) as exc:
            _not_reached(cert, f"stopped at E~={x:.6g}: {exc}")
        cert.achieved_max_entropy = max(cert.achieved_max_entropy, s)
        return s

    lo, s_lo = float(E), s_e
    hi = 2.0 * lo
    s_hi = entropy_at(hi)
    while s_hi <= target:
        lo, s_lo = hi, s_hi
        hi *= 2.0
        s_hi = entropy_at(hi)
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        s_mid = entropy_at(mid)
        if s_mid > target:
            hi, s_hi = mid, s_mid
        else:
            lo, s_lo = mid, s_mid
    cert.threshold_E_tilde, cert.gamma_entropy_at_threshold = hi, s_hi
    cert.lower_E_tilde, cert.gamma_entropy_at_lower = lo, s_lo
    solve = _cached_solve(spec, hi, float(tol))
    if solve.tail_bound is not None:
        cert.truncation_note = (f"certified: {solve.dim} levels, "
                                f"tail mass <= {solve.tail_bound:.3g}")
    else:
        cert.truncation_note = f"uncertified: {solve.dim} levels, no tail model"
    return cert


def theorem4_report(spec: Spectrum, E: float, sample_states: Sequence[SpectralState],
                    tol: float = 1e-8) -> List[ContradictionCertificate]:
    """One certificate per state; states with energy below ``E`` are flagged."""
    out = []
    for state in sample_states:
        s_rho = von_neumann_entropy_spectral(state)
        covering = spec.covering(int(state.labels.max()))
        if energy(state, covering) < E:
            out.append(ContradictionCertificate(
                E=float(E), s_rho=s_rho, status="precondition-violated",
                truncation_note=f"state energy {energy(state, covering):.6g} < E"))
            continue
        try:
            out.append(find_contradiction_energy(spec, E, s_rho, tol))
        except ThresholdNotReached as exc:
            out.append(exc.partial)
    return out
