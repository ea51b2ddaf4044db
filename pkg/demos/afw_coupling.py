"""The coupling behind the Alicki-Fannes-Winter continuity argument.

Two spectra r and s are split into a shared part min(r, s) and two residuals
of total weight eps = |r - s|_1 / 2.  The coupling omega is a purification of
the shared part plus eps times a product of the normalised residuals, so its
entropy sits between |S(rho) - S(sigma)| and eps S(D1 x D2) + h(eps).
"""

import numpy as np

from entropy_bounds import (SpectralState, binary_entropy, build_coupling, omega_entropy,
                            omega_structure, von_neumann_entropy_spectral)
from entropy_bounds.checks import dense_omega
from entropy_bounds.states import padded_weights, shannon_entropy


def show(rho, sigma):
    c = build_coupling(rho, sigma)
    r, s = padded_weights(rho, sigma)
    print("r     =", np.round(r, 4))
    print("s     =", np.round(s, 4))
    print("phi   =", np.round(c.phi_weights, 4), " trace", round(c.phi_trace, 6))
    print("eps   =", round(c.epsilon, 6))
    if c.degenerate:
        print("identical spectra: nothing to couple\n")
        return
    s_rho = von_neumann_entropy_spectral(rho)
    s_sigma = von_neumann_entropy_spectral(sigma)
    s_omega = omega_entropy(omega_structure(c))
    dense = shannon_entropy(np.clip(np.linalg.eigvalsh(dense_omega(c)), 0, 1))
    rhs = (c.epsilon * (von_neumann_entropy_spectral(c.delta1)
                        + von_neumann_entropy_spectral(c.delta2))
           + binary_entropy(c.epsilon))
    print(f"|S(rho) - S(sigma)| = {abs(s_rho - s_sigma):.6f}")
    print(f"S(omega)            = {s_omega:.6f}  (dense check {dense:.6f})")
    print(f"eps S(D1xD2) + h    = {rhs:.6f}\n")


def main():
    show(SpectralState.from_weights([0.7, 0.3]), SpectralState.from_weights([0.4, 0.6]))
    show(SpectralState.from_weights([0.5, 0.3, 0.2]), SpectralState.from_weights([0.9, 0.1]))
    rng = np.random.default_rng(1)
    w1, w2 = rng.dirichlet(np.ones(6)), rng.dirichlet(np.ones(6))
    show(SpectralState.from_weights(w1), SpectralState.from_weights(w2))
    show(SpectralState.from_weights([0.5, 0.5]), SpectralState.from_weights([0.5, 0.5]))


if __name__ == "__main__":
    main()
