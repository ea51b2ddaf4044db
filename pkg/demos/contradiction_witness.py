"""Why no orthonormal basis can consist of bounded-energy vectors.

Suppose every basis vector had energy at most E.  Any state rho could then
be rewritten on that basis, and the mixture bound would keep S(rho) within
2 S(gamma(E)) + 1 bits of S(gamma(E~)) for every E~.  But S(gamma(E~))
grows without limit, so past some E~ the gap is too large.  This script
finds that E~ for a few entropies on the unit oscillator, and shows the
search stopping on a finite spectrum whose entropy is capped.
"""

import math

from entropy_bounds import (ThresholdNotReached, find_contradiction_energy, from_levels,
                            harmonic_oscillator)


def main():
    spec = harmonic_oscillator(1.0, 64)
    E = 1.0
    for s_rho in (0.0, 1.0, 2.0, 4.0):
        cert = find_contradiction_energy(spec, E, s_rho)
        print(cert.summary())
        print(f"    bracket [{cert.lower_E_tilde:.6f}, {cert.threshold_E_tilde:.6f}], "
              f"{cert.truncation_note}")

    finite = from_levels([0.0, 1.0, 2.0])
    try:
        find_contradiction_energy(finite, E, 2.0)
    except ThresholdNotReached as exc:
        print()
        print(f"3-level spectrum: {exc}")
        print(f"    entropy is at most log2 3 = {math.log2(3):.6f} bits")


if __name__ == "__main__":
    main()
