"""Maximum-entropy states of a harmonic oscillator.

For unit level spacing the Gibbs state at mean energy E is geometric, so
beta = ln(1 + 1/E) and S(gamma(E)) = (1+E) log2(1+E) - E log2 E.  This
script solves for gamma(E) numerically on a truncated spectrum and compares
against those closed forms, then shows how the truncation grows with E.
"""

import math

from entropy_bounds import gamma_entropy_curve, harmonic_oscillator, thermal_for_energy


def main():
    spec = harmonic_oscillator(1.0, 16)
    print(f"{'E':>6} {'beta':>12} {'exact beta':>12} {'S bits':>12} {'exact S':>12} {'levels':>7}")
    for E in (0.1, 0.5, 1.0, 2.0, 10.0, 100.0):
        solve = thermal_for_energy(spec, E, 1e-12)
        exact_s = (1 + E) * math.log2(1 + E) - E * math.log2(E)
        print(f"{E:6g} {solve.beta:12.9f} {math.log1p(1 / E):12.9f} "
              f"{solve.entropy_bits:12.9f} {exact_s:12.9f} {solve.dim:7d}")

    curve = gamma_entropy_curve(spec, [0.5 * k for k in range(1, 21)], 1e-10)
    print()
    print("S(gamma(E)) is increasing:", curve.increasing)
    print("S(gamma(E)) is concave:   ", curve.concave)


if __name__ == "__main__":
    main()
