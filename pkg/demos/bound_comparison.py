"""Three continuity bounds on the same pairs of states.

The pairs live on oscillator levels at or below E (spacing 0.01), which is
the setting where the mixture bound 2 eps S(gamma(E)) + h(eps) applies.
Winter's bound replaces S(gamma(E)) by S(gamma(E/eps)), which grows as eps
shrinks; Audenaert's bound only sees the support size.

On a fixed finite subspace like this one Audenaert's bound is usually the
smallest.  The two energy bounds matter when no dimension bound is
available, and there the mixture bound is never above Winter's.
"""

import numpy as np

from entropy_bounds import compare_bounds, harmonic_oscillator
from entropy_bounds.sampling import bounded_labels, pair_at_distance


def main():
    rng = np.random.default_rng(0)
    spec = harmonic_oscillator(0.01, 64)
    E = 1.0
    labels = bounded_labels(spec.extended(128), E)
    print(f"{len(labels)} levels at or below E = {E}\n")
    print(f"{'eps':>5} {'|dS|':>9} {'mixture':>9} {'winter':>9} {'audenaert':>9}  tightest")
    for eps in (0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.95):
        rho, sigma = pair_at_distance(rng, labels, eps)
        rep = compare_bounds(rho, sigma, spec, E)
        print(f"{eps:5.2f} {rep.actual_diff:9.5f} {rep.mixture_bound:9.5f} "
              f"{rep.winter:9.5f} {rep.audenaert:9.5f}  {rep.tightest}")


if __name__ == "__main__":
    main()
