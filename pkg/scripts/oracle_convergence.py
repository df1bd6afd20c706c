"""Oracle error and grid-doubling drift as the quadrature grid is refined.

Prints, for a few hard points, the max relative deviation from the analytic
covariance and the change under doubling, for steps = 256 ... 16384.
"""

import numpy as np

from cvoml import model, oracle

POINTS = [
    ("amplifier", 5.0, 0.0, 3.0),
    ("amplifier", 1.2, 5.0, 3.0),
    ("attenuator", 1.2, 0.0, 3.0),
    ("attenuator", 1.2, 0.0, 20.0),
    ("attenuator", 5.0, 5.0, 3.0),
]


def main():
    print(f"{'point':<34} {'steps':>6} {'max_rel':>10} {'drift':>10}")
    for regime, alpha, n0, r in POINTS:
        p = model.SystemParams.from_alpha(alpha, regime, n0, r)
        exact = np.asarray(model.output_covariance(model.derive(p)))
        label = f"{regime} a={alpha:g} n0={n0:g} r={r:g}"
        steps = 256
        while steps <= 16384:
            grid = oracle.QuadratureGrid(steps)
            coarse = oracle.numeric_output_covariance(p, grid)
            fine = oracle.numeric_output_covariance(p, grid.refined())
            rel = oracle.compare_covariances(exact, coarse).max_rel
            print(f"{label:<34} {steps:>6} {rel:>10.2e} {oracle.refinement_drift(coarse, fine):>10.2e}")
            steps *= 4


if __name__ == "__main__":
    main()
