"""Where the attenuator-regime witnesses reach their extreme values.

The cavity-mirror parameter has an interior minimum over r at
r_eff = ln(alpha'/beta') with value 2 (alpha'/(alpha'+beta'))^2, while the
mirror-atom parameter approaches the same value only as r_eff -> infinity.
Both are governed by r_eff = r/beta'^2, so a fixed pulse area r means very
different effective times for different alpha'.
"""

import math

import numpy as np

from cvoml import criteria as cr
from cvoml import model


def evaluate(alpha, r):
    d = model.DerivedParams.from_alpha(alpha, "attenuator", 0.0, r)
    sigma = model.output_covariance(d)
    return d, cr.dgcz_symmetric(sigma, cr.PairSpec("a", "m")).value, cr.upsilon_symmetric(sigma).value


def main():
    print("cavity-mirror minimum over r")
    for alpha in (1.5, 5.0, 50.0):
        beta = math.sqrt(alpha**2 - 1)
        r_opt = beta**2 * math.log(alpha / beta)
        rs = np.linspace(0, 4 * r_opt, 4001)[1:]
        vals = [evaluate(alpha, r)[1] for r in rs]
        k = int(np.argmin(vals))
        print(f"  alpha'={alpha:<5g} scan min {vals[k]:.6f} at r={rs[k]:.5f}; "
              f"predicted {2 * (alpha / (alpha + beta)) ** 2:.6f} at r={r_opt:.5f}; "
              f"value at r=50: {evaluate(alpha, 50.0)[1]:.6g}")
    print("mirror-atom parameter at fixed r = 50 and at fixed r_eff = 50")
    for alpha in (5.0, 10.0, 200.0):
        beta2 = alpha**2 - 1
        d, _, at_r = evaluate(alpha, 50.0)
        _, _, at_eff = evaluate(alpha, 50.0 * beta2)
        print(f"  alpha'={alpha:<5g} r=50 (r_eff={d.r_eff:.4g}): {at_r:.6f}   "
              f"r_eff=50: {at_eff:.6f}   limit {2 * (alpha / (alpha + math.sqrt(beta2))) ** 2:.6f}")


if __name__ == "__main__":
    main()
