#!/usr/bin/env python3
"""The covariance-matrix view of a mode crossing the de Sitter horizon.

Follows a Bunch-Davies mode from deep inside the horizon to far outside,
tracking its phase-space second moments.  The evolved mode stays pure
(qq*pp - qp^2 = 1/4 throughout), while the individual variances swing over
many orders of magnitude: the field variance freezes outside the horizon
and the momentum variance blows up, which is what shuts the Gaussian
channel down for superhorizon modes.

Also exercises the two fidelity functionals (4x4 determinant form and the
symmetric 2x2 block form), the thermal-noise route through the noise
number, and the asymptotic covariance operators with their validity gates.

Writes covariance.csv and covariance_regimes.png.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cosmotele import (
    BackgroundModel,
    ConformalDomain,
    ModeSpec,
    Vacuum,
    classify_regime,
    evolve_mode,
    fidelity_thermal,
    fidelity_two_mode,
    noise_number_from_block,
    subhorizon_covariance,
    superhorizon_scaling,
    tmsv_covariance,
    vacuum_block,
)
from cosmotele.gaussian import COVARIANCE_CSV_HEADER, CovarianceBlock, covariance_rows
from cosmotele.sweeps import rows_to_csv_bytes, write_bytes


def main():
    model = BackgroundModel.de_sitter(H=1.0)
    k = 1.0
    spec = ModeSpec(k=k, model=model, vacuum=Vacuum.BUNCH_DAVIES)
    grid = -np.geomspace(200.0, 2e-3, 300)
    sol = evolve_mode(spec, ConformalDomain(float(grid[0]), float(grid[-1])),
                      tol=1e-11, eta_grid=grid)

    rows = list(covariance_rows(sol, model, k))
    write_bytes("covariance.csv", rows_to_csv_bytes(COVARIANCE_CSV_HEADER, rows))
    print("wrote covariance.csv")

    x = np.abs(grid) * k
    qq = np.array([r[3] for r in rows])
    pp = np.array([r[4] for r in rows])
    det = qq * pp - np.array([r[5] for r in rows]) ** 2
    print(f"purity |qq*pp - qp^2 - 1/4| stays below {np.max(np.abs(det - 0.25)):.2e}")

    # regime classification and the asymptotic operators
    for eta in (-150.0, -1.0, -0.01):
        print(f"k|eta| = {k * abs(eta):8.3f}: {classify_regime(k, eta).value}")
    sub = subhorizon_covariance(k, -150.0, 1.0)
    print(f"subhorizon block: qq={sub.qq:.4e}, pp={sub.pp:.4e} (purity-fixed)")
    qq_scale, pp_scale = superhorizon_scaling(k, -0.01, 1.5)
    block = CovarianceBlock(qq_scale(0.01), pp_scale(0.01), 0.0)
    nbar = noise_number_from_block(block)
    print(f"superhorizon scaling block at k|eta|=0.01: nbar={nbar:.1f} "
          f"-> thermal-route fidelity {fidelity_thermal(nbar):.2e}")

    # the two-mode determinant functional on reference states
    print(f"two-mode determinant fidelity, vacuum: {fidelity_two_mode(tmsv_covariance(0.0))}")
    print(f"two-mode determinant fidelity, squeezed r=1: "
          f"{fidelity_two_mode(tmsv_covariance(1.0)):.4f} "
          "(responds to total moments, not correlations)")
    print(f"block-form fidelity of the vacuum: {vacuum_block()} -> 1")

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.loglog(x, qq, label="qq")
    ax1.loglog(x, pp, label="pp")
    ax1.axvline(10.0, color="gray", lw=0.6)
    ax1.axvline(0.1, color="gray", lw=0.6)
    ax1.set_xlabel("k|eta|")
    ax1.set_ylabel("second moments")
    ax1.legend(fontsize=8)

    f_block = np.array([r[7] for r in rows])
    ax2.semilogx(x, f_block)
    ax2.set_xlabel("k|eta|")
    ax2.set_ylabel("block fidelity")
    ax2.set_title("peaks near horizon crossing")
    fig.tight_layout()
    fig.savefig("covariance_regimes.png", dpi=130)
    print("wrote covariance_regimes.png")


if __name__ == "__main__":
    main()
