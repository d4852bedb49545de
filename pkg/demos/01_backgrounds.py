#!/usr/bin/env python3
"""Tour of the FRW background layer: scale-factor laws, the mode-equation
potential a''/a, and the cosmic/conformal time maps.

Writes backgrounds.png with the scale factors and potentials side by side.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cosmotele import (
    BackgroundModel,
    conformal_to_cosmic,
    cosmic_to_conformal,
    effective_potential,
    model_nu,
    nu_index,
    scale_factor,
)


def main():
    print("FRW backgrounds")
    print("=" * 60)

    models = {
        "de Sitter (H=1)": (BackgroundModel.de_sitter(H=1.0), -np.geomspace(5.0, 0.05, 200)),
        "matter (H0=1)": (BackgroundModel.matter(H0=1.0), np.geomspace(0.05, 5.0, 200)),
        "radiation": (BackgroundModel.radiation(), np.geomspace(0.05, 5.0, 200)),
        "power law a=3": (BackgroundModel.power_law(3.0), -np.geomspace(5.0, 0.05, 200)),
    }

    potential_label = "a''/a(eta*)"
    print(f"{'model':<16} {'nu':>6} {'a(eta*)':>10} {potential_label:>12}")
    for name, (model, etas) in models.items():
        eta_star = float(etas[len(etas) // 2])
        print(f"{name:<16} {model_nu(model):>6.3f} "
              f"{scale_factor(model, eta_star):>10.4f} "
              f"{effective_potential(model, eta_star):>12.4f}")

    # the Bessel order as a function of the cosmic-time exponent
    print("\nBessel order nu(alpha):")
    for alpha in (0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 2.0, 3.0):
        print(f"  alpha = {alpha:<8.4f} nu = {nu_index(alpha):.4f}")

    # cosmic <-> conformal round trips
    print("\ncosmic <-> conformal round trips:")
    for name, model in [("de Sitter", BackgroundModel.de_sitter(H=1.0)),
                        ("radiation", BackgroundModel.radiation()),
                        ("matter", BackgroundModel.matter(H0=1.0)),
                        ("power law a=2", BackgroundModel.power_law(2.0))]:
        t = 1.7
        eta = cosmic_to_conformal(model, t)
        back = conformal_to_cosmic(model, eta)
        print(f"  {name:<14} t={t} -> eta={eta:+.6f} -> t={back:.12f}")

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for name, (model, etas) in models.items():
        a = [scale_factor(model, float(e)) for e in etas]
        v = [effective_potential(model, float(e)) for e in etas]
        ax1.plot(np.abs(etas), a, label=name)
        ax2.plot(np.abs(etas), np.abs(v), label=name)
    for ax, ylabel in ((ax1, "a(eta)"), (ax2, "|a''/a|")):
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("|eta|")
        ax.set_ylabel(ylabel)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig("backgrounds.png", dpi=130)
    print("\nwrote backgrounds.png")


if __name__ == "__main__":
    main()
