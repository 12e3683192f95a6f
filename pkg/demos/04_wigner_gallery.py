#!/usr/bin/env python3
# Render Wigner maps for a few states and save them as CSV + PGM.

import os

import numpy as np

from qumem import (
    coherent_ket,
    gaussian_noise,
    ket_to_density,
    thermal_density,
    vacuum,
    wigner,
    wigner_to_csv,
    wigner_to_pgm,
)

out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(out_dir, exist_ok=True)

axis = np.linspace(-5.0, 5.0, 160)

gallery = {
    "vacuum": ket_to_density(vacuum(17)),
    "coherent_1": ket_to_density(coherent_ket(1.0, 17)),
    "coherent_1i": ket_to_density(coherent_ket(1.0j, 17)),
    "thermal_1": thermal_density(1.0, 30),
    "heated_coherent": gaussian_noise(ket_to_density(coherent_ket(1.0, 30)), 0.5),
}

for name, rho in gallery.items():
    grid = wigner(rho, axis, axis)
    peak_p, peak_x = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    csv_path = os.path.join(out_dir, name + ".csv")
    pgm_path = os.path.join(out_dir, name + ".pgm")
    wigner_to_csv(grid, csv_path)
    wigner_to_pgm(grid, pgm_path)
    print("%-16s peak W=%.5f at (x=%+.3f, p=%+.3f)  integral=%.5f"
          % (name, grid.values[peak_p, peak_x], axis[peak_x], axis[peak_p],
             grid.riemann_sum()))
    print("  wrote", csv_path, "and", pgm_path)

# the vacuum peak sits at 1/pi; displacement moves it without reshaping it
print("1/pi =", 1 / np.pi)
