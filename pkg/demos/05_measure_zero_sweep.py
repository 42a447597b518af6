"""Counting argument and a desk-scale sweep over random qutrit sets."""
import numpy as np

from qguess import explorer as ex

for B in range(2, 9):
    print(f"B={B}: parameters {ex.probe_parameter_count(B):2d}, "
          f"real constraints {ex.orthogonality_constraint_count(B):2d}")

floors = [ex.minimize_residual(ex.random_measurement_set(3, 3, seed), restarts=3,
                               seed=seed).best_residual for seed in range(20)]
print("residual floors over 20 random qutrit sets")
print(np.round(floors, 4))
print("smallest", min(floors))
