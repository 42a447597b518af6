"""Three mutually unbiased qutrit bases: no probe gives certainty."""
import numpy as np

from qguess import explorer as ex
from qguess.measurements import mub_unitary

np.set_printoptions(precision=3, suppress=True)
for k in range(3):
    print(f"U_{k}^dagger * sqrt3\n", mub_unitary(3, k).conj().T * np.sqrt(3))

s = ex.qutrit_mub_set()

# %% random probes
probes = ex.random_probes(3, 200_000, np.random.default_rng(0))
r = ex.sweep_residuals(s, probes)
print("smallest off-diagonal Gram entry over 2e5 random probes", r.min())

# %% optimizers
best = ex.maximize_success(s, restarts=30, seed=0)
print("best success", best.best_success, "residual there", best.best_residual)
floor = ex.minimize_residual(s, restarts=10, seed=0)
print("residual floor", floor.best_residual, "(1/7 =", 1 / 7, ")")
print("probe at the floor", np.round(floor.best_probe, 4))

# %% the first two equations factor through beta - gamma and beta + gamma
p = ex.random_probes(3, 1, np.random.default_rng(3))[0]
print("factorization defect", ex.factorization_identity_check(p))
rng = np.random.default_rng(4)
for branch in ("equal", "opposite"):
    print(branch, "branch floor", ex.branch_residual_floor(branch, 5000, rng))
