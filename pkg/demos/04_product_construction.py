"""Perfect guessing on n qubits from per-qubit solutions."""
import numpy as np

from qguess import explorer as ex
from qguess import GameInstance, qubit_set, simulate_rounds

s2 = np.sqrt(0.5)
zx = qubit_set([(1, 0, 0), (s2, s2, 0)])
yz = qubit_set([(1, 0, 0), (s2, s2, np.pi / 2)], [0.3, 0.7])

for factors in ([zx, zx], [zx, yz, zx]):
    mset, probe, basis = ex.product_construction(factors)
    g = GameInstance(probe, mset)
    print(f"B={mset.dim} A={mset.num_measurements}",
          "residual", ex.gram_offdiag_max(mset, probe),
          "rate", simulate_rounds(g, basis, 50_000, seed=0))

# %% compare: a random two-qubit set of four measurements
rnd = ex.random_measurement_set(4, 4, seed=1)
print("random 4-dim set, best residual", ex.minimize_residual(rnd, restarts=3).best_residual)
