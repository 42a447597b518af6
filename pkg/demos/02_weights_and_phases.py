"""Any qubit set works, whatever the weights. Phases only move Bob's basis."""
import numpy as np

from qguess import GameInstance, MeasurementSet, ProjectiveMeasurement, simulate_rounds, solve
from qguess.linalg import haar_unitary

rng = np.random.default_rng(2)
A = 5
ms = tuple(ProjectiveMeasurement.from_unitary(haar_unitary(2, rng)) for _ in range(A))
weights = rng.dirichlet(np.ones(A))
s = MeasurementSet(ms, weights, rng.uniform(0, 2 * np.pi, A))

sol = solve(s)
print("weights ", np.round(weights, 3))
print("a, b, phi", round(sol.a, 6), round(sol.b, 6), round(sol.phase, 6))
print("residual", sol.residual)

# %% new control phases: same probe, different guess basis
t = s.with_phases(rng.uniform(0, 2 * np.pi, A))
sol2 = solve(t)
print("a, b, phi", round(sol2.a, 6), round(sol2.b, 6), round(sol2.phase, 6))
print("basis before\n", np.round(sol.bob_basis.basis, 3))
print("basis after\n", np.round(sol2.bob_basis.basis, 3))

for mset, x in ((s, sol), (t, sol2)):
    print("rate", simulate_rounds(GameInstance(x.probe, mset), x.bob_basis, 20_000, seed=1))

# %% success stays at 1 across a weight sweep
for w0 in np.linspace(0, 1, 6):
    rest = weights[1:] / weights[1:].sum() * (1 - w0)
    print(f"w0={w0:.1f} residual={solve(s.with_weights(np.r_[w0, rest])).residual:.1e}")
