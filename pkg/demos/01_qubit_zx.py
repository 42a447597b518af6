"""Bob guesses Alice's Z or X outcome with certainty.

Alice measures Z or X, chosen by a control qubit in (|0> + |1>)/sqrt2.
Bob only sees the control register afterwards, yet a well chosen probe
makes the two post-selected control states orthogonal.
"""
import numpy as np

from qguess import GameInstance, post_selected_ensemble, qubit_set, simulate_rounds, solve

s2 = np.sqrt(0.5)
zx = qubit_set([(1, 0, 0), (s2, s2, 0)])

# %% closed form
sol = solve(zx)
print("probe         ", np.round(sol.probe, 6))
print("cos, sin pi/8 ", np.round([np.cos(np.pi / 8), np.sin(np.pi / 8)], 6))
print("residual      ", sol.residual)

# %% the two post-selected control states
e = post_selected_ensemble(GameInstance(sol.probe, zx))
print("u_0           ", np.round(e.vectors[0], 6))
print("u_1           ", np.round(e.vectors[1], 6))
print("<u_0|u_1>     ", np.vdot(*e.vectors))

# %% a naive probe does not work
naive = post_selected_ensemble(GameInstance([1, 0], zx))
print("overlap with |0> probe", abs(np.vdot(*naive.vectors)))

# %% play it
rate = simulate_rounds(GameInstance(sol.probe, zx), sol.bob_basis, 100_000, seed=0)
print("success over 1e5 rounds", rate)
