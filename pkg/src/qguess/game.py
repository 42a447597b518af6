"""The coherent guessing game.

Bob sends a probe of dimension ``B``. Alice applies ``U_i^dagger`` to it
controlled on her register ``sum_i zeta_i |i>``, measures the probe in the
computational basis (outcome ``a``) and returns the control register. The
unnormalized control vector left behind for outcome ``a`` is

    u_a[i] = zeta_i <M_i,a | psi>

and Bob's task is to discriminate the ``u_a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import NORM_TOL, TEST_TOL, as_state, complete_basis, gram, max_offdiag
from .measurements import MeasurementSet, ProjectiveMeasurement

# eigenvalues of the ensemble operator below this are treated as zero
PINV_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GameInstance:
    probe: np.ndarray
    mset: MeasurementSet

    def __post_init__(self):
        probe = as_state(self.probe, normalized=True)
        if probe.size != self.mset.dim:
            raise ValueError(
                f"probe has dimension {probe.size} but measurements act on {self.mset.dim}"
            )
        object.__setattr__(self, "probe", probe)


@dataclass(frozen=True, eq=False)
class PostSelectedEnsemble:
    """Row ``a`` of ``vectors`` is the unnormalized control vector ``u_a``."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        if v.ndim != 2:
            raise ValueError("ensemble vectors must form a (B, A) array")
        object.__setattr__(self, "vectors", v)

    @property
    def num_outcomes(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def outcome_probs(self) -> np.ndarray:
        return np.sum(np.abs(self.vectors) ** 2, axis=1)

    def gram(self) -> np.ndarray:
        return gram(self.vectors)

    def residual(self) -> float:
        """Largest pairwise overlap ``|<u_a|u_b>|`` over ``a != b``."""
        return max_offdiag(self.gram())


def control_state(mset: MeasurementSet) -> np.ndarray:
    return mset.control_amplitudes.astype(complex)


def _branch_matrix(g: GameInstance) -> np.ndarray:
    # row i is U_i^dagger |psi>, i.e. component a is <M_i,a|psi>
    return np.array([m.basis.conj() @ g.probe for m in g.mset.measurements])


def joint_state(g: GameInstance) -> np.ndarray:
    """``sum_i zeta_i |i> (x) U_i^dagger |psi>``, control register major."""
    zeta = control_state(g.mset)
    return (zeta[:, None] * _branch_matrix(g)).reshape(-1)


def post_selected_ensemble(g: GameInstance) -> PostSelectedEnsemble:
    zeta = control_state(g.mset)
    return PostSelectedEnsemble((zeta[:, None] * _branch_matrix(g)).T)


def perfect_guess_check(e: PostSelectedEnsemble, tol: float = TEST_TOL) -> bool:
    return e.residual() <= tol


def helstrom_success(e: PostSelectedEnsemble) -> float:
    """Optimal success probability for two pure states.

    Priors are carried by the norms of the unnormalized vectors, so the
    usual ``4 p0 p1 |<psi0|psi1>|^2`` term is just ``4 |<u0|u1>|^2``.
    """
    if e.num_outcomes != 2:
        raise ValueError(f"Helstrom success needs exactly 2 outcomes, got {e.num_outcomes}")
    ov = abs(np.vdot(e.vectors[0], e.vectors[1]))
    return 0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - 4.0 * ov * ov)))


def _inv_sqrt_psd(s: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(s)
    inv = np.zeros_like(vals)
    keep = vals > PINV_TOL
    inv[keep] = 1.0 / np.sqrt(vals[keep])
    return (vecs * inv) @ vecs.conj().T


def pgm_success(e: PostSelectedEnsemble) -> float:
    """Success probability of the square-root (pretty good) measurement."""
    u = e.vectors
    s = u.T @ u.conj()  # sum_a |u_a><u_a|
    s = 0.5 * (s + s.conj().T)
    r = _inv_sqrt_psd(s)
    diag = np.einsum("ai,ij,aj->a", u.conj(), r, u)
    # rounding can push an orthogonal ensemble a hair above 1
    return min(1.0, float(np.sum(np.abs(diag) ** 2)))


def best_known_success(e: PostSelectedEnsemble) -> float:
    """Helstrom value for two outcomes, PGM otherwise."""
    return helstrom_success(e) if e.num_outcomes == 2 else pgm_success(e)


def bob_basis(e: PostSelectedEnsemble, tol: float = TEST_TOL) -> ProjectiveMeasurement:
    """Bob's guess measurement for a perfectly distinguishable ensemble.

    When ``B <= A`` basis vector ``a`` is the normalized ``u_a`` (or a
    completion vector if ``u_a`` vanishes) and labels are the identity.
    When ``B > A`` the nonzero ``u_a`` come first, labelled by their
    outcome; completion vectors get label ``-1``, which never matches.
    """
    if not perfect_guess_check(e, tol):
        raise ValueError(
            f"ensemble is not perfectly distinguishable (residual {e.residual():.3e} > {tol})"
        )
    A, B = e.dim, e.num_outcomes
    probs = e.outcome_probs
    live = [a for a in range(B) if probs[a] > tol]
    if len(live) > A:
        raise ValueError("more nonzero post-selected vectors than control dimensions")
    live_vecs = [e.vectors[a] / np.sqrt(probs[a]) for a in live]

    full = complete_basis(live_vecs, A)
    if B <= A:
        # keep slot a for outcome a; dead slots get filled from the completion
        normed = dict(zip(live, full[: len(live)]))
        fill = iter(full[len(live):])
        basis = [normed[a] if a in normed else next(fill) for a in range(A)]
        return ProjectiveMeasurement(np.array(basis))

    labels = tuple(live) + (-1,) * (A - len(live))
    return ProjectiveMeasurement(np.array(full), labels)


def _branch_probabilities(e: PostSelectedEnsemble, basis: ProjectiveMeasurement):
    """``P[a, b]`` = probability Bob's basis vector ``b`` clicks given outcome ``a``."""
    if basis.dim != e.dim:
        raise ValueError(f"guess basis has dimension {basis.dim}, ensemble has {e.dim}")
    probs = e.outcome_probs
    P = np.zeros((e.num_outcomes, basis.dim))
    for a in range(e.num_outcomes):
        if probs[a] <= 0:
            continue
        ua = e.vectors[a] / np.sqrt(probs[a])
        P[a] = np.abs(basis.basis.conj() @ ua) ** 2
    return P


def exact_success(g: GameInstance, basis: ProjectiveMeasurement) -> float:
    """Exact probability that Bob's guess equals Alice's outcome."""
    e = post_selected_ensemble(g)
    P = _branch_probabilities(e, basis)
    labels = np.array(basis.outcome_labels)
    hit = labels[None, :] == np.arange(e.num_outcomes)[:, None]
    return float(np.sum(e.outcome_probs * np.sum(P * hit, axis=1)))


def _snap(p: np.ndarray) -> np.ndarray:
    p = np.where(p < NORM_TOL, 0.0, p)
    return p / p.sum()


def simulate_rounds(
    g: GameInstance, basis: ProjectiveMeasurement, n: int, seed: int
) -> float:
    """Monte-Carlo estimate of Bob's success rate over ``n`` rounds.

    Alice's outcome is drawn from the outcome probabilities, then Bob's
    click from the Born rule in ``basis``. Probabilities below ``NORM_TOL``
    are snapped to zero, so perfect instances score exactly 1.
    """
    if n < 1:
        raise ValueError("need at least one round")
    rng = np.random.default_rng(seed)
    e = post_selected_ensemble(g)
    P = _branch_probabilities(e, basis)
    labels = np.array(basis.outcome_labels)
    counts_a = rng.multinomial(n, _snap(e.outcome_probs))
    correct = 0
    for a, na in enumerate(counts_a):
        if na == 0:
            continue
        counts_b = rng.multinomial(na, _snap(P[a]))
        correct += int(np.sum(counts_b[labels == a]))
    return correct / n
