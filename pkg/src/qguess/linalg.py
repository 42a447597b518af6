"""Small dense complex linear algebra used throughout the package.

States are 1-D complex ``numpy`` arrays and operators are 2-D complex
arrays. The helpers here only add validation and a fixed set of
conventions:

* inner products are conjugate-linear in the first argument,
* tensor products are control-major, ``(u ⊗ v)[i*len(v) + k] = u[i] v[k]``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

# Tolerances shared by every module.
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-12
TEST_TOL = 1e-9
DROP_TOL = 1e-9


def as_state(amps, normalized: bool = False) -> np.ndarray:
    """Return ``amps`` as a finite complex vector.

    With ``normalized=True`` the vector must already have unit norm
    (within ``NORM_TOL``); it is not rescaled.
    """
    v = np.array(amps, dtype=complex).reshape(-1)
    if v.size == 0:
        raise ValueError("state vector must have positive dimension")
    if not np.all(np.isfinite(v)):
        raise ValueError("state vector contains NaN or Inf")
    if normalized and abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm={np.linalg.norm(v)!r})")
    return v


def normalize(v) -> np.ndarray:
    v = as_state(v)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def is_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def as_unitary(entries, tol: float = UNITARY_TOL) -> np.ndarray:
    """Validate and return a square unitary matrix."""
    m = np.array(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf")
    if not is_unitary(m, tol):
        raise ValueError("matrix is not unitary within tolerance")
    return m


def inner_product(u, v) -> complex:
    """Return ``<u|v> = sum_k conj(u_k) v_k``."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def tensor(u, v) -> np.ndarray:
    return np.kron(as_state(u), as_state(v))


def apply(U, v) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if U.ndim != 2 or U.shape[1] != v.shape[0]:
        raise ValueError(f"cannot apply {U.shape} matrix to vector of length {v.shape[0]}")
    return U @ v


def dagger(U) -> np.ndarray:
    return np.asarray(U, dtype=complex).conj().T


def gram(vectors: Sequence) -> np.ndarray:
    """Matrix of pairwise inner products, ``G[a, b] = <v_a|v_b>``."""
    vs = np.array([np.asarray(v, dtype=complex) for v in vectors])
    if vs.ndim != 2:
        raise ValueError("all vectors must share one dimension")
    return vs.conj() @ vs.T


def orthonormalize(vectors: Iterable, tol: float = DROP_TOL) -> list[np.ndarray]:
    """Gram-Schmidt with one re-orthogonalization pass.

    Vectors whose residual norm falls below ``tol`` after projecting out
    the previously accepted ones are dropped.
    """
    out: list[np.ndarray] = []
    dim = None
    for v in vectors:
        w = np.array(v, dtype=complex).reshape(-1)
        if dim is None:
            dim = w.size
        elif w.size != dim:
            raise ValueError("all vectors must share one dimension")
        for _ in range(2):
            for q in out:
                w = w - np.vdot(q, w) * q
        n = np.linalg.norm(w)
        if n < tol:
            continue
        out.append(w / n)
    return out


def complete_basis(vectors: Sequence, dim: int, tol: float = DROP_TOL) -> list[np.ndarray]:
    """Orthonormalize ``vectors`` and pad with computational-basis directions."""
    seed = list(vectors) + list(np.eye(dim, dtype=complex))
    basis = orthonormalize(seed, tol)
    return basis[:dim]


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random ``d x d`` unitary; columns are the basis vectors.

    Columns come from Gram-Schmidt on complex Gaussian columns, then each
    column is rotated so that its first nonzero entry is real positive.
    """
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    cols = orthonormalize(z.T, tol=0.0)
    if len(cols) != d:  # probability zero
        raise RuntimeError("degenerate Gaussian sample")
    q = np.array(cols).T
    for k in range(d):
        nz = np.flatnonzero(np.abs(q[:, k]) > NORM_TOL)
        q[:, k] *= np.exp(-1j * np.angle(q[nz[0], k]))
    return q


def max_offdiag(g: np.ndarray) -> float:
    """Largest off-diagonal magnitude of a square matrix (0 for 1x1)."""
    g = np.asarray(g)
    if g.shape[0] < 2:
        return 0.0
    mask = ~np.eye(g.shape[0], dtype=bool)
    return float(np.max(np.abs(g[mask])))
