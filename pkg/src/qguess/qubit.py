"""Closed-form perfect probe for any qubit measurement set.

Each measurement is written as ``|0> -> a_i|0> + b_i e^{i phi_i}|1>`` with
``a_i`` real non-negative, and the control weights are folded in as
``a_i <- |zeta_i| a_i``, ``b_i <- |zeta_i| b_i``. Writing the probe as
``(a, b e^{i phi})`` the orthogonality of the two post-selected vectors
becomes the pair of real quadratics

    X_r b^2 + Y_r(phi) a b - X_r a^2 = 0
    X_I b^2 + Y_I(phi) a b - X_I a^2 = 0

with ``X = -sum a_i b_i e^{i phi_i}`` independent of the probe. ``phi`` is
fixed by ``Y_r X_I - Y_I X_r = 0`` and then ``b/a`` by either quadratic.
Every candidate is checked against the orthogonality residual directly.

A basis given as explicit vectors need not have its second vector equal
to ``(b_i e^{-i phi_i}, -a_i)``; it may differ by a phase ``e^{-i delta_i}``.
That phase changes the controlled unitary and therefore the game, so it
is kept as ``rel_phase[i] = e^{i delta_i}`` and multiplies every term of
measurement ``i``. With all ``rel_phase == 1`` the sums below are the
plain real/imaginary expansions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import GameInstance, bob_basis, post_selected_ensemble
from .linalg import NORM_TOL, TEST_TOL
from .measurements import MeasurementSet, ProjectiveMeasurement, qubit_params

DEGENERATE_TOL = 1e-12
TIE_TOL = 1e-12


class SolverError(RuntimeError):
    """No candidate probe reached the residual tolerance."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass(frozen=True)
class SolverInputs:
    """Per-measurement ``(a_i, b_i, phi_i)`` with control weights folded in."""

    a: np.ndarray
    b: np.ndarray
    phi: np.ndarray
    rel_phase: np.ndarray | None = None

    def __post_init__(self):
        for name in ("a", "b", "phi"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        rp = np.ones(self.a.shape, complex) if self.rel_phase is None else self.rel_phase
        object.__setattr__(self, "rel_phase", np.asarray(rp, dtype=complex))

    def scaled(self, c: float) -> "SolverInputs":
        return SolverInputs(self.a * c, self.b * c, self.phi, self.rel_phase)


@dataclass(frozen=True, eq=False)
class QubitSolution:
    probe: np.ndarray
    a: float
    b: float
    phase: float
    residual: float
    bob_basis: ProjectiveMeasurement


def _relative_phase(m: ProjectiveMeasurement) -> complex:
    """``e^{i delta}`` such that ``basis[1] = e^{-i delta} (b e^{-i phi}, -a)``
    once ``basis[0]`` is rephased to ``(a, b e^{i phi})``."""
    v0, v1 = m.basis
    # same rephasing rule as qubit_params
    theta0 = np.angle(v0[0]) if abs(v0[0]) > 0 else 0.0
    alpha, beta = v0 * np.exp(-1j * theta0)
    canon = np.array([np.conj(beta), -alpha])
    e_theta1 = np.vdot(canon, v1)
    return complex(np.exp(1j * theta0) * np.conj(e_theta1) / abs(e_theta1))


def reparameterize(mset: MeasurementSet) -> SolverInputs:
    if mset.dim != 2:
        raise ValueError(f"qubit solver needs dimension 2, got {mset.dim}")
    params = [qubit_params(m) for m in mset.measurements]
    scale = np.sqrt(mset.weights)
    a = np.array([p.a for p in params]) * scale
    b = np.array([p.b for p in params]) * scale
    phi = np.array([p.phi for p in params])
    rel = np.array([_relative_phase(m) for m in mset.measurements])
    return SolverInputs(a, b, phi, rel)


def _scale(inp: SolverInputs) -> float:
    """``sum(a_i^2 + b_i^2)``; equals 1 for normalized weights. Degeneracy
    thresholds are taken relative to it so the solver is scale invariant."""
    return float(np.sum(inp.a**2 + inp.b**2))


def compute_X(inp: SolverInputs) -> tuple[float, float]:
    x = -np.sum(inp.rel_phase * inp.a * inp.b * np.exp(1j * inp.phi))
    return float(x.real), float(x.imag)


def compute_Y(inp: SolverInputs, phase: float) -> tuple[float, float]:
    """The probe-phase dependent coefficients ``(Y_r, Y_I)``."""
    terms = inp.b**2 * np.exp(1j * (2 * inp.phi - phase)) - inp.a**2 * np.exp(1j * phase)
    y = np.sum(inp.rel_phase * terms)
    return float(y.real), float(y.imag)


def phase_equation_terms(inp: SolverInputs, x_r: float, x_i: float) -> tuple[float, float]:
    """Numerator and denominator of ``tan(phi)`` from ``Y_r X_I = Y_I X_r``.

    ``Y(phi) = e^{-i phi} P - e^{i phi} Q``; the condition is
    ``Im(conj(X) Y) = 0``.
    """
    xc = complex(x_r, -x_i)
    p = xc * np.sum(inp.rel_phase * inp.b**2 * np.exp(2j * inp.phi))
    q = xc * np.sum(inp.rel_phase * inp.a**2)
    return float(q.imag - p.imag), float(-(p.real + q.real))


def solve_phase(inp: SolverInputs, x_r: float, x_i: float) -> tuple[float, ...]:
    """Candidate probe phases in ``[0, 2 pi)``, sorted.

    The two arctan branches ``phi*`` and ``phi* + pi`` are both returned.
    A vanishing denominator gives ``{pi/2, 3 pi/2}``; if the numerator
    vanishes too the phase is unconstrained and ``{0}`` is returned.
    Both terms are quartic in the amplitudes, so "vanishing" means below
    ``DEGENERATE_TOL * scale^2``.
    """
    num, den = phase_equation_terms(inp, x_r, x_i)
    tol = DEGENERATE_TOL * _scale(inp) ** 2
    if abs(den) <= tol:
        if abs(num) <= tol:
            return (0.0,)
        return (np.pi / 2, 3 * np.pi / 2)
    base = np.arctan(num / den) % np.pi
    return (float(base), float(base + np.pi))


def solve_amplitudes(x: float, y: float) -> tuple[float, float]:
    """Non-negative solution of ``x b^2 + y a b - x a^2 = 0`` with ``a^2 + b^2 = 1``.

    The ratio ``t = b/a`` is the positive root of ``x t^2 + y t - x = 0``,
    ``t = (-y + sign(x) sqrt(y^2 + 4 x^2)) / (2 x)``, evaluated in the
    cancellation-free form. ``x`` counts as vanishing relative to the size
    of the coefficients.
    """
    if x == 0 or abs(x) <= DEGENERATE_TOL * abs(y):
        raise ValueError("quadratic degenerates for vanishing X")
    disc = np.hypot(y, 2 * x)
    # roots are q/x and -x/q; q never vanishes since disc >= |y| and disc > 0
    q = -0.5 * (y + np.copysign(disc, y))
    t = q / x if q / x > 0 else -x / q
    a = 1.0 / np.sqrt(1.0 + t * t)
    return float(a), float(t * a)


def orthogonality_residual(mset: MeasurementSet, probe) -> float:
    g = GameInstance(probe, mset)
    e = post_selected_ensemble(g)
    return abs(np.vdot(e.vectors[0], e.vectors[1]))


def _probe(a: float, b: float, phase: float) -> np.ndarray:
    n = np.hypot(a, b)
    return np.array([a / n, (b / n) * np.exp(1j * phase)], dtype=complex)


def candidates(mset: MeasurementSet) -> list[tuple[float, float, float]]:
    """All ``(a, b, phase)`` candidates produced by the closed form."""
    inp = reparameterize(mset)
    x_r, x_i = compute_X(inp)
    tol = DEGENERATE_TOL * _scale(inp)
    out = []
    degenerate = abs(x_r) <= tol and abs(x_i) <= tol
    if degenerate:
        out += [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0)]
    for phase in solve_phase(inp, x_r, x_i):
        y_r, y_i = compute_Y(inp, phase)
        # Y/X is real on the phase solution; use the better conditioned component
        x, y = (x_r, y_r) if abs(x_r) >= abs(x_i) else (x_i, y_i)
        if abs(x) <= tol:
            continue
        a, b = solve_amplitudes(x, y)
        out.append((a, b, phase))
    return out


def solve(mset: MeasurementSet, tol: float = TEST_TOL) -> QubitSolution:
    """Perfect probe and Bob's guess basis for a qubit measurement set.

    Raises ``SolverError`` if no candidate reaches ``tol``.
    """
    scored = []
    for a, b, phase in candidates(mset):
        if b <= NORM_TOL:
            phase = 0.0
        probe = _probe(a, b, phase)
        scored.append((orthogonality_residual(mset, probe), phase, a, b, probe))
    if not scored:
        raise SolverError("closed form produced no candidate", float("inf"))
    floor = min(s[0] for s in scored)
    if floor > tol:
        raise SolverError(f"no qubit probe reaches residual {tol} (best {floor:.3e})", floor)
    # residuals at rounding level are ties; prefer the smallest phase
    res, phase, a, b, probe = min(
        (s for s in scored if s[0] <= floor + TIE_TOL), key=lambda s: (s[1], s[0])
    )
    e = post_selected_ensemble(GameInstance(probe, mset))
    return QubitSolution(
        probe=probe,
        a=float(a),
        b=float(b),
        phase=float(phase),
        residual=float(res),
        bob_basis=bob_basis(e, tol),
    )


def orto_residual(inp: SolverInputs, probe) -> complex:
    """``sum_i (alpha a_i + beta b_i e^{-i phi_i})^* (alpha b_i e^{i phi_i} - beta a_i)``.

    Works directly on the folded parameters (each term weighted by its
    ``rel_phase``); agrees with ``<u_0|u_1>``.
    """
    alpha, beta = np.asarray(probe, dtype=complex)
    beta_i = inp.b * np.exp(1j * inp.phi)
    left = alpha * inp.a + beta * np.conj(beta_i)
    right = alpha * beta_i - beta * inp.a
    return complex(np.sum(inp.rel_phase * np.conj(left) * right))
