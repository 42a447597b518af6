"""Projective measurements, the qubit parameterization, and prime-dimension MUBs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import NORM_TOL, UNITARY_TOL, as_state, as_unitary, gram


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """An ordered orthonormal basis; outcome ``j`` is the vector ``basis[j]``.

    ``labels`` optionally renames outcomes (``labels[j]`` is reported when
    ``basis[j]`` clicks). It is used by guess measurements whose basis
    vectors do not line up one-to-one with the quantity being guessed.
    """

    basis: np.ndarray
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        b = np.array(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] == 0:
            raise ValueError(f"basis must be a non-empty square array, got {b.shape}")
        if not np.all(np.isfinite(b)):
            raise ValueError("basis contains NaN or Inf")
        if np.max(np.abs(gram(b) - np.eye(b.shape[0]))) > UNITARY_TOL:
            raise ValueError("basis vectors are not orthonormal")
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)
        if self.labels is not None:
            labels = tuple(int(x) for x in self.labels)
            if len(labels) != b.shape[0]:
                raise ValueError("need one label per basis vector")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_unitary(cls, U) -> "ProjectiveMeasurement":
        """Measurement whose outcome ``j`` is column ``j`` of ``U`` (``U|j> = |M>_j``)."""
        return cls(as_unitary(U).T)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def unitary(self) -> np.ndarray:
        return self.basis.T.copy()

    @property
    def outcome_labels(self) -> tuple[int, ...]:
        return self.labels if self.labels is not None else tuple(range(self.dim))

    def probabilities(self, state) -> np.ndarray:
        v = as_state(state)
        return np.abs(self.basis.conj() @ v) ** 2


@dataclass(frozen=True)
class QubitMeasurementParams:
    """``|0> -> a|0> + b e^{i phi}|1>``, ``|1> -> b e^{-i phi}|0> - a|1>``."""

    a: float
    b: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.a <= 1.0 + NORM_TOL) or self.b < 0.0:
            raise ValueError(f"need 0 <= a <= 1 and b >= 0, got a={self.a}, b={self.b}")
        if abs(self.a**2 + self.b**2 - 1.0) > NORM_TOL:
            raise ValueError("a^2 + b^2 must equal 1")
        if not np.isfinite(self.phi):
            raise ValueError("phi must be finite")
        object.__setattr__(self, "phi", float(self.phi) % (2 * np.pi))


def qubit_measurement(p: QubitMeasurementParams) -> ProjectiveMeasurement:
    e = np.exp(1j * p.phi)
    return ProjectiveMeasurement(
        np.array([[p.a, p.b * e], [p.b * np.conj(e), -p.a]], dtype=complex)
    )


def qubit_params(m: ProjectiveMeasurement) -> QubitMeasurementParams:
    """Read ``(a, b, phi)`` back from a qubit measurement.

    The first basis vector is rephased so that its first amplitude is real
    and non-negative. When ``b == 0`` the phase is defined as 0.
    """
    if m.dim != 2:
        raise ValueError("qubit_params needs a 2-dimensional measurement")
    v = m.basis[0]
    if abs(v[0]) > 0:
        v = v * np.exp(-1j * np.angle(v[0]))
    a = float(abs(v[0]))
    b = float(abs(v[1]))
    phi = float(np.angle(v[1]) % (2 * np.pi)) if b > NORM_TOL else 0.0
    # renormalize away rounding so the invariant check passes
    n = np.hypot(a, b)
    return QubitMeasurementParams(min(a / n, 1.0), b / n, phi)


def computational_basis(d: int) -> ProjectiveMeasurement:
    return ProjectiveMeasurement(np.eye(d, dtype=complex))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _check_prime(d: int) -> None:
    if not is_prime(d):
        raise ValueError(f"MUB construction requires a prime dimension, got {d}")


def mub_vector(d: int, k: int, i: int) -> np.ndarray:
    """``|M_k>_i = d^{-1/2} sum_j w^{k j^2 + i j} |j>`` with ``w = exp(2 pi i / d)``.

    For ``d = 2`` that family degenerates (``k`` only relabels outcomes), so
    the quadratic term uses ``sqrt(w) = i`` instead, giving the X and Y
    eigenbases.
    """
    _check_prime(d)
    if not (0 <= k < d and 0 <= i < d):
        raise ValueError("basis and outcome indices must lie in [0, d)")
    return _mub_phases(d, k, np.arange(d), i)


def _mub_phases(d: int, k: int, j, i) -> np.ndarray:
    # exponents are reduced modulo the root order before exponentiating
    if d == 2:
        order, n = 4, (k * j * j + 2 * i * j) % 4
    else:
        order, n = d, (k * j * j + i * j) % d
    z = np.asarray(np.exp(2j * np.pi * n / order))
    # exact zeros (e.g. cos(pi/2)) come out as ~1e-17; clean them
    z = np.where(np.abs(z.real) < 1e-15, 0, z.real) + 1j * np.where(np.abs(z.imag) < 1e-15, 0, z.imag)
    return z / np.sqrt(d)


def mub_unitary(d: int, k: int) -> np.ndarray:
    """Unitary whose column ``j`` is ``mub_vector(d, k, j)``."""
    _check_prime(d)
    if not 0 <= k < d:
        raise ValueError("basis index must lie in [0, d)")
    r = np.arange(d)[:, None]
    c = np.arange(d)[None, :]
    return _mub_phases(d, k, r, c)


def mub_measurement(d: int, k: int) -> ProjectiveMeasurement:
    return ProjectiveMeasurement.from_unitary(mub_unitary(d, k))


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """``A`` measurements of one dimension selected by control amplitudes.

    The control amplitude of measurement ``i`` is
    ``sqrt(weights[i]) * exp(1j * phases[i])``.
    """

    measurements: tuple[ProjectiveMeasurement, ...]
    weights: np.ndarray = field(default=None)
    phases: np.ndarray = field(default=None)

    def __post_init__(self):
        ms = tuple(self.measurements)
        if not ms:
            raise ValueError("a measurement set needs at least one measurement")
        dims = {m.dim for m in ms}
        if len(dims) != 1:
            raise ValueError(f"measurements have differing dimensions {sorted(dims)}")
        n = len(ms)
        w = np.full(n, 1.0 / n) if self.weights is None else np.array(self.weights, dtype=float)
        ph = np.zeros(n) if self.phases is None else np.array(self.phases, dtype=float)
        if w.shape != (n,) or ph.shape != (n,):
            raise ValueError("need exactly one weight and one phase per measurement")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(ph))):
            raise ValueError("weights and phases must be finite")
        if np.any(w < 0) or abs(w.sum() - 1.0) > NORM_TOL:
            raise ValueError(f"weights must be non-negative and sum to 1, got {w}")
        ph = ph % (2 * np.pi)
        w.flags.writeable = False
        ph.flags.writeable = False
        object.__setattr__(self, "measurements", ms)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "phases", ph)

    @property
    def num_measurements(self) -> int:
        return len(self.measurements)

    @property
    def dim(self) -> int:
        return self.measurements[0].dim

    @property
    def control_amplitudes(self) -> np.ndarray:
        return np.sqrt(self.weights) * np.exp(1j * self.phases)

    def with_weights(self, weights, phases=None) -> "MeasurementSet":
        return MeasurementSet(
            self.measurements, weights, self.phases if phases is None else phases
        )

    def with_phases(self, phases) -> "MeasurementSet":
        return MeasurementSet(self.measurements, self.weights, phases)


def qubit_set(params: Sequence, weights=None, phases=None) -> MeasurementSet:
    """Build a qubit set from ``(a, b, phi)`` triples or ``QubitMeasurementParams``."""
    ms = []
    for p in params:
        if not isinstance(p, QubitMeasurementParams):
            p = QubitMeasurementParams(*p)
        ms.append(qubit_measurement(p))
    return MeasurementSet(tuple(ms), weights, phases)


def mub_set(d: int, count: int, weights=None, phases=None) -> MeasurementSet:
    """The first ``count`` bases ``k = 0..count-1`` of the quadratic-phase MUB family."""
    _check_prime(d)
    if not 1 <= count <= d:
        raise ValueError(f"count must lie in [1, {d}] for d={d}")
    return MeasurementSet(tuple(mub_measurement(d, k) for k in range(count)), weights, phases)
