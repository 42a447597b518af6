"""Experiment spec files.

A spec is a YAML mapping::

    dimension: 2
    measurements:
      - qubit 1 0 0                 # a b phi
      - mub 1                       # k-th quadratic-phase MUB (prime dimension)
      - computational
      - basis:                      # explicit, one row per basis vector
          - [[1, 0], [0, 0]]        # complex entries as [re, im]
          - [[0, 0], [1, 0]]
    weights: [0.5, 0.5]             # optional, default uniform
    phases: [0, 0]                  # optional, radians
    probe: [[1, 0], [0, 0]]         # optional, used by `simulate`
    guess_basis: [...]              # optional, rows as for `basis`

Instead of ``measurements`` a spec may give ``random: {count: A, seed: S}``
for a Haar-random set of the stated dimension.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .measurements import (
    MeasurementSet,
    ProjectiveMeasurement,
    QubitMeasurementParams,
    computational_basis,
    mub_measurement,
    qubit_measurement,
)


class SpecError(ValueError):
    pass


@dataclass
class ExperimentSpec:
    mset: MeasurementSet
    probe: np.ndarray | None = None
    guess_basis: ProjectiveMeasurement | None = None
    raw: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.mset.dim

    def digest(self) -> str:
        text = yaml.safe_dump(dump_set(self.mset), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:12]


def _complex_vector(rows) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad complex vector {rows!r}") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise SpecError("complex entries must be [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_rows(rows) -> np.ndarray:
    return np.array([_complex_vector(r) for r in rows])


def _encode_vector(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def _parse_measurement(item, dim: int) -> ProjectiveMeasurement:
    if isinstance(item, dict):
        if set(item) != {"basis"}:
            raise SpecError(f"unknown measurement mapping keys {sorted(item)}")
        return ProjectiveMeasurement(_complex_rows(item["basis"]))
    if not isinstance(item, str):
        raise SpecError(f"cannot parse measurement {item!r}")
    head, *args = item.split()
    if head == "computational" and not args:
        return computational_basis(dim)
    if head == "mub" and len(args) == 1:
        return mub_measurement(dim, int(args[0]))
    if head == "qubit" and len(args) == 3:
        if dim != 2:
            raise SpecError("'qubit' measurements need dimension 2")
        a, b, phi = (float(x) for x in args)
        return qubit_measurement(QubitMeasurementParams(a, b, phi))
    raise SpecError(f"cannot parse measurement {item!r}")


def parse_spec(data: dict) -> ExperimentSpec:
    if not isinstance(data, dict):
        raise SpecError("spec must be a mapping")
    try:
        dim = int(data["dimension"])
        if "random" in data:
            from .explorer import random_measurement_set

            r = data["random"]
            base = random_measurement_set(dim, int(r["count"]), int(r["seed"]))
            ms = base.measurements
        else:
            ms = tuple(_parse_measurement(m, dim) for m in data["measurements"])
        mset = MeasurementSet(ms, data.get("weights"), data.get("phases"))
        if mset.dim != dim:
            raise SpecError(f"measurements have dimension {mset.dim}, spec says {dim}")
        probe = _complex_vector(data["probe"]) if "probe" in data else None
        gb = data.get("guess_basis")
        guess = ProjectiveMeasurement(_complex_rows(gb)) if gb is not None else None
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(str(exc)) from exc
    return ExperimentSpec(mset, probe, guess, data)


def load_spec(path) -> ExperimentSpec:
    try:
        data = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise SpecError(f"cannot read spec {path}: {exc}") from exc
    return parse_spec(data)


def dump_set(mset: MeasurementSet) -> dict:
    """Spec mapping with every measurement written as an explicit basis."""
    return {
        "dimension": mset.dim,
        "measurements": [{"basis": [_encode_vector(v) for v in m.basis]} for m in mset.measurements],
        "weights": [float(w) for w in mset.weights],
        "phases": [float(p) for p in mset.phases],
    }


def dumps_set(mset: MeasurementSet) -> str:
    return yaml.safe_dump(dump_set(mset), sort_keys=False)


def dump_vector(v) -> list:
    return _encode_vector(v)
