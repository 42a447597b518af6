"""Coherent quantum guessing game.

Bob prepares a probe, Alice measures it in one of several bases chosen
coherently by a control register, and Bob guesses her outcome from the
returned control register.
"""

from .game import (
    GameInstance,
    PostSelectedEnsemble,
    bob_basis,
    control_state,
    exact_success,
    helstrom_success,
    joint_state,
    perfect_guess_check,
    pgm_success,
    post_selected_ensemble,
    simulate_rounds,
)
from .measurements import (
    MeasurementSet,
    ProjectiveMeasurement,
    QubitMeasurementParams,
    computational_basis,
    mub_set,
    mub_unitary,
    mub_vector,
    qubit_measurement,
    qubit_set,
)
from .qubit import QubitSolution, SolverError, solve

__version__ = "0.1.0"
