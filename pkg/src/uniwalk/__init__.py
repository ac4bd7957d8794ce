"""Unidirectional discrete-time quantum walk on the half line.

Exact evolution by recurrence and by discrete Fourier closed forms,
stationary-phase asymptotics of the position PMF, and exit-time
distributions under repeated probing of a threshold site.
"""

from .walk_core import CoinSpec, QubitState, WaveField, coin_matrix, hadamard
from .evolution import Pmf, evolve, initial_field, pmf, step, to_bidirectional
from .spectral import closed_form_field, fft_field
from .exit_time import (
    ExitDistribution,
    classical_exit_pmf,
    exit_pmf_closed,
    exit_pmf_filtered,
    tail_exponent_fit,
)

__version__ = "0.1.0"

__all__ = [
    "CoinSpec",
    "QubitState",
    "WaveField",
    "coin_matrix",
    "hadamard",
    "Pmf",
    "evolve",
    "initial_field",
    "pmf",
    "step",
    "to_bidirectional",
    "closed_form_field",
    "fft_field",
    "ExitDistribution",
    "classical_exit_pmf",
    "exit_pmf_closed",
    "exit_pmf_filtered",
    "tail_exponent_fit",
]
