"""Time-domain evolution of the walk by repeated application of the step operator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from .walk_core import CoinSpec, QubitState, WaveField, coin_matrix

__all__ = [
    "Pmf",
    "BidirectionalField",
    "initial_field",
    "step",
    "evolve",
    "trajectory",
    "pmf",
    "to_bidirectional",
]


@dataclass(frozen=True)
class Pmf:
    """Position distribution ``rho(n, t)`` on ``n = 0..t`` and its sum."""

    t: int
    rho: NDArray[np.float64] = field(repr=False)
    total: float


@dataclass(frozen=True)
class BidirectionalField:
    """Amplitudes of the conventional left/right walk at positions ``m``.

    ``positions[k] = 2k - t``, so only positions with the parity of ``t``
    are stored.
    """

    t: int
    positions: NDArray[np.int64] = field(repr=False)
    psi0: NDArray[np.complex128] = field(repr=False)
    psi1: NDArray[np.complex128] = field(repr=False)

    def pmf(self) -> NDArray[np.float64]:
        return np.abs(self.psi0) ** 2 + np.abs(self.psi1) ** 2


def initial_field(q: QubitState) -> WaveField:
    """Walker localized at the origin with coin state ``q``."""
    return WaveField(0, [q.a], [q.b])


def _advance(psi0, psi1, u, k):
    """Advance buffers holding the field at time ``k`` to time ``k + 1`` in place."""
    p0 = psi0[: k + 1].copy()
    p1 = psi1[: k + 1].copy()
    psi0[: k + 1] = u[0, 0] * p0 + u[0, 1] * p1
    psi1[1 : k + 2] = u[1, 0] * p0 + u[1, 1] * p1
    psi1[0] = 0.0


def step(w: WaveField, coin: CoinSpec) -> WaveField:
    """One throw of the coin followed by the conditional shift.

    ``psi0(n, t+1) = U00 psi0(n, t) + U01 psi1(n, t)`` and
    ``psi1(n, t+1) = U10 psi0(n-1, t) + U11 psi1(n-1, t)``.
    """
    u = coin_matrix(coin)
    psi0 = np.zeros(w.t + 2, dtype=np.complex128)
    psi1 = np.zeros(w.t + 2, dtype=np.complex128)
    psi0[: w.t + 1] = w.psi0
    psi1[: w.t + 1] = w.psi1
    _advance(psi0, psi1, u, w.t)
    return WaveField(w.t + 1, psi0, psi1)


def trajectory(q: QubitState, coin: CoinSpec, t: int) -> Iterator[WaveField]:
    """Yield the fields at times ``0, 1, ..., t``."""
    if t < 0:
        raise ValueError(f"number of steps must be nonnegative, got {t}")
    u = coin_matrix(coin)
    psi0 = np.zeros(t + 1, dtype=np.complex128)
    psi1 = np.zeros(t + 1, dtype=np.complex128)
    psi0[0], psi1[0] = q.a, q.b
    yield WaveField(0, psi0[:1], psi1[:1])
    for k in range(t):
        _advance(psi0, psi1, u, k)
        yield WaveField(k + 1, psi0[: k + 2], psi1[: k + 2])


def evolve(q: QubitState, coin: CoinSpec, t: int) -> WaveField:
    """Field after ``t`` steps from the localized initial state; O(t^2) work."""
    if t < 0:
        raise ValueError(f"number of steps must be nonnegative, got {t}")
    u = coin_matrix(coin)
    psi0 = np.zeros(t + 1, dtype=np.complex128)
    psi1 = np.zeros(t + 1, dtype=np.complex128)
    psi0[0], psi1[0] = q.a, q.b
    for k in range(t):
        _advance(psi0, psi1, u, k)
    return WaveField(t, psi0, psi1)


def pmf(w: WaveField) -> Pmf:
    rho = np.abs(w.psi0) ** 2 + np.abs(w.psi1) ** 2
    rho.flags.writeable = False
    return Pmf(w.t, rho, float(rho.sum()))


def to_bidirectional(w: WaveField) -> BidirectionalField:
    """Relabel site ``n`` as position ``2n - t`` of the conventional walk."""
    n = np.arange(w.t + 1, dtype=np.int64)
    return BidirectionalField(w.t, 2 * n - w.t, w.psi0.copy(), w.psi1.copy())
