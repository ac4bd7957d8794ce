"""Domain types and the coin operator of the unidirectional quantum walk.

The walker lives on sites ``n = 0, 1, 2, ...`` and carries a coin qubit.
At every step the coin is thrown with a 2x2 unitary and the walker then
stays put (coin ``|0>``) or moves one site to the right (coin ``|1>``).

Amplitudes are plain Python/NumPy complex numbers in double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "NORM_TOL",
    "QubitState",
    "CoinSpec",
    "WaveField",
    "coin_matrix",
    "hadamard",
    "is_hadamard",
]

#: Tolerance on |a|^2 + |b|^2 = 1 for accepted coin states.
NORM_TOL = 1e-12

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


def _as_finite_complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class QubitState:
    """Initial coin superposition ``a|0> + b|1>``.

    The plain constructor rejects states whose norm differs from one by
    more than :data:`NORM_TOL`; use :meth:`normalized` to rescale.
    """

    a: complex
    b: complex

    def __post_init__(self):
        a = _as_finite_complex(self.a, "a")
        b = _as_finite_complex(self.b, "b")
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(
                f"coin state is not normalized: |a|^2 + |b|^2 = {norm!r}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def normalized(cls, a_raw, b_raw) -> "QubitState":
        a = _as_finite_complex(a_raw, "a")
        b = _as_finite_complex(b_raw, "b")
        norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(a / norm, b / norm)

    @classmethod
    def symmetric(cls) -> "QubitState":
        """The state ``(|0> + i|1>)/sqrt(2)`` whose walk PMF is symmetric."""
        s = 1.0 / math.sqrt(2.0)
        return cls(s, 1j * s)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "QubitState":
        """Draw a state uniformly on the Bloch sphere."""
        z = rng.standard_normal(4)
        return cls.normalized(complex(z[0], z[1]), complex(z[2], z[3]))

    def as_array(self) -> NDArray[np.complex128]:
        return np.array([self.a, self.b], dtype=np.complex128)


@dataclass(frozen=True)
class CoinSpec:
    """Angles (radians) of the general unitary coin.

    The default values give the Hadamard coin.
    """

    alpha: float = 0.0
    beta: float = 0.0
    phi: float = math.pi / 4

    def __post_init__(self):
        for name in ("alpha", "beta", "phi"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)


def coin_matrix(spec: CoinSpec) -> NDArray[np.complex128]:
    r"""Return the 2x2 coin unitary for ``spec``.

    Rows index the outgoing coin value, columns the incoming one::

        [[ e^{i alpha} cos phi,   e^{i beta} sin phi ],
         [ e^{-i beta} sin phi,  -e^{-i alpha} cos phi]]
    """
    c, s = math.cos(spec.phi), math.sin(spec.phi)
    ea, eb = cmath.exp(1j * spec.alpha), cmath.exp(1j * spec.beta)
    return np.array(
        [[ea * c, eb * s], [eb.conjugate() * s, -ea.conjugate() * c]],
        dtype=np.complex128,
    )


def hadamard() -> CoinSpec:
    """The fair (Hadamard) coin, ``(1/sqrt 2) [[1, 1], [1, -1]]``."""
    return CoinSpec(alpha=0.0, beta=0.0, phi=math.pi / 4)


def is_hadamard(spec: CoinSpec, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(coin_matrix(spec) - _HADAMARD)) <= tol)


def _frozen_complex(values, length: int, name: str) -> NDArray[np.complex128]:
    arr = np.array(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.shape[0] != length:
        raise ValueError(f"{name} must have length {length}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite amplitudes")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class WaveField:
    """The two coin components ``psi0(n, t)``, ``psi1(n, t)`` on ``n = 0..t``.

    Arrays are copied on construction and made read-only.
    """

    t: int
    psi0: NDArray[np.complex128] = field(repr=False)
    psi1: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self):
        t = int(self.t)
        if t < 0:
            raise ValueError(f"time must be nonnegative, got {t}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "psi0", _frozen_complex(self.psi0, t + 1, "psi0"))
        object.__setattr__(self, "psi1", _frozen_complex(self.psi1, t + 1, "psi1"))

    def norm(self) -> float:
        """Total probability ``sum_n |psi0|^2 + |psi1|^2``."""
        return float(np.sum(np.abs(self.psi0) ** 2) + np.sum(np.abs(self.psi1) ** 2))

    def max_deviation(self, other: "WaveField") -> float:
        """Largest entry-wise modulus of the difference between two fields."""
        if other.t != self.t:
            raise ValueError(f"fields are at different times ({self.t} vs {other.t})")
        return float(
            max(
                np.max(np.abs(self.psi0 - other.psi0)),
                np.max(np.abs(self.psi1 - other.psi1)),
            )
        )
