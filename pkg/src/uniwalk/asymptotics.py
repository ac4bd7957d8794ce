"""Stationary-phase approximations for large ``t`` at fixed ``nu = n / t``.

The exact amplitudes are sums over frequencies ``u = r / N`` of terms
oscillating like ``cos(phi(nu, u) t + ...)`` with

    phi(nu, u) = pi (2 nu - 1) u + omega_u,   sin(omega_u) = sin(pi u) / sqrt(2).

For ``nu`` inside :func:`validity_interval` the phase has a single
interior maximum ``u0`` and each sum is dominated by its neighbourhood,
giving amplitudes of order ``t**-0.5``. Outside the interval there is no
stationary point and every function here raises :class:`DomainError`.

Functions accept scalar or array ``nu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .walk_core import QubitState

__all__ = [
    "DomainError",
    "StationaryPoint",
    "validity_interval",
    "phase",
    "stationary_point",
    "stationary_weights",
    "approx_wavefield",
    "approx_densities",
    "rho_bar",
    "rho_envelopes",
    "exit_lower_bound",
    "exit_heuristic",
    "HEURISTIC_EXPONENT",
]

SQRT2 = math.sqrt(2.0)
NU_LO = 0.5 * (1.0 - 1.0 / SQRT2)
NU_HI = 0.5 * (1.0 + 1.0 / SQRT2)

#: Empirical decay exponent of the exit-time probability past ``t = 2 n0``.
HEURISTIC_EXPONENT = 11.0 / 4.0


class DomainError(ValueError):
    """The approximation is undefined at this ``nu`` (no stationary point)."""


def validity_interval() -> tuple[float, float]:
    """Open interval of ``nu`` where ``1 - 2 (1 - 2 nu)^2 > 0``."""
    return NU_LO, NU_HI


def _check_nu(nu):
    nu = np.asarray(nu, dtype=float)
    if np.any(~((nu > NU_LO) & (nu < NU_HI))):
        raise DomainError(
            f"nu must lie strictly inside ({NU_LO:.6f}, {NU_HI:.6f})"
        )
    return nu


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def phase(nu, u):
    """The phase ``phi(nu, u)`` of the oscillatory terms (no domain check)."""
    u = np.asarray(u)
    return np.pi * (2.0 * np.asarray(nu) - 1.0) * u + np.arcsin(np.sin(np.pi * u) / SQRT2)


@dataclass(frozen=True)
class StationaryPoint:
    """Quantities at the maximum ``u0`` of ``phi(nu, .)``."""

    nu: float | np.ndarray
    cos_pi_u0: float | np.ndarray
    sin_pi_u0: float | np.ndarray
    sin_omega0: float | np.ndarray
    cos_omega0: float | np.ndarray
    phi0: float | np.ndarray
    phi0_second: float | np.ndarray

    @property
    def u0(self):
        return _out(np.arctan2(self.sin_pi_u0, self.cos_pi_u0) / np.pi)

    @property
    def radicand(self):
        """``1 - 2 (1 - 2 nu)^2``, positive inside the validity interval."""
        return _out(1.0 - 2.0 * (1.0 - 2.0 * np.asarray(self.nu)) ** 2)


def stationary_point(nu) -> StationaryPoint:
    nu = _check_nu(nu)
    q = nu * (1.0 - nu)
    rad = 1.0 - 2.0 * (1.0 - 2.0 * nu) ** 2
    cos_u = (1.0 - 2.0 * nu) / (2.0 * np.sqrt(q))
    sin_u = 0.5 * np.sqrt(rad / q)
    sin_w = 0.5 * np.sqrt(rad / (2.0 * q))
    cos_w = 1.0 / (2.0 * np.sqrt(2.0 * q))
    # pi*u0 taken from both sine and cosine: past nu = 1/2 it exceeds pi/2,
    # where arcsin(sin_u) alone would return the wrong branch
    pi_u0 = np.arctan2(sin_u, cos_u)
    phi0 = (2.0 * nu - 1.0) * pi_u0 + np.arcsin(sin_w)
    phi0_second = -4.0 * np.pi**2 * q * np.sqrt(rad)
    return StationaryPoint(
        _out(nu), _out(cos_u), _out(sin_u), _out(sin_w), _out(cos_w),
        _out(phi0), _out(phi0_second),
    )


def _g_values(u):
    """The three smooth amplitude profiles multiplying the cosines, at ``u``."""
    w = np.arcsin(np.sin(np.pi * u) / SQRT2)
    den = 2.0 - SQRT2 * np.cos(w - np.pi * u)
    num = SQRT2 * np.cos(w) - np.cos(np.pi * u)
    return 1.0 / den, num / den, num**2 / den


def stationary_weights(nu):
    """Amplitude profiles evaluated at ``u0``.

    Equal to ``2 (1 - nu)``, ``2 sqrt(nu (1 - nu))`` and ``2 nu``.
    """
    sp = stationary_point(nu)
    return tuple(_out(g) for g in _g_values(np.asarray(sp.u0)))


def approx_wavefield(q: QubitState, nu, t: int):
    """Stationary-phase estimates of ``(psi0, psi1)`` at ``n = nu t``."""
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    sp = stationary_point(nu)
    nu = np.asarray(sp.nu)
    root = np.sqrt(np.asarray(sp.radicand))
    pi_u0 = np.pi * np.asarray(sp.u0)
    A = np.asarray(sp.phi0) * t - np.pi / 4
    f00 = np.sqrt(2.0 * (1.0 - nu) / (np.pi * nu * root))
    f01 = np.sqrt(2.0 / (np.pi * root))
    f11 = np.sqrt(2.0 * nu / (np.pi * (1.0 - nu) * root))
    s = 1.0 / math.sqrt(t)
    psi0 = s * (q.a * f00 * np.cos(A) + q.b * f01 * np.cos(A + pi_u0))
    psi1 = s * (q.a * f01 * np.cos(A - pi_u0) + q.b * f11 * np.cos(A))
    if np.ndim(psi0) == 0:
        return complex(psi0), complex(psi1)
    return psi0, psi1


def approx_densities(nu, t: int):
    """``(|psi0|^2, |psi1|^2)`` estimates for the symmetric initial state."""
    sp = stationary_point(nu)
    nu = np.asarray(sp.nu)
    root = np.sqrt(np.asarray(sp.radicand))
    pi_u0 = np.pi * np.asarray(sp.u0)
    A = np.asarray(sp.phi0) * t - np.pi / 4
    d0 = ((1 - nu) * np.cos(A) ** 2 + nu * np.cos(A + pi_u0) ** 2) / (t * np.pi * nu * root)
    d1 = (nu * np.cos(A) ** 2 + (1 - nu) * np.cos(A - pi_u0) ** 2) / (t * np.pi * (1 - nu) * root)
    return _out(d0), _out(d1)


def _prefactor(nu, t):
    nu = _check_nu(nu)
    rad = 1.0 - 2.0 * (1.0 - 2.0 * nu) ** 2
    return nu, rad, 1.0 / (t * 2.0 * np.pi * nu * (1.0 - nu) * np.sqrt(rad))


def rho_bar(nu, t: int):
    """Smoothed PMF for the symmetric initial state ``(|0> + i|1>)/sqrt 2``."""
    nu, _, pre = _prefactor(nu, t)
    phi0 = np.asarray(stationary_point(nu).phi0)
    return _out(pre * (1.0 + 2.0 * (1.0 - 2.0 * nu) ** 2 * np.sin(2.0 * phi0 * t)))


def rho_envelopes(nu, t: int):
    """Lower and upper envelopes ``(rho_min, rho_max)`` of :func:`rho_bar`."""
    nu, rad, pre = _prefactor(nu, t)
    k = 2.0 * (1.0 - 2.0 * nu) ** 2
    rho_min = pre * (1.0 - k)
    rho_max = pre * (1.0 + k)
    omega0 = np.arcsin(np.asarray(stationary_point(nu).sin_omega0))
    alt = 2.0 / (np.pi * t) * np.sin(2.0 * omega0)
    if not np.allclose(rho_min, alt, rtol=1e-12, atol=0.0):
        raise ArithmeticError("lower envelope disagrees with its 2 sin(2 omega0)/(pi t) form")
    return _out(rho_min), _out(rho_max)


def exit_lower_bound(n0: int, t: float) -> float | None:
    """Approximate lower bound on the exit probability at time ``t >= 2 n0``.

    Returns ``None`` where the bound does not apply: before ``2 n0`` or
    once the radicand ``8 n0 (t - n0) - t^2`` turns negative, i.e. past
    ``t = (4 + 2 sqrt 2) n0``.
    """
    if n0 < 1:
        raise ValueError(f"n0 must be at least 1, got {n0}")
    if t < 2 * n0:
        return None
    rad = 8.0 * n0 * (t - n0) - t * t
    if rad < 0.0:
        # rounding at the exact root t = (4 + 2 sqrt 2) n0
        if rad > -1e-9 * t * t:
            return 0.0
        return None
    return math.sqrt(rad) / (4.0 * math.pi * (t - n0) ** 2)


def exit_heuristic(n0: int, t):
    """Power law ``(1 / (2 pi n0)) (2 n0 / t)^(11/4)``, meant for ``t >= 2 n0``."""
    t = np.asarray(t, dtype=float)
    return _out((2.0 * n0 / t) ** HEURISTIC_EXPONENT / (2.0 * math.pi * n0))
