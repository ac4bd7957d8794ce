"""Closed-form Hadamard walk amplitudes via the discrete Fourier transform.

For a transform length ``N > t`` the site amplitudes are recovered from
their transforms

    F(r) = sum_n f(n) exp(+2 pi i r n / N),
    f(n) = (1/N) sum_r F(r) exp(-2 pi i r n / N),

where each transformed component evolves as a two-mode superposition of
the eigenvalues ``lambda_+`` and ``lambda_-`` of the Fourier-space step
matrix. The result is independent of ``N`` as long as ``N > t``.

Everything here is specific to the Hadamard coin.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import transforms
from .walk_core import QubitState, WaveField

__all__ = [
    "FourierPair",
    "omega",
    "lambdas",
    "fourier_solution",
    "to_fourier",
    "from_fourier",
    "closed_form_field",
    "fft_field",
    "fft_length",
    "site_series",
    "TAIL_TOL",
]

SQRT2 = math.sqrt(2.0)

#: Largest modulus tolerated on sites t < n < N before truncating an inverse transform.
TAIL_TOL = 1e-9


class FourierPair(NamedTuple):
    psi0_tilde: complex | NDArray[np.complex128]
    psi1_tilde: complex | NDArray[np.complex128]


def _check_r(r, N: int) -> NDArray[np.int64]:
    if N < 1:
        raise ValueError(f"transform length must be positive, got {N}")
    r_arr = np.asarray(r)
    if not np.issubdtype(r_arr.dtype, np.integer):
        raise TypeError("frequency index must be an integer")
    if np.any(r_arr < 0) or np.any(r_arr >= N):
        raise ValueError(f"frequency index out of range [0, {N})")
    return r_arr.astype(np.int64)


def omega(r: int | ArrayLike, N: int):
    """Angle in ``[0, pi/4]`` with ``sin(omega) = sin(pi r / N) / sqrt(2)``."""
    r_arr = _check_r(r, N)
    w = np.arcsin(np.sin(np.pi * r_arr / N) / SQRT2)
    # principal branch; sin(pi r/N) >= 0 on [0, N) keeps the result in range
    assert np.all(w >= 0.0) and np.all(w <= np.pi / 4 + 1e-15)
    return float(w) if w.ndim == 0 else w


def _phases(r_arr: NDArray[np.int64], N: int):
    w = np.arcsin(np.sin(np.pi * r_arr / N) / SQRT2)
    theta = np.pi * r_arr / N
    return w, theta


def lambdas(r: int | ArrayLike, N: int):
    """Eigenvalues ``(lambda_+, lambda_-)`` of the Fourier-space step matrix."""
    r_arr = _check_r(r, N)
    w, theta = _phases(r_arr, N)
    lp = np.exp(-1j * (w - theta))
    lm = -np.exp(1j * (w + theta))
    if lp.ndim == 0:
        return complex(lp), complex(lm)
    return lp, lm


def _mode_weights(q: QubitState, lp, lm):
    """Coefficients multiplying ``lambda^t`` in each transformed component."""
    out = []
    for lam in (lp, lm):
        c = (q.a + (SQRT2 * np.conj(lam) - 1.0) * q.b) / (1.0 + np.abs(1.0 - SQRT2 * lam) ** 2)
        out.append((c, (SQRT2 * lam - 1.0) * c))
    return out


def fourier_solution(q: QubitState, r: int | ArrayLike, N: int, t: int) -> FourierPair:
    """Transformed amplitudes ``(psi0~(r, t), psi1~(r, t))`` for transform length ``N``.

    ``r`` may be an integer array. Powers ``lambda^t`` are evaluated as a
    single complex exponential to keep the phase exact for large ``t``.
    """
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if t >= N:
        raise ValueError(f"need t < N, got t={t}, N={N}")
    r_arr = _check_r(r, N)
    w, theta = _phases(r_arr, N)
    lp = np.exp(-1j * (w - theta))
    lm = -np.exp(1j * (w + theta))
    (c0p, c1p), (c0m, c1m) = _mode_weights(q, lp, lm)
    pow_p = np.exp(-1j * t * (w - theta))
    pow_m = (-1.0) ** t * np.exp(1j * t * (w + theta))
    psi0 = pow_p * c0p + pow_m * c0m
    psi1 = pow_p * c1p + pow_m * c1m
    if np.ndim(psi0) == 0:
        return FourierPair(complex(psi0), complex(psi1))
    return FourierPair(psi0, psi1)


def to_fourier(f: ArrayLike) -> NDArray[np.complex128]:
    """``F(r) = sum_n f(n) exp(+2 pi i r n / N)``."""
    f = np.asarray(f, dtype=np.complex128)
    n = f.shape[0]
    if transforms.is_power_of_two(n):
        return transforms.ifft(f) * n
    return transforms.dft_direct(f, sign=+1)


def from_fourier(F: ArrayLike) -> NDArray[np.complex128]:
    """``f(n) = (1/N) sum_r F(r) exp(-2 pi i r n / N)``; radix-2 when ``N`` allows."""
    F = np.asarray(F, dtype=np.complex128)
    n = F.shape[0]
    if transforms.is_power_of_two(n):
        return transforms.fft(F) / n
    return transforms.dft_direct(F, sign=-1) / n


def _basis_sums(t: int, N: int, n: NDArray[np.int64]):
    """Real amplitudes for the basis states ``a=1, b=0`` and ``a=0, b=1``.

    Returns ``(p0a, p0b, p1a, p1b)`` with ``psi0 = a p0a + b p0b`` and
    ``psi1 = a p1a + b p1b`` at the sites ``n``.
    """
    r = np.arange(1, N)
    w = np.arcsin(np.sin(np.pi * r / N) / SQRT2)
    theta = np.pi * r / N
    den = 2.0 - SQRT2 * np.cos(w - theta)
    g0 = 1.0 / den
    g1 = (SQRT2 * np.cos(w) - np.cos(theta)) / den
    g2 = (SQRT2 * np.cos(w) - np.cos(theta)) ** 2 / den

    even = 1.0 if t % 2 == 0 else 0.0
    odd = 1.0 - even
    c = odd / SQRT2

    p0a = np.empty(n.shape[0])
    p0b = np.empty_like(p0a)
    p1a = np.empty_like(p0a)
    p1b = np.empty_like(p0a)
    chunk = max(1, 2_000_000 // max(N, 1))
    for lo in range(0, n.shape[0], chunk):
        nn = n[lo : lo + chunk, None]
        base = np.pi * (2 * nn - t) * r / N + w * t
        p0a[lo : lo + chunk] = np.cos(base) @ g0
        p0b[lo : lo + chunk] = np.cos(base + theta) @ g1
        p1a[lo : lo + chunk] = np.cos(base - theta) @ g1
        p1b[lo : lo + chunk] = np.cos(base) @ g2
    p0a = (even + c + p0a) / N
    p0b = (c + p0b) / N
    p1a = (c + p1a) / N
    p1b = (even - c + p1b) / N
    return p0a, p0b, p1a, p1b


def closed_form_field(
    q: QubitState, t: int, N: int | None = None, route: str = "cosine"
) -> WaveField:
    """Hadamard field at time ``t`` from the exact finite-sum solution.

    Parameters
    ----------
    N:
        Transform length, any integer greater than ``t``. Defaults to ``t + 1``.
    route:
        ``"cosine"`` evaluates the real cosine sums for the two basis
        states and superposes them, O(t N). ``"idft"`` inverse-transforms
        :func:`fourier_solution` over all frequencies.
    """
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if N is None:
        N = t + 1
    if N <= t:
        raise ValueError(f"need N > t, got N={N}, t={t}")
    if route == "cosine":
        p0a, p0b, p1a, p1b = _basis_sums(t, N, np.arange(t + 1))
        return WaveField(t, q.a * p0a + q.b * p0b, q.a * p1a + q.b * p1b)
    if route == "idft":
        psi0_t, psi1_t = fourier_solution(q, np.arange(N), N, t)
        return _truncate(t, from_fourier(psi0_t), from_fourier(psi1_t))
    raise ValueError(f"unknown route {route!r}")


def fft_length(t: int) -> int:
    """Smallest power of two exceeding ``t`` (at least 2)."""
    return max(2, transforms.next_power_of_two(t))


def _truncate(t: int, psi0, psi1) -> WaveField:
    tail = max(np.max(np.abs(psi0[t + 1 :]), initial=0.0), np.max(np.abs(psi1[t + 1 :]), initial=0.0))
    if tail > TAIL_TOL:
        raise ArithmeticError(f"inverse transform leaked {tail:.3e} onto sites beyond t={t}")
    return WaveField(t, psi0[: t + 1], psi1[: t + 1])


def fft_field(q: QubitState, t: int) -> WaveField:
    """Hadamard field at time ``t`` via a length ``2**k > t`` radix-2 inverse transform."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    N = fft_length(t)
    psi0_t, psi1_t = fourier_solution(q, np.arange(N), N, t)
    return _truncate(t, transforms.fft(psi0_t) / N, transforms.fft(psi1_t) / N)


def site_series(
    q: QubitState, n: int, times: ArrayLike, N: int | None = None, chunk: int = 128
):
    """Amplitudes ``psi0(n, t)``, ``psi1(n, t)`` at a fixed site for many times.

    A single transform length ``N > max(times)`` serves every time; the
    inverse transform is evaluated at the one site only, so the cost is
    O(len(times) * N).
    """
    times = np.asarray(times, dtype=np.int64)
    if times.size == 0:
        return np.zeros(0, np.complex128), np.zeros(0, np.complex128)
    if np.any(times < 0):
        raise ValueError("times must be nonnegative")
    tmax = int(times.max())
    if N is None:
        N = fft_length(tmax)
    if N <= tmax:
        raise ValueError(f"need N > max(times), got N={N}, max={tmax}")
    r = np.arange(N)
    w, theta = _phases(r, N)
    lp = np.exp(-1j * (w - theta))
    lm = -np.exp(1j * (w + theta))
    (c0p, c1p), (c0m, c1m) = _mode_weights(q, lp, lm)
    kernel = np.exp(-2j * np.pi * ((r * n) % N) / N) / N
    out0 = np.empty(times.shape[0], np.complex128)
    out1 = np.empty_like(out0)
    for lo in range(0, times.shape[0], chunk):
        tt = times[lo : lo + chunk, None]
        pow_p = np.exp(-1j * tt * (w - theta))
        pow_m = np.where(tt % 2 == 0, 1.0, -1.0) * np.exp(1j * tt * (w + theta))
        out0[lo : lo + chunk] = (pow_p * c0p + pow_m * c0m) @ kernel
        out1[lo : lo + chunk] = (pow_p * c1p + pow_m * c1m) @ kernel
    return out0, out1
