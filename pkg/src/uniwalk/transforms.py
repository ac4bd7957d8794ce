"""Discrete Fourier transforms: an iterative radix-2 FFT and a direct O(N^2) sum.

Both use the engineering sign convention of :func:`fft` (kernel
``exp(-2 pi i r n / N)``, no normalization) and :func:`ifft` (kernel
``exp(+2 pi i r n / N)``, divided by ``N``).
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = ["is_power_of_two", "next_power_of_two", "fft", "ifft", "dft_direct"]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def next_power_of_two(n: int) -> int:
    """Smallest ``2**k`` strictly greater than ``n`` (``n >= 0``)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return 1 << int(n).bit_length()


def _bit_reversal(n: int) -> NDArray[np.intp]:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _radix2(x: NDArray[np.complex128], sign: float) -> NDArray[np.complex128]:
    n = x.shape[0]
    if not is_power_of_two(n):
        raise ValueError(f"radix-2 transform needs a power-of-two length, got {n}")
    y = x[_bit_reversal(n)]
    m = 2
    while m <= n:
        half = m // 2
        # twiddles evaluated directly per stage, not by repeated multiplication
        w = np.exp(sign * 2j * np.pi * np.arange(half) / m)
        blocks = y.reshape(-1, m)
        even = blocks[:, :half]
        odd = blocks[:, half:] * w
        y = np.concatenate([even + odd, even - odd], axis=1).reshape(n)
        m *= 2
    return y


def fft(x: ArrayLike) -> NDArray[np.complex128]:
    """Decimation-in-time FFT, ``X[r] = sum_n x[n] exp(-2 pi i r n / N)``."""
    return _radix2(np.asarray(x, dtype=np.complex128).ravel(), -1.0)


def ifft(x: ArrayLike) -> NDArray[np.complex128]:
    """Inverse of :func:`fft`, ``x[n] = (1/N) sum_r X[r] exp(+2 pi i r n / N)``."""
    x = np.asarray(x, dtype=np.complex128).ravel()
    return _radix2(x, 1.0) / x.shape[0]


def dft_direct(x: ArrayLike, sign: int = -1, chunk: int = 512) -> NDArray[np.complex128]:
    """Plain O(N^2) sum ``X[r] = sum_n x[n] exp(sign * 2 pi i r n / N)`` for any N.

    Rows of the kernel are built ``chunk`` at a time to bound memory.
    """
    x = np.asarray(x, dtype=np.complex128).ravel()
    n = x.shape[0]
    idx = np.arange(n)
    out = np.empty(n, dtype=np.complex128)
    for lo in range(0, n, chunk):
        r = idx[lo : lo + chunk, None]
        # reduce r*n mod N first so the phase argument stays small
        phase = (r * idx[None, :]) % n
        out[lo : lo + chunk] = np.exp(sign * 2j * np.pi * phase / n) @ x
    return out
