"""Exit times from the interval ``[0, n0)``.

The walker is probed at site ``n0`` after every step from ``t = n0`` on.
A positive outcome ends the walk; a negative one projects the amplitude
at ``n0`` out of the state. Because the walk never moves left, sites
below ``n0`` are untouched by the projection, and the exit probability
at ``t`` reduces to ``|psi1(n0, t)|^2`` of the unprobed walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray
from scipy.special import gammaln

from . import spectral
from .walk_core import CoinSpec, QubitState, coin_matrix, hadamard

__all__ = [
    "ExitDistribution",
    "PowerLawFit",
    "exit_pmf_closed",
    "exit_pmf_filtered",
    "classical_exit_pmf",
    "local_maxima",
    "local_minima",
    "tail_exponent_fit",
    "MIN_FIT_POINTS",
]

MIN_FIT_POINTS = 10


@dataclass(frozen=True)
class ExitDistribution:
    """Exit probabilities ``p_exit[k]`` at ``t = n0 + k`` up to ``tmax``."""

    n0: int
    tmax: int
    p_exit: NDArray[np.float64] = field(repr=False)
    survival: float

    def __post_init__(self):
        p = np.array(self.p_exit, dtype=float)
        if p.shape != (self.tmax - self.n0 + 1,):
            raise ValueError(
                f"expected {self.tmax - self.n0 + 1} probabilities, got shape {p.shape}"
            )
        p.flags.writeable = False
        object.__setattr__(self, "p_exit", p)

    @property
    def times(self) -> NDArray[np.int64]:
        return np.arange(self.n0, self.tmax + 1)

    def at(self, t: int) -> float:
        if t < self.n0:
            return 0.0
        return float(self.p_exit[t - self.n0])

    def argmax(self) -> int:
        return int(self.n0 + np.argmax(self.p_exit))


def _check(n0: int, tmax: int):
    if n0 < 1:
        raise ValueError(f"n0 must be at least 1, got {n0}")
    if tmax < n0:
        raise ValueError(f"tmax must be at least n0={n0}, got {tmax}")


def _psi1_at_site_direct(q: QubitState, n0: int, tmax: int) -> NDArray[np.complex128]:
    # Unprobed Hadamard evolution restricted to sites 0..n0; exact there,
    # since no amplitude ever flows from higher sites to lower ones.
    u = coin_matrix(hadamard())
    psi0 = np.zeros(n0 + 1, np.complex128)
    psi1 = np.zeros(n0 + 1, np.complex128)
    psi0[0], psi1[0] = q.a, q.b
    out = np.empty(tmax - n0 + 1, np.complex128)
    for t in range(1, tmax + 1):
        p0, p1 = psi0.copy(), psi1.copy()
        psi0[:] = u[0, 0] * p0 + u[0, 1] * p1
        psi1[1:] = u[1, 0] * p0[:-1] + u[1, 1] * p1[:-1]
        psi1[0] = 0.0
        if t >= n0:
            out[t - n0] = psi1[n0]
    return out


def exit_pmf_closed(
    q: QubitState, n0: int, tmax: int, method: str = "direct"
) -> ExitDistribution:
    """Exit probabilities ``|psi1(n0, t)|^2`` of the unprobed Hadamard walk.

    ``method="direct"`` iterates the recurrence on sites ``0..n0``
    (O(n0 tmax)); ``method="spectral"`` evaluates the Fourier closed form
    at site ``n0`` for every ``t`` (O(tmax N), ``N = 2**k > tmax``).
    """
    _check(n0, tmax)
    if method == "direct":
        psi1 = _psi1_at_site_direct(q, n0, tmax)
    elif method == "spectral":
        _, psi1 = spectral.site_series(q, n0, np.arange(n0, tmax + 1))
    else:
        raise ValueError(f"unknown method {method!r}")
    p = np.abs(psi1) ** 2
    return ExitDistribution(n0, tmax, p, 1.0 - float(p.sum()))


def exit_pmf_filtered(
    q: QubitState,
    coin: CoinSpec,
    n0: int,
    tmax: int,
    renormalize: bool = False,
) -> ExitDistribution:
    """Simulate the probe-and-project protocol step by step.

    With ``renormalize=False`` the field is left unnormalized after each
    projection, so the recorded probabilities are unconditional. With
    ``renormalize=True`` the surviving field is rescaled to unit norm,
    the conditional exit probability is recorded, and it is converted
    back to an unconditional one by multiplying with the survival mass.
    """
    _check(n0, tmax)
    u = coin_matrix(coin)
    # sites beyond n0 are never populated: the projection at n0 removes
    # everything that could move further
    psi0 = np.zeros(n0 + 1, np.complex128)
    psi1 = np.zeros(n0 + 1, np.complex128)
    psi0[0], psi1[0] = q.a, q.b
    p = np.empty(tmax - n0 + 1)
    alive = 1.0
    for t in range(1, tmax + 1):
        p0, p1 = psi0.copy(), psi1.copy()
        psi0[:] = u[0, 0] * p0 + u[0, 1] * p1
        psi1[1:] = u[1, 0] * p0[:-1] + u[1, 1] * p1[:-1]
        psi1[0] = 0.0
        if t < n0:
            continue
        hit = abs(psi0[n0]) ** 2 + abs(psi1[n0]) ** 2
        psi0[n0] = 0.0
        psi1[n0] = 0.0
        if renormalize:
            p[t - n0] = alive * hit
            alive *= 1.0 - hit
            remaining = math.sqrt(np.sum(np.abs(psi0) ** 2) + np.sum(np.abs(psi1) ** 2))
            if remaining > 0.0:
                psi0 /= remaining
                psi1 /= remaining
        else:
            p[t - n0] = hit
    if renormalize:
        survival = alive
    else:
        survival = float(np.sum(np.abs(psi0) ** 2) + np.sum(np.abs(psi1) ** 2))
    return ExitDistribution(n0, tmax, p, survival)


def classical_exit_pmf(n0: int, p: float, tmax: int) -> ExitDistribution:
    """Negative-binomial law of the time of the ``n0``-th rightward move.

    ``P(t) = C(t-1, t-n0) p^n0 (1-p)^(t-n0)``, evaluated in log space.
    """
    _check(n0, tmax)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    t = np.arange(n0, tmax + 1, dtype=float)
    k = t - n0
    log_binom = gammaln(t) - gammaln(k + 1.0) - gammaln(float(n0))
    logp = log_binom + n0 * math.log(p) + k * math.log1p(-p)
    pmf = np.exp(logp)
    return ExitDistribution(n0, tmax, pmf, max(0.0, 1.0 - float(pmf.sum())))


def local_maxima(values) -> NDArray[np.intp]:
    """Indices of interior strict-left, weak-right local maxima."""
    v = np.asarray(values)
    return np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])) + 1


def local_minima(values) -> NDArray[np.intp]:
    v = np.asarray(values)
    return np.flatnonzero((v[1:-1] < v[:-2]) & (v[1:-1] <= v[2:])) + 1


class PowerLawFit(NamedTuple):
    """``log p ~ log_prefactor + exponent * log t`` over ``points`` samples."""

    exponent: float
    log_prefactor: float
    rms_residual: float
    points: int


def tail_exponent_fit(
    d: ExitDistribution, t_lo: int, t_hi: int, envelope: str = "lower"
) -> PowerLawFit:
    """Least-squares fit of ``log p_exit = log C + exponent * log t``.

    Parameters
    ----------
    envelope:
        ``"lower"`` fits the local minima, ``"upper"`` the local maxima,
        ``"raw"`` every point. For the quantum walk the algebraic decay
        past ``t = 2 n0`` shows in the minima; the maxima stay roughly
        flat until ``t`` nears ``(4 + 2 sqrt 2) n0``.

    Raises
    ------
    ValueError
        If the range lies outside ``[n0, tmax]`` or contains fewer than
        ``MIN_FIT_POINTS`` usable points.
    """
    if not d.n0 <= t_lo < t_hi <= d.tmax:
        raise ValueError(f"need n0 <= t_lo < t_hi <= tmax, got [{t_lo}, {t_hi}]")
    times = d.times
    p = d.p_exit
    if envelope == "raw":
        idx = np.arange(times.shape[0])
    elif envelope == "upper":
        idx = local_maxima(p)
    elif envelope == "lower":
        idx = local_minima(p)
    else:
        raise ValueError(f"unknown envelope {envelope!r}")
    sel = idx[(times[idx] >= t_lo) & (times[idx] <= t_hi) & (p[idx] > 0.0)]
    if sel.shape[0] < MIN_FIT_POINTS:
        raise ValueError(
            f"only {sel.shape[0]} {envelope} points in [{t_lo}, {t_hi}], "
            f"need {MIN_FIT_POINTS}"
        )
    x = np.log(times[sel].astype(float))
    y = np.log(p[sel])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return PowerLawFit(
        float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))), int(sel.shape[0])
    )
