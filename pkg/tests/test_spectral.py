import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uniwalk import spectral
from uniwalk.evolution import evolve
from uniwalk.walk_core import QubitState, hadamard

SQ2 = math.sqrt(2)
states = st.tuples(*[st.floats(-1, 1, allow_nan=False)] * 4).filter(
    lambda z: sum(x * x for x in z) > 1e-3
).map(lambda z: QubitState.normalized(complex(z[0], z[1]), complex(z[2], z[3])))


def test_omega_examples():
    assert spectral.omega(0, 17) == 0.0
    for N in (2, 8, 64):
        assert spectral.omega(N // 2, N) == pytest.approx(math.pi / 4, abs=1e-15)
    with pytest.raises(ValueError):
        spectral.omega(5, 5)
    with pytest.raises(ValueError):
        spectral.omega(-1, 5)


def test_omega_and_lambda_identities_exhaustive():
    for N in range(2, 257):
        r = np.arange(N)
        w = spectral.omega(r, N)
        assert np.all((w >= 0) & (w <= math.pi / 4 + 1e-15))
        np.testing.assert_allclose(np.sin(w), np.sin(np.pi * r / N) / SQ2, atol=1e-15)
        np.testing.assert_allclose(w[1:], spectral.omega(N - r[1:], N), atol=1e-15)
        lp, lm = spectral.lambdas(r, N)
        np.testing.assert_allclose(np.abs(lp), 1, atol=1e-15)
        np.testing.assert_allclose(np.abs(lm), 1, atol=1e-15)
        np.testing.assert_allclose(lp * lm, -np.exp(2j * np.pi * r / N), atol=1e-14)
        # eigenvalues of the Fourier-space step matrix
        z = np.exp(2j * np.pi * r / N)
        np.testing.assert_allclose(lp + lm, (1 - z) / SQ2, atol=1e-14)
        # identity used to reach the cosine form
        np.testing.assert_allclose(
            SQ2 * lp - 1, (SQ2 * np.cos(w) - np.cos(np.pi * r / N)) * np.exp(1j * np.pi * r / N), atol=1e-14
        )


def test_lambdas_at_zero():
    assert spectral.lambdas(0, 9) == (1 + 0j, -1 + 0j)


@given(states, st.integers(1, 64))
def test_fourier_solution_initial_values(q, N):
    r = np.arange(N)
    p0, p1 = spectral.fourier_solution(q, r, N, 0)
    np.testing.assert_allclose(p0, q.a, atol=1e-14)
    np.testing.assert_allclose(p1, q.b, atol=1e-14)


@settings(deadline=None)
@given(states, st.integers(2, 80), st.integers(0, 2**32 - 1))
def test_fourier_solution_satisfies_transformed_recurrences(q, N, seed):
    r = np.random.default_rng(seed).integers(0, N, size=8)
    z = np.exp(2j * np.pi * r / N)
    for t in range(1, N):
        prev = spectral.fourier_solution(q, r, N, t - 1)
        cur = spectral.fourier_solution(q, r, N, t)
        np.testing.assert_allclose(cur[0], (prev[0] + prev[1]) / SQ2, atol=1e-12)
        np.testing.assert_allclose(cur[1], z * (prev[0] - prev[1]) / SQ2, atol=1e-12)


def test_fourier_solution_r0_is_the_plain_sum():
    q = QubitState(1, 0)
    w = evolve(q, hadamard(), 1)
    p0, p1 = spectral.fourier_solution(q, 0, 7, 1)
    assert p0 == pytest.approx(w.psi0.sum(), abs=1e-15)
    assert p1 == pytest.approx(w.psi1.sum(), abs=1e-15)
    assert p0 == pytest.approx(1 / SQ2, abs=1e-15)


def test_fourier_solution_is_the_transform_of_the_direct_field(sym):
    N, t = 16, 9
    w = evolve(sym, hadamard(), t)
    f0 = np.zeros(N, complex)
    f0[: t + 1] = w.psi0
    p0, _ = spectral.fourier_solution(sym, np.arange(N), N, t)
    np.testing.assert_allclose(spectral.to_fourier(f0), p0, atol=1e-13)
    f0 = np.zeros(13, complex)
    f0[: t + 1] = w.psi0
    p0, _ = spectral.fourier_solution(sym, np.arange(13), 13, t)
    np.testing.assert_allclose(spectral.to_fourier(f0), p0, atol=1e-13)


def test_fourier_solution_rejects_t_at_or_beyond_N(sym):
    with pytest.raises(ValueError):
        spectral.fourier_solution(sym, 0, 5, 5)


def test_closed_form_t0(sym):
    w = spectral.closed_form_field(sym, 0)
    assert w.psi0[0] == pytest.approx(sym.a, abs=1e-15)
    assert w.psi1[0] == pytest.approx(sym.b, abs=1e-15)


def test_closed_form_t30_against_direct(sym):
    d = evolve(sym, hadamard(), 30)
    for route in ("cosine", "idft"):
        c = spectral.closed_form_field(sym, 30, 31, route=route)
        assert np.max(np.abs(np.abs(c.psi0) ** 2 + np.abs(c.psi1) ** 2
                             - np.abs(d.psi0) ** 2 - np.abs(d.psi1) ** 2)) < 1e-9
        assert c.max_deviation(d) < 1e-9


def test_closed_form_is_independent_of_N(sym):
    a = spectral.closed_form_field(sym, 30, 31)
    for N in (32, 47, 64, 200):
        assert a.max_deviation(spectral.closed_form_field(sym, 30, N)) < 1e-10
        assert a.max_deviation(spectral.closed_form_field(sym, 30, N, route="idft")) < 1e-10


def test_closed_form_rejects_small_N(sym):
    with pytest.raises(ValueError):
        spectral.closed_form_field(sym, 10, 10)
    with pytest.raises(ValueError):
        spectral.closed_form_field(sym, 10, route="nope")


@settings(max_examples=25, deadline=None)
@given(states, st.integers(0, 500))
def test_routes_agree(q, t):
    d = evolve(q, hadamard(), t)
    assert d.max_deviation(spectral.closed_form_field(q, t)) < 1e-9
    assert d.max_deviation(spectral.fft_field(q, t)) < 1e-9


def test_fft_field_examples(sym):
    assert spectral.fft_field(sym, 30).max_deviation(spectral.closed_form_field(sym, 30, 31)) < 1e-9
    assert abs(spectral.fft_field(sym, 1000).norm() - 1) < 1e-9
    assert spectral.fft_length(30) == 32
    assert spectral.fft_length(32) == 64
    assert spectral.fft_length(0) == 2


def test_fft_tail_vanishes(sym):
    t = 30
    N = spectral.fft_length(t)
    p0, p1 = spectral.fourier_solution(sym, np.arange(N), N, t)
    f0, f1 = spectral.from_fourier(p0), spectral.from_fourier(p1)
    assert max(np.abs(f0[t + 1 :]).max(), np.abs(f1[t + 1 :]).max()) < 1e-9


@pytest.mark.parametrize("t", [4, 7, 20, 33])
def test_parity_constant_term(t):
    # basis a=1, b=0: psi0 minus its oscillating sum is the constant
    # ((1 + (-1)^t)/2 + (1 - (-1)^t)/(2 sqrt 2)) / N
    N = t + 3
    w = evolve(QubitState(1, 0), hadamard(), t)
    for n in (0, t // 2, t):
        osc = 0.0
        for r in range(1, N):
            om = math.asin(math.sin(math.pi * r / N) / SQ2)
            osc += math.cos(math.pi * (2 * n - t) * r / N + om * t) / (2 - SQ2 * math.cos(om - math.pi * r / N))
        const = w.psi0[n].real - osc / N
        sgn = (-1) ** t
        assert const == pytest.approx(((1 + sgn) / 2 + (1 - sgn) / (2 * SQ2)) / N, abs=1e-12)


def test_site_series_matches_direct(sym):
    times = np.arange(10, 301)
    p0, p1 = spectral.site_series(sym, 10, times)
    w = evolve(sym, hadamard(), 300)
    assert abs(p1[-1] - w.psi1[10]) < 1e-12
    assert abs(p0[-1] - w.psi0[10]) < 1e-12
    q0, q1 = spectral.site_series(sym, 10, times, N=777)
    np.testing.assert_allclose(q1, p1, atol=1e-12)


def test_repeatable(sym):
    a = spectral.fft_field(sym, 700)
    b = spectral.fft_field(sym, 700)
    assert np.array_equal(a.psi0, b.psi0) and np.array_equal(a.psi1, b.psi1)
