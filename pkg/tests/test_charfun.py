import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coherent_ket, displacement, laguerre_sum
from ringtransfer.charfun import (
    CharFunction,
    coherent_char,
    fock_char,
    g_function,
    laguerre,
    reduced_coherent_char,
    reduced_fock_char,
    source_amplitude,
    sweep_g,
)
from ringtransfer.fock import FockBasis, FockVector, SectorEvolution
from ringtransfer.lattice import NetworkSpec
from ringtransfer.synthesis import synthesize_couplings

GROUND7 = NetworkSpec.fundamental(7)
EXCITED7 = NetworkSpec(7, 1.0, (0, 1, 0, 0, 0, 2, 0))
complexes = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


def test_laguerre_examples():
    assert laguerre(0, 17.3) == 1.0
    assert laguerre(1, 1.0) == 0.0
    assert laguerre(5, 2.5) == pytest.approx(laguerre_sum(5, 2.5), abs=1e-14)
    assert laguerre(5, 2.5) == pytest.approx(793 / 768, abs=1e-14)
    with pytest.raises(ValueError):
        laguerre(-1, 0.0)


@given(st.integers(0, 30), st.floats(0, 25))
def test_laguerre_recurrence_matches_explicit_sum(n, x):
    assert laguerre(n, x) == pytest.approx(laguerre_sum(n, x), abs=1e-9 * max(1, abs(laguerre_sum(n, x))))


def test_laguerre_vectorized():
    x = np.linspace(0, 4, 9)
    assert np.allclose(laguerre(3, x), [laguerre_sum(3, v) for v in x], atol=1e-14)


def test_fock_char_examples():
    assert fock_char(0, 0) == 1.0
    assert fock_char(1, 1) == 0.0
    assert fock_char(2, 0) == 1.0


@pytest.mark.parametrize("n", [0, 1, 2, 5])
@pytest.mark.parametrize("alpha", [0, 1, 0.3 - 0.8j, 1.5j, -2 + 0.5j])
def test_fock_char_against_displacement_matrix(n, alpha):
    assert fock_char(n, alpha) == pytest.approx(displacement(alpha)[n, n].real, abs=1e-10)
    assert abs(displacement(alpha)[n, n].imag) < 1e-10


def test_coherent_char_examples():
    for alpha in (0.3, 1 - 1j, 2j):
        assert coherent_char(0, alpha) == pytest.approx(fock_char(0, alpha), abs=1e-15)
    assert coherent_char(1 + 2j, 0) == 1
    want = math.exp(-0.5) * cmath.exp(4j)
    assert abs(coherent_char(2, 1j) - want) < 1e-14
    ket = coherent_ket(2)
    assert abs(np.vdot(ket, displacement(1j) @ ket) - want) < 1e-10


@settings(max_examples=40)
@given(complexes, complexes)
def test_coherent_char_modulus(beta, alpha):
    assert abs(coherent_char(beta, alpha)) == pytest.approx(math.exp(-0.5 * abs(alpha) ** 2), rel=1e-12)


@pytest.mark.parametrize("n", [0, 1, 3])
def test_reduced_fock_endpoints(n):
    for alpha in (0.4, 1.1 - 0.2j):
        assert reduced_fock_char(GROUND7, 1, 0.0, n, alpha) == pytest.approx(fock_char(n, alpha), abs=1e-14)
        assert reduced_fock_char(GROUND7, 2, 1.0, n, alpha) == pytest.approx(fock_char(n, alpha), abs=1e-12)
        assert reduced_fock_char(GROUND7, 1, 1.0, n, alpha) == pytest.approx(fock_char(0, alpha), abs=1e-12)


def test_reduced_coherent_endpoints():
    beta = 0.7 - 1.2j
    for alpha in (0.5, -1 + 0.25j):
        assert abs(reduced_coherent_char(GROUND7, 1, 0.0, beta, alpha) - coherent_char(beta, alpha)) < 1e-14
        assert abs(reduced_coherent_char(GROUND7, 2, 1.0, beta, alpha) - coherent_char(beta, alpha)) < 1e-12
        assert abs(reduced_coherent_char(EXCITED7, 4, 3.0, beta, alpha) - coherent_char(beta, alpha)) < 1e-12


def test_reduced_coherent_two_sites_half_period():
    spec = NetworkSpec.fundamental(2)
    mu11 = source_amplitude(spec, 1, 0.5)
    assert abs(mu11 - (-1 - 1j) / 2) < 1e-15
    # the site holds the coherent state mu11 * beta
    want = math.exp(-0.5) * cmath.exp(1j)
    assert abs(reduced_coherent_char(spec, 1, 0.5, 1, 1) - want) < 1e-14


def _sector_state(spec, amps_by_sector, t):
    """Evolve a sum over sectors with the Fock oracle and return a dense
    tensor of shape (cutoff,)*s."""
    cutoff = max(amps_by_sector) + 1
    lam = synthesize_couplings(spec)
    out = np.zeros((cutoff,) * spec.s, dtype=complex)
    for total, weight in amps_by_sector.items():
        basis = FockBasis(spec.s, total)
        start = [0] * spec.s
        start[0] = total
        psi = SectorEvolution(lam, basis)(FockVector.basis_state(start), t)
        for amp, occ in zip(psi.amps, basis.states):
            out[occ] += weight * amp
    return out


def _reduced_char_from_tensor(psi, site, alpha):
    psi = np.moveaxis(psi, site - 1, 0).reshape(psi.shape[0], -1)
    rho = psi @ psi.conj().T
    d = displacement(alpha, cutoff=60)[: rho.shape[0], : rho.shape[0]]
    return np.trace(rho @ d)


@pytest.mark.parametrize("spec", [NetworkSpec.fundamental(2), NetworkSpec(3, 1.0, (0, 1, 0))])
@pytest.mark.parametrize("t", [0.23, 0.5, 1.7])
def test_reduced_coherent_against_fock_oracle(spec, t):
    beta = 0.9 + 0.4j
    ncut = 22
    weights = {n: math.exp(-0.5 * abs(beta) ** 2) * beta**n / math.sqrt(math.factorial(n)) for n in range(ncut)}
    psi = _sector_state(spec, weights, t)
    for site in range(1, spec.s + 1):
        for alpha in (0.6, -0.3 + 0.8j):
            want = _reduced_char_from_tensor(psi, site, alpha)
            assert abs(reduced_coherent_char(spec, site, t, beta, alpha) - want) < 1e-9


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("t", [0.31, 0.5, 2.2])
def test_reduced_fock_against_fock_oracle(n, t):
    spec = NetworkSpec(3, 1.0, (1, 0, 2))
    psi = _sector_state(spec, {n: 1.0}, t)
    for site in (1, 2, 3):
        for alpha in (0.5, 1.2j):
            want = _reduced_char_from_tensor(psi, site, alpha)
            assert abs(reduced_fock_char(spec, site, t, n, alpha) - want) < 1e-10


def test_char_function_object():
    f = CharFunction.fock(2, g=0.3)
    assert f(0) == 1.0
    assert f(0.7) == pytest.approx(math.exp(-0.245) * laguerre(2, 0.3 * 0.49))
    c = CharFunction.coherent(1 + 1j, amp=1j)
    assert c(0) == 1
    assert abs(c(0.5) - coherent_char(1j * (1 + 1j), 0.5)) < 1e-15
    with pytest.raises(ValueError):
        CharFunction("squeezed")


@settings(max_examples=40, deadline=None)
@given(st.floats(-30, 30), complexes, st.integers(0, 6))
def test_normalization_and_gaussian_envelope(x, beta, n):
    for j in (1, 3, 7):
        assert reduced_fock_char(EXCITED7, j, x, n, 0) == 1.0
        assert reduced_coherent_char(EXCITED7, j, x, beta, 0) == 1
        alpha = 0.8 - 0.3j
        env = math.exp(-0.5 * abs(alpha) ** 2)
        assert abs(abs(reduced_coherent_char(EXCITED7, j, x, beta, alpha)) - env) <= 1e-12


def test_g_examples():
    assert g_function(GROUND7, 1, 0.0) == pytest.approx(1.0, abs=1e-15)
    for k in range(1, 7):
        assert g_function(GROUND7, 1, float(k)) <= 1e-12
    assert abs(g_function(GROUND7, 1, 7.0) - 1) <= 1e-12
    assert g_function(NetworkSpec.fundamental(2), 1, 0.5) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(IndexError):
        g_function(GROUND7, 8, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.floats(0.2, 5), st.floats(-40, 40), st.data())
def test_g_range_column_sum_and_delay(s, tau, x, data):
    m = tuple(data.draw(st.lists(st.integers(0, 4), min_size=s, max_size=s)))
    spec = NetworkSpec(s, tau, m)
    t = x * tau
    g = np.array([g_function(spec, j, t) for j in range(1, s + 1)])
    assert np.all((g >= 0) & (g <= 1))
    assert abs(g.sum() - 1) <= 1e-12
    for j in range(1, s + 1):
        assert abs(g[j - 1] - g_function(spec, 1, t - (j - 1) * tau)) <= 1e-12


@pytest.mark.parametrize("s", range(1, 17))
def test_g_transfer_endpoints(s):
    spec = NetworkSpec.fundamental(s)
    for k in range(2 * s + 1):
        for j in range(1, s + 1):
            want = 1.0 if (j - 1) % s == k % s else 0.0
            assert abs(g_function(spec, j, float(k)) - want) <= 1e-12


def test_sweep_ground_and_excited():
    a = sweep_g(GROUND7, 1, 0.0, 7.0, 701)
    b = sweep_g(EXCITED7, 1, 0.0, 7.0, 701)
    assert len(a.t) == 701 and a.t[0] == 0.0 and a.t[-1] == 7.0
    lattice = np.arange(0, 701, 100)
    assert np.all(a.g[lattice[1:-1]] <= 1e-12)
    assert abs(a.g[0] - 1) <= 1e-12 and abs(a.g[-1] - 1) <= 1e-12
    assert np.max(np.abs(a.g[lattice] - b.g[lattice])) <= 1e-12
    assert np.max(np.abs(a.g - b.g)) > 0.01


def test_sweep_delay_between_sites():
    g3 = sweep_g(GROUND7, 3, 2.0, 9.0, 701)
    g1 = sweep_g(GROUND7, 1, 0.0, 7.0, 701)
    assert np.max(np.abs(g3.g - g1.g)) <= 1e-12


def test_sweep_rejects_degenerate_grid():
    with pytest.raises(ValueError):
        sweep_g(GROUND7, 1, 1.0, 1.0, 10)
    with pytest.raises(ValueError):
        sweep_g(GROUND7, 1, 0.0, 1.0, 1)
    with pytest.raises(IndexError):
        sweep_g(GROUND7, 0, 0.0, 1.0, 10)
