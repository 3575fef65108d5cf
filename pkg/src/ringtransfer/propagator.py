"""Heisenberg-picture mode propagators ``a(t) = mu(t) a(0) + nu(t) a^dagger(0)``.

Three independent routes are provided: the closed-form mode sum, the
spectral product through the ring diagonalizer, and a brute
``exp(-i lam t)`` of an arbitrary Hermitian coupling matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import NetworkSpec, hermitian_expm, max_abs, mode_frequencies, ring_diagonalizer

TRANSFER_TOL = 1e-10


@dataclass(frozen=True)
class Propagator:
    t: float
    mu: np.ndarray
    nu: np.ndarray = field(default=None)

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=complex)
        if mu.ndim != 2 or mu.shape[0] != mu.shape[1]:
            raise ValueError("mu must be square")
        nu = np.zeros_like(mu) if self.nu is None else np.asarray(self.nu, dtype=complex)
        if nu.shape != mu.shape:
            raise ValueError("mu and nu must have the same shape")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def s(self) -> int:
        return self.mu.shape[0]

    def unitarity_residual(self) -> float:
        return max_abs(self.mu.conj().T @ self.mu - np.eye(self.s))


def mu_closed_form(spec: NetworkSpec, t: float) -> Propagator:
    """``mu[j,k](t) = (1/s) sum_l exp(2*pi*i*(j-k-t/tau)*l/s) exp(-2*pi*i*m_l*t/tau)``."""
    s = spec.s
    j = np.arange(1, s + 1)
    l = np.arange(1, s + 1)
    x = t / spec.tau
    diff = (j[:, None] - j[None, :]) % s
    lattice_phase = np.exp(2j * np.pi * ((diff[:, :, None] * l) % s) / s)
    # time-dependent factor per mode l
    turns = np.mod(x * l, s) / s + np.mod(np.asarray(spec.m) * x, 1.0)
    mode_phase = np.exp(-2j * np.pi * turns)
    return Propagator(t=t, mu=(lattice_phase @ mode_phase) / s)


def mu_spectral(spec: NetworkSpec, t: float) -> Propagator:
    """``mu(t) = U^dagger exp(-i Omega t) U``."""
    u = ring_diagonalizer(spec.s)
    phases = np.exp(-1j * mode_frequencies(spec) * t)
    return Propagator(t=t, mu=(u.conj().T * phases) @ u)


def mu_exponential_oracle(lam, t: float) -> np.ndarray:
    """``exp(-i lam t)`` by Hermitian eigendecomposition.

    The one-excitation block of the Hamiltonian is ``lam`` itself, so this is
    the propagator obtained without any knowledge of the mode structure.
    """
    return hermitian_expm(lam, t)


@dataclass(frozen=True)
class TransferCheck:
    source: int
    target: int
    residual: float
    tol: float = TRANSFER_TOL

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def __bool__(self):
        return self.passed


def check_transfer_conditions(prop: Propagator, source: int, target: int, tol: float = TRANSFER_TOL) -> TransferCheck:
    """Check that the state of site ``source`` sits in site ``target``.

    Sites are 1-based. Requires ``mu[target, j] = delta(j, source)`` and
    ``nu[target, j] = 0`` for all j.
    """
    s = prop.s
    for name, idx in (("source", source), ("target", target)):
        if not 1 <= idx <= s:
            raise IndexError(f"{name} site {idx} outside 1..{s}")
    want = np.zeros(s)
    want[source - 1] = 1.0
    resid = max(max_abs(prop.mu[target - 1] - want), max_abs(prop.nu[target - 1]))
    return TransferCheck(source=source, target=target, residual=resid, tol=tol)
