"""Coupling matrices that move every oscillator state one site around the ring
per period tau, plus the two-oscillator closed form, Bogoliubov checks and the
extension to arbitrary target permutations.

Units: hbar = 1, couplings are angular frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lattice import (
    NetworkSpec,
    PermutationMatrix,
    cyclic_shift_matrix,
    max_abs,
    mode_frequencies,
    ring_diagonalizer,
)

BOGOLIUBOV_TOL = 1e-10


def couplings_by_sum(spec: NetworkSpec) -> np.ndarray:
    """Coupling matrix by direct summation over the modes:

    ``lam[j, k] = 2*pi/(s*tau) * sum_l (l/s + m_l) * exp(2*pi*i*(j-k)*l/s)``
    """
    s = spec.s
    j = np.arange(1, s + 1)
    l = np.arange(1, s + 1)
    weight = l / s + np.asarray(spec.m, dtype=float)
    diff = (j[:, None] - j[None, :]) % s
    # phases[j, k, l]; exponent reduced mod s so equal differences give equal phases
    phases = np.exp(2j * np.pi * ((diff[:, :, None] * l[None, None, :]) % s) / s)
    return (2 * np.pi / (s * spec.tau)) * (phases @ weight)


def couplings_spectral(spec: NetworkSpec) -> np.ndarray:
    """Coupling matrix as ``U^dagger diag(omega) U`` with the ring diagonalizer."""
    u = ring_diagonalizer(spec.s)
    return (u.conj().T * mode_frequencies(spec)) @ u


def synthesize_couplings(spec: NetworkSpec, check: bool = True) -> np.ndarray:
    """Hermitian coupling matrix realizing perfect cyclic transfer.

    The summation route is returned; with ``check`` it is compared with the
    spectral route and an ``ArithmeticError`` is raised if they differ.
    """
    lam = couplings_by_sum(spec)
    if check:
        resid = max_abs(lam - couplings_spectral(spec))
        scale = max(1.0, max_abs(lam))
        if resid > 1e-12 * scale * max(1, spec.s // 8):
            raise ArithmeticError(f"coupling routes disagree by {resid:.3e}")
    return lam


def diagonal_element(spec: NetworkSpec) -> float:
    """Common diagonal coupling, ``trace(Omega) / s``."""
    l = np.arange(1, spec.s + 1)
    return float((2 * np.pi / (spec.s * spec.tau)) * np.sum(l / spec.s + np.asarray(spec.m)))


@dataclass(frozen=True)
class TwoModeForm:
    """Two oscillators of common frequency ``omega`` coupled by ``c``."""

    omega: float
    c: float
    m1: int
    m2: int
    tau: float

    @property
    def ratio(self) -> float:
        return self.c / self.omega

    def couplings(self) -> np.ndarray:
        return np.array([[self.omega, self.c], [self.c, self.omega]], dtype=complex)

    def spec(self) -> NetworkSpec:
        return NetworkSpec(2, self.tau, (self.m1, self.m2))


def two_mode_ratio(m1: int, m2: int) -> float:
    """``c/omega = (1 + 2 m2 - 2 m1) / (3 + 2 m1 + 2 m2)``."""
    return (1 + 2 * m2 - 2 * m1) / (3 + 2 * m1 + 2 * m2)


def two_mode_closed_form(m1: int, m2: int, c: float) -> TwoModeForm:
    """Frequency and transfer time for two oscillators with coupling ``c``."""
    if m1 < 0 or m2 < 0:
        raise ValueError("m1 and m2 must be non-negative")
    if c <= 0:
        raise ValueError("coupling constant must be positive")
    num = 1 + 2 * m2 - 2 * m1
    if num <= 0:
        raise ValueError(f"1 + 2*m2 - 2*m1 = {num} gives a non-positive transfer time")
    omega = c * (3 + 2 * m1 + 2 * m2) / num
    tau = (0.5 + m2 - m1) * np.pi / c
    return TwoModeForm(omega=omega, c=c, m1=m1, m2=m2, tau=tau)


@dataclass(frozen=True)
class BogoliubovReport:
    """Max-abs residuals of the four Bogoliubov consistency conditions."""

    a1: float
    a2: float
    a3: float
    a4: float
    tol: float = BOGOLIUBOV_TOL

    @property
    def residuals(self) -> tuple[float, float, float, float]:
        return (self.a1, self.a2, self.a3, self.a4)

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals)

    def __bool__(self):
        return self.passed


def validate_bogoliubov(w, v, tol: float = BOGOLIUBOV_TOL) -> BogoliubovReport:
    w = np.asarray(w, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape != v.shape:
        raise ValueError(f"W and V must be square and equal in shape, got {w.shape} and {v.shape}")
    eye = np.eye(w.shape[0])
    wh, vh = w.conj().T, v.conj().T
    return BogoliubovReport(
        a1=max_abs(w @ wh - v @ vh - eye),
        a2=max_abs(wh @ w - v.T @ v.conj() - eye),
        a3=max_abs(w @ v.T - v @ w.T),
        a4=max_abs(wh @ v - v.T @ w.conj()),
        tol=tol,
    )


def intertwining_residual(w, omega, tau: float, target=None) -> float:
    """Residual of ``exp(-i Omega tau) W = W C``.

    Any unitary W meeting this (with V = 0) diagonalizes C onto the mode
    phases; other unitaries leave an O(1) residual.
    """
    w = np.asarray(w, dtype=complex)
    omega = np.asarray(omega, dtype=float)
    if target is None:
        target = cyclic_shift_matrix(w.shape[0]).to_matrix()
    return max_abs(np.exp(-1j * omega * tau)[:, None] * w - w @ np.asarray(target))


def synthesize_for_permutation(
    s: int, tau: float, perm: PermutationMatrix, m: Sequence[int] | None = None
) -> np.ndarray:
    """Couplings whose single-excitation propagator at ``tau`` equals ``perm``.

    Each cycle of length L gets the ring construction on L sites; a fixed
    point is a 1-site ring with frequency ``2*pi*(1 + m)/tau``. Entries of
    ``m`` are consumed in cycle-traversal order: cycles are visited from their
    smallest site, following the direction the permutation moves states.
    """
    if not isinstance(perm, PermutationMatrix):
        perm = PermutationMatrix.from_matrix(perm)
    if perm.dim != s:
        raise ValueError(f"permutation has dimension {perm.dim}, expected {s}")
    m = (0,) * s if m is None else tuple(int(v) for v in m)
    if len(m) != s:
        raise ValueError(f"expected {s} excitation integers, got {len(m)}")

    lam = np.zeros((s, s), dtype=complex)
    used = 0
    for cycle in perm.cycles():
        size = len(cycle)
        block = synthesize_couplings(NetworkSpec(size, tau, m[used : used + size]))
        used += size
        idx = np.asarray(cycle)
        lam[np.ix_(idx, idx)] = block
    return lam
