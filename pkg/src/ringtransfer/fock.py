"""
Brute-force Fock-space reference.

A number-conserving quadratic Hamiltonian ``sum_jk lam[j,k] a_j^dagger a_k``
never changes the total excitation number N, so each N-sector is evolved on
its own and the truncation is exact. States inside a sector are ordered
lexicographically descending on ``(n_1, ..., n_s)``; for N = 1 that is the
site order, and the sector Hamiltonian equals ``lam``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .lattice import NetworkSpec, cyclic_shift_matrix, hermitian_expm, is_hermitian, max_abs
from .propagator import mu_closed_form
from .synthesis import synthesize_couplings

log = logging.getLogger(__name__)

MAX_SECTOR_SIZE = 200_000


def _compositions(total: int, parts: int):
    """Occupation tuples summing to ``total``, lexicographically descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class FockBasis:
    """All occupation vectors of ``s`` modes with ``total`` quanta."""

    def __init__(self, s: int, total: int):
        if s < 1 or total < 0:
            raise ValueError("need s >= 1 and total >= 0")
        size = math.comb(total + s - 1, s - 1)
        if size > MAX_SECTOR_SIZE:
            raise ValueError(f"sector of {size} states exceeds the limit of {MAX_SECTOR_SIZE}")
        self.s = s
        self.total = total
        self.states: tuple[tuple[int, ...], ...] = tuple(_compositions(total, s))
        self.index = {st: i for i, st in enumerate(self.states)}

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        return isinstance(other, FockBasis) and (self.s, self.total) == (other.s, other.total)

    def __hash__(self):
        return hash((self.s, self.total))

    def __repr__(self):
        return f"FockBasis(s={self.s}, total={self.total}, size={len(self)})"

    @cached_property
    def occupations(self) -> np.ndarray:
        return np.array(self.states, dtype=float).reshape(len(self.states), self.s)


@dataclass(frozen=True, eq=False)
class FockVector:
    basis: FockBasis
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (len(self.basis),):
            raise ValueError(f"expected {len(self.basis)} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @classmethod
    def basis_state(cls, occupation: Sequence[int]) -> "FockVector":
        occ = tuple(int(n) for n in occupation)
        basis = FockBasis(len(occ), sum(occ))
        amps = np.zeros(len(basis), dtype=complex)
        amps[basis.index[occ]] = 1.0
        return cls(basis, amps)

    @classmethod
    def superposition(cls, terms: Iterable[tuple[complex, Sequence[int]]]) -> "FockVector":
        """Normalized ``sum_i w_i |occ_i>``; all terms must share s and N."""
        terms = [(complex(w), tuple(int(n) for n in occ)) for w, occ in terms]
        if not terms:
            raise ValueError("empty superposition")
        s, total = len(terms[0][1]), sum(terms[0][1])
        basis = FockBasis(s, total)
        amps = np.zeros(len(basis), dtype=complex)
        for w, occ in terms:
            if len(occ) != s or sum(occ) != total:
                raise ValueError(f"term {occ} not in the (s={s}, N={total}) sector")
            amps[basis.index[occ]] += w
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("superposition has zero norm")
        if abs(norm - 1) > 1e-6:
            log.warning("superposition norm %.6g renormalized to 1", norm)
        return cls(basis, amps / norm)

    def site_probabilities(self) -> np.ndarray:
        """``p[j, a]``: probability of finding ``a`` quanta at site j."""
        probs = np.abs(self.amps) ** 2
        out = np.zeros((self.basis.s, self.basis.total + 1))
        for p, occ in zip(probs, self.basis.states):
            for j, n in enumerate(occ):
                out[j, n] += p
        return out

    def mean_occupations(self) -> np.ndarray:
        return (np.abs(self.amps) ** 2) @ self.basis.occupations

    def shifted(self, perm_image: Sequence[int]) -> "FockVector":
        """Move the content of site k to site ``perm_image[k]`` (0-based)."""
        amps = np.zeros_like(self.amps)
        for a, occ in zip(self.amps, self.basis.states):
            new = [0] * self.basis.s
            for k, n in enumerate(occ):
                new[perm_image[k]] = n
            amps[self.basis.index[tuple(new)]] += a
        return FockVector(self.basis, amps)


def build_sector_hamiltonian(lam, basis: FockBasis) -> np.ndarray:
    """Matrix of ``sum_jk lam[j,k] a_j^dagger a_k`` on one sector.

    Hopping a quantum from k to j contributes ``lam[j,k] sqrt(n_k (n_j + 1))``
    (occupations before the hop); the diagonal is ``sum_j lam[j,j] n_j``.
    """
    lam = np.asarray(lam, dtype=complex)
    if lam.shape != (basis.s, basis.s):
        raise ValueError(f"coupling matrix {lam.shape} does not match s={basis.s}")
    if not is_hermitian(lam, tol=1e-12 * max(1.0, max_abs(lam))):
        raise ValueError("coupling matrix is not Hermitian")
    dim = len(basis)
    h = np.zeros((dim, dim), dtype=complex)
    diag = np.real(np.diag(lam))
    for col, occ in enumerate(basis.states):
        h[col, col] = float(np.dot(diag, occ))
        for k, nk in enumerate(occ):
            if nk == 0:
                continue
            for j in range(basis.s):
                if j == k:
                    continue
                new = list(occ)
                new[k] -= 1
                new[j] += 1
                row = basis.index[tuple(new)]
                h[row, col] += lam[j, k] * math.sqrt(nk * (occ[j] + 1))
    return h


def evolve(state: FockVector, h, t: float) -> FockVector:
    """``exp(-i h t) |state>`` through the eigendecomposition of ``h``."""
    h = np.asarray(h)
    if h.shape != (len(state.basis), len(state.basis)):
        raise ValueError(f"Hamiltonian {h.shape} does not match basis of size {len(state.basis)}")
    if t == 0:
        return FockVector(state.basis, state.amps.copy())
    return FockVector(state.basis, hermitian_expm(h, t) @ state.amps)


class SectorEvolution:
    """Diagonalize a sector Hamiltonian once, evolve to many times."""

    def __init__(self, lam, basis: FockBasis):
        self.basis = basis
        h = build_sector_hamiltonian(lam, basis)
        self.energies, self.modes = np.linalg.eigh(0.5 * (h + h.conj().T))

    def __call__(self, state: FockVector, t: float) -> FockVector:
        if state.basis != self.basis:
            raise ValueError("state lives in another sector")
        if t == 0:
            return FockVector(self.basis, state.amps.copy())
        coeffs = self.modes.conj().T @ state.amps
        return FockVector(self.basis, self.modes @ (np.exp(-1j * self.energies * t) * coeffs))


def fidelity(a: FockVector, b: FockVector) -> float:
    """``|<a|b>|^2``."""
    if a.basis != b.basis:
        raise ValueError("states live in different sectors")
    return float(min(1.0, abs(np.vdot(a.amps, b.amps)) ** 2))


@dataclass(frozen=True)
class EntangledTransferReport:
    spec: NetworkSpec
    n: int
    times: np.ndarray
    fidelities: np.ndarray  # at t = k tau, k = 0..s
    min_intermediate: float

    def passed(self, tol: float = 1e-9) -> bool:
        return bool(np.all(self.fidelities >= 1 - tol))


def entangled_transfer_check(spec: NetworkSpec, n: int, intermediate_steps: int = 20) -> EntangledTransferReport:
    """Evolve ``(|n,0,0,..> + |0,n,0,..>)/sqrt(2)`` and compare, at each
    ``t = k tau``, with the same pair shifted k sites around the ring.

    ``min_intermediate`` is the lowest fidelity to the nearest-earlier
    shifted state over ``intermediate_steps`` interior points per period.
    """
    if spec.s < 3:
        raise ValueError("entangled transfer needs s >= 3")
    if n < 1:
        raise ValueError("photon number must be >= 1")
    s = spec.s
    first = [0] * s
    first[0] = n
    second = [0] * s
    second[1] = n
    psi0 = FockVector.superposition([(math.sqrt(0.5), first), (math.sqrt(0.5), second)])
    run = SectorEvolution(synthesize_couplings(spec), psi0.basis)
    shift = cyclic_shift_matrix(s)

    times = np.arange(s + 1) * spec.tau
    fids = np.array([fidelity(psi0.shifted(shift.power(k).image), run(psi0, t)) for k, t in enumerate(times)])

    worst = 1.0
    for k in range(s):
        target = psi0.shifted(shift.power(k).image)
        for frac in np.linspace(0, 1, intermediate_steps + 2)[1:-1]:
            worst = min(worst, fidelity(target, run(psi0, (k + frac) * spec.tau)))
    return EntangledTransferReport(spec=spec, n=n, times=times, fidelities=fids, min_intermediate=worst)


def fock_transfer_fidelity(spec: NetworkSpec, n: int, k: int = 1) -> float:
    """Fidelity of ``|n,0,..,0>`` after ``k tau`` with n quanta at site k+1."""
    start = [0] * spec.s
    start[0] = n
    psi0 = FockVector.basis_state(start)
    target = [0] * spec.s
    target[k % spec.s] = n
    h = build_sector_hamiltonian(synthesize_couplings(spec), psi0.basis)
    return fidelity(FockVector.basis_state(target), evolve(psi0, h, k * spec.tau))


def single_excitation_propagator(lam, t: float) -> np.ndarray:
    """Columns are evolved one-quantum basis states ``|0..1_k..0>``."""
    lam = np.asarray(lam)
    s = lam.shape[0]
    run = SectorEvolution(lam, FockBasis(s, 1))
    cols = [run(FockVector.basis_state(np.eye(s, dtype=int)[k]), t).amps for k in range(s)]
    return np.stack(cols, axis=1)


def single_excitation_consistency(spec: NetworkSpec, t: float) -> float:
    """Max-abs gap between the evolved one-quantum sector and ``mu(t)``."""
    return max_abs(single_excitation_propagator(synthesize_couplings(spec), t) - mu_closed_form(spec, t).mu)
