"""
Structural matrices of an s-site oscillator ring.

Site and mode labels are 1-based inside every phase formula
(``exp(2*pi*i*j*k/s)`` with ``j, k = 1..s``); arrays are stored 0-based.
Structural identities hold to ~1e-12 for s <= 64 and the error grows
roughly linearly with s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

STRUCTURE_TOL = 1e-12


@dataclass(frozen=True)
class NetworkSpec:
    """Ring size ``s``, transfer period ``tau`` and excitation integers ``m``."""

    s: int
    tau: float
    m: tuple[int, ...]

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 1:
            raise ValueError(f"ring size must be a positive integer, got {self.s!r}")
        if not np.isfinite(self.tau) or self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        m = tuple(int(v) for v in self.m)
        if len(m) != self.s:
            raise ValueError(f"expected {self.s} excitation integers, got {len(m)}")
        if any(v < 0 for v in m):
            raise ValueError("excitation integers must be non-negative")
        object.__setattr__(self, "s", int(self.s))
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "m", m)

    @classmethod
    def fundamental(cls, s: int, tau: float = 1.0) -> "NetworkSpec":
        """Spec with every ``m_j = 0``."""
        return cls(s, tau, (0,) * s)


@dataclass(frozen=True)
class PermutationMatrix:
    """Permutation of ``dim`` sites.

    ``image[k]`` is the (0-based) row holding the single 1 of column ``k``,
    i.e. the site that receives the state of site ``k``.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if sorted(image) != list(range(len(image))) or not image:
            raise ValueError(f"not a permutation of 0..n-1: {self.image!r}")
        object.__setattr__(self, "image", image)

    @property
    def dim(self) -> int:
        return len(self.image)

    @classmethod
    def from_matrix(cls, matrix) -> "PermutationMatrix":
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("permutation matrix must be square")
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("permutation matrix entries must be 0 or 1")
        if not (np.all(a.sum(axis=0) == 1) and np.all(a.sum(axis=1) == 1)):
            raise ValueError("need exactly one 1 per row and per column")
        return cls(tuple(int(np.argmax(a[:, k])) for k in range(a.shape[1])))

    def to_matrix(self) -> np.ndarray:
        n = self.dim
        out = np.zeros((n, n))
        out[list(self.image), list(range(n))] = 1.0
        return out

    def compose(self, other: "PermutationMatrix") -> "PermutationMatrix":
        """Matrix product ``self @ other`` on the image maps."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return PermutationMatrix(tuple(self.image[other.image[k]] for k in range(self.dim)))

    def power(self, n: int) -> "PermutationMatrix":
        out = PermutationMatrix(tuple(range(self.dim)))
        for _ in range(n):
            out = self.compose(out)
        return out

    def is_identity(self) -> bool:
        return self.image == tuple(range(self.dim))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each started at its smallest unvisited site and
        listed in the order the permutation moves a state along it."""
        seen = [False] * self.dim
        out = []
        for start in range(self.dim):
            if seen[start]:
                continue
            cycle = []
            k = start
            while not seen[k]:
                seen[k] = True
                cycle.append(k)
                k = self.image[k]
            out.append(tuple(cycle))
        return out


def _check_size(s):
    if int(s) != s or s < 1:
        raise ValueError(f"ring size must be a positive integer, got {s!r}")
    return int(s)


def cyclic_shift_matrix(s: int) -> PermutationMatrix:
    """Shift moving the state of site k to site k+1, closing s -> 1."""
    s = _check_size(s)
    return PermutationMatrix(tuple((k + 1) % s for k in range(s)))


def dft_matrix(s: int) -> np.ndarray:
    """``W[j, k] = exp(2*pi*i*j*k/s) / sqrt(s)`` with 1-based j, k."""
    s = _check_size(s)
    idx = np.arange(1, s + 1)
    # reduce j*k mod s before the exponential to keep phases exact
    phase = np.outer(idx, idx) % s
    return np.exp(2j * np.pi * phase / s) / np.sqrt(s)


def ring_diagonalizer(s: int) -> np.ndarray:
    """Unitary ``U`` with ``U C U^dagger = diag(exp(-2*pi*i*j/s))``.

    This is the complex conjugate of :func:`dft_matrix`. The plain DFT
    matrix diagonalizes the shift too, but with the conjugate eigenphases.
    """
    return dft_matrix(s).conj()


def shift_eigenphases(s: int) -> np.ndarray:
    """Eigenphases ``exp(-2*pi*i*j/s)``, ``j = 1..s``, of the cyclic shift,
    read off the diagonal of ``U C U^dagger``."""
    s = _check_size(s)
    u = ring_diagonalizer(s)
    d = u @ cyclic_shift_matrix(s).to_matrix() @ u.conj().T
    off = d - np.diag(np.diag(d))
    if s > 1 and max_abs(off) > STRUCTURE_TOL * s:
        raise ArithmeticError(f"shift not diagonalized, residual {max_abs(off):.3e}")
    return np.diag(d).copy()


def mode_frequencies(spec: NetworkSpec) -> np.ndarray:
    """Normal-mode angular frequencies ``(2*pi/tau) * (j/s + m_j)``."""
    j = np.arange(1, spec.s + 1)
    return (2 * np.pi / spec.tau) * (j / spec.s + np.asarray(spec.m, dtype=float))


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(a, tol: float = 1e-12) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and max_abs(a - a.conj().T) <= tol


def hermitian_expm(h, t: float) -> np.ndarray:
    """``exp(-i h t)`` for Hermitian ``h`` through its eigendecomposition."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, tol=1e-10 * max(1.0, max_abs(h))):
        raise ValueError("matrix is not Hermitian")
    h = 0.5 * (h + h.conj().T)
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T


def as_spec(s: int, tau: float = 1.0, m: Sequence[int] | int = 0) -> NetworkSpec:
    """Build a spec, broadcasting a scalar ``m`` to every site."""
    if isinstance(m, (int, np.integer)):
        m = (int(m),) * int(s)
    return NetworkSpec(s, tau, tuple(m))
