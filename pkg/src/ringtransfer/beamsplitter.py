"""One photon through one or two lossless beam splitters.

A splitter of angle ``theta = lam * tau`` is the evolution
``exp(-i lam tau (a1^dagger a2 + a1 a2^dagger))`` restricted to the one-photon
states, i.e. the matrix ``[[T, -iR], [-iR, T]]`` on ``(c10, c01)`` with
``T = cos(theta)`` and ``R = sin(theta)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

TOL = 1e-12


@dataclass(frozen=True)
class BSParams:
    T: float
    R: float

    def __post_init__(self):
        if abs(self.T**2 + self.R**2 - 1) > TOL:
            raise ValueError(f"T^2 + R^2 = {self.T**2 + self.R**2!r}, expected 1")

    @classmethod
    def from_angle(cls, theta: float) -> "BSParams":
        return cls(math.cos(theta), math.sin(theta))

    @classmethod
    def balanced(cls) -> "BSParams":
        return cls.from_angle(math.pi / 4)

    @property
    def angle(self) -> float:
        return math.atan2(self.R, self.T)

    def matrix(self) -> np.ndarray:
        return np.array([[self.T, -1j * self.R], [-1j * self.R, self.T]])


IDENTITY = BSParams(1.0, 0.0)


@dataclass(frozen=True)
class TwoModeOnePhoton:
    """``c10 |1,0> + c01 |0,1>``."""

    c10: complex
    c01: complex

    def __post_init__(self):
        norm = abs(self.c10) ** 2 + abs(self.c01) ** 2
        if abs(norm - 1) > TOL:
            raise ValueError(f"state norm^2 is {norm!r}, expected 1")

    @classmethod
    def first(cls) -> "TwoModeOnePhoton":
        return cls(1 + 0j, 0j)

    @classmethod
    def second(cls) -> "TwoModeOnePhoton":
        return cls(0j, 1 + 0j)

    def as_array(self) -> np.ndarray:
        return np.array([self.c10, self.c01], dtype=complex)


def bs_apply(params: BSParams, state: TwoModeOnePhoton) -> TwoModeOnePhoton:
    c10, c01 = params.matrix() @ state.as_array()
    return TwoModeOnePhoton(complex(c10), complex(c01))


def cascade(p1: BSParams, p2: BSParams) -> TwoModeOnePhoton:
    """Output of two splitters in series fed with ``|1,0>``:
    ``c10 = T1 T2 - R1 R2`` and ``c01 = -i (R1 T2 + R2 T1)``."""
    return TwoModeOnePhoton(
        complex(p1.T * p2.T - p1.R * p2.R),
        -1j * (p1.R * p2.T + p2.R * p1.T),
    )


def perfect_transfer_condition(p1: BSParams, p2: BSParams, tol: float = TOL) -> bool:
    """True when the photon leaves entirely in mode 2, i.e. the two angles
    add up to pi/2 modulo pi."""
    return abs(cascade(p1, p2).c10) <= tol


def equal_up_to_phase(a: TwoModeOnePhoton, b: TwoModeOnePhoton, tol: float = TOL) -> bool:
    """Compare states ignoring one overall phase."""
    va, vb = a.as_array(), b.as_array()
    overlap = np.vdot(va, vb)
    if abs(overlap) == 0:
        return False
    phase = overlap / abs(overlap)
    return float(np.max(np.abs(va * phase - vb))) <= tol


def global_phase(a: TwoModeOnePhoton, b: TwoModeOnePhoton) -> complex:
    """Phase ``p`` minimizing ``|p a - b|``."""
    overlap = np.vdot(a.as_array(), b.as_array())
    return cmath.exp(1j * cmath.phase(overlap))
