"""
Characteristic functions ``chi(alpha) = Tr[rho D(alpha)]`` of Fock and
coherent states and their reduced evolution on the ring, with
``D(alpha) = exp(alpha a^dagger - conj(alpha) a)``.

Laguerre values use the three-term recurrence in double precision; that is
accurate for n <= 50 at |alpha| <= 5 and loses digits well beyond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import NetworkSpec
from .propagator import mu_closed_form


def laguerre(n: int, x):
    """Laguerre polynomial ``L_n(x)``; ``x`` may be a scalar or an array."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def fock_char(n: int, alpha: complex) -> float:
    """``exp(-|alpha|^2/2) L_n(|alpha|^2)``, real for every alpha."""
    r2 = abs(alpha) ** 2
    return math.exp(-0.5 * r2) * laguerre(n, r2)


def coherent_char(beta: complex, alpha: complex) -> complex:
    """``exp(-|alpha|^2/2) exp(alpha conj(beta) - conj(alpha) beta)``."""
    alpha, beta = complex(alpha), complex(beta)
    return np.exp(-0.5 * abs(alpha) ** 2 + alpha * beta.conjugate() - alpha.conjugate() * beta)


def _site(spec: NetworkSpec, j: int) -> int:
    if not 1 <= j <= spec.s:
        raise IndexError(f"site {j} outside 1..{spec.s}")
    return j - 1


def source_amplitude(spec: NetworkSpec, j: int, t: float) -> complex:
    """``mu[j, 1](t)``: amplitude at site j of whatever started at site 1."""
    return complex(mu_closed_form(spec, t).mu[_site(spec, j), 0])


def g_function(spec: NetworkSpec, j: int, t: float) -> float:
    """``|mu[j, 1](t)|^2``, the share of site 1's initial state found at site j."""
    return min(1.0, abs(source_amplitude(spec, j, t)) ** 2)


def reduced_fock_char(spec: NetworkSpec, j: int, t: float, n: int, alpha: complex) -> float:
    """Reduced characteristic function at site j for the start ``|n, 0, ..., 0>``."""
    r2 = abs(alpha) ** 2
    return math.exp(-0.5 * r2) * laguerre(n, g_function(spec, j, t) * r2)


def reduced_coherent_char(spec: NetworkSpec, j: int, t: float, beta: complex, alpha: complex) -> complex:
    """Reduced characteristic function at site j for the start ``|beta, 0, ..., 0>``.

    Site j holds the coherent state of amplitude ``mu[j, 1](t) * beta``, so
    the result is ``coherent_char(mu[j, 1](t) * beta, alpha)``.
    """
    return coherent_char(source_amplitude(spec, j, t) * complex(beta), alpha)


@dataclass(frozen=True)
class CharFunction:
    """Reduced characteristic function of a single-mode state.

    ``kind`` is ``"fock"`` (parameters ``n`` and the weight ``g``) or
    ``"coherent"`` (parameters ``beta`` and the transfer amplitude ``amp``).
    """

    kind: str
    n: int = 0
    g: float = 1.0
    beta: complex = 0j
    amp: complex = 1 + 0j

    def __post_init__(self):
        if self.kind not in ("fock", "coherent"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "fock" and not (self.n >= 0 and -1e-12 <= self.g <= 1 + 1e-12):
            raise ValueError("fock kind needs n >= 0 and g in [0, 1]")

    @classmethod
    def fock(cls, n: int, g: float = 1.0) -> "CharFunction":
        return cls("fock", n=n, g=g)

    @classmethod
    def coherent(cls, beta: complex, amp: complex = 1 + 0j) -> "CharFunction":
        return cls("coherent", beta=complex(beta), amp=complex(amp))

    def __call__(self, alpha: complex) -> complex:
        if self.kind == "fock":
            r2 = abs(alpha) ** 2
            return math.exp(-0.5 * r2) * laguerre(self.n, self.g * r2)
        return coherent_char(self.amp * self.beta, alpha)


@dataclass(frozen=True)
class GSeries:
    spec: NetworkSpec
    site: int
    t: np.ndarray
    g: np.ndarray

    @property
    def t_over_tau(self) -> np.ndarray:
        return self.t / self.spec.tau

    def to_csv(self) -> str:
        lines = ["t_over_tau,g"]
        lines += [f"{format(float(x), '.17g')},{format(float(y), '.17g')}" for x, y in zip(self.t_over_tau, self.g)]
        return "\n".join(lines) + "\n"


def sweep_g(spec: NetworkSpec, j: int, t_min: float, t_max: float, steps: int) -> GSeries:
    """Sample ``g_j`` on ``steps`` evenly spaced times, endpoints included."""
    _site(spec, j)
    if not t_min < t_max:
        raise ValueError("need t_min < t_max")
    if steps < 2:
        raise ValueError("need at least 2 grid points")
    t = np.linspace(t_min, t_max, steps)
    g = np.array([g_function(spec, j, ti) for ti in t])
    return GSeries(spec=spec, site=j, t=t, g=g)
