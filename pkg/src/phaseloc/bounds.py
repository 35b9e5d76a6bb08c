"""Closed-form constants and two-sided bounds.

``base(q) = p**(1/p) * q**(-1/q)`` with ``1/p + 1/q = 1`` is the one-dimensional
Babenko-Beckner factor squared; the sharp L^p -> L^q Fourier norm in d
dimensions is ``base(q)**(d/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .combcalc import (
    CanonicalComb,
    comb_fourier,
    comb_max_deviation,
    comb_p_norm,
    comb_p_norm_k,
    Regularizer,
    GAUSSIAN,
)
from .errors import InvalidExponent, NotEigenvector

EULER_GAMMA = 0.57721566490153286061
LOG2 = math.log(2.0)
ONE_MINUS_LOG2 = 1.0 - LOG2


@dataclass(frozen=True)
class Bracket:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty bracket [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, v: float) -> bool:
        return self.lower <= v <= self.upper


def c_d_bracket(d: int) -> Bracket:
    """Bounds on the minimal phase-space entropy of antisymmetric states in d dimensions."""
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    return Bracket(d * ONE_MINUS_LOG2, (d + 1) * ONE_MINUS_LOG2)


def conjugate_exponent(q: float) -> float:
    if not q > 1:
        raise InvalidExponent(f"exponent must exceed 1, got {q!r}")
    return q / (q - 1.0)


def base(q: float) -> float:
    if not q > 2 or math.isinf(q):
        raise InvalidExponent(f"q must be a finite real > 2, got {q!r}")
    p = conjugate_exponent(q)
    return p ** (1.0 / p) * q ** (-1.0 / q)


def babenko_beckner(q: float) -> float:
    """Sharp norm of the 1D Fourier transform from L^p to L^q."""
    return math.sqrt(base(q))


def k_dq_bracket(d: int, q: float) -> Bracket:
    """Bounds on the antisymmetric-subspace Fourier norm K_{d,q}."""
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    b = base(q)
    return Bracket(b ** ((d + 1) / 2), b ** (d / 2))


def oscillator_entropy_closed(n: int) -> float:
    if n == 0:
        return ONE_MINUS_LOG2
    if n == 1:
        return -1.0 + LOG2 + 2.0 * EULER_GAMMA
    raise ValueError("closed forms are known only for n = 0 and n = 1")


def restricted_norm_lower_bound(
    c: CanonicalComb, q: float, reg: Regularizer = GAUSSIAN, tol: float = 1e-9
) -> float:
    """||psi~||_q / ||psi||_p for the regularised eigenvector comb ``c``.

    As a -> 0 the regularised comb stays in its eigenspace, so the ratio is a
    lower bound on the Fourier norm restricted to that eigenspace.
    """
    p = conjugate_exponent(q)
    base(q)  # validates q
    fc = comb_fourier(c)
    lam = _eigenvalue(c, fc, tol)
    if lam is None:
        raise NotEigenvector("comb is not a Fourier eigenvector")
    return comb_p_norm_k(c, q, reg) / comb_p_norm(c, p, reg)


def _eigenvalue(c, fc, tol: float):
    for lam in (1, -1j, -1, 1j):
        if comb_max_deviation(fc, lam * c.to_comb()) <= tol:
            return lam
    return None
