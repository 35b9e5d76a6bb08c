"""Named grid states: Gaussians, oscillator eigenstates, and regularised combs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .combcalc import CanonicalComb, canonical_form
from .errors import RangeError
from .gridwave import GridSpec, WaveGrid, normalize

__all__ = [
    "SamplingParams",
    "gaussian",
    "hermite_state",
    "psi0",
    "comb_sample",
    "separable_entropy",
    "MAX_HERMITE",
]

MAX_HERMITE = 64
# relative amplitude below which envelope and peaks are truncated
TRUNCATION = 1e-18
_CUT = math.sqrt(-math.log(TRUNCATION) / math.pi)  # exp(-pi*_CUT**2) == TRUNCATION


@dataclass(frozen=True)
class SamplingParams:
    """Regularisation scale ``a`` and the grid it is sampled on.

    The grid must resolve the narrow peaks (dx < a/4) and hold the wide
    envelope (n*dx > 4/a).
    """

    a: float
    grid: GridSpec

    def __post_init__(self):
        a, g = self.a, self.grid
        if not a > 0:
            raise RangeError(f"regularisation scale must be positive, got {a!r}")
        if not g.dx < a / 4:
            raise RangeError(f"grid spacing {g.dx:.3g} does not resolve peaks of width a={a}")
        if not g.n * g.dx > 4 / a:
            raise RangeError(f"grid extent {g.n * g.dx:.3g} cannot hold an envelope of width 1/a={1 / a:.3g}")


def gaussian(width: float, grid: GridSpec) -> WaveGrid:
    """Normalised samples of exp(-pi x^2 / width^2); width 1 is self-dual."""
    if not width > 0:
        raise ValueError("width must be positive")
    x = grid.x
    return normalize(WaveGrid(grid, np.exp(-np.pi * (x / width) ** 2)))


def hermite_state(n: int, grid: GridSpec) -> WaveGrid:
    """n-th eigenstate of the self-dual oscillator, H_n(sqrt(2 pi) x) exp(-pi x^2).

    Built with the orthonormal three-term recurrence
    psi_{k+1} = sqrt(2/(k+1)) y psi_k - sqrt(k/(k+1)) psi_{k-1}, y = sqrt(2 pi) x,
    so no factorials or large polynomial values appear.  F h_n = (-i)^n h_n.
    """
    if int(n) != n or not 0 <= n <= MAX_HERMITE:
        raise RangeError(f"oscillator level must be in [0, {MAX_HERMITE}], got {n!r}")
    n = int(n)
    turning = math.sqrt((2 * n + 1) / (2 * math.pi))
    if grid.half_extent < turning + 3.0:
        raise RangeError(
            f"grid half-extent {grid.half_extent:.3g} too small for level {n} (turning point {turning:.3g})"
        )
    y = math.sqrt(2 * math.pi) * grid.x
    prev = np.zeros_like(y)
    cur = np.pi ** -0.25 * np.exp(-0.5 * y * y)
    for k in range(n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * y * cur - math.sqrt(k / (k + 1)) * prev
    return normalize(WaveGrid(grid, cur))


def _peak_train(grid: GridSpec, a: float, centers: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """sum_m weights[m] * exp(-pi (x - centers[m])^2 / a^2), added locally."""
    x0, dx, n = grid.x[0], grid.dx, grid.n
    half = _CUT * a
    out = np.zeros(n, dtype=complex)
    for c, w in zip(centers, weights):
        lo = max(0, int(math.floor((c - half - x0) / dx)))
        hi = min(n, int(math.ceil((c + half - x0) / dx)) + 1)
        if lo >= hi:
            continue
        t = grid.x[lo:hi] - c
        out[lo:hi] += w * np.exp(-np.pi * (t / a) ** 2)
    return out


def _envelope_reach(params: SamplingParams) -> float:
    g = params.grid
    return min(_CUT / params.a, g.half_extent + _CUT * params.a)


def psi0(params: SamplingParams) -> WaveGrid:
    """exp(-pi a^2 x^2) sum_n (-1)^n exp(-pi (x - n - 1/2)^2 / a^2), normalised."""
    a, g = params.a, params.grid
    reach = _envelope_reach(params)
    m = np.arange(-math.ceil(reach) - 1, math.ceil(reach) + 1)
    centers = m + 0.5
    keep = np.abs(centers) <= reach
    centers, m = centers[keep], m[keep]
    weights = np.where(m % 2 == 0, 1.0, -1.0)
    train = _peak_train(g, a, centers, weights)
    return normalize(WaveGrid(g, np.exp(-np.pi * (a * g.x) ** 2) * train))


def comb_sample(c, params: SamplingParams, normalized: bool = True) -> WaveGrid:
    """Sample a comb regularised with Gaussian envelope exp(-pi a^2 x^2) and
    Gaussian peaks exp(-pi x^2 / a^2).

    With ``normalized=False`` the raw samples are returned, which is what
    linearity checks need.
    """
    if not isinstance(c, CanonicalComb):
        c = canonical_form(c)
    a, g = params.a, params.grid
    reach = _envelope_reach(params)
    r = float(c.period)
    centers, weights = [], []
    for s in c.series:
        off = float(s.offset)
        m = np.arange(math.floor(-reach / r - off) - 1, math.ceil(reach / r - off) + 2)
        x = r * (m + off)
        keep = np.abs(x) <= reach
        m, x = m[keep], x[keep]
        turns = np.array([float((-s.beta * int(k)) % 1) for k in m])
        centers.append(x)
        weights.append(s.amplitude * np.exp(2j * np.pi * turns))
    if centers:
        train = _peak_train(g, a, np.concatenate(centers), np.concatenate(weights))
    else:
        train = np.zeros(g.n, dtype=complex)
    state = WaveGrid(g, np.exp(-np.pi * (a * g.x) ** 2) * train)
    return normalize(state) if normalized else state


def separable_entropy(factors: Sequence[float]) -> float:
    """Phase-space entropy of a product state: the sum of the factors' entropies."""
    return float(sum(factors))
