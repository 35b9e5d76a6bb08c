"""Wave functions sampled on a symmetric uniform grid.

The grid has ``n`` points with spacing ``dx = 1/sqrt(n)`` at positions
``x_j = (j - n/2) dx``.  With this spacing the momentum grid (in units where
``2*pi*hbar = 1``) has the same spacing and the same points, and the centered
DFT

    F[j, l] = n**-0.5 * exp(-2j*pi*(j - n/2)*(l - n/2)/n)

is unitary with ``F**2 = parity`` and ``F**4 = 1``.  It approximates
``psi~(k) = int dx exp(-2j*pi*k*x) psi(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidExponent, NotNormalized
from .subspace import SubspaceSpec

__all__ = [
    "GridSpec",
    "WaveGrid",
    "fourier",
    "inverse_fourier",
    "parity",
    "project",
    "entropy_x",
    "entropy_k",
    "entropy_phase",
    "p_norm",
    "inner",
    "norm",
    "normalize",
    "density_entropy",
]

# Densities below this fraction of the peak density are treated as exact zeros.
DENSITY_FLOOR = 1e-60
NORM_TOL = 1e-6


@dataclass(frozen=True)
class GridSpec:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8 or self.n % 2:
            raise ValueError(f"grid size must be an even integer >= 8, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def dx(self) -> float:
        return 1.0 / np.sqrt(self.n)

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.dx

    @property
    def half_extent(self) -> float:
        return 0.5 * self.n * self.dx


@dataclass(frozen=True, eq=False)
class WaveGrid:
    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != (self.spec.n,):
            raise ValueError(f"expected {self.spec.n} samples, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, spec: GridSpec, f) -> WaveGrid:
        return cls(spec, f(spec.x))

    @property
    def x(self) -> np.ndarray:
        return self.spec.x

    @property
    def dx(self) -> float:
        return self.spec.dx

    def with_values(self, values) -> WaveGrid:
        return WaveGrid(self.spec, values)

    def __add__(self, other: WaveGrid) -> WaveGrid:
        _check_same(self, other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: WaveGrid) -> WaveGrid:
        _check_same(self, other)
        return self.with_values(self.values - other.values)

    def __mul__(self, c) -> WaveGrid:
        return self.with_values(self.values * c)

    __rmul__ = __mul__

    def __neg__(self) -> WaveGrid:
        return self.with_values(-self.values)


def _check_same(a: WaveGrid, b: WaveGrid):
    if a.spec != b.spec:
        raise ValueError("states live on different grids")


def _chirp(n: int) -> np.ndarray:
    # (-1)**j without complex exponentials
    c = np.ones(n)
    c[1::2] = -1.0
    return c


def _centered_dft(v: np.ndarray, inverse: bool = False) -> np.ndarray:
    n = v.shape[-1]
    c = _chirp(n)
    # global phase exp(-+i*pi*n/2) from the (n/2)**2 cross term, real for even n
    g = -1.0 if (n // 2) % 2 else 1.0
    if inverse:
        out = np.fft.ifft(v * c, norm="ortho")
    else:
        out = np.fft.fft(v * c, norm="ortho")
    return g * c * out


def fourier(state: WaveGrid) -> WaveGrid:
    """Unitary centered DFT, the grid counterpart of the continuous transform."""
    return state.with_values(_centered_dft(state.values))


def inverse_fourier(state: WaveGrid) -> WaveGrid:
    return state.with_values(_centered_dft(state.values, inverse=True))


def parity(state: WaveGrid) -> WaveGrid:
    """Reflect x -> -x via j -> (n - j) mod n; sample 0 is a fixed point."""
    v = state.values
    return state.with_values(np.roll(v[::-1], 1))


def _fourier_power(v: np.ndarray, m: int) -> np.ndarray:
    m %= 4
    if m == 0:
        return v
    if m == 2:
        return np.roll(v[::-1], 1)
    if m == 1:
        return _centered_dft(v)
    return _centered_dft(v, inverse=True)


def project(state: WaveGrid, sub: SubspaceSpec) -> WaveGrid:
    """Orthogonal projection onto a symmetry subspace."""
    if sub.kind == "unconstrained":
        return state
    v = state.values
    if sub.kind == "antisymmetric":
        return state.with_values(0.5 * (v - np.roll(v[::-1], 1)))
    lam = sub.lam
    out = np.zeros_like(v)
    for m in range(4):
        out = out + lam ** (-m) * _fourier_power(v, m)
    return state.with_values(0.25 * out)


def inner(a: WaveGrid, b: WaveGrid) -> complex:
    _check_same(a, b)
    return complex(np.vdot(a.values, b.values) * a.dx)


def norm(state: WaveGrid) -> float:
    return float(np.sqrt(np.sum(np.abs(state.values) ** 2) * state.dx))


def normalize(state: WaveGrid) -> WaveGrid:
    nrm = norm(state)
    if nrm == 0.0:
        raise NotNormalized("cannot normalize the zero state")
    return state * (1.0 / nrm)


def density_entropy(rho: np.ndarray, dx: float) -> float:
    """-sum(rho log rho) dx with the 0 log 0 = 0 floor; no normalization check."""
    rho = np.asarray(rho, dtype=float)
    peak = rho.max() if rho.size else 0.0
    if peak <= 0.0:
        return 0.0
    mask = rho > DENSITY_FLOOR * peak
    r = rho[mask]
    return float(-np.sum(r * np.log(r)) * dx)


def _require_normalized(state: WaveGrid):
    nrm2 = norm(state) ** 2
    if abs(nrm2 - 1.0) > NORM_TOL:
        raise NotNormalized(f"state has squared norm {nrm2:.9g}, expected 1")


def entropy_x(state: WaveGrid) -> float:
    """Position-space information entropy -int |psi|^2 log |psi|^2 dx."""
    _require_normalized(state)
    return density_entropy(np.abs(state.values) ** 2, state.dx)


def entropy_k(state: WaveGrid) -> float:
    return entropy_x(fourier(state))


def entropy_phase(state: WaveGrid) -> float:
    return entropy_x(state) + entropy_k(state)


def p_norm(state: WaveGrid, p: float) -> float:
    if not p >= 1:
        raise InvalidExponent(f"p must be >= 1, got {p!r}")
    return float((np.sum(np.abs(state.values) ** p) * state.dx) ** (1.0 / p))
