"""Projected-gradient minimisation of the phase-space entropy on a grid."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyStart, NotNormalized
from .gridwave import (
    DENSITY_FLOOR,
    NORM_TOL,
    WaveGrid,
    _centered_dft,
    density_entropy,
    entropy_x,
    fourier,
    inner,
    norm,
    project,
)
from .subspace import SubspaceSpec

log = logging.getLogger(__name__)

__all__ = [
    "MinimizeOptions",
    "MinimizeReport",
    "entropy_functional",
    "entropy_gradient",
    "tangent_gradient",
    "minimize_entropy",
    "random_state",
]

STEP_FLOOR = 1e-12


@dataclass(frozen=True)
class MinimizeOptions:
    max_iters: int = 5000
    step_init: float = 0.1
    armijo_c: float = 1e-4
    shrink: float = 0.5
    tol_rel: float = 1e-10
    seed: int = 0
    # accepted steps let the next trial step grow by this factor, capped at step_max
    grow: float = 2.0
    step_max: float = 10.0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if not (self.step_init > 0 and self.tol_rel > 0 and self.step_max >= self.step_init):
            raise ValueError("step sizes and tolerance must be positive")
        if not 0 < self.armijo_c < 1 or not 0 < self.shrink < 1:
            raise ValueError("armijo_c and shrink must lie in (0, 1)")
        if self.grow < 1:
            raise ValueError("grow must be >= 1")


@dataclass(frozen=True, eq=False)
class MinimizeReport:
    final_state: WaveGrid
    s_x: float
    s_k: float
    s_total: float
    iterations: int
    converged: bool
    trajectory: tuple[float, ...] = field(repr=False)
    subspace: str = "unconstrained"

    def as_dict(self) -> dict:
        return {
            "s_x": self.s_x,
            "s_k": self.s_k,
            "s_total": self.s_total,
            "iterations": self.iterations,
            "converged": self.converged,
            "subspace": self.subspace,
            "trajectory": list(self.trajectory),
        }


def entropy_functional(values: np.ndarray, dx: float) -> float:
    """S_x + S_k of raw samples, without the normalisation check.

    Used for finite differences, where perturbed states are slightly off the
    unit sphere.
    """
    rho = np.abs(values) ** 2
    rho_k = np.abs(_centered_dft(values)) ** 2
    return density_entropy(rho, dx) + density_entropy(rho_k, dx)


def _log_weight(v: np.ndarray) -> np.ndarray:
    """v * (1 + log|v|^2), zero where the density is below the floor."""
    rho = np.abs(v) ** 2
    peak = rho.max()
    out = np.zeros_like(v)
    if peak <= 0:
        return out
    m = rho > DENSITY_FLOOR * peak
    out[m] = v[m] * (1.0 + np.log(rho[m]))
    return out


def entropy_gradient(state: WaveGrid) -> WaveGrid:
    """Gradient of S with respect to the conjugate amplitudes.

    g = -psi (1 + log|psi|^2) - F^dagger[psi~ (1 + log|psi~|^2)]

    so that the first-order change along a direction delta is
    2 Re <g, delta>, with <a, b> = sum conj(a) b dx.
    """
    if abs(norm(state) ** 2 - 1.0) > NORM_TOL:
        raise NotNormalized("entropy gradient needs a normalized state")
    v = state.values
    vk = _centered_dft(v)
    g = -_log_weight(v) - _centered_dft(_log_weight(vk), inverse=True)
    return state.with_values(g)


def tangent_gradient(state: WaveGrid, sub: SubspaceSpec) -> WaveGrid:
    """Gradient projected into the subspace and onto the unit sphere's tangent space."""
    pg = project(entropy_gradient(state), sub)
    radial = inner(state, pg).real
    return pg - state * radial


def random_state(grid, sub: SubspaceSpec, seed: int) -> WaveGrid:
    """Seeded complex Gaussian noise, projected and normalised."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
    s = project(WaveGrid(grid, v), sub)
    return s * (1.0 / norm(s))


def _phase_entropy(state: WaveGrid) -> tuple[float, float]:
    sx = entropy_x(state)
    sk = entropy_x(fourier(state))
    return sx, sk


def _retract(v: WaveGrid, sub: SubspaceSpec) -> WaveGrid:
    v = project(v, sub)
    return v * (1.0 / norm(v))


def minimize_entropy(
    start: WaveGrid, sub: SubspaceSpec = SubspaceSpec(), opts: MinimizeOptions = MinimizeOptions()
) -> MinimizeReport:
    """Minimise S over normalised states in ``sub``.

    Each iteration tries psi <- normalize(project(psi - eta d)) with d the
    tangent gradient and backtracks on eta until the Armijo condition
    S_new <= S - armijo_c * eta * ||d||^2 holds.  Stops when an accepted step
    lowers S by less than tol_rel (relative), when eta falls below 1e-12
    without a decrease, or after max_iters.
    """
    psi = project(start, sub)
    nrm = norm(psi)
    if nrm < 1e-12:
        raise EmptyStart(f"start has no component in {sub.label()}")
    psi = psi * (1.0 / nrm)
    sx, sk = _phase_entropy(psi)
    s = sx + sk
    trajectory = [s]
    eta = opts.step_init
    converged = False
    it = 0
    for it in range(1, opts.max_iters + 1):
        d = tangent_gradient(psi, sub)
        dn2 = norm(d) ** 2
        if dn2 < 1e-28:
            converged = True
            break
        accepted = False
        while eta >= STEP_FLOOR:
            cand = _retract(psi - d * eta, sub)
            cx, ck = _phase_entropy(cand)
            if cx + ck <= s - opts.armijo_c * eta * dn2:
                accepted = True
                break
            eta *= opts.shrink
        if not accepted:
            converged = True
            break
        rel = (s - (cx + ck)) / max(abs(s), 1e-300)
        psi, sx, sk, s = cand, cx, ck, cx + ck
        trajectory.append(s)
        if rel < opts.tol_rel:
            converged = True
            break
        eta = min(eta * opts.grow, opts.step_max)
    log.debug("minimize %s: %d iterations, S=%.12g", sub.label(), it, s)
    return MinimizeReport(psi, sx, sk, sx + sk, len(trajectory) - 1, converged,
                          tuple(trajectory), sub.label())
