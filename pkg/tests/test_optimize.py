import numpy as np
import pytest

from phaseloc.errors import EmptyStart, NotNormalized
from phaseloc.gridwave import GridSpec, WaveGrid, inner, norm, normalize, project
from phaseloc.optimize import (
    MinimizeOptions,
    entropy_functional,
    entropy_gradient,
    minimize_entropy,
    random_state,
    tangent_gradient,
)
from phaseloc.states import gaussian, hermite_state
from phaseloc.subspace import SubspaceSpec

from conftest import S_GAUSS, S_MINUS1, S_OSC1, S_OSC2, S_OSC3, S_PSI0

ANTI = SubspaceSpec.antisymmetric()


@pytest.fixture(scope="module")
def grid2048():
    return GridSpec(2048)


@pytest.fixture(scope="module")
def runs(grid2048):
    g = grid2048
    return {
        "anti": minimize_entropy(hermite_state(1, g), ANTI),
        "-1": minimize_entropy(hermite_state(2, g), SubspaceSpec.eigen(-1)),
        "+i": minimize_entropy(hermite_state(3, g), SubspaceSpec.eigen(1j)),
        "-i": minimize_entropy(hermite_state(1, g), SubspaceSpec.eigen(-1j)),
        "+1": minimize_entropy(gaussian(1.0, g), SubspaceSpec.eigen(1)),
    }


def test_gradient_matches_finite_differences():
    g = GridSpec(256)
    psi = random_state(g, SubspaceSpec.unconstrained(), 42)
    grad = entropy_gradient(psi)
    rng = np.random.default_rng(7)
    h = 1e-6
    worst = 0.0
    for _ in range(20):
        d = normalize(WaveGrid(g, rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n)))
        fd = (entropy_functional((psi + d * h).values, g.dx)
              - entropy_functional((psi - d * h).values, g.dx)) / (2 * h)
        predicted = 2 * inner(grad, d).real
        worst = max(worst, abs(fd - predicted) / abs(predicted))
    assert worst <= 1e-5


def test_gaussian_is_stationary(grid2048):
    assert norm(tangent_gradient(gaussian(1.0, grid2048), SubspaceSpec.unconstrained())) <= 1e-6


def test_gradient_phase_equivariant():
    g = GridSpec(256)
    psi = random_state(g, SubspaceSpec.unconstrained(), 3)
    z = np.exp(0.7j)
    a = entropy_gradient(psi * z).values
    b = entropy_gradient(psi).values * z
    assert np.max(np.abs(a - b)) < 1e-10


def test_gradient_requires_normalized():
    g = GridSpec(64)
    with pytest.raises(NotNormalized):
        entropy_gradient(random_state(g, SubspaceSpec.unconstrained(), 0) * 2.0)


def test_antisymmetric_run(runs, grid2048):
    r = runs["anti"]
    assert r.s_total <= 0.75
    assert S_PSI0 - 1e-6 < r.s_total < S_OSC1


def test_eigen_minus_one_run(runs):
    r = runs["-1"]
    assert r.s_total < S_OSC2
    assert abs(r.s_total - S_MINUS1) < 0.15


def test_eigen_plus_i_run(runs):
    assert runs["+i"].s_total < S_OSC3


def test_plus_one_start_at_minimizer(runs):
    r = runs["+1"]
    assert r.iterations <= 1
    assert abs(r.s_total - S_GAUSS) < 1e-3


def test_report_invariants(runs):
    for name, r in runs.items():
        traj = r.trajectory
        assert all(b <= a for a, b in zip(traj, traj[1:]))
        assert abs(r.s_total - (r.s_x + r.s_k)) <= 1e-12
        assert r.s_total >= S_GAUSS - 1e-6
        sub = SubspaceSpec.parse(r.subspace)
        assert norm(project(r.final_state, sub) - r.final_state) <= 1e-9
        assert abs(norm(r.final_state) - 1) < 1e-12


def test_subspace_ordering(runs):
    assert runs["+1"].s_total <= runs["-1"].s_total
    assert runs["-i"].s_total <= runs["+i"].s_total


def test_deterministic():
    g = GridSpec(256)
    opts = MinimizeOptions(max_iters=50)
    a = minimize_entropy(random_state(g, ANTI, 11), ANTI, opts)
    b = minimize_entropy(random_state(g, ANTI, 11), ANTI, opts)
    assert a.trajectory == b.trajectory
    assert np.array_equal(a.final_state.values, b.final_state.values)


def test_empty_start(grid2048):
    with pytest.raises(EmptyStart):
        minimize_entropy(gaussian(1.0, grid2048), ANTI)


def test_options_validation():
    with pytest.raises(ValueError):
        MinimizeOptions(shrink=1.0)
    with pytest.raises(ValueError):
        MinimizeOptions(max_iters=0)
    with pytest.raises(ValueError):
        MinimizeOptions(armijo_c=0)


def test_random_state_in_subspace():
    g = GridSpec(128)
    for sub in (ANTI, SubspaceSpec.eigen(1j), SubspaceSpec.eigen(-1)):
        s = random_state(g, sub, 5)
        assert abs(norm(s) - 1) < 1e-12
        assert norm(project(s, sub) - s) < 1e-12
