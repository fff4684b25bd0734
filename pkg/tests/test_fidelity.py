import math

import numpy as np
import pytest

from cgmagnus import (
    DriveParams,
    Frame,
    NotUnitary,
    PauliCoeffs,
    expm_pauli,
    fidelity_series,
    h_interaction,
    h_lab,
    min_fidelity,
    min_fidelity_bruteforce,
)
from cgmagnus.pauli import ID2

from conftest import random_unitary

DISPERSIVE = DriveParams(epsilon=4.0, omega=1.0, amplitude=0.5)


def test_identical_unitaries_give_one(rng):
    u = random_unitary(rng)
    assert min_fidelity(u, u) == pytest.approx(1.0, abs=1e-14)
    assert min_fidelity_bruteforce(u, u, 20) == pytest.approx(1.0, abs=1e-12)


def test_global_phase_invariance():
    assert min_fidelity(ID2, np.exp(0.7j) * ID2) == pytest.approx(1.0, abs=1e-15)


def test_orthogonal_phase_case_gives_zero():
    assert min_fidelity(ID2, np.diag([-1j, 1j])) == pytest.approx(0.0, abs=1e-15)


def test_fidelity_symmetry(rng):
    u, v = random_unitary(rng), random_unitary(rng)
    assert min_fidelity(u, v) == pytest.approx(min_fidelity(v, u), abs=1e-14)


def test_unitary_invariance(rng):
    u, v = random_unitary(rng), random_unitary(rng)
    base = min_fidelity(u, v)
    for _ in range(5):
        w = random_unitary(rng)
        assert abs(min_fidelity(w @ u, w @ v) - base) < 1e-12


def test_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        min_fidelity(np.diag([1.0, 2.0]), ID2)


def test_bruteforce_grid_validation():
    with pytest.raises(ValueError):
        min_fidelity_bruteforce(ID2, ID2, 8)


def test_bruteforce_agrees_with_closed_form(rng):
    worst = 0.0
    for _ in range(60):
        u, v = random_unitary(rng), random_unitary(rng)
        closed = min_fidelity(u, v)
        grid = min_fidelity_bruteforce(u, v, 100)
        # a subset minimum can only sit above the true minimum
        assert grid >= closed - 1e-9
        worst = max(worst, abs(grid - closed))
    assert worst < 1e-4


def test_bruteforce_minimizer_on_equator():
    # For a pure sigma3 phase the worst state is an equal superposition.
    v = expm_pauli(PauliCoeffs(0, 0, 0, 0.9), 1.0).matrix
    grid_n = 101
    theta = np.linspace(0, math.pi, grid_n)
    phi = np.linspace(0, 2 * math.pi, grid_n, endpoint=False)
    vals = np.empty((grid_n, grid_n))
    for i, th in enumerate(theta):
        psi0 = math.cos(th / 2)
        for j, ph in enumerate(phi):
            psi = np.array([psi0, np.exp(1j * ph) * math.sin(th / 2)])
            vals[i, j] = abs(psi.conj() @ (v @ psi)) ** 2
    i_min = np.unravel_index(vals.argmin(), vals.shape)[0]
    assert theta[i_min] == pytest.approx(math.pi / 2, abs=2 * math.pi / grid_n)
    assert vals.min() == pytest.approx(min_fidelity_bruteforce(ID2, v, grid_n), abs=1e-12)


def test_series_identical_hamiltonians():
    h = lambda t: h_interaction(t, DISPERSIVE)
    grid = np.linspace(0.0, 10.0, 20)
    out = fidelity_series(h, h, grid, dt=0.01)
    assert out[0].t == 0.0 and out[0].value == pytest.approx(1.0, abs=1e-14)
    assert all(s.value > 1.0 - 1e-10 for s in out)
    assert [s.t for s in out] == sorted(s.t for s in out)


def test_series_static_effective_side():
    heff = PauliCoeffs(0, 0, 0, -1.0 / 30.0)
    grid = np.linspace(0.0, 5.0, 6)
    out = fidelity_series(lambda t: h_interaction(t, DISPERSIVE), heff, grid, dt=0.05)
    assert all(0.0 <= s.value <= 1.0 + 1e-12 for s in out)


def test_series_validates_grid():
    h = lambda t: h_interaction(t, DISPERSIVE)
    with pytest.raises(ValueError):
        fidelity_series(h, h, [1.0, 0.5], dt=0.1)
    with pytest.raises(ValueError):
        fidelity_series(h, h, [-1.0, 0.5], dt=0.1)


def test_series_frame_alignment_two_route():
    # Lab-frame exact against interaction-picture exact, aligned via frames:
    # the same physics in two frames scores fidelity 1.
    p = DISPERSIVE
    grid = np.linspace(0.0, 3.0, 7)
    out = fidelity_series(
        lambda t: h_lab(t, p),
        lambda t: h_interaction(t, p),
        grid,
        dt=2e-4,
        frames=(Frame.LAB, Frame.INTERACTION),
        params=p,
    )
    assert all(s.value > 1.0 - 1e-8 for s in out)


def test_series_requires_params_with_frames():
    h = lambda t: h_interaction(t, DISPERSIVE)
    with pytest.raises(ValueError):
        fidelity_series(h, h, [0.0, 1.0], dt=0.1, frames=(Frame.LAB, Frame.LAB))
