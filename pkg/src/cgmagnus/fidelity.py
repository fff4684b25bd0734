"""Minimized state fidelity between exact and effective propagators.

The figure of merit is F = min over pure states of |<psi| U^dagger U_eff |psi>|^2.
For 2x2 unitaries this minimum is |Tr(U^dagger U_eff)|^2 / 4, i.e.
cos^2 of half the relative eigenphase gap, which the brute-force Bloch-grid
oracle below confirms.  It is unitarily invariant, so any consistent common
frame gives the same value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitary
from .model import DriveParams, Frame
from .pauli import ID2, Unitary2, unitarity_defect
from .propagation import (
    PropagationSpec,
    _reunitarize,
    frame_transform,
    propagate_coarse,
)

__all__ = [
    "FidelitySample",
    "min_fidelity",
    "min_fidelity_bruteforce",
    "fidelity_series",
]


@dataclass(frozen=True)
class FidelitySample:
    """Minimized fidelity at one time; the value must lie in [0, 1 + 1e-12]."""

    t: float
    value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0 + 1e-12:
            raise ValueError(f"fidelity {self.value} outside [0, 1 + 1e-12]")


def _unitary_matrix(u) -> np.ndarray:
    m = u.matrix if isinstance(u, Unitary2) else np.asarray(u, dtype=complex)
    defect = unitarity_defect(m)
    if defect > 1e-12:
        raise NotUnitary(f"fidelity input has unitarity defect {defect:.3e}")
    return m


def min_fidelity(u, u_eff) -> float:
    """Worst-case pure-state overlap |Tr(U^dagger U_eff)|^2 / 4.

    Both arguments must be unitary (Unitary2 or plain 2x2 arrays) and expressed
    in the same frame.
    """
    a = _unitary_matrix(u)
    b = _unitary_matrix(u_eff)
    v = a.conj().T @ b
    return abs(v[0, 0] + v[1, 1]) ** 2 / 4.0


def min_fidelity_bruteforce(u, u_eff, grid_n: int = 100) -> float:
    """Direct minimization of |<psi|V|psi>|^2 over a Bloch-sphere grid.

    States |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> on a
    grid_n x grid_n (theta, phi) grid.  A grid minimum can only overestimate
    the true minimum, so this is a one-sided oracle for :func:`min_fidelity`.
    """
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n}")
    a = _unitary_matrix(u)
    b = _unitary_matrix(u_eff)
    v = a.conj().T @ b
    theta = np.linspace(0.0, math.pi, grid_n)
    phi = np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False)
    ct = np.cos(0.5 * theta)[:, None] * np.ones_like(phi)[None, :]
    st = np.sin(0.5 * theta)[:, None] * np.exp(1j * phi)[None, :]
    # <psi|V|psi> evaluated for the whole grid at once.
    amp = (
        np.conj(ct) * (v[0, 0] * ct + v[0, 1] * st)
        + np.conj(st) * (v[1, 0] * ct + v[1, 1] * st)
    )
    return float(np.abs(amp).min() ** 2)


def _advance(h, t0: float, t1: float, dt: float) -> np.ndarray:
    steps = max(1, math.ceil((t1 - t0) / dt))
    return propagate_coarse(h, PropagationSpec(t0, t1, steps)).matrix


def fidelity_series(
    h_exact,
    h_eff,
    t_grid,
    dt: float,
    frames: tuple[Frame, Frame] | None = None,
    params: DriveParams | None = None,
) -> list[FidelitySample]:
    """Minimized fidelity of two evolutions from t = 0 along a monotone time grid.

    Both generators are propagated incrementally with maximum step size
    ``dt``; a static ``h_eff`` (PauliCoeffs) is advanced by exact
    exponentials.  By default both Hamiltonians are taken in the same frame;
    pass ``frames=(frame_exact, frame_eff)`` with ``params`` to align the two
    propagators in the lab frame first (any common frame is equivalent by
    unitary invariance).
    """
    ts = np.asarray(t_grid, dtype=float)
    if ts.size and ts[0] < 0:
        raise ValueError("t_grid must be non-negative")
    if np.any(np.diff(ts) < 0):
        raise ValueError("t_grid must be monotone non-decreasing")
    if frames is not None and params is None:
        raise ValueError("params are required when frames are given")

    u_ex = ID2.copy()
    u_ef = ID2.copy()
    t_prev = 0.0
    samples = []
    for t in ts:
        if t > t_prev:
            u_ex = _reunitarize(_advance(h_exact, t_prev, t, dt) @ u_ex)
            u_ef = _reunitarize(_advance(h_eff, t_prev, t, dt) @ u_ef)
            t_prev = t
        a, b = u_ex, u_ef
        if frames is not None:
            a = frame_transform(Unitary2(a), frames[0], Frame.LAB, t, params).matrix
            b = frame_transform(Unitary2(b), frames[1], Frame.LAB, t, params).matrix
        samples.append(FidelitySample(t=float(t), value=min_fidelity(a, b)))
    return samples
