"""Closed-form 2x2 Pauli algebra: Hermitian coefficient vectors and SU(2) exponentials.

Conventions, fixed once for the whole package:

* ``sigma3 = diag(+1, -1)`` and ``|0>`` is the ``sigma3 = +1`` basis state.
* ``sigma_plus = |0><1| = (sigma1 + i sigma2) / 2``.

Every frame transformation and analytic formula elsewhere relies on this
choice, so it must not be changed in isolation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonHermitianInput, NotUnitary

__all__ = [
    "ID2",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "PauliCoeffs",
    "Unitary2",
    "compose",
    "decompose",
    "expm_pauli",
    "commutator",
    "as_matrix",
    "as_coeffs",
    "unitarity_defect",
]

ID2 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-12

# Below this value of |r*dt| the sinc-like factor sin(r*dt)/r switches to a
# second-order Taylor branch; the truncation error is then < 1e-33 relative.
_SMALL_ANGLE = 1e-8


@dataclass(frozen=True)
class PauliCoeffs:
    """A Hermitian 2x2 operator as real coefficients over (1, sigma1, sigma2, sigma3).

    All coefficients carry units of angular frequency (hbar = 1).
    """

    c0: float
    c1: float
    c2: float
    c3: float

    def __add__(self, other: "PauliCoeffs") -> "PauliCoeffs":
        return PauliCoeffs(
            self.c0 + other.c0,
            self.c1 + other.c1,
            self.c2 + other.c2,
            self.c3 + other.c3,
        )

    def __sub__(self, other: "PauliCoeffs") -> "PauliCoeffs":
        return PauliCoeffs(
            self.c0 - other.c0,
            self.c1 - other.c1,
            self.c2 - other.c2,
            self.c3 - other.c3,
        )

    def __mul__(self, scale: float) -> "PauliCoeffs":
        return PauliCoeffs(
            self.c0 * scale, self.c1 * scale, self.c2 * scale, self.c3 * scale
        )

    __rmul__ = __mul__

    def __neg__(self) -> "PauliCoeffs":
        return self * -1.0

    @property
    def vector_norm(self) -> float:
        """Euclidean norm of the (c1, c2, c3) part, i.e. half the level splitting."""
        return math.sqrt(self.c1**2 + self.c2**2 + self.c3**2)

    @classmethod
    def zero(cls) -> "PauliCoeffs":
        return cls(0.0, 0.0, 0.0, 0.0)


def compose(p: PauliCoeffs) -> np.ndarray:
    """Assemble the 2x2 complex matrix c0*1 + c1*sigma1 + c2*sigma2 + c3*sigma3."""
    return np.array(
        [
            [p.c0 + p.c3, p.c1 - 1j * p.c2],
            [p.c1 + 1j * p.c2, p.c0 - p.c3],
        ],
        dtype=complex,
    )


def decompose(m: np.ndarray) -> PauliCoeffs:
    """Project a Hermitian 2x2 matrix onto the Pauli basis.

    Raises
    ------
    NonHermitianInput
        If any entry of ``m - m^dagger`` exceeds 1e-10 in magnitude.
    """
    m = np.asarray(m, dtype=complex)
    defect = np.abs(m - m.conj().T).max()
    if defect > HERMITICITY_TOL:
        raise NonHermitianInput(
            f"matrix is not Hermitian: max |m - m^dagger| = {defect:.3e}"
        )
    return PauliCoeffs(
        0.5 * (m[0, 0] + m[1, 1]).real,
        0.5 * (m[0, 1] + m[1, 0]).real,
        0.5 * (m[1, 0] - m[0, 1]).imag,
        0.5 * (m[0, 0] - m[1, 1]).real,
    )


def unitarity_defect(m: np.ndarray) -> float:
    """Max of the entrywise deviation of U^dagger U from 1 and of ||det U| - 1|."""
    m = np.asarray(m, dtype=complex)
    gram = np.abs(m.conj().T @ m - ID2).max()
    det = abs(abs(np.linalg.det(m)) - 1.0)
    return max(gram, det)


@dataclass(frozen=True, eq=False)
class Unitary2:
    """A 2x2 unitary propagator; unitarity is checked at construction.

    The wrapped array is treated as immutable.  Deviations beyond 1e-12 in
    either U^dagger U or |det U| raise :class:`NotUnitary`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise NotUnitary(f"expected a 2x2 matrix, got shape {m.shape}")
        defect = unitarity_defect(m)
        if defect > UNITARITY_TOL:
            raise NotUnitary(f"unitarity defect {defect:.3e} exceeds {UNITARITY_TOL}")
        object.__setattr__(self, "matrix", m)

    def dagger(self) -> "Unitary2":
        return Unitary2(self.matrix.conj().T)

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return Unitary2(self.matrix @ other.matrix)

    @classmethod
    def identity(cls) -> "Unitary2":
        return cls(ID2)


def _expm_matrix(p: PauliCoeffs, dt: float) -> np.ndarray:
    """exp(-i * compose(p) * dt) as a raw ndarray, via the SU(2) closed form."""
    r = math.sqrt(p.c1**2 + p.c2**2 + p.c3**2)
    x = r * dt
    if abs(x) < _SMALL_ANGLE:
        f = dt * (1.0 - x * x / 6.0)
    else:
        f = math.sin(x) / r
    c = math.cos(x)
    phase = cmath.exp(-1j * p.c0 * dt)
    return np.array(
        [
            [phase * (c - 1j * f * p.c3), phase * (-1j * f * (p.c1 - 1j * p.c2))],
            [phase * (-1j * f * (p.c1 + 1j * p.c2)), phase * (c + 1j * f * p.c3)],
        ],
        dtype=complex,
    )


def expm_pauli(p: PauliCoeffs, dt: float) -> Unitary2:
    """Exact exponential exp(-i H dt) of the Hermitian H described by ``p``.

    Uses exp(-i c0 dt) [cos(r dt) 1 - i sin(r dt) (n . sigma)] with
    r = |(c1, c2, c3)|; the r -> 0 limit is handled by a Taylor branch.
    """
    if not math.isfinite(dt):
        raise ValueError("dt must be finite")
    return Unitary2(_expm_matrix(p, dt))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix commutator a b - b a."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return a @ b - b @ a


def as_matrix(value) -> np.ndarray:
    """Coerce a PauliCoeffs or array-like to a 2x2 complex ndarray."""
    if isinstance(value, PauliCoeffs):
        return compose(value)
    return np.asarray(value, dtype=complex)


def as_coeffs(value) -> PauliCoeffs:
    """Coerce a Hermitian matrix or PauliCoeffs to PauliCoeffs."""
    if isinstance(value, PauliCoeffs):
        return value
    return decompose(value)
