"""Pauli algebra and Bloch-ball primitives for a single qubit.

A qubit density matrix is parametrized by a real 3-vector r in the closed
unit ball, rho(r) = (I + r . sigma) / 2. Evolution under a fixed-axis
Hamiltonian H = omega0 * (n . sigma), optionally shifted by +omega0 * I to
make the spectrum nonnegative, rotates r about n at angular speed
2 * omega0. hbar = 1 everywhere; omega0 carries units of inverse time.

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormViolation

__all__ = [
    "NORM_EPS",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PAULI",
    "ID2",
    "HamiltonianSpec",
    "SLDResult",
    "as_bloch",
    "bloch_to_density",
    "check_density",
    "density_to_bloch",
    "evolve_bloch",
    "evolve_density",
    "p_err",
    "p_err_bloch",
    "pure_state_bloch",
    "qfi",
    "sld",
    "unitary",
]

NORM_EPS = 1e-12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
ID2 = np.eye(2, dtype=complex)


def as_bloch(r) -> np.ndarray:
    """Validate r as a real 3-vector inside the closed unit ball."""
    vec = np.asarray(r, dtype=float)
    if vec.shape != (3,):
        raise ValueError(f"Bloch vector must have shape (3,), got {vec.shape}")
    norm = float(np.linalg.norm(vec))
    if norm > 1.0 + NORM_EPS:
        raise NormViolation(f"Bloch vector norm {norm:.17g} exceeds 1")
    return vec


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    """Fixed rotation axis (unit 3-vector), rate omega0 > 0, optional +I shift.

    The shift adds omega0 * I so the spectrum is {0, 2 * omega0}. It only
    contributes a global phase to the dynamics but is required by the
    mean-energy (Margolus-Levitin) bound.
    """

    axis: np.ndarray
    omega0: float = 1.0
    identity_shift: bool = False

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,):
            raise ValueError("axis must be a 3-vector")
        if abs(np.linalg.norm(axis) - 1.0) > NORM_EPS:
            raise ValueError("axis must be a unit vector; see from_axis()")
        if not self.omega0 > 0.0:
            raise ValueError("omega0 must be positive")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "omega0", float(self.omega0))

    @classmethod
    def from_axis(cls, axis, omega0: float = 1.0, identity_shift: bool = False):
        """Build a spec from a not-necessarily-normalized axis."""
        vec = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise ValueError("axis must be nonzero")
        return cls(vec / norm, omega0, identity_shift)

    def matrix(self) -> np.ndarray:
        """2x2 matrix omega0 * (n . sigma [+ I])."""
        h = self.omega0 * np.einsum("i,ijk->jk", self.axis, PAULI)
        if self.identity_shift:
            h = h + self.omega0 * ID2
        return h


def bloch_to_density(r) -> np.ndarray:
    """Density matrix (I + r . sigma) / 2."""
    vec = as_bloch(r)
    return 0.5 * (ID2 + np.einsum("i,ijk->jk", vec, PAULI))


def check_density(rho, tol: float = NORM_EPS) -> np.ndarray:
    """Validate a 2x2 density matrix (Hermitian, unit trace, PSD)."""
    mat = np.asarray(rho, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError("density matrix must be 2x2")
    if np.abs(mat - mat.conj().T).max() > tol:
        raise ValueError("density matrix must be Hermitian")
    tr = mat.trace()
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix must have unit trace, got {tr}")
    if float(np.linalg.eigvalsh(mat)[0]) < -tol:
        raise ValueError("density matrix must be positive semidefinite")
    return mat


def density_to_bloch(rho) -> np.ndarray:
    """Bloch vector (tr(rho sigma_x), tr(rho sigma_y), tr(rho sigma_z))."""
    mat = check_density(rho)
    return np.array(
        [
            2.0 * mat[0, 1].real,
            -2.0 * mat[0, 1].imag,
            (mat[0, 0] - mat[1, 1]).real,
        ]
    )


def pure_state_bloch(psi) -> np.ndarray:
    """Bloch vector of a normalized 2-component state vector."""
    vec = np.asarray(psi, dtype=complex)
    if vec.shape != (2,):
        raise ValueError("state vector must have 2 components")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError("state vector must be normalized")
    vec = vec / norm
    off = vec[0] * np.conj(vec[1])
    return np.array(
        [2.0 * off.real, -2.0 * off.imag, abs(vec[0]) ** 2 - abs(vec[1]) ** 2]
    )


def p_err(rho, sigma) -> float:
    """Helstrom minimum error probability 1/2 - ||rho - sigma||_1 / 4.

    The trace norm is evaluated from the eigenvalues of the Hermitian
    difference. Symmetric in its arguments; 1/2 iff the states coincide,
    0 iff they are orthogonal pure states.
    """
    a = check_density(rho)
    b = check_density(sigma)
    eigs = np.linalg.eigvalsh(a - b)
    return float(np.clip(0.5 - 0.25 * np.sum(np.abs(eigs)), 0.0, 0.5))


def p_err_bloch(r1, r2) -> float:
    """p_err via the qubit identity ||rho - sigma||_1 = |r1 - r2|."""
    d = float(np.linalg.norm(as_bloch(r1) - as_bloch(r2)))
    return float(np.clip(0.5 - 0.25 * d, 0.0, 0.5))


def unitary(ham: HamiltonianSpec, t: float) -> np.ndarray:
    """Closed-form propagator exp(-i H t)."""
    angle = ham.omega0 * t
    n_sigma = np.einsum("i,ijk->jk", ham.axis, PAULI)
    u = np.cos(angle) * ID2 - 1j * np.sin(angle) * n_sigma
    if ham.identity_shift:
        u = np.exp(-1j * angle) * u
    return u


def evolve_bloch(r, ham: HamiltonianSpec, t: float) -> np.ndarray:
    """Bloch vector after evolving for time t.

    The orbit is the right-handed rotation about the axis by 2*omega0*t:

        r(t) = cos(2wt) r - sin(2wt) (r x n) + 2 sin(wt)^2 (n . r) n

    Norm and the component perpendicular to the axis are conserved. The
    identity shift is a global phase and has no effect here.
    """
    vec = as_bloch(r)
    n = ham.axis
    phi = 2.0 * ham.omega0 * t
    return (
        np.cos(phi) * vec
        - np.sin(phi) * np.cross(vec, n)
        + (1.0 - np.cos(phi)) * np.dot(n, vec) * n
    )


def evolve_density(rho, ham: HamiltonianSpec, t: float) -> np.ndarray:
    """Conjugate rho by the propagator. Matrix-level cross-check path."""
    mat = check_density(rho)
    u = unitary(ham, t)
    return u @ mat @ u.conj().T


@dataclass(frozen=True, eq=False)
class SLDResult:
    """Direction vector of the symmetric logarithmic derivative, plus QFI.

    L = v . sigma solves (L rho + rho L) / 2 = -i [H, rho]; fisher equals
    tr(L^2 rho) = |v|^2, so the operator norm of L is sqrt(fisher).
    """

    v: np.ndarray
    fisher: float


def sld(r, ham: HamiltonianSpec) -> SLDResult:
    """SLD of the orbit through r: v = 2*omega0*(n x r), F = |v|^2.

    Both are constant along the orbit since the rotation preserves
    |n x r|. The zero vector is a legal result for states that commute
    with the Hamiltonian.
    """
    vec = as_bloch(r)
    v = 2.0 * ham.omega0 * np.cross(ham.axis, vec)
    return SLDResult(v=v, fisher=float(v @ v))


def qfi(r, ham: HamiltonianSpec) -> float:
    """Quantum Fisher information 4 * omega0^2 * |n x r|^2."""
    return sld(r, ham).fisher
