"""
Validated complex-matrix and quantum-state primitives.

States are immutable once constructed: the underlying arrays are marked
read-only and every constructor validates its invariants.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from coherence_fraction_sdk.config import Config
from coherence_fraction_sdk.errors import (
    DimensionMismatch,
    InvalidPhase,
    NotHermitian,
    NotNormalized,
    NotPositive,
    OutOfRange,
    TraceNotOne,
)
from coherence_fraction_sdk.models import Subsystem

logger = logging.getLogger(__name__)

# Row-major d_rows x d_cols array of complex entries
ComplexMatrix = np.ndarray

TWO_PI = 2.0 * np.pi


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian, unit-trace, positive semidefinite d x d matrix."""

    matrix: ComplexMatrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        _validate_density(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
        }


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit-norm state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)
        deviation = abs(float(np.vdot(amplitudes, amplitudes).real) - 1.0)
        if deviation > Config.PURE_NORM_TOL:
            raise NotNormalized(deviation)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def to_dict(self) -> dict:
        return {"dim": self.dim, "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes]}


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Angles of a maximally coherent state, global phase fixed by angle[0] = 0."""

    angles: np.ndarray

    def __post_init__(self):
        angles = np.array(self.angles, dtype=float).reshape(-1)
        angles.setflags(write=False)
        object.__setattr__(self, "angles", angles)
        if angles.size == 0:
            raise InvalidPhase(0.0, "phase vector is empty")
        if angles[0] != 0.0:
            raise InvalidPhase(abs(angles[0]), "angle[0] must be 0")
        if np.any(angles < 0.0) or np.any(angles >= TWO_PI):
            worst = float(np.max(np.maximum(-angles, angles - TWO_PI)))
            raise InvalidPhase(worst, "angles must lie in [0, 2pi)")

    @classmethod
    def canonical(cls, angles: Sequence[float]) -> "PhaseVector":
        """Shift any angle vector so that angle[0] = 0 and reduce modulo 2pi."""
        angles = np.asarray(angles, dtype=float).reshape(-1)
        shifted = np.mod(angles - angles[0], TWO_PI)
        # np.mod can round a tiny negative up to exactly 2pi
        shifted[shifted >= TWO_PI] = 0.0
        shifted[0] = 0.0
        return cls(shifted)

    @classmethod
    def zeros(cls, dim: int) -> "PhaseVector":
        return cls(np.zeros(dim))

    @property
    def dim(self) -> int:
        return self.angles.shape[0]

    def to_dict(self) -> list:
        return [float(a) for a in self.angles]


def _validate_density(matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise DimensionMismatch(f"density matrix must be square and non-empty, got shape {matrix.shape}")
    tol = Config.STATE_TOL

    hermiticity = float(np.max(np.abs(matrix - matrix.conj().T)))
    if hermiticity > tol:
        raise NotHermitian(hermiticity)

    trace = np.trace(matrix)
    trace_error = max(abs(trace.real - 1.0), abs(trace.imag))
    if trace_error > tol:
        raise TraceNotOne(trace_error)

    smallest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
    if smallest < -tol:
        raise NotPositive(-smallest)


def make_density_matrix(entries: Union[ComplexMatrix, Sequence[Sequence[complex]]]) -> DensityMatrix:
    """
    Validate a square matrix as a density matrix.

    The trace is not renormalized: a matrix with trace off by more than the
    tolerance is rejected.

    Raises:
        DimensionMismatch: if the matrix is not square
        NotHermitian, TraceNotOne, NotPositive: naming the violated invariant
    """
    return DensityMatrix(np.asarray(entries, dtype=complex))


def pure_to_density(psi: PureState) -> DensityMatrix:
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))


def maximally_coherent_state(theta: PhaseVector) -> PureState:
    """Return (1/sqrt(d)) sum_j exp(i theta_j)|j>."""
    return PureState(np.exp(1j * theta.angles) / np.sqrt(theta.dim))


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product; basis |kl> maps to index k*d2 + l."""
    return DensityMatrix(np.kron(a.matrix, b.matrix))


def partial_trace(rho_ab: DensityMatrix, dims: Tuple[int, int], keep: Subsystem = Subsystem.FIRST) -> DensityMatrix:
    """
    Reduce a bipartite state to one of its factors.

    Args:
        rho_ab: state on C^d1 (x) C^d2
        dims: (d1, d2)
        keep: which factor survives

    Returns:
        The reduced density matrix
    """
    d1, d2 = dims
    if d1 < 1 or d2 < 1 or d1 * d2 != rho_ab.dim:
        raise DimensionMismatch(f"dims {dims} do not factor a {rho_ab.dim}-dimensional state")
    blocks = rho_ab.matrix.reshape(d1, d2, d1, d2)
    if keep == Subsystem.FIRST:
        return DensityMatrix(np.einsum("ijkj->ik", blocks))
    return DensityMatrix(np.einsum("ijil->jl", blocks))


def apply_unitary(rho: DensityMatrix, unitary: np.ndarray) -> DensityMatrix:
    if unitary.shape != rho.matrix.shape:
        raise DimensionMismatch(f"unitary shape {unitary.shape} does not match state dimension {rho.dim}")
    return DensityMatrix(unitary @ rho.matrix @ unitary.conj().T)


def purity(rho: DensityMatrix) -> float:
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))


def _check_random_dim(d: int) -> None:
    if d < 2:
        raise OutOfRange(f"random states need d >= 2, got {d}")


def random_pure_state(d: int, seed: int) -> PureState:
    """Haar-random pure state: a normalized complex standard-normal vector."""
    _check_random_dim(d)
    rng = np.random.default_rng(seed)
    vector = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(vector / np.linalg.norm(vector))


def random_density_matrix(d: int, seed: int) -> DensityMatrix:
    """Hilbert-Schmidt sample G G^dagger / tr(G G^dagger) for complex Gaussian G."""
    _check_random_dim(d)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real)


def random_incoherent_unitary(d: int, seed: int) -> np.ndarray:
    """Permutation times diagonal phases, the unitaries that map M onto itself."""
    rng = np.random.default_rng(seed)
    permutation = np.eye(d)[rng.permutation(d)]
    phases = np.exp(1j * rng.uniform(0.0, TWO_PI, size=d))
    return permutation @ np.diag(phases)
