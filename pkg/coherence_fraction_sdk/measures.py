"""
Scalar coherence quantifiers in the fixed computational basis.
"""

import logging
from collections import deque
from typing import Optional

import numpy as np
from scipy.stats import entropy

from coherence_fraction_sdk.config import Config
from coherence_fraction_sdk.errors import DimensionMismatch
from coherence_fraction_sdk.models import AlignmentReport
from coherence_fraction_sdk.qcore import DensityMatrix, PhaseVector, PureState

logger = logging.getLogger(__name__)


def _require_qubit(rho: DensityMatrix, what: str) -> None:
    if rho.dim != 2:
        raise DimensionMismatch(f"{what} has a closed form only for qubits, got d={rho.dim}")


def l1_coherence(rho: DensityMatrix) -> float:
    """Sum of the moduli of all off-diagonal entries."""
    magnitudes = np.abs(rho.matrix)
    return float(magnitudes.sum() - np.trace(magnitudes))


def dephase(rho: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.diag(np.diag(rho.matrix)))


def shannon_entropy(probabilities: np.ndarray) -> float:
    """Base-2 Shannon entropy; entries below the eigenvalue cutoff count as 0."""
    probabilities = np.real(np.asarray(probabilities))
    probabilities = np.where(probabilities > Config.EIGENVALUE_CUTOFF, probabilities, 0.0)
    if probabilities.sum() == 0.0:
        return 0.0
    return float(entropy(probabilities, base=2))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return shannon_entropy(np.linalg.eigvalsh(rho.matrix))


def binary_entropy(x: float) -> float:
    return shannon_entropy(np.array([x, 1.0 - x]))


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    """S(dephased rho) - S(rho), tiny negative round-off clamped to 0."""
    value = shannon_entropy(np.diag(rho.matrix)) - von_neumann_entropy(rho)
    if value < 0.0:
        if value < -Config.NEGATIVE_CLAMP:
            logger.warning(f"relative entropy of coherence came out negative: {value:.3e}")
        return 0.0
    return value


def intrinsic_randomness_pure(psi: PureState) -> float:
    """Entropy of the computational-basis measurement outcomes of a pure state."""
    return shannon_entropy(np.abs(psi.amplitudes) ** 2)


def qubit_intrinsic_randomness(rho: DensityMatrix) -> float:
    """H((1 + sqrt(1 - C^2)) / 2) with C the l1 coherence."""
    _require_qubit(rho, "intrinsic randomness")
    c = l1_coherence(rho)
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def qubit_robustness(rho: DensityMatrix) -> float:
    """Robustness of coherence, equal to the l1 coherence on qubits."""
    _require_qubit(rho, "robustness of coherence")
    return l1_coherence(rho)


def is_x_state(rho: DensityMatrix, tol: float = Config.ZERO_ENTRY_TOL) -> bool:
    d = rho.dim
    support = np.eye(d, dtype=bool) | np.fliplr(np.eye(d, dtype=bool))
    return bool(np.all(np.abs(rho.matrix[~support]) <= tol))


def _wrap(angle: float) -> float:
    """Representative of an angle in (-pi, pi]."""
    wrapped = float(np.mod(angle, 2.0 * np.pi))
    return wrapped - 2.0 * np.pi if wrapped > np.pi else wrapped


def check_phase_alignment(rho: DensityMatrix, tol: float = Config.ALIGNMENT_TOL) -> AlignmentReport:
    """
    Decide whether phases theta exist with exp(i(theta_j - theta_k)) = rho_jk / |rho_jk|
    for every nonzero off-diagonal entry.

    Indices form a graph with an edge at each nonzero off-diagonal entry.
    Phases are propagated breadth-first from the root of each connected
    component (theta_root = 0, theta_k = theta_j - arg rho_jk); the state is
    aligned iff every remaining edge agrees within tol modulo 2pi.

    Args:
        rho: state to test
        tol: angular tolerance

    Returns:
        AlignmentReport with a witness PhaseVector when aligned
    """
    matrix = rho.matrix
    d = rho.dim
    nonzero = np.abs(matrix) > Config.ZERO_ENTRY_TOL
    np.fill_diagonal(nonzero, False)
    arguments = np.angle(matrix)

    theta: list = [None] * d
    for root in range(d):
        if theta[root] is not None:
            continue
        theta[root] = 0.0
        queue = deque([root])
        while queue:
            j = queue.popleft()
            for k in np.flatnonzero(nonzero[j]):
                if theta[k] is None:
                    theta[k] = theta[j] - arguments[j, k]
                    queue.append(k)

    worst = 0.0
    for j, k in zip(*np.nonzero(np.triu(nonzero))):
        mismatch = abs(_wrap(theta[j] - theta[k] - arguments[j, k]))
        worst = max(worst, mismatch)

    aligned = worst <= tol
    witness: Optional[PhaseVector] = PhaseVector.canonical(theta) if aligned else None
    logger.debug(f"phase alignment for d={d}: aligned={aligned}, worst violation {worst:.3e}")
    return AlignmentReport(aligned=aligned, witness=witness, worst_violation=worst)
