"""
Named example states and seeded generators for structured state classes.
"""

import numpy as np

from coherence_fraction_sdk.errors import OutOfRange
from coherence_fraction_sdk.qcore import DensityMatrix, PureState, pure_to_density

PLUS = np.array([1.0, 1.0]) / np.sqrt(2.0)
PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)

# Qutrit pair whose equal mixture violates the phase alignment condition
QUTRIT_PSI = np.array([
    (1 + 1j) / np.sqrt(6.0),
    (np.sqrt(2.0) + 1j * np.sqrt(5.0)) / (2.0 * np.sqrt(3.0)),
    1.0 / (2.0 * np.sqrt(3.0)),
])
QUTRIT_PHI = np.array([
    1j / np.sqrt(2.0),
    np.sqrt(3.0) / (2.0 * np.sqrt(2.0)),
    1.0 / (2.0 * np.sqrt(2.0)),
])


def _check_weight(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"mixing weight must lie in [0, 1], got {p}")


def plus_state() -> DensityMatrix:
    return pure_to_density(PureState(PLUS))


def phi_plus() -> DensityMatrix:
    return pure_to_density(PureState(PHI_PLUS))


def qutrit_mixture(p: float = 0.5) -> DensityMatrix:
    """(1 - p)|psi><psi| + p|phi><phi| for the qutrit pair above."""
    _check_weight(p)
    psi = np.outer(QUTRIT_PSI, QUTRIT_PSI.conj())
    phi = np.outer(QUTRIT_PHI, QUTRIT_PHI.conj())
    return DensityMatrix((1.0 - p) * psi + p * phi)


def two_qubit_family(p: float) -> DensityMatrix:
    """p|++><++| + (1 - p)|Phi+><Phi+|: separable and maximally coherent at p = 1."""
    _check_weight(p)
    plus_plus = np.kron(PLUS, PLUS)
    return DensityMatrix(p * np.outer(plus_plus, plus_plus) + (1.0 - p) * np.outer(PHI_PLUS, PHI_PLUS))


def random_nonnegative_state(d: int, seed: int) -> DensityMatrix:
    """G G^T / tr with entrywise non-negative G, so every entry of the state is >= 0."""
    rng = np.random.default_rng(seed)
    g = rng.uniform(0.0, 1.0, size=(d, d))
    rho = g @ g.T
    return DensityMatrix(rho / np.trace(rho))


def random_x_state(d: int, seed: int) -> DensityMatrix:
    """
    Random state with support only on the diagonal and the anti-diagonal.

    Each (j, d-1-j) pair forms a 2x2 block whose off-diagonal modulus is kept
    below sqrt(p_j p_{d-1-j}), which keeps the state positive.
    """
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(d))
    rho = np.diag(weights).astype(complex)
    for j in range(d // 2):
        k = d - 1 - j
        modulus = rng.uniform(0.0, 1.0) * np.sqrt(weights[j] * weights[k])
        entry = modulus * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        rho[j, k] = entry
        rho[k, j] = np.conj(entry)
    return DensityMatrix(rho)
