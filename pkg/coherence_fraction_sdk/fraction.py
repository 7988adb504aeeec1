"""
Coherence fraction of states.

The coherence fraction is the largest overlap <phi|rho|phi> of a state with
a maximally coherent state (1/sqrt(d)) sum_j exp(i theta_j)|j>. For qubits it
has the exact value 1/2 + |rho_01|; for larger d it is found by multi-start
coordinate ascent over the phases, each coordinate update being the exact
maximizer with all other angles held fixed.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from coherence_fraction_sdk.config import Config, OptimizerConfig
from coherence_fraction_sdk.errors import DimensionMismatch, DimensionTooLarge, NotApplicable, OutOfRange
from coherence_fraction_sdk.measures import binary_entropy, check_phase_alignment, l1_coherence
from coherence_fraction_sdk.models import FractionResult, LocalGlobalReport, Subsystem
from coherence_fraction_sdk.qcore import TWO_PI, DensityMatrix, PhaseVector, partial_trace

logger = logging.getLogger(__name__)


def phase_objective(rho: DensityMatrix, theta: PhaseVector) -> float:
    """f(theta) = (1/d) sum_jk exp(-i(theta_j - theta_k)) rho_jk."""
    return _objective(rho.matrix, np.exp(1j * theta.angles))


def _objective(matrix: np.ndarray, phases: np.ndarray) -> float:
    return float(np.real(np.vdot(phases, matrix @ phases))) / matrix.shape[0]


def ascend_phases(
    matrix: np.ndarray,
    angles: np.ndarray,
    cfg: OptimizerConfig,
    trace: Optional[List[float]] = None,
) -> Tuple[np.ndarray, float, int, bool]:
    """
    Coordinate ascent from a starting angle vector.

    Holding every angle but theta_j fixed, the objective is
    const + 2 Re(exp(-i theta_j) c_j) / d with c_j = sum_{k != j} rho_jk exp(i theta_k),
    maximized by theta_j = arg(c_j). Sweeps repeat until a sweep improves the
    objective by less than cfg.tol.

    Returns:
        (angles, value, sweeps used, converged)
    """
    d = matrix.shape[0]
    phases = np.exp(1j * np.asarray(angles, dtype=float))
    value = _objective(matrix, phases)
    if trace is not None:
        trace.append(value)

    for sweep in range(1, cfg.max_iters + 1):
        previous = value
        for j in range(d):
            c_j = matrix[j] @ phases - matrix[j, j] * phases[j]
            modulus = abs(c_j)
            if modulus > 0.0:
                phases[j] = c_j / modulus
            if trace is not None:
                trace.append(_objective(matrix, phases))
        value = _objective(matrix, phases)
        if value - previous < cfg.tol:
            return np.angle(phases), value, sweep, True
    return np.angle(phases), value, cfg.max_iters, False


def _starting_angles(d: int, restart: int, seed: int) -> np.ndarray:
    if restart == 0:
        return np.zeros(d)
    rng = np.random.default_rng(seed + restart)
    angles = rng.uniform(0.0, TWO_PI, size=d)
    angles[0] = 0.0
    return angles


def _qubit_fraction(rho: DensityMatrix) -> FractionResult:
    off_diagonal = rho.matrix[0, 1]
    argmax = PhaseVector.canonical([0.0, -np.angle(off_diagonal) if abs(off_diagonal) > 0.0 else 0.0])
    value = 0.5 + float(abs(off_diagonal))
    return FractionResult(value=value, argmax_phases=argmax, iterations_used=0, converged=True)


def coherence_fraction(
    rho: DensityMatrix,
    cfg: Optional[OptimizerConfig] = None,
    initial_phases: Optional[PhaseVector] = None,
) -> FractionResult:
    """
    Maximal overlap of rho with the maximally coherent set.

    Args:
        rho: state of any dimension
        cfg: optimizer settings (restarts, iteration cap, tolerance, seed)
        initial_phases: optional warm start tried before the regular restarts

    Returns:
        FractionResult; converged is False if the best restart hit max_iters
    """
    cfg = cfg or OptimizerConfig()
    d = rho.dim
    if d == 1:
        return FractionResult(value=1.0, argmax_phases=PhaseVector.zeros(1), iterations_used=0, converged=True)
    if d == 2:
        return _qubit_fraction(rho)

    starts: List[np.ndarray] = []
    if initial_phases is not None:
        if initial_phases.dim != d:
            raise DimensionMismatch(f"warm start has {initial_phases.dim} phases for a {d}-dimensional state")
        starts.append(initial_phases.angles)
    starts.extend(_starting_angles(d, restart, cfg.seed) for restart in range(cfg.restarts))

    best: Optional[Tuple[float, np.ndarray, int, bool, int, List[float]]] = None
    for index, start in enumerate(starts):
        trace: Optional[List[float]] = [] if cfg.record_trace else None
        angles, value, sweeps, converged = ascend_phases(rho.matrix, start, cfg, trace)
        logger.debug(f"restart {index}: value {value:.12f} after {sweeps} sweeps (converged={converged})")
        # strict improvement only: the lowest restart index wins ties
        if best is None or value > best[0]:
            best = (value, angles, sweeps, converged, index, trace or [])

    value, angles, sweeps, converged, index, trace = best
    argmax = PhaseVector.canonical(angles)
    if not converged:
        logger.warning(f"coherence fraction for d={d} did not converge within {cfg.max_iters} sweeps")
    return FractionResult(
        value=phase_objective(rho, argmax),
        argmax_phases=argmax,
        iterations_used=sweeps,
        converged=converged,
        restart_index=index,
        objective_trace=tuple(trace),
    )


def coherence_fraction_upper_bound(rho: DensityMatrix) -> float:
    """1/d + C_l1(rho)/d; attained exactly on phase-aligned states."""
    return (1.0 + l1_coherence(rho)) / rho.dim


def coherence_fraction_oracle(rho: DensityMatrix, grid_points: Optional[int] = None) -> float:
    """
    Exhaustive maximum of the phase objective over a uniform angle grid.

    Cost grows as grid_points^(d-1), so only d <= 4 is accepted.
    """
    d = rho.dim
    if d > Config.MAX_ORACLE_DIM:
        raise DimensionTooLarge(f"oracle supports d <= {Config.MAX_ORACLE_DIM}, got d={d}")
    if d == 1:
        return 1.0
    grid_points = grid_points or Config.default_grid_points(d)
    if grid_points < 8:
        raise OutOfRange(f"grid_points must be >= 8, got {grid_points}")

    grid = TWO_PI * np.arange(grid_points) / grid_points
    if d > 2:
        tail = np.stack(np.meshgrid(*([grid] * (d - 2)), indexing="ij"), axis=-1).reshape(-1, d - 2)
    else:
        tail = np.zeros((1, 0))

    best = -np.inf
    # one block per value of theta_1 keeps memory at grid_points^(d-2) rows
    for first in grid:
        angles = np.zeros((tail.shape[0], d))
        angles[:, 1] = first
        angles[:, 2:] = tail
        phases = np.exp(1j * angles)
        values = np.real(np.einsum("mj,jk,mk->m", phases.conj(), rho.matrix, phases)) / d
        best = max(best, float(values.max()))
    return best


def is_coherent_by_fraction(rho: DensityMatrix, cfg: Optional[OptimizerConfig] = None) -> bool:
    """
    Coherence test through the fraction, valid on the phase-aligned class.

    Raises:
        NotApplicable: when the state fails the phase alignment condition
    """
    if not check_phase_alignment(rho).aligned:
        raise NotApplicable("coherence-by-fraction is only decisive for phase-aligned states")
    return coherence_fraction(rho, cfg).value > 1.0 / rho.dim + Config.COHERENT_MARGIN


def distillable_coherence_pure_qubit(fraction: float) -> float:
    """
    Distillable coherence of a pure qubit from its coherence fraction F:
    H((1 + 2 sqrt(F(1 - F))) / 2).
    """
    slack = 1e-12
    if not 0.5 - slack <= fraction <= 1.0 + slack:
        raise OutOfRange(f"coherence fraction of a pure qubit lies in [1/2, 1], got {fraction}")
    fraction = min(max(fraction, 0.5), 1.0)
    return binary_entropy((1.0 + 2.0 * np.sqrt(max(0.0, fraction * (1.0 - fraction)))) / 2.0)


def bipartite_coherence_fraction(
    rho_ab: DensityMatrix, dims: Tuple[int, int], cfg: Optional[OptimizerConfig] = None
) -> FractionResult:
    """Coherence fraction over the bipartite maximally coherent set, indexed |kl> -> k*d2 + l."""
    d1, d2 = dims
    if d1 < 1 or d2 < 1 or d1 * d2 != rho_ab.dim:
        raise DimensionMismatch(f"dims {dims} do not factor a {rho_ab.dim}-dimensional state")
    return coherence_fraction(rho_ab, cfg)


def local_global_report(rho_ab: DensityMatrix, cfg: Optional[OptimizerConfig] = None) -> LocalGlobalReport:
    """
    Compare F_c(rho_a) + F_c(rho_b) with 2 F_c(rho_ab) + 1/2 for a two-qubit state.

    Raises:
        DimensionMismatch: if the state is not two-qubit
        NotApplicable: when the state fails the phase alignment condition
    """
    if rho_ab.dim != 4:
        raise DimensionMismatch(f"local/global comparison needs a two-qubit state, got d={rho_ab.dim}")
    if not check_phase_alignment(rho_ab).aligned:
        raise NotApplicable("the local/global bound is claimed only for phase-aligned states")

    f_ab = bipartite_coherence_fraction(rho_ab, (2, 2), cfg).value
    f_a = coherence_fraction(partial_trace(rho_ab, (2, 2), Subsystem.FIRST), cfg).value
    f_b = coherence_fraction(partial_trace(rho_ab, (2, 2), Subsystem.SECOND), cfg).value
    lhs = f_a + f_b
    rhs = 2.0 * f_ab + 0.5
    return LocalGlobalReport(f_ab=f_ab, f_a=f_a, f_b=f_b, lhs=lhs, rhs=rhs, holds=lhs <= rhs + Config.COHERENT_MARGIN)
