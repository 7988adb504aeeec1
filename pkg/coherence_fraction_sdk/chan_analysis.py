"""
Channel-level coherence quantities.

Optimal coherence fraction, decohering and cohering power, the 2F + D
complementarity relation, closed forms for the named qubit families, and
the bipartite (local noise) studies.

Qubit channels that preserve incoherence, and unitary ones, go through the
one-parameter reduction onto the equator family
|phi(theta)> = (|0> + exp(i theta)|1>)/sqrt(2): the output off-diagonal entry
is a + b exp(-i theta) + c exp(i theta), scanned on a dense grid and refined
with a bounded scalar minimizer. Other qubit channels can reach more
coherence off the equator, so they take the larger of the reduction and a
multi-start search over all pure inputs; every other dimension uses that
search alone.
"""

import logging
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from coherence_fraction_sdk.channels import (
    Channel,
    ChannelSpec,
    adjoint_action,
    identity_channel,
    kraus_action,
    make_channel,
    preserves_incoherence,
    spec_params,
    tensor_channel,
)
from coherence_fraction_sdk.config import OptimizerConfig
from coherence_fraction_sdk.errors import DimensionMismatch, UnsupportedKind
from coherence_fraction_sdk.fraction import ascend_phases, coherence_fraction
from coherence_fraction_sdk.models import (
    ChannelFractionResult,
    ChannelKind,
    ChannelMethod,
    ComplementarityReport,
    ErrataReport,
    MultiplicativityReport,
    PowerResult,
)
from coherence_fraction_sdk.qcore import TWO_PI, PhaseVector, PureState, make_density_matrix

logger = logging.getLogger(__name__)

CLOSED_FORM_KINDS = (
    ChannelKind.UNITARY,
    ChannelKind.DEPOLARIZING,
    ChannelKind.BIT_FLIP,
    ChannelKind.GAD,
    ChannelKind.SELF_COMPLEMENTARY,
)

# Slack on 2 <= 2F + D <= 3
COMPLEMENTARITY_SLACK = 1e-6


def _require_qubit(channel: Channel, what: str) -> None:
    if channel.dim != 2:
        raise DimensionMismatch(f"{what} needs a qubit channel, got d={channel.dim}")


def _l1(matrix: np.ndarray) -> float:
    magnitudes = np.abs(matrix)
    return float(magnitudes.sum() - np.trace(magnitudes))


# ---------------------------------------------------------------------------
# Qubit equator reduction
# ---------------------------------------------------------------------------


def _equator_coefficients(channel: Channel) -> Tuple[complex, complex, complex]:
    """(a, b, c) with Lambda(|phi(theta)><phi(theta)|)_01 = a + b exp(-i theta) + c exp(i theta)."""
    ops = channel.kraus_ops
    a = kraus_action(ops, np.eye(2) / 2)[0, 1]
    b = kraus_action(ops, np.array([[0, 1], [0, 0]]) / 2)[0, 1]
    c = kraus_action(ops, np.array([[0, 0], [1, 0]]) / 2)[0, 1]
    return complex(a), complex(b), complex(c)


def _equator_coherence(coefficients: Tuple[complex, complex, complex], theta):
    a, b, c = coefficients
    return 2.0 * np.abs(a + b * np.exp(-1j * theta) + c * np.exp(1j * theta))


def _scan_and_refine(objective, low: float, high: float, cfg: OptimizerConfig, periodic: bool) -> Tuple[float, float]:
    """
    Minimize a scalar function on [low, high]: dense grid, then a bounded
    Brent refinement around the best grid node.

    Returns:
        (argmin, min)
    """
    points = cfg.channel_grid_points
    if periodic:
        grid = low + (high - low) * np.arange(points) / points
    else:
        grid = np.linspace(low, high, points)
    values = objective(grid)
    index = int(np.argmin(values))
    best_x, best_value = float(grid[index]), float(values[index])

    half_width = (high - low) / (points - 1 if not periodic else points)
    left, right = best_x - half_width, best_x + half_width
    if not periodic:
        left, right = max(left, low), min(right, high)
    refined = minimize_scalar(
        lambda x: float(objective(np.array([x]))[0]),
        bounds=(left, right),
        method="bounded",
        options={"xatol": cfg.refine_tol},
    )
    if refined.success and refined.fun < best_value:
        best_x, best_value = float(refined.x), float(refined.fun)
    if periodic:
        best_x = float(np.mod(best_x, TWO_PI))
    return best_x, best_value


def _equator_state(theta: float) -> PureState:
    return PureState(np.array([1.0, np.exp(1j * theta)]) / np.sqrt(2.0))


def _qubit_ocf(channel: Channel, cfg: OptimizerConfig) -> ChannelFractionResult:
    coefficients = _equator_coefficients(channel)
    theta, negative = _scan_and_refine(
        lambda t: -_equator_coherence(coefficients, t), 0.0, TWO_PI, cfg, periodic=True
    )
    psi = _equator_state(theta)
    output = make_density_matrix(kraus_action(channel.kraus_ops, np.outer(psi.amplitudes, psi.amplitudes.conj())))
    fraction = coherence_fraction(output, cfg)
    value = min(0.5 - negative / 2.0, 1.0)
    return ChannelFractionResult(
        value=value,
        argmax_input=psi,
        argmax_phases=fraction.argmax_phases,
        method=ChannelMethod.QUBIT_THEOREM3,
    )


# ---------------------------------------------------------------------------
# General search over pure inputs
# ---------------------------------------------------------------------------


def _as_complex(x: np.ndarray) -> np.ndarray:
    half = x.shape[0] // 2
    vector = x[:half] + 1j * x[half:]
    return vector / np.linalg.norm(vector)


def _as_real(vector: np.ndarray) -> np.ndarray:
    return np.concatenate([vector.real, vector.imag])


class _InputSearch:
    """
    Multi-start maximization of F_c(Lambda(|psi><psi|)) over pure inputs psi.

    Every evaluated input is recorded, and `run` returns the best of them, so
    the reported value is never below F_c of any input the search visited.
    """

    def __init__(self, channel: Channel, cfg: OptimizerConfig):
        self.channel = channel
        self.cfg = cfg
        self.inner_cfg = replace(cfg, restarts=cfg.inner_restarts, record_trace=False)
        self.polish_cfg = replace(cfg, restarts=1, record_trace=False)
        self.evaluations = 0
        self.best_seen: Optional[Tuple[float, np.ndarray, np.ndarray]] = None

    def output(self, psi: np.ndarray) -> np.ndarray:
        return kraus_action(self.channel.kraus_ops, np.outer(psi, psi.conj()))

    def _record(self, value: float, psi: np.ndarray, angles: np.ndarray) -> None:
        self.evaluations += 1
        if self.best_seen is None or value > self.best_seen[0]:
            self.best_seen = (float(value), psi.copy(), np.array(angles, dtype=float))

    def quick_value(self, psi: np.ndarray, warm: np.ndarray) -> Tuple[float, np.ndarray]:
        """Phase ascent on the output started from the current best phases."""
        angles, value, _, _ = ascend_phases(self.output(psi), warm, self.polish_cfg)
        self._record(value, psi, angles)
        return value, angles

    def alternate(self, psi: np.ndarray) -> Tuple[np.ndarray, float, np.ndarray, bool]:
        """
        Alternate the best phases for a fixed input with the best input for
        fixed phases (top eigenvector of the adjoint channel applied to the
        maximally coherent projector). Neither step can lower the objective.
        """
        d = self.channel.dim
        warm: Optional[PhaseVector] = None
        value = -np.inf
        angles = np.zeros(d)
        for _ in range(self.cfg.max_iters):
            fraction = coherence_fraction(make_density_matrix(self.output(psi)), self.inner_cfg, warm)
            warm = fraction.argmax_phases
            self._record(fraction.value, psi, warm.angles)
            angles = warm.angles
            improvement = fraction.value - value
            value = fraction.value
            if improvement < self.cfg.tol:
                return psi, value, angles, True
            coherent = np.exp(1j * angles) / np.sqrt(d)
            _, eigenvectors = np.linalg.eigh(adjoint_action(self.channel.kraus_ops, np.outer(coherent, coherent.conj())))
            psi = eigenvectors[:, -1]
        return psi, value, angles, False

    def climb(self, psi: np.ndarray, value: float, angles: np.ndarray, rng: np.random.Generator):
        """Shrinking-step random-direction hill climb on the real coordinates of psi."""
        x = _as_real(psi)
        step = self.cfg.step_init
        budget = self.cfg.max_iters
        used = 0
        while step >= self.cfg.step_min and used < budget:
            improved = False
            for _ in range(x.shape[0]):
                direction = rng.standard_normal(x.shape[0])
                direction /= np.linalg.norm(direction)
                candidate = _as_real(_as_complex(x + step * direction))
                candidate_value, candidate_angles = self.quick_value(_as_complex(candidate), angles)
                used += 1
                if candidate_value > value + self.cfg.tol:
                    x, value, angles = candidate, candidate_value, candidate_angles
                    improved = True
                    break
            if not improved:
                step /= 2.0
        return _as_complex(x), value, angles, step < self.cfg.step_min

    def run(self, restarts: int) -> Tuple[np.ndarray, float, np.ndarray, bool]:
        d = self.channel.dim
        best: Optional[Tuple[float, np.ndarray, np.ndarray, bool, int]] = None
        for restart in range(restarts):
            rng = np.random.default_rng(self.cfg.seed + restart)
            start = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            psi, value, angles, alternated = self.alternate(start / np.linalg.norm(start))
            psi, value, angles, settled = self.climb(psi, value, angles, rng)
            logger.debug(f"input search restart {restart}: value {value:.12f}")
            if best is None or value > best[0]:
                best = (value, psi, angles, alternated and settled, restart)
        value, psi, angles, converged, index = best
        seen_value, seen_psi, seen_angles = self.best_seen
        if seen_value > value:
            logger.debug(f"input search: visited input beats the final restart value by {seen_value - value:.3e}")
            value, psi, angles = seen_value, seen_psi, seen_angles
        logger.debug(f"input search best restart {index} after {self.evaluations} evaluations")
        return psi, value, angles, converged


def _general_ocf(channel: Channel, cfg: OptimizerConfig, restarts: int) -> ChannelFractionResult:
    search = _InputSearch(channel, cfg)
    psi, value, angles, converged = search.run(restarts)
    final = coherence_fraction(make_density_matrix(search.output(psi)), cfg, PhaseVector.canonical(angles))
    phases = PhaseVector.canonical(angles)
    if final.value >= value:
        value, phases = final.value, final.argmax_phases
    converged = converged and final.converged
    if not converged:
        logger.warning(f"general search for a d={channel.dim} channel did not converge")
    return ChannelFractionResult(
        value=min(value, 1.0),
        argmax_input=PureState(psi),
        argmax_phases=phases,
        method=ChannelMethod.GENERAL_SEARCH,
        converged=converged,
    )


def reduction_is_exact(channel: Channel) -> bool:
    """
    Whether the equator reduction gives the optimum over all pure inputs:
    qubit channels that preserve incoherence, and unitary qubit channels.
    """
    if channel.dim != 2:
        return False
    if channel.kind == ChannelKind.UNITARY or channel.kraus_ops.shape[0] == 1:
        return True
    return preserves_incoherence(channel)


def optimal_coherence_fraction(
    channel: Channel,
    cfg: Optional[OptimizerConfig] = None,
    method: Optional[ChannelMethod] = None,
) -> ChannelFractionResult:
    """
    Best coherence fraction reachable at the channel output over pure inputs.

    Args:
        channel: any valid channel
        cfg: optimizer settings
        method: force a method. QUBIT_THEOREM3 gives the equator reduction
            alone and GENERAL_SEARCH the search alone. By default a qubit
            channel on which the reduction is exact uses the reduction; any
            other qubit channel gets the larger of the two; every other
            dimension uses the search.

    Returns:
        ChannelFractionResult carrying the maximizing input and output phases
    """
    cfg = cfg or OptimizerConfig()
    if method == ChannelMethod.QUBIT_THEOREM3:
        _require_qubit(channel, "the equator reduction")
        return _qubit_ocf(channel, cfg)
    if method == ChannelMethod.GENERAL_SEARCH or channel.dim != 2:
        return _general_ocf(channel, cfg, cfg.restarts)
    if reduction_is_exact(channel):
        return _qubit_ocf(channel, cfg)

    reduced = _qubit_ocf(channel, cfg)
    searched = _general_ocf(channel, cfg, cfg.restarts)
    logger.debug(f"qubit channel creating coherence: equator {reduced.value:.12f}, search {searched.value:.12f}")
    if searched.value > reduced.value:
        return searched
    return replace(reduced, converged=searched.converged)


# ---------------------------------------------------------------------------
# Decohering and cohering power
# ---------------------------------------------------------------------------


def _coherent_projector(angles: np.ndarray) -> np.ndarray:
    vector = np.exp(1j * angles) / np.sqrt(angles.shape[0])
    return np.outer(vector, vector.conj())


def decohering_power(channel: Channel, cfg: Optional[OptimizerConfig] = None) -> PowerResult:
    """
    1 - min C_l1(Lambda(phi)) over maximally coherent inputs phi.

    For d > 2 the deficit is normalized by the maximal l1 coherence d - 1,
    found by a Nelder-Mead multi-start over the d - 1 free phases.
    """
    cfg = cfg or OptimizerConfig()
    if channel.dim == 2:
        coefficients = _equator_coefficients(channel)
        theta, smallest = _scan_and_refine(
            lambda t: _equator_coherence(coefficients, t), 0.0, TWO_PI, cfg, periodic=True
        )
        return PowerResult(value=1.0 - smallest, method=ChannelMethod.QUBIT_THEOREM3, argopt=(theta,))

    d = channel.dim
    logger.warning(f"decohering power for d={d} uses the (d - 1)-normalized extension")

    def objective(free: np.ndarray) -> float:
        angles = np.concatenate([[0.0], free])
        return _l1(kraus_action(channel.kraus_ops, _coherent_projector(angles)))

    best_value, best_x = np.inf, np.zeros(d - 1)
    for restart in range(cfg.restarts):
        start = np.zeros(d - 1) if restart == 0 else np.random.default_rng(cfg.seed + restart).uniform(0.0, TWO_PI, d - 1)
        result = minimize(objective, start, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": cfg.tol, "maxiter": cfg.max_iters * d})
        if result.fun < best_value:
            best_value, best_x = float(result.fun), result.x
    value = (d - 1 - best_value) / (d - 1)
    return PowerResult(value=value, method=ChannelMethod.GENERAL_SEARCH, argopt=tuple(np.mod(best_x, TWO_PI)))


def cohering_power(channel: Channel, cfg: Optional[OptimizerConfig] = None) -> PowerResult:
    """max C_l1(Lambda(rho)) over incoherent (diagonal) inputs rho."""
    cfg = cfg or OptimizerConfig()
    d = channel.dim
    if d == 2:
        def negative_coherence(q):
            q = np.atleast_1d(q)
            images = [kraus_action(channel.kraus_ops, np.diag([x, 1.0 - x])) for x in q]
            return -np.array([2.0 * abs(image[0, 1]) for image in images])

        q, negative = _scan_and_refine(negative_coherence, 0.0, 1.0, cfg, periodic=False)
        return PowerResult(value=max(0.0, -negative), method=ChannelMethod.QUBIT_THEOREM3, argopt=(q,))

    def created(weights: np.ndarray) -> float:
        return _l1(kraus_action(channel.kraus_ops, np.diag(weights)))

    # C_l1 of a linear image is convex in the weights, so vertices are candidates too
    best_value, best_weights = -np.inf, np.eye(d)[0]
    for vertex in np.eye(d):
        value = created(vertex)
        if value > best_value:
            best_value, best_weights = value, vertex

    def softmax(x: np.ndarray) -> np.ndarray:
        shifted = np.exp(x - x.max())
        return shifted / shifted.sum()

    for restart in range(cfg.restarts):
        start = np.random.default_rng(cfg.seed + restart).standard_normal(d)
        result = minimize(lambda x: -created(softmax(x)), start, method="Nelder-Mead", options={"maxiter": cfg.max_iters * d})
        if -result.fun > best_value:
            best_value, best_weights = float(-result.fun), softmax(result.x)
    return PowerResult(value=max(0.0, best_value), method=ChannelMethod.GENERAL_SEARCH, argopt=tuple(best_weights))


def complementarity_report(channel: Channel, cfg: Optional[OptimizerConfig] = None) -> ComplementarityReport:
    """2F + D for a qubit channel and whether it lies in [2, 3]."""
    _require_qubit(channel, "the complementarity relation")
    ocf = optimal_coherence_fraction(channel, cfg).value
    power = decohering_power(channel, cfg).value
    total = 2.0 * ocf + power
    holds = 2.0 - COMPLEMENTARITY_SLACK <= total <= 3.0 + COMPLEMENTARITY_SLACK
    if not holds:
        logger.warning(f"2F + D = {total:.9f} outside [2, 3]")
    return ComplementarityReport(ocf=ocf, decohering_power=power, total=total, k=total - 2.0, bounds_hold=holds)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _check_closed_form_kind(spec: ChannelSpec) -> None:
    if spec.kind not in CLOSED_FORM_KINDS:
        raise UnsupportedKind(f"no closed form for channel kind '{spec.kind.value}'")


def _unitary_entries(spec: ChannelSpec) -> Tuple[float, float, float, float]:
    n1, n2, n3 = (float(v) for v in spec.params["axis"])
    angle = float(spec.params["angle"])
    half = np.sin(angle / 2) ** 2
    x1 = np.cos(angle) + 2 * n1 ** 2 * half
    x2 = np.cos(angle) + 2 * n2 ** 2 * half
    y1 = 2 * n1 * n2 * half + n3 * np.sin(angle)
    y2 = 2 * n1 * n2 * half - n3 * np.sin(angle)
    return x1, x2, y1, y2


def _printed_unitary_p(spec: ChannelSpec) -> Tuple[float, float]:
    x1, x2, y1, y2 = _unitary_entries(spec)
    mean = (x1 ** 2 + x2 ** 2 + y1 ** 2 + y2 ** 2) / 2
    root = np.sqrt(max(0.0, mean ** 2 - (x1 ** 2 * x2 ** 2 + y1 ** 2 * y2 ** 2)))
    return mean + root, mean - root


def _unitary_singular_values(spec: ChannelSpec) -> Tuple[float, float]:
    """Singular values of the equator block [[X1, Y1], [Y2, X2]] of the Bloch rotation."""
    x1, x2, y1, y2 = _unitary_entries(spec)
    mean = (x1 ** 2 + x2 ** 2 + y1 ** 2 + y2 ** 2) / 2
    determinant = x1 * x2 - y1 * y2
    root = np.sqrt(max(0.0, mean ** 2 - determinant ** 2))
    return float(np.sqrt(mean + root)), float(np.sqrt(max(0.0, mean - root)))


def _self_complementary_p(spec: ChannelSpec) -> Tuple[float, float, float]:
    theta = float(spec.params["theta"])
    candidates = (abs(1 + np.cos(theta)), abs(1 - np.cos(theta)))
    return abs(np.sin(theta)), max(candidates), min(candidates)


def _self_complementary_unrestricted_ocf(spec: ChannelSpec) -> float:
    """
    Maximum over all pure inputs. The output off-diagonal is
    (sin(theta)/sqrt(2)) (alpha beta* + e^{-i phi} cos(theta) |beta|^2), which
    peaks off the equator at |beta|^2 = (1 - cos x)/2 with tan x = -1/|cos theta|.
    """
    theta = float(spec.params["theta"])
    cosine = abs(np.cos(theta))
    return 0.5 + abs(np.sin(theta)) * (cosine + np.sqrt(1.0 + cosine ** 2)) / (2.0 * np.sqrt(2.0))


def _shared_ocf(spec: ChannelSpec) -> float:
    if spec.kind == ChannelKind.DEPOLARIZING:
        return 1.0 - float(spec.params["p"]) / 2.0
    if spec.kind == ChannelKind.BIT_FLIP:
        return 1.0
    if spec.kind == ChannelKind.GAD:
        return 0.5 + np.sqrt(1.0 - float(spec.params["p"])) / 2.0
    sine, p_max, _ = _self_complementary_p(spec)
    return 0.5 + sine * p_max / (2.0 * np.sqrt(2.0))


def _shared_decohering(spec: ChannelSpec) -> float:
    if spec.kind == ChannelKind.DEPOLARIZING:
        return float(spec.params["p"])
    if spec.kind == ChannelKind.BIT_FLIP:
        return 1.0 - abs(1.0 - 2.0 * float(spec.params["p"]))
    return 1.0 - np.sqrt(1.0 - float(spec.params["p"]))


def closed_form_ocf(spec: ChannelSpec) -> float:
    """Optimal coherence fraction of a named qubit family, as printed in the literature."""
    _check_closed_form_kind(spec)
    if spec.kind == ChannelKind.UNITARY:
        p_plus, _ = _printed_unitary_p(spec)
        return float(0.5 + p_plus / 2.0)
    return float(_shared_ocf(spec))


def closed_form_decohering_power(spec: ChannelSpec) -> float:
    """Decohering power of a named qubit family, as printed in the literature."""
    _check_closed_form_kind(spec)
    if spec.kind == ChannelKind.UNITARY:
        _, p_minus = _printed_unitary_p(spec)
        return float(1.0 - p_minus)
    if spec.kind == ChannelKind.SELF_COMPLEMENTARY:
        sine, _, p_min = _self_complementary_p(spec)
        return float(1.0 - sine * p_min)
    return float(_shared_decohering(spec))


def corrected_closed_form_ocf(spec: ChannelSpec) -> float:
    """Optimal coherence fraction supported by direct computation on the Kraus form."""
    _check_closed_form_kind(spec)
    if spec.kind == ChannelKind.UNITARY:
        largest, _ = _unitary_singular_values(spec)
        return float(0.5 + min(largest, 1.0) / 2.0)
    if spec.kind == ChannelKind.SELF_COMPLEMENTARY:
        return float(_self_complementary_unrestricted_ocf(spec))
    return float(_shared_ocf(spec))


def corrected_closed_form_decohering_power(spec: ChannelSpec) -> float:
    """Decohering power supported by direct computation on the Kraus form."""
    _check_closed_form_kind(spec)
    if spec.kind == ChannelKind.UNITARY:
        _, smallest = _unitary_singular_values(spec)
        return float(1.0 - smallest)
    if spec.kind == ChannelKind.SELF_COMPLEMENTARY:
        sine, _, p_min = _self_complementary_p(spec)
        return float(1.0 - sine * p_min / np.sqrt(2.0))
    return float(_shared_decohering(spec))


def errata_report(spec: ChannelSpec, cfg: Optional[OptimizerConfig] = None) -> ErrataReport:
    """
    Printed closed forms next to the corrected forms and the numerics.

    numeric_ocf is the optimum over all pure inputs. reduction_ocf is the
    equator reduction alone, which the printed forms follow and which falls
    short for channels that create coherence; unrestricted_ocf is the
    general search alone.
    """
    cfg = cfg or OptimizerConfig()
    channel = make_channel(spec)
    report = ErrataReport(
        kind=spec.kind,
        params=spec_params(spec),
        printed_ocf=closed_form_ocf(spec),
        corrected_ocf=corrected_closed_form_ocf(spec),
        numeric_ocf=optimal_coherence_fraction(channel, cfg).value,
        printed_decohering=closed_form_decohering_power(spec),
        corrected_decohering=corrected_closed_form_decohering_power(spec),
        numeric_decohering=decohering_power(channel, cfg).value,
        unrestricted_ocf=optimal_coherence_fraction(channel, cfg, ChannelMethod.GENERAL_SEARCH).value,
        reduction_ocf=optimal_coherence_fraction(channel, cfg, ChannelMethod.QUBIT_THEOREM3).value,
    )
    if not report.matches_printed():
        logger.info(
            f"{spec.kind.value} {report.params}: printed F={report.printed_ocf:.6f} D={report.printed_decohering:.6f}, "
            f"numeric F={report.numeric_ocf:.6f} D={report.numeric_decohering:.6f}"
        )
    return report


# ---------------------------------------------------------------------------
# Bipartite channels
# ---------------------------------------------------------------------------


def bipartite_ocf(first: Channel, second: Channel, cfg: Optional[OptimizerConfig] = None) -> ChannelFractionResult:
    """Optimal coherence fraction of first (x) second over all two-qubit pure inputs."""
    cfg = cfg or OptimizerConfig()
    _require_qubit(first, "bipartite_ocf")
    _require_qubit(second, "bipartite_ocf")
    return _general_ocf(tensor_channel(first, second), cfg, cfg.bipartite_restarts)


def multiplicativity_report(
    first: Channel, second: Channel, cfg: Optional[OptimizerConfig] = None
) -> MultiplicativityReport:
    """Measure F(first (x) second) against F(first (x) I) * F(I (x) second)."""
    identity = identity_channel(2)
    lhs = bipartite_ocf(first, second, cfg).value
    first_with_identity = bipartite_ocf(first, identity, cfg).value
    identity_with_second = bipartite_ocf(identity, second, cfg).value
    rhs = first_with_identity * identity_with_second
    logger.info(f"multiplicativity gap {lhs - rhs:.3e}")
    return MultiplicativityReport(
        lhs=lhs,
        rhs=rhs,
        gap=lhs - rhs,
        first_with_identity=first_with_identity,
        identity_with_second=identity_with_second,
    )

