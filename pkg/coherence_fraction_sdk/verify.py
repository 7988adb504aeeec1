"""
Named property suites run on seeded instances.

Each suite checks one family of properties of the coherence fraction and
the channel quantities, records the largest observed gap, and collects
every violation together with the serialized input that produced it.
Instance i of a suite always uses seed + i.
"""

import logging
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np

from coherence_fraction_sdk.chan_analysis import (
    bipartite_ocf,
    complementarity_report,
    corrected_closed_form_decohering_power,
    corrected_closed_form_ocf,
    decohering_power,
    multiplicativity_report,
    optimal_coherence_fraction,
    reduction_is_exact,
)
from coherence_fraction_sdk.channels import (
    Channel,
    amplitude_damping,
    apply,
    bit_flip,
    depolarizing,
    gad,
    identity_channel,
    random_channel,
    self_complementary,
    unitary,
)
from coherence_fraction_sdk.config import OptimizerConfig
from coherence_fraction_sdk.fraction import (
    coherence_fraction,
    coherence_fraction_oracle,
    coherence_fraction_upper_bound,
    distillable_coherence_pure_qubit,
    local_global_report,
)
from coherence_fraction_sdk.measures import l1_coherence, relative_entropy_coherence
from coherence_fraction_sdk.models import ChannelKind, ChannelMethod, PropertyFailure, Subsystem, SuiteResult, VerifySuite
from coherence_fraction_sdk.named_states import qutrit_mixture, random_nonnegative_state, random_x_state, two_qubit_family
from coherence_fraction_sdk.qcore import (
    apply_unitary,
    partial_trace,
    pure_to_density,
    random_density_matrix,
    random_incoherent_unitary,
    random_pure_state,
)
from coherence_fraction_sdk.utils.serialization import channel_to_dict, save_json

logger = logging.getLogger(__name__)

DEFAULT_COUNTS: Dict[VerifySuite, int] = {
    VerifySuite.THEOREM1: 1000,
    VerifySuite.THEOREM2: 100,
    VerifySuite.THEOREM3: 20,
    VerifySuite.THEOREM4: 100,
    VerifySuite.THEOREM5: 1000,
    VerifySuite.ORACLE: 100,
    VerifySuite.INVARIANCE: 100,
    VerifySuite.SUBADDITIVITY_L1: 1000,
    VerifySuite.BIPARTITE_OBSERVATIONS: 9,
}

EQUALITY_TOL = 1e-6
UPPER_BOUND_SLACK = 1e-8
DISTILLABLE_TOL = 1e-9
THEOREM3_TOL = 1e-4
SAMPLED_INPUTS = 64
ORACLE_TOL = 1e-3
INVARIANCE_TOL = 1e-8
L1_INVARIANCE_TOL = 1e-10
SUBADDITIVITY_SLACK = 1e-9
BIPARTITE_TOL = 1e-3
ORDERING_SLACK = 1e-4
MULTIPLICATIVITY_TOL = 1e-2


class _Recorder:
    """Accumulates checks, gaps and failures of one suite."""

    def __init__(self, name: str):
        self.result = SuiteResult(name=name, checked=0)

    def check(self, ok: bool, gap: float, description: str, payload: Optional[Dict[str, Any]] = None) -> None:
        self.result.checked += 1
        gap = float(abs(gap))
        self.result.max_gap = max(self.result.max_gap, gap)
        if not ok:
            logger.warning(f"{self.result.name}: {description} (gap {gap:.3e})")
            self.result.failures.append(PropertyFailure(description=description, gap=gap, payload=payload or {}))

    def note(self, message: str) -> None:
        logger.info(f"{self.result.name}: {message}")
        self.result.notes.append(message)


def _theorem1(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """Equality F = 1/d + C_l1/d on aligned classes and the universal upper bound."""
    recorder = _Recorder(VerifySuite.THEOREM1.value)
    classes: List[tuple] = [
        ("nonnegative", 2, random_nonnegative_state),
        ("nonnegative", 3, random_nonnegative_state),
        ("nonnegative", 4, random_nonnegative_state),
        ("x_state", 4, random_x_state),
        ("pure", 2, lambda d, s: pure_to_density(random_pure_state(d, s))),
        ("pure", 3, lambda d, s: pure_to_density(random_pure_state(d, s))),
        ("pure", 4, lambda d, s: pure_to_density(random_pure_state(d, s))),
    ]
    for i in range(count):
        label, d, generate = classes[i % len(classes)]
        rho = generate(d, seed + i)
        gap = coherence_fraction(rho, cfg).value - coherence_fraction_upper_bound(rho)
        recorder.check(abs(gap) <= EQUALITY_TOL, gap, f"equality fails for {label} d={d} seed={seed + i}", rho.to_dict())

    for i in range(count):
        d = 3 + i % 2
        rho = random_density_matrix(d, seed + i)
        gap = coherence_fraction(rho, cfg).value - coherence_fraction_upper_bound(rho)
        recorder.check(gap <= UPPER_BOUND_SLACK, gap, f"upper bound exceeded for mixed d={d} seed={seed + i}", rho.to_dict())

    counterexample = qutrit_mixture(0.5)
    strict = coherence_fraction_upper_bound(counterexample) - coherence_fraction(counterexample, cfg).value
    recorder.note(f"qutrit mixture at p=1/2 sits {strict:.6e} below the bound (strict inequality expected)")
    return recorder.result


def _theorem2(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """Distillable coherence of pure qubits as a function of the coherence fraction."""
    recorder = _Recorder(VerifySuite.THEOREM2.value)
    recorder.check(abs(distillable_coherence_pure_qubit(0.5)) <= DISTILLABLE_TOL, distillable_coherence_pure_qubit(0.5), "value at F=1/2 is not 0")
    recorder.check(abs(distillable_coherence_pure_qubit(1.0) - 1.0) <= DISTILLABLE_TOL, distillable_coherence_pure_qubit(1.0) - 1.0, "value at F=1 is not 1")

    samples = np.linspace(0.5, 1.0, 101)
    values = np.array([distillable_coherence_pure_qubit(f) for f in samples])
    steps = np.diff(values)
    recorder.check(bool(np.all(steps > 0)), float(min(steps.min(), 0.0)), "not strictly increasing on (1/2, 1]")

    for i in range(count):
        rho = pure_to_density(random_pure_state(2, seed + i))
        gap = distillable_coherence_pure_qubit(coherence_fraction(rho, cfg).value) - relative_entropy_coherence(rho)
        recorder.check(abs(gap) <= DISTILLABLE_TOL, gap, f"relation to C_r fails for seed={seed + i}", rho.to_dict())
    return recorder.result


def _theorem3_channel(i: int, rng: np.random.Generator) -> Channel:
    """
    Families 0-3 are ones on which the equator reduction is exact
    (incoherence preserving ones and unitaries); 4 and 5 create coherence.
    """
    family = i % 6
    if family == 0:
        return depolarizing(rng.uniform(0.0, 1.0))
    if family == 1:
        return bit_flip(rng.uniform(0.0, 1.0))
    if family == 2:
        return gad(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
    if family == 3:
        axis = rng.standard_normal(3)
        return unitary(axis / np.linalg.norm(axis), rng.uniform(-np.pi, np.pi))
    if family == 4:
        return random_channel(2, 2, int(rng.integers(0, 2**31)))
    return self_complementary(rng.uniform(0.0, np.pi), rng.uniform(0.0, 2 * np.pi))


def sampled_input_best(channel: Channel, samples: int, seed: int) -> float:
    """Largest F_c(Lambda(psi)) over `samples` seeded random pure inputs."""
    best = -np.inf
    for j in range(samples):
        output = apply(channel, pure_to_density(random_pure_state(channel.dim, seed + j)))
        best = max(best, coherence_fraction(output).value)
    return best


def _theorem3(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """
    The reported optimum against sampled inputs, the equator reduction and
    the unrestricted search. The reduction must agree with the search where
    it is exact; self-complementary channels must hit the corrected form.
    """
    recorder = _Recorder(VerifySuite.THEOREM3.value)
    largest_excess = 0.0
    for i in range(count):
        channel = _theorem3_channel(i, np.random.default_rng(seed + i))
        payload = channel_to_dict(channel)
        value = optimal_coherence_fraction(channel, cfg).value
        reduced = optimal_coherence_fraction(channel, cfg, ChannelMethod.QUBIT_THEOREM3).value

        sampled = sampled_input_best(channel, SAMPLED_INPUTS, seed + i)
        recorder.check(value >= sampled - THEOREM3_TOL, min(value - sampled, 0.0), f"sampled input beats the optimum for {channel.kind.value} seed={seed + i}", payload)
        recorder.check(value >= reduced - THEOREM3_TOL, min(value - reduced, 0.0), f"optimum below the reduction for {channel.kind.value} seed={seed + i}", payload)

        if reduction_is_exact(channel):
            unrestricted = optimal_coherence_fraction(channel, cfg, ChannelMethod.GENERAL_SEARCH).value
            gap = unrestricted - reduced
            recorder.check(abs(gap) <= THEOREM3_TOL, gap, f"reduction differs for {channel.kind.value} seed={seed + i}", payload)
        else:
            largest_excess = max(largest_excess, value - reduced)
        if channel.kind == ChannelKind.SELF_COMPLEMENTARY:
            gap = value - corrected_closed_form_ocf(channel.spec)
            recorder.check(abs(gap) <= THEOREM3_TOL, gap, f"self-complementary off the corrected form seed={seed + i}", payload)

    recorder.note(f"channels that create coherence beat the equator reduction by up to {largest_excess:.6e}")
    return recorder.result


def _named_grid() -> List[Channel]:
    grid = np.linspace(0.0, 1.0, 20)
    channels: List[Channel] = []
    channels += [depolarizing(p) for p in grid]
    channels += [bit_flip(p) for p in grid]
    channels += [gad(p, gamma) for p in grid for gamma in (0.0, 0.3, 0.7, 1.0)]
    channels += [self_complementary(theta, 0.0) for theta in np.linspace(0.0, np.pi, 20)]
    channels += [unitary((1.0, 0.0, 0.0), angle) for angle in np.linspace(-np.pi, np.pi, 20)]
    return channels


def _theorem4(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """2 <= 2F + D <= 3, with the exact sums of the depolarizing, GAD and bit-flip families."""
    recorder = _Recorder(VerifySuite.THEOREM4.value)
    channels = _named_grid() + [random_channel(2, 1 + i % 4, seed + i) for i in range(count)]
    for channel in channels:
        report = complementarity_report(channel, cfg)
        excess = max(2.0 - report.total, report.total - 3.0, 0.0)
        recorder.check(report.bounds_hold, excess, f"2F + D = {report.total:.9f} for {channel.kind.value}", channel_to_dict(channel))

        expected = None
        if channel.kind in (ChannelKind.DEPOLARIZING, ChannelKind.GAD):
            expected = 2.0
        elif channel.kind == ChannelKind.BIT_FLIP:
            expected = 3.0 - abs(1.0 - 2.0 * float(channel.spec.params["p"]))
        if expected is not None:
            gap = report.total - expected
            recorder.check(abs(gap) <= EQUALITY_TOL, gap, f"sum {report.total:.9f} != {expected:.9f}", channel_to_dict(channel))

    # self-complementary decohering power against the corrected form
    for theta in np.linspace(0.0, np.pi, 9):
        channel = self_complementary(theta)
        gap = decohering_power(channel, cfg).value - corrected_closed_form_decohering_power(channel.spec)
        recorder.check(abs(gap) <= THEOREM3_TOL, gap, f"self-complementary D off the corrected form at theta={theta:.4f}", channel_to_dict(channel))
    return recorder.result


def _theorem5(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """Local coherence fractions bounded by the global one for two-qubit states."""
    recorder = _Recorder(VerifySuite.THEOREM5.value)
    for i in range(count):
        rho = random_nonnegative_state(4, seed + i)
        report = local_global_report(rho, cfg)
        recorder.check(report.holds, max(report.lhs - report.rhs, 0.0), f"local/global bound fails for seed={seed + i}", rho.to_dict())
    for p in (0.0, 0.25, 0.5, 0.75, 1.0):
        gap = coherence_fraction(two_qubit_family(p), cfg).value - (1.0 + p) / 2.0
        recorder.check(abs(gap) <= EQUALITY_TOL, gap, f"two-qubit family at p={p} off (1 + p)/2")
    return recorder.result


def _oracle(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """Coordinate ascent against the exhaustive grid on qutrits."""
    recorder = _Recorder(VerifySuite.ORACLE.value)
    grid_points = cfg.resolved_grid_points(3)
    for i in range(count):
        rho = random_density_matrix(3, seed + i)
        gap = coherence_fraction(rho, cfg).value - coherence_fraction_oracle(rho, grid_points)
        # the grid can only undershoot the true maximum
        ok = -UPPER_BOUND_SLACK <= gap <= ORACLE_TOL
        recorder.check(ok, gap, f"optimizer and oracle disagree for seed={seed + i}", rho.to_dict())
    return recorder.result


def _invariance(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """F_c and C_l1 under permutation-times-phase unitaries."""
    recorder = _Recorder(VerifySuite.INVARIANCE.value)
    for i in range(count):
        d = 2 + i % 3
        rho = random_density_matrix(d, seed + i)
        rotated = apply_unitary(rho, random_incoherent_unitary(d, seed + i))
        gap = coherence_fraction(rotated, cfg).value - coherence_fraction(rho, cfg).value
        recorder.check(abs(gap) <= INVARIANCE_TOL, gap, f"F_c changed for d={d} seed={seed + i}", rho.to_dict())
        l1_gap = l1_coherence(rotated) - l1_coherence(rho)
        recorder.check(abs(l1_gap) <= L1_INVARIANCE_TOL, l1_gap, f"C_l1 changed for d={d} seed={seed + i}", rho.to_dict())
    return recorder.result


def _subadditivity_l1(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """C_l1(rho_a) + C_l1(rho_b) <= C_l1(rho_ab) on two-qubit states."""
    recorder = _Recorder(VerifySuite.SUBADDITIVITY_L1.value)
    for i in range(count):
        rho = random_density_matrix(4, seed + i)
        local = l1_coherence(partial_trace(rho, (2, 2), Subsystem.FIRST)) + l1_coherence(partial_trace(rho, (2, 2), Subsystem.SECOND))
        excess = local - l1_coherence(rho)
        recorder.check(excess <= SUBADDITIVITY_SLACK, max(excess, 0.0), f"subadditivity fails for seed={seed + i}", rho.to_dict())
    return recorder.result


def _bipartite_observations(count: int, seed: int, cfg: OptimizerConfig) -> SuiteResult:
    """
    Local-noise observations on two qubits over a grid of `count` noise strengths:
    bit-flip keeps F = 1, one-sided noise is never worse than two-sided noise,
    F is symmetric in the channel order, an idle ancilla changes nothing, and
    F is close to multiplicative.
    """
    recorder = _Recorder(VerifySuite.BIPARTITE_OBSERVATIONS.value)
    cfg = replace(cfg, seed=seed)
    identity = identity_channel(2)
    for p in np.linspace(0.1, 0.9, count):
        flip = bit_flip(p)
        for first, second in ((flip, identity), (flip, flip)):
            value = bipartite_ocf(first, second, cfg).value
            recorder.check(abs(value - 1.0) <= BIPARTITE_TOL, value - 1.0, f"bit-flip p={p:.3f} gives F={value:.6f}")

        for make in (depolarizing, amplitude_damping):
            channel = make(p)
            one_sided = bipartite_ocf(channel, identity, cfg).value
            two_sided = bipartite_ocf(channel, channel, cfg).value
            recorder.check(
                one_sided >= two_sided - ORDERING_SLACK,
                min(one_sided - two_sided, 0.0),
                f"{channel.kind.value} p={p:.3f}: one-sided {one_sided:.6f} < two-sided {two_sided:.6f}",
                channel_to_dict(channel),
            )
            single = optimal_coherence_fraction(channel, cfg).value
            recorder.check(
                abs(one_sided - single) <= BIPARTITE_TOL,
                one_sided - single,
                f"{channel.kind.value} p={p:.3f}: ancilla changes F ({one_sided:.6f} vs {single:.6f})",
                channel_to_dict(channel),
            )

        pairs = ((depolarizing(p), amplitude_damping(p)), (depolarizing(p), flip), (amplitude_damping(p), flip))
        for first, second in pairs:
            forward = bipartite_ocf(first, second, cfg).value
            backward = bipartite_ocf(second, first, cfg).value
            recorder.check(abs(forward - backward) <= BIPARTITE_TOL, forward - backward, f"asymmetry for {first.kind.value} x {second.kind.value} at p={p:.3f}")
            report = multiplicativity_report(first, second, cfg)
            recorder.check(
                abs(report.gap) <= MULTIPLICATIVITY_TOL,
                report.gap,
                f"multiplicativity gap {report.gap:.3e} for {first.kind.value} x {second.kind.value} at p={p:.3f}",
            )
    recorder.note("multiplicativity is an empirical observation; gaps are measured, not asserted as a theorem")
    return recorder.result


SUITES: Dict[VerifySuite, Callable[[int, int, OptimizerConfig], SuiteResult]] = {
    VerifySuite.THEOREM1: _theorem1,
    VerifySuite.THEOREM2: _theorem2,
    VerifySuite.THEOREM3: _theorem3,
    VerifySuite.THEOREM4: _theorem4,
    VerifySuite.THEOREM5: _theorem5,
    VerifySuite.ORACLE: _oracle,
    VerifySuite.INVARIANCE: _invariance,
    VerifySuite.SUBADDITIVITY_L1: _subadditivity_l1,
    VerifySuite.BIPARTITE_OBSERVATIONS: _bipartite_observations,
}


def run_suite(
    suite: Union[VerifySuite, str],
    count: Optional[int] = None,
    seed: int = 0,
    cfg: Optional[OptimizerConfig] = None,
    output_dir: Optional[Union[str, Path]] = None,
) -> SuiteResult:
    """
    Run one property suite.

    Args:
        suite: suite name
        count: number of seeded instances (suite default when omitted)
        seed: base seed; instance i uses seed + i
        cfg: optimizer settings
        output_dir: directory receiving one JSON file per failure

    Returns:
        SuiteResult; passed is True iff no property was violated
    """
    suite = VerifySuite(suite)
    cfg = cfg or OptimizerConfig()
    count = DEFAULT_COUNTS[suite] if count is None else count
    logger.info(f"Running suite {suite.value} on {count} instances (seed {seed})")
    result = SUITES[suite](count, seed, cfg)

    if result.failures and output_dir is not None:
        directory = Path(output_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for index, failure in enumerate(result.failures):
            save_json(failure.to_dict(), directory / f"{suite.value}_failure_{index:04d}.json")
        logger.info(f"Wrote {len(result.failures)} failure payloads to {directory}")
    return result
