"""
Tests for the coherence fraction of states.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coherence_fraction_sdk.config import OptimizerConfig
from coherence_fraction_sdk.errors import DimensionMismatch, DimensionTooLarge, NotApplicable, OutOfRange
from coherence_fraction_sdk.fraction import (
    bipartite_coherence_fraction,
    coherence_fraction,
    coherence_fraction_oracle,
    coherence_fraction_upper_bound,
    distillable_coherence_pure_qubit,
    is_coherent_by_fraction,
    local_global_report,
    phase_objective,
)
from coherence_fraction_sdk.measures import l1_coherence, relative_entropy_coherence
from coherence_fraction_sdk.named_states import (
    plus_state,
    qutrit_mixture,
    random_nonnegative_state,
    two_qubit_family,
)
from coherence_fraction_sdk.qcore import (
    PhaseVector,
    apply_unitary,
    make_density_matrix,
    pure_to_density,
    random_density_matrix,
    random_incoherent_unitary,
    random_pure_state,
)

QUBIT = [[0.5, 0.2 - 0.1j], [0.2 + 0.1j, 0.5]]

# equal-weight qutrit mixture: the phase cycle of its off-diagonals cannot close
QUTRIT_BOUND = 0.7716656
QUTRIT_FRACTION = 0.7714778
QUTRIT_GAP = 1.8775e-4


class TestQubitFraction:
    """Exact qubit value 1/2 + |rho_01|."""

    def test_known_value(self):
        result = coherence_fraction(make_density_matrix(QUBIT))
        assert result.value == pytest.approx(0.5 + np.sqrt(0.05))
        assert result.value == pytest.approx(0.72361, abs=1e-5)
        assert result.converged

    def test_argmax_attains_value(self):
        rho = make_density_matrix(QUBIT)
        result = coherence_fraction(rho)
        assert phase_objective(rho, result.argmax_phases) == pytest.approx(result.value)

    def test_exact_on_random_qubits(self):
        for seed in range(1000):
            rho = random_density_matrix(2, seed)
            expected = 0.5 + abs(rho.matrix[0, 1])
            result = coherence_fraction(rho)
            assert result.value == pytest.approx(expected, abs=1e-12), seed
            assert phase_objective(rho, result.argmax_phases) == pytest.approx(expected, abs=1e-12), seed

    def test_maximally_mixed(self):
        assert coherence_fraction(make_density_matrix(np.eye(2) / 2)).value == pytest.approx(0.5)

    def test_plus_state(self):
        assert coherence_fraction(plus_state()).value == pytest.approx(1.0)

    def test_oracle_agrees(self):
        rho = make_density_matrix(QUBIT)
        assert coherence_fraction_oracle(rho, 360) == pytest.approx(coherence_fraction(rho).value, abs=2e-4)


class TestCoordinateAscent:
    """Multi-start phase optimizer for d >= 3."""

    def test_nonnegative_state_hits_upper_bound(self, cfg):
        rho = random_nonnegative_state(4, 3)
        assert coherence_fraction(rho, cfg).value == pytest.approx(coherence_fraction_upper_bound(rho), abs=1e-9)

    def test_two_qubit_family(self, cfg):
        assert coherence_fraction(two_qubit_family(0.4), cfg).value == pytest.approx(0.7, abs=1e-9)

    def test_pure_state_attains_bound(self, cfg):
        rho = pure_to_density(random_pure_state(5, 12))
        assert coherence_fraction(rho, cfg).value == pytest.approx(coherence_fraction_upper_bound(rho), abs=1e-8)

    def test_qutrit_counterexample_is_strictly_below_bound(self, cfg):
        rho = qutrit_mixture(0.5)
        value = coherence_fraction(rho, cfg).value
        bound = coherence_fraction_upper_bound(rho)
        assert bound == pytest.approx(QUTRIT_BOUND, abs=1e-6)
        assert value == pytest.approx(QUTRIT_FRACTION, abs=1e-6)
        assert bound - value == pytest.approx(QUTRIT_GAP, abs=1e-6)
        assert bound - value > 1e-4
        assert coherence_fraction_oracle(rho) == pytest.approx(value, abs=1e-3)

    def test_deterministic(self):
        rho = random_density_matrix(4, 9)
        first = coherence_fraction(rho, OptimizerConfig(seed=3))
        second = coherence_fraction(rho, OptimizerConfig(seed=3))
        assert first.value == second.value
        assert np.array_equal(first.argmax_phases.angles, second.argmax_phases.angles)
        assert first.restart_index == second.restart_index

    def test_argmax_is_canonical(self, cfg):
        result = coherence_fraction(random_density_matrix(3, 1), cfg)
        assert result.argmax_phases.angles[0] == 0.0

    def test_warm_start_dimension(self, cfg):
        with pytest.raises(DimensionMismatch):
            coherence_fraction(random_density_matrix(3, 1), cfg, initial_phases=PhaseVector.zeros(4))

    def test_warm_start_at_optimum(self, cfg):
        rho = random_density_matrix(3, 2)
        best = coherence_fraction(rho, cfg)
        warm = coherence_fraction(rho, OptimizerConfig(restarts=1), initial_phases=best.argmax_phases)
        assert warm.value == pytest.approx(best.value, abs=1e-9)

    def test_trace_is_monotone(self):
        result = coherence_fraction(random_density_matrix(4, 6), OptimizerConfig(record_trace=True))
        trace = np.array(result.objective_trace)
        assert trace.size > 1
        assert np.all(np.diff(trace) >= -1e-12)

    def test_one_dimensional(self):
        assert coherence_fraction(make_density_matrix([[1.0]])).value == 1.0

    @given(st.integers(min_value=3, max_value=5), st.integers(min_value=0, max_value=1000))
    def test_bounds(self, d, seed):
        rho = random_density_matrix(d, seed)
        value = coherence_fraction(rho, OptimizerConfig(restarts=4)).value
        assert 1.0 / d - 1e-12 <= value <= coherence_fraction_upper_bound(rho) + 1e-8

    @given(st.integers(min_value=0, max_value=1000))
    def test_incoherent_unitary_invariance(self, seed):
        rho = random_density_matrix(3, seed)
        rotated = apply_unitary(rho, random_incoherent_unitary(3, seed))
        cfg = OptimizerConfig(restarts=8)
        assert coherence_fraction(rotated, cfg).value == pytest.approx(coherence_fraction(rho, cfg).value, abs=1e-7)


class TestOracle:
    """Brute-force grid maximum."""

    def test_matches_optimizer_on_qutrits(self, cfg):
        for seed in range(5):
            rho = random_density_matrix(3, seed)
            assert abs(coherence_fraction(rho, cfg).value - coherence_fraction_oracle(rho, 360)) <= 1e-3

    def test_never_exceeds_optimizer(self, cfg):
        rho = random_density_matrix(4, 2)
        assert coherence_fraction_oracle(rho, 24) <= coherence_fraction(rho, cfg).value + 1e-9

    def test_dimension_limit(self):
        with pytest.raises(DimensionTooLarge):
            coherence_fraction_oracle(random_density_matrix(5, 0))

    def test_grid_floor(self):
        with pytest.raises(OutOfRange):
            coherence_fraction_oracle(plus_state(), 4)


class TestCoherenceTest:
    """Deciding coherence through the fraction."""

    def test_plus_state_is_coherent(self):
        assert is_coherent_by_fraction(plus_state())

    def test_diagonal_state_is_not(self):
        assert not is_coherent_by_fraction(make_density_matrix(np.diag([0.2, 0.3, 0.5])))

    def test_unaligned_state_is_rejected(self):
        with pytest.raises(NotApplicable):
            is_coherent_by_fraction(qutrit_mixture(0.5))


class TestDistillableCoherence:
    """Distillable coherence of pure qubits from their fraction."""

    def test_known_value(self):
        assert distillable_coherence_pure_qubit(0.9) == pytest.approx(0.721928, abs=1e-6)

    def test_endpoints(self):
        assert distillable_coherence_pure_qubit(0.5) == pytest.approx(0.0, abs=1e-12)
        assert distillable_coherence_pure_qubit(1.0) == pytest.approx(1.0)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            distillable_coherence_pure_qubit(0.4)

    @given(st.integers(min_value=0, max_value=10_000))
    def test_matches_relative_entropy(self, seed):
        rho = pure_to_density(random_pure_state(2, seed))
        fraction = coherence_fraction(rho).value
        assert distillable_coherence_pure_qubit(fraction) == pytest.approx(relative_entropy_coherence(rho), abs=1e-8)


class TestBipartite:
    """Two-party coherence fraction and the local/global comparison."""

    def test_bipartite_matches_global(self, cfg):
        rho = two_qubit_family(0.4)
        assert bipartite_coherence_fraction(rho, (2, 2), cfg).value == pytest.approx(0.7, abs=1e-9)

    def test_dims_must_factor(self, cfg):
        with pytest.raises(DimensionMismatch):
            bipartite_coherence_fraction(two_qubit_family(0.4), (2, 3), cfg)

    def test_local_global_on_family(self, cfg):
        report = local_global_report(two_qubit_family(0.4), cfg)
        assert report.f_ab == pytest.approx(0.7, abs=1e-9)
        assert report.f_a == pytest.approx(0.7)
        assert report.f_b == pytest.approx(0.7)
        assert report.rhs == pytest.approx(1.9, abs=1e-9)
        assert report.holds

    def test_local_global_requires_two_qubits(self):
        with pytest.raises(DimensionMismatch):
            local_global_report(random_density_matrix(3, 0))

    def test_l1_of_family(self):
        assert l1_coherence(two_qubit_family(0.4)) == pytest.approx(1.8)
