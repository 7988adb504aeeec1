"""
Tests for the coherence quantifiers and the phase alignment test.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coherence_fraction_sdk.errors import DimensionMismatch
from coherence_fraction_sdk.measures import (
    binary_entropy,
    check_phase_alignment,
    dephase,
    is_x_state,
    l1_coherence,
    qubit_intrinsic_randomness,
    qubit_robustness,
    relative_entropy_coherence,
)
from coherence_fraction_sdk.named_states import (
    phi_plus,
    plus_state,
    qutrit_mixture,
    random_nonnegative_state,
    random_x_state,
)
from coherence_fraction_sdk.qcore import (
    PureState,
    apply_unitary,
    make_density_matrix,
    pure_to_density,
    random_density_matrix,
    random_incoherent_unitary,
    random_pure_state,
)


class TestL1Coherence:
    """Sum of off-diagonal moduli."""

    def test_plus_state(self):
        assert l1_coherence(plus_state()) == pytest.approx(1.0)

    def test_incoherent_state(self):
        assert l1_coherence(make_density_matrix(np.diag([0.3, 0.7]))) == pytest.approx(0.0, abs=1e-15)

    def test_maximally_coherent_qutrit(self):
        rho = pure_to_density(PureState(np.ones(3) / np.sqrt(3)))
        assert l1_coherence(rho) == pytest.approx(2.0)

    def test_dephase_keeps_diagonal(self):
        rho = random_density_matrix(3, 4)
        assert np.allclose(np.diag(dephase(rho).matrix), np.diag(rho.matrix))
        assert l1_coherence(dephase(rho)) == pytest.approx(0.0, abs=1e-15)


class TestRelativeEntropy:
    """Relative entropy of coherence."""

    def test_plus_state(self):
        assert relative_entropy_coherence(plus_state()) == pytest.approx(1.0)

    def test_uniform_qutrit(self):
        rho = pure_to_density(PureState(np.ones(3) / np.sqrt(3)))
        assert relative_entropy_coherence(rho) == pytest.approx(np.log2(3))

    def test_incoherent_state(self):
        assert relative_entropy_coherence(make_density_matrix(np.diag([0.3, 0.7]))) == pytest.approx(0.0, abs=1e-12)

    def test_binary_entropy_endpoints(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0)

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=1000))
    def test_nonnegative(self, d, seed):
        assert relative_entropy_coherence(random_density_matrix(d, seed)) >= 0.0


class TestQubitClosedForms:
    """Quantities with closed forms on qubits."""

    def test_intrinsic_randomness(self):
        rho = make_density_matrix([[0.5, 0.3], [0.3, 0.5]])
        assert qubit_intrinsic_randomness(rho) == pytest.approx(0.468996, abs=1e-6)

    def test_robustness_matches_l1(self):
        rho = random_density_matrix(2, 11)
        assert qubit_robustness(rho) == pytest.approx(l1_coherence(rho))

    def test_qubit_only(self):
        with pytest.raises(DimensionMismatch):
            qubit_robustness(random_density_matrix(3, 0))
        with pytest.raises(DimensionMismatch):
            qubit_intrinsic_randomness(random_density_matrix(3, 0))


class TestXStates:
    """Support on the diagonal and the anti-diagonal."""

    def test_generated_x_state(self):
        assert is_x_state(random_x_state(4, 2))

    def test_bell_state_is_x_state(self):
        assert is_x_state(phi_plus())

    def test_generic_state_is_not(self):
        assert not is_x_state(random_density_matrix(4, 2))


class TestPhaseAlignment:
    """Consistency of the off-diagonal arguments."""

    def test_qubits_always_aligned(self):
        report = check_phase_alignment(random_density_matrix(2, 8))
        assert report.aligned
        assert report.witness is not None

    def test_nonnegative_state_has_zero_witness(self):
        report = check_phase_alignment(random_nonnegative_state(4, 1))
        assert report.aligned
        assert np.allclose(report.witness.angles, 0.0)

    def test_incoherent_state_is_aligned(self):
        assert check_phase_alignment(make_density_matrix(np.diag([0.2, 0.3, 0.5]))).aligned

    def test_qutrit_mixture_is_not_aligned(self):
        report = check_phase_alignment(qutrit_mixture(0.5))
        assert not report.aligned
        assert report.witness is None
        assert report.worst_violation > 1e-8

    def test_witness_reproduces_arguments(self):
        phases = np.exp(1j * np.array([0.0, 0.7, 2.1, 4.0]))
        vector = phases / 2.0
        rho = make_density_matrix(0.5 * np.outer(vector, vector.conj()) + 0.5 * np.eye(4) / 4)
        assert np.trace(rho.matrix).real == pytest.approx(1.0)
        report = check_phase_alignment(rho)
        assert report.aligned
        expected = np.exp(1j * (report.witness.angles[:, None] - report.witness.angles[None, :]))
        # rho_jk / |rho_jk| = exp(i(theta_j - theta_k))
        assert np.allclose(rho.matrix / np.abs(rho.matrix), expected)
        assert np.allclose(np.angle(np.exp(1j * (report.witness.angles - report.witness.angles[0]))), np.angle(phases))

    @given(st.integers(min_value=3, max_value=5), st.integers(min_value=0, max_value=1000))
    def test_x_states_with_pairs_are_aligned(self, d, seed):
        # one edge per anti-diagonal pair: no cycles, so always consistent
        assert check_phase_alignment(random_x_state(d, seed)).aligned

    @given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=1000))
    def test_pure_states_are_aligned(self, d, seed):
        assert check_phase_alignment(pure_to_density(random_pure_state(d, seed))).aligned


class TestInvariance:
    """Incoherent unitaries leave the l1 coherence unchanged."""

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=1000))
    def test_l1_invariant(self, d, seed):
        rho = random_density_matrix(d, seed)
        rotated = apply_unitary(rho, random_incoherent_unitary(d, seed + 1))
        assert l1_coherence(rotated) == pytest.approx(l1_coherence(rho), abs=1e-10)

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=1000))
    def test_l1_range(self, d, seed):
        assert 0.0 <= l1_coherence(random_density_matrix(d, seed)) <= d - 1 + 1e-12
