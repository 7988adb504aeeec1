"""
Tests for the validated state primitives.
"""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coherence_fraction_sdk.errors import (
    DimensionMismatch,
    InvalidPhase,
    NotHermitian,
    NotNormalized,
    NotPositive,
    OutOfRange,
    TraceNotOne,
    ValidationError,
)
from coherence_fraction_sdk.models import Subsystem
from coherence_fraction_sdk.named_states import phi_plus, plus_state
from coherence_fraction_sdk.qcore import (
    DensityMatrix,
    PhaseVector,
    PureState,
    apply_unitary,
    make_density_matrix,
    maximally_coherent_state,
    partial_trace,
    pure_to_density,
    purity,
    random_density_matrix,
    random_incoherent_unitary,
    random_pure_state,
    tensor,
)


class TestDensityMatrix:
    """Construction-time validation of density matrices."""

    def test_valid_state(self):
        rho = make_density_matrix([[0.75, 0.25], [0.25, 0.25]])
        assert rho.dim == 2
        assert not rho.matrix.flags.writeable

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian) as info:
            make_density_matrix([[0.5, 0.3], [0.1, 0.5]])
        assert info.value.invariant == "NotHermitian"
        assert info.value.magnitude == pytest.approx(0.2)

    def test_trace_not_one(self):
        with pytest.raises(TraceNotOne):
            make_density_matrix([[0.5, 0.0], [0.0, 0.6]])

    def test_trace_is_not_renormalized(self):
        with pytest.raises(TraceNotOne):
            make_density_matrix(np.eye(3))

    def test_not_positive(self):
        with pytest.raises(NotPositive):
            make_density_matrix([[0.5, 0.6], [0.6, 0.5]])

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            make_density_matrix(np.ones((2, 3)) / 2)

    def test_validation_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            make_density_matrix([[1.0, 0.0], [0.0, 1.0]])
        assert issubclass(NotPositive, ValidationError)

    def test_to_dict(self):
        data = plus_state().to_dict()
        assert data["dim"] == 2
        assert data["matrix"][0][1] == pytest.approx([0.5, 0.0])


class TestPureAndPhases:
    """Pure states and phase vectors."""

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            PureState([1.0, 1.0])

    def test_pure_to_density(self):
        rho = pure_to_density(PureState(np.array([1.0, 1.0j]) / np.sqrt(2)))
        assert rho.matrix[0, 1] == pytest.approx(-0.5j)

    def test_phase_vector_requires_zero_first_angle(self):
        with pytest.raises(InvalidPhase):
            PhaseVector([0.1, 0.2])

    def test_phase_vector_range(self):
        with pytest.raises(InvalidPhase):
            PhaseVector([0.0, 2 * np.pi])
        with pytest.raises(InvalidPhase):
            PhaseVector([0.0, -0.1])

    def test_canonical_shifts_and_wraps(self):
        theta = PhaseVector.canonical([1.0, 0.5, 4.0, 1.0 + 2 * np.pi + 1.0])
        assert theta.angles[0] == 0.0
        assert theta.angles[1] == pytest.approx(2 * np.pi - 0.5)
        assert theta.angles[2] == pytest.approx(3.0)
        assert theta.angles[3] == pytest.approx(1.0)

    def test_maximally_coherent_state(self):
        psi = maximally_coherent_state(PhaseVector.zeros(4))
        assert np.allclose(psi.amplitudes, 0.5)

    @given(st.lists(st.floats(min_value=-20.0, max_value=20.0), min_size=1, max_size=6))
    def test_canonical_always_valid(self, angles):
        theta = PhaseVector.canonical(angles)
        assert theta.angles[0] == 0.0
        assert np.all((theta.angles >= 0.0) & (theta.angles < 2 * np.pi))


class TestCompositeSystems:
    """Tensor products and partial traces."""

    def test_tensor_ordering(self):
        zero = make_density_matrix([[1.0, 0.0], [0.0, 0.0]])
        one = make_density_matrix([[0.0, 0.0], [0.0, 1.0]])
        product = tensor(zero, one)
        # |01> sits at index 0*2 + 1
        assert product.matrix[1, 1] == pytest.approx(1.0)

    def test_partial_trace_of_product(self):
        a = random_density_matrix(2, 1)
        b = random_density_matrix(3, 2)
        ab = tensor(a, b)
        assert np.allclose(partial_trace(ab, (2, 3), Subsystem.FIRST).matrix, a.matrix)
        assert np.allclose(partial_trace(ab, (2, 3), Subsystem.SECOND).matrix, b.matrix)

    def test_partial_trace_of_bell_state(self):
        reduced = partial_trace(phi_plus(), (2, 2))
        assert np.allclose(reduced.matrix, np.eye(2) / 2)

    def test_partial_trace_bad_dims(self):
        with pytest.raises(DimensionMismatch):
            partial_trace(phi_plus(), (3, 2))


class TestRandomStates:
    """Seeded generators."""

    def test_reproducible(self):
        assert np.array_equal(random_density_matrix(3, 5).matrix, random_density_matrix(3, 5).matrix)
        assert np.array_equal(random_pure_state(4, 5).amplitudes, random_pure_state(4, 5).amplitudes)

    def test_different_seeds_differ(self):
        assert not np.allclose(random_density_matrix(3, 5).matrix, random_density_matrix(3, 6).matrix)

    def test_dimension_check(self):
        with pytest.raises(OutOfRange):
            random_pure_state(1, 0)

    @given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=10_000))
    def test_random_density_is_valid(self, d, seed):
        rho = random_density_matrix(d, seed)
        assert isinstance(rho, DensityMatrix)
        assert 1.0 / d - 1e-12 <= purity(rho) <= 1.0 + 1e-12

    def test_incoherent_unitary_is_unitary_and_monomial(self):
        u = random_incoherent_unitary(4, 3)
        assert np.allclose(u @ u.conj().T, np.eye(4))
        assert np.all(np.count_nonzero(np.abs(u) > 1e-12, axis=1) == 1)

    def test_apply_unitary_shape_check(self):
        with pytest.raises(DimensionMismatch):
            apply_unitary(plus_state(), np.eye(3))
