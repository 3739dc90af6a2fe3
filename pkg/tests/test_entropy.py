"""Entropy primitives: frozen oracle values, invariants, error contracts."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dpsqkd.entropy import (
    DensityMatrix,
    ProbDist,
    binary_entropy,
    conditional_entropy,
    partial_trace,
    shannon_entropy,
    source_entropy,
    tensor_product,
    von_neumann_entropy,
)
from dpsqkd.errors import (
    EigensolverError,
    InvalidDistributionError,
    InvalidStateError,
)

from conftest import (
    eigen_entropy_oracle,
    naive_partial_trace,
    random_mixed_state,
    random_pure_state,
)


class TestBinaryEntropy:
    def test_symmetric_maximum(self):
        assert binary_entropy(0.5) == 1.0

    def test_deterministic_endpoints(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_high_precision_value(self):
        # frozen from an mpmath (50-digit) evaluation of the formula
        assert binary_entropy(0.18335) == pytest.approx(0.687351012796, abs=1e-9)

    def test_symmetry(self, rng):
        for x in rng.random(200):
            assert abs(binary_entropy(x) - binary_entropy(1.0 - x)) <= 1e-12

    def test_domain_error(self):
        with pytest.raises(ValueError):
            binary_entropy(-0.01)
        with pytest.raises(ValueError):
            binary_entropy(1.01)

    def test_clamped_within_slack(self):
        assert binary_entropy(-5e-13) == 0.0
        assert binary_entropy(1.0 + 5e-13) == 0.0


class TestShannonEntropy:
    def test_uniform_four(self):
        assert shannon_entropy(ProbDist(np.full(4, 0.25))) == pytest.approx(2.0)

    def test_point_mass(self):
        assert shannon_entropy(ProbDist(np.array([0.0, 1.0, 0.0]))) == 0.0

    def test_direct_evaluation(self):
        p = ProbDist(np.array([0.5, 0.25, 0.25]))
        assert shannon_entropy(p) == pytest.approx(1.5, abs=1e-12)


class TestProbDist:
    def test_rejects_negative_weight(self):
        with pytest.raises(InvalidDistributionError):
            ProbDist(np.array([1.1, -0.1]))

    def test_rejects_bad_normalization(self):
        with pytest.raises(InvalidDistributionError):
            ProbDist(np.array([0.5, 0.4]))

    def test_accepts_tiny_normalization_slack(self):
        ProbDist(np.array([0.5, 0.5 + 5e-10]))


class TestDensityMatrixValidation:
    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex)
        with pytest.raises(InvalidStateError):
            DensityMatrix(m, (2,))

    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.eye(2), (2,))

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(InvalidStateError):
            DensityMatrix(m, (2,))

    def test_rejects_dims_mismatch(self):
        with pytest.raises(InvalidStateError):
            DensityMatrix(np.eye(4) / 4, (2, 3))

    def test_rejects_non_finite(self):
        m = np.diag([np.nan, 1.0]).astype(complex)
        with pytest.raises(InvalidStateError):
            DensityMatrix(m, (2,))


class TestVonNeumannEntropy:
    def test_pure_state_zero(self, rng):
        for dims in [(2,), (3,), (2, 2)]:
            rho = random_pure_state(rng, dims)
            assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)

    def test_maximally_mixed_qubit(self):
        assert von_neumann_entropy(DensityMatrix.maximally_mixed((2,))) == (
            pytest.approx(1.0, abs=1e-12)
        )

    def test_reduces_to_binary_entropy(self):
        rho = DensityMatrix(np.diag([0.6, 0.4]).astype(complex), (2,))
        # frozen from the arbitrary-precision oracle: h(0.4)
        assert von_neumann_entropy(rho) == pytest.approx(0.970950594455, abs=1e-9)

    def test_nonnegative(self, rng):
        for _ in range(20):
            rho = random_mixed_state(rng, (2, 2))
            assert von_neumann_entropy(rho) >= -1e-9

    def test_eigensolver_failure_is_reported(self):
        bad = DensityMatrix(np.diag([np.nan, 1.0]).astype(complex), (2,),
                            validate=False)
        with pytest.raises(EigensolverError):
            von_neumann_entropy(bad)


class TestPartialTrace:
    def test_product_state_keep_first(self, rng):
        a = random_mixed_state(rng, (2,))
        b = random_mixed_state(rng, (3,))
        reduced = partial_trace(tensor_product(a, b), [0])
        assert_allclose(reduced.entries, a.entries, atol=1e-12)

    def test_bell_state_reduces_to_mixed(self, bell_state):
        for qubit in (0, 1):
            reduced = partial_trace(bell_state, [qubit])
            assert_allclose(reduced.entries, np.eye(2) / 2, atol=1e-12)

    def test_agrees_with_index_summation_oracle(self, rng):
        rho = random_pure_state(rng, (2, 2, 2))
        for keep in ([0], [1], [2], [0, 1], [1, 2], [0, 2]):
            got = partial_trace(rho, keep)
            want = naive_partial_trace(rho.entries, rho.dims, keep)
            assert np.abs(got.entries - want).max() <= 1e-12

    def test_composition(self, rng):
        rho = random_mixed_state(rng, (2, 3, 2))
        two_step = partial_trace(partial_trace(rho, [1, 2]), [1])
        one_step = partial_trace(rho, [2])
        assert np.abs(two_step.entries - one_step.entries).max() <= 1e-12

    def test_trace_preserved(self, rng):
        rho = random_mixed_state(rng, (2, 2, 3))
        reduced = partial_trace(rho, [0, 2])
        assert np.trace(reduced.entries) == pytest.approx(1.0, abs=1e-12)
        assert reduced.dims == (2, 3)

    def test_keep_order_is_tensor_order(self, rng):
        rho = random_mixed_state(rng, (2, 3))
        assert partial_trace(rho, [1, 0]).dims == (2, 3)

    def test_index_out_of_range(self, rng):
        rho = random_mixed_state(rng, (2, 2))
        with pytest.raises(IndexError):
            partial_trace(rho, [2])

    def test_empty_keep_rejected(self, rng):
        rho = random_mixed_state(rng, (2, 2))
        with pytest.raises(InvalidStateError):
            partial_trace(rho, [])


class TestConditionalEntropy:
    def test_bell_state_is_minus_one(self, bell_state):
        assert conditional_entropy(bell_state, [1]) == pytest.approx(-1.0, abs=1e-9)

    def test_product_state_additivity(self, rng):
        a = random_mixed_state(rng, (2,))
        b = random_mixed_state(rng, (3,))
        joint = tensor_product(a, b)
        assert conditional_entropy(joint, [1]) == pytest.approx(
            von_neumann_entropy(a), abs=1e-9
        )

    def test_matches_oracle_eigensolver(self, rng):
        for _ in range(10):
            rho = random_mixed_state(rng, (2, 2))
            want = eigen_entropy_oracle(rho.entries) - eigen_entropy_oracle(
                naive_partial_trace(rho.entries, rho.dims, [1])
            )
            assert conditional_entropy(rho, [1]) == pytest.approx(want, abs=1e-9)

    def test_requires_proper_subset(self, rng):
        rho = random_mixed_state(rng, (2, 2))
        with pytest.raises(InvalidStateError):
            conditional_entropy(rho, [0, 1])
        with pytest.raises(InvalidStateError):
            conditional_entropy(rho, [])


class TestClassicalReduction:
    def test_diagonal_state_matches_shannon_conditional(self, rng):
        """On classical (diagonal) joint states, S(X|Y) is the Shannon value."""
        joint = rng.random((2, 3))
        joint /= joint.sum()
        rho = DensityMatrix(np.diag(joint.ravel()).astype(complex), (2, 3))
        p_y = joint.sum(axis=0)
        shannon_cond = shannon_entropy(ProbDist(joint.ravel())) - shannon_entropy(
            ProbDist(p_y)
        )
        assert conditional_entropy(rho, [1]) == pytest.approx(shannon_cond, abs=1e-9)


class TestTensorAdditivity:
    def test_entropy_adds_over_tensor_products(self, rng):
        for dims_a, dims_b in [((2,), (2,)), ((2, 2), (3,)), ((3,), (2, 2))]:
            a = random_mixed_state(rng, dims_a)
            b = random_mixed_state(rng, dims_b)
            lhs = von_neumann_entropy(tensor_product(a, b))
            rhs = von_neumann_entropy(a) + von_neumann_entropy(b)
            assert lhs == pytest.approx(rhs, abs=1e-9)


class TestSourceEntropy:
    def test_identical_states_carry_nothing(self):
        assert source_entropy(0.0) == 0.0

    def test_orthogonal_limit(self):
        assert source_entropy(10.0) == pytest.approx(1.0, abs=1e-9)

    def test_paper_convention_value(self):
        # frozen from the arbitrary-precision oracle; the 0.0357 optimum
        # in the keyrate module requires exactly this value
        assert source_entropy(0.338, "paper") == pytest.approx(
            0.687463565141, abs=1e-9
        )

    def test_convention_exponents_relate_by_sqrt2(self):
        # exponent 2 at amplitude a equals exponent 4 at amplitude a/sqrt(2)
        a = 0.41
        assert source_entropy(a, "standard") == pytest.approx(
            source_entropy(a / math.sqrt(2.0), "paper"), abs=1e-12
        )

    def test_unknown_convention_rejected(self):
        with pytest.raises(ValueError):
            source_entropy(0.3, "bogus")

    def test_negative_amplitude_rejected(self):
        with pytest.raises(ValueError):
            source_entropy(-0.1)
