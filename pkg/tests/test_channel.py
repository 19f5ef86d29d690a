"""Test the two-qubit Kraus layer and the minimum gate fidelity"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.channel.fidelity import (
    lattice_fidelity_oracle,
    min_gate_fidelity,
    sampling_fidelity_oracle,
    simplex_lattice,
    state_fidelity,
)
from src.channel.kraus import (
    HV_INDEX,
    QuantumChannel,
    TwoQubitDensity,
    apply_channel,
    basis_state,
    cascadable_channel,
    compose,
    primitive_channel,
    u_phase,
    unitary_channel,
)
from src.exceptions import InvalidParameterError, InvalidStateError

probabilities = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
phases = st.floats(min_value=-np.pi, max_value=np.pi, allow_nan=False)


def random_density(seed: int) -> TwoQubitDensity:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return TwoQubitDensity(rho / np.trace(rho).real)


class TestPhaseUnitary:
    """Test the target conditional phase"""

    def test_zero_is_identity(self):
        assert np.allclose(u_phase(0.0), np.eye(4))

    def test_pi(self):
        """Test the controlled-Z case"""
        assert np.allclose(u_phase(np.pi), np.diag([1, 1, 1, -1]))

    @given(phases, phases)
    def test_group_law(self, a, b):
        """Test U(a) U(b) = U(a + b)"""
        assert np.allclose(u_phase(a) @ u_phase(b), u_phase(a + b), atol=1e-14)


class TestDensity:
    """Test density-matrix invariants"""

    def test_rejects_non_hermitian(self):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 1] = 0.5
        with pytest.raises(InvalidStateError):
            TwoQubitDensity(m)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidStateError):
            TwoQubitDensity(np.diag([1.0, -0.1, 0.0, 0.0]))

    def test_rejects_excess_trace(self):
        with pytest.raises(InvalidStateError):
            TwoQubitDensity(np.diag([0.6, 0.6, 0.0, 0.0]))

    def test_subnormalized_allowed(self):
        """Test a trace below one is a valid state with lost probability"""
        assert TwoQubitDensity(np.diag([0.0, 0.0, 0.0, 0.7])).trace == pytest.approx(0.7)

    def test_wrong_shape(self):
        with pytest.raises(InvalidStateError):
            TwoQubitDensity(np.eye(2))


class TestChannels:
    """Test the primitive and cascadable gate channels"""

    def test_completeness(self):
        """Test the primitive channel is trace preserving"""
        for eps_sq in (0.0, 0.01, 0.3, 1.0):
            assert np.allclose(primitive_channel(eps_sq, 0.4).completeness(), np.eye(4), atol=1e-12)

    def test_rejects_bad_probability(self):
        with pytest.raises(InvalidParameterError):
            primitive_channel(1.5, 0.0)
        with pytest.raises(InvalidParameterError):
            cascadable_channel(-0.1, 0.0)

    def test_rejects_incomplete_kraus(self):
        """Test trace-preserving channels must be complete"""
        with pytest.raises(InvalidParameterError):
            QuantumChannel((0.5 * np.eye(4),))

    def test_rejects_amplifying_kraus(self):
        """Test sub-completeness for non-trace-preserving channels"""
        with pytest.raises(InvalidParameterError):
            QuantumChannel((1.1 * np.eye(4),), trace_preserving=False)

    def test_damping_of_hv(self):
        """Test |11><11| with eps_sq = 0.1 maps to diag(0.1, 0, 0, 0.9)"""
        out = apply_channel(primitive_channel(0.1, 0.7), TwoQubitDensity.basis(HV_INDEX))
        assert np.allclose(out.matrix, np.diag([0.1, 0.0, 0.0, 0.9]), atol=1e-14)

    def test_full_damping(self):
        """Test eps_sq = 1 sends |11> to |00>"""
        out = primitive_channel(1.0, 0.0)(TwoQubitDensity.basis(HV_INDEX))
        assert np.allclose(out.matrix, np.diag([1.0, 0.0, 0.0, 0.0]), atol=1e-14)

    def test_vacuum_unchanged(self):
        out = primitive_channel(0.3, 1.0)(TwoQubitDensity.basis(0))
        assert np.allclose(out.matrix, TwoQubitDensity.basis(0).matrix)

    def test_identity_channel(self):
        rho = random_density(1)
        assert np.allclose(unitary_channel(np.eye(4))(rho).matrix, rho.matrix, atol=1e-14)

    def test_error_free_gate_is_unitary(self):
        """Test eps_sq = 0 is conjugation by the phase unitary"""
        rho = random_density(2)
        u = u_phase(0.9)
        out = primitive_channel(0.0, 0.9)(rho)
        assert np.allclose(out.matrix, u @ rho.matrix @ u.conj().T, atol=1e-14)

    def test_trace_preserved_on_random_state(self):
        out = primitive_channel(0.3, 0.2)(random_density(3))
        assert out.trace == pytest.approx(1.0, abs=1e-12)

    def test_cascadable_success_probability(self):
        """Test the cascadable gate loses eps_sq only from |11>"""
        channel = cascadable_channel(0.2, 0.5)
        assert channel(TwoQubitDensity.basis(HV_INDEX)).trace == pytest.approx(0.8)
        assert channel(TwoQubitDensity.basis(1)).trace == pytest.approx(1.0)

    def test_cascadable_without_error_matches_primitive(self):
        rho = random_density(4)
        assert np.allclose(cascadable_channel(0.0, 0.3)(rho).matrix, primitive_channel(0.0, 0.3)(rho).matrix)

    def test_compose_flags(self):
        assert compose(primitive_channel(0.1, 0.2), primitive_channel(0.1, 0.2)).trace_preserving
        assert not compose(primitive_channel(0.1, 0.2), cascadable_channel(0.1, 0.2)).trace_preserving

    @settings(max_examples=30, deadline=None)
    @given(probabilities, phases, phases)
    def test_cascadable_gates_commute(self, eps_sq, a, b):
        """Test composition order does not matter for equal error probabilities"""
        rho = random_density(5)
        first = compose(cascadable_channel(eps_sq, a), cascadable_channel(eps_sq, b))(rho)
        second = compose(cascadable_channel(eps_sq, b), cascadable_channel(eps_sq, a))(rho)
        assert np.allclose(first.matrix, second.matrix, atol=1e-12)


class TestMinGateFidelity:
    """Test the minimum fidelity over pure inputs"""

    @pytest.mark.parametrize("eps_sq", [0.0, 0.01, 0.3])
    def test_primitive_gate(self, eps_sq):
        """Test F = 1 - eps_sq"""
        outcome = min_gate_fidelity(primitive_channel(eps_sq, 0.6), u_phase(0.6))
        assert outcome.fidelity == pytest.approx(1.0 - eps_sq, abs=1e-6)
        assert outcome.converged

    @pytest.mark.parametrize("eps_sq", [0.01, 0.3])
    def test_minimizer_is_hv(self, eps_sq):
        """Test the search lands on |11>"""
        outcome = min_gate_fidelity(primitive_channel(eps_sq, 0.6), u_phase(0.6), seed=7)
        assert outcome.overlap_with(basis_state(HV_INDEX)) > 0.999

    def test_never_above_hv_value(self):
        """Test the result never exceeds the fidelity at |11>"""
        channel = primitive_channel(0.2, 0.1)
        outcome = min_gate_fidelity(channel, u_phase(0.1), starts=4)
        assert outcome.fidelity <= state_fidelity(channel, u_phase(0.1), basis_state(HV_INDEX)) + 1e-15

    def test_primitive_matches_lattice(self):
        """Test against the exhaustive population lattice"""
        channel = primitive_channel(0.3, 1.2)
        oracle, _ = lattice_fidelity_oracle(channel, u_phase(1.2))
        outcome = min_gate_fidelity(channel, u_phase(1.2))
        assert outcome.fidelity == pytest.approx(oracle, abs=1e-3)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_diagonal_phase_error_matches_lattice(self, seed):
        """Test a random diagonal phase error against the lattice oracle"""
        rng = np.random.default_rng(seed)
        actual = np.diag(np.exp(1j * rng.uniform(-0.5, 0.5, 4)))
        target = np.diag(np.exp(1j * rng.uniform(-0.5, 0.5, 4)))
        oracle, _ = lattice_fidelity_oracle(unitary_channel(actual), target)
        outcome = min_gate_fidelity(unitary_channel(actual), target, seed=seed)
        assert outcome.fidelity <= oracle + 1e-9
        assert oracle - outcome.fidelity < 1e-3

    def test_deterministic_for_seed(self):
        channel = primitive_channel(0.1, 0.3)
        first = min_gate_fidelity(channel, u_phase(0.3), seed=11)
        second = min_gate_fidelity(channel, u_phase(0.3), seed=11)
        assert first.fidelity == second.fidelity

    def test_primitive_matches_random_sampling(self):
        """Test against the minimum over 10^5 seeded Haar-random inputs"""
        channel = primitive_channel(0.3, 1.2)
        sampled, state = sampling_fidelity_oracle(channel, u_phase(1.2), samples=100_000, seed=3)
        outcome = min_gate_fidelity(channel, u_phase(1.2))
        assert sampled >= outcome.fidelity - 1e-9
        assert sampled - outcome.fidelity < 2e-2
        assert abs(state[HV_INDEX]) ** 2 > 0.9

    def test_sampling_is_seeded(self):
        channel = primitive_channel(0.1, 0.3)
        first, _ = sampling_fidelity_oracle(channel, u_phase(0.3), samples=2_000, seed=5, batch=500)
        second, _ = sampling_fidelity_oracle(channel, u_phase(0.3), samples=2_000, seed=5, batch=500)
        assert first == second

    def test_simplex_lattice_size(self):
        """Test the lattice enumerates every composition of the step count"""
        lattice = simplex_lattice(6)
        assert len(lattice) == 84
        assert np.allclose(lattice.sum(axis=1), 1.0)
