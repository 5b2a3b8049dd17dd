import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covert_bosonic.fock_core import (
    ChannelParams,
    DensityOperator,
    FockCutoff,
    RankDeficiencyError,
    StateValidationError,
    TruncationError,
    annihilation_op,
    anti_normal_char_fn,
    apply_unitary,
    beamsplitter_unitary,
    chi2_numeric,
    dual_rail_density,
    mode_annihilation_op,
    partial_trace,
    qre,
    tensor,
    thermal_occupation,
    thermal_state,
    trace_distance,
    two_mode_amplifier_unitary,
)
from covert_bosonic.closed_form import LogicalQubit

CUT = FockCutoff(6)


def random_state(rng, num_modes=1, cutoff=CUT):
    d = cutoff.dim**num_modes
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityOperator(num_modes, cutoff, m)


class TestValidation:
    def test_rejects_non_hermitian(self):
        m = np.eye(7, dtype=complex)
        m[0, 1] = 0.5
        m /= np.trace(m)
        with pytest.raises(StateValidationError):
            DensityOperator(1, CUT, m)

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([1.5, -0.5, 0, 0, 0, 0, 0]).astype(complex)
        with pytest.raises(StateValidationError):
            DensityOperator(1, CUT, m)

    def test_rejects_bad_trace(self):
        m = np.eye(7, dtype=complex) / 3.0
        with pytest.raises(StateValidationError):
            DensityOperator(1, CUT, m)

    def test_trace_deficit_allowed_up_to_leak(self):
        m = np.diag([0.9, 0, 0, 0, 0, 0, 0]).astype(complex)
        DensityOperator(1, CUT, m, truncation_leak=0.1)
        with pytest.raises(StateValidationError):
            DensityOperator(1, CUT, m, truncation_leak=0.05)

    def test_entries_read_only(self):
        s = thermal_state(0.5, CUT)
        with pytest.raises(ValueError):
            s.entries[0, 0] = 1.0

    def test_channel_params_bounds(self):
        with pytest.raises(ValueError):
            ChannelParams(1.2, 0.1)
        with pytest.raises(ValueError):
            ChannelParams(0.5, -0.1)
        ChannelParams(0.0, 0.0)
        ChannelParams(1.0, 2.0)

    def test_cutoff_requires_at_least_one_photon(self):
        with pytest.raises(ValueError):
            FockCutoff(0)


class TestOperators:
    def test_annihilation_matrix_elements(self):
        a = annihilation_op(CUT)
        for k in range(1, CUT.dim):
            assert a[k - 1, k] == pytest.approx(math.sqrt(k))
        assert np.count_nonzero(a) == CUT.dim - 1

    def test_mode_annihilation_commutes_across_modes(self):
        a0 = mode_annihilation_op(0, 2, FockCutoff(3))
        a1 = mode_annihilation_op(1, 2, FockCutoff(3))
        assert np.allclose(a0 @ a1, a1 @ a0)

    def test_thermal_state_mean_and_leak(self):
        nbar = 0.3
        s = thermal_state(nbar, FockCutoff(40))
        k = np.arange(41)
        mean = float(np.sum(k * np.diag(s.entries).real))
        assert mean == pytest.approx(nbar, abs=1e-10)
        assert s.truncation_leak < 1e-15
        small = thermal_state(2.0, FockCutoff(3))
        assert small.truncation_leak == pytest.approx(
            1.0 - sum(thermal_occupation(k, 2.0) for k in range(4))
        )

    def test_dual_rail_density_entries(self):
        q = LogicalQubit(0.3, 0.7, 0.2 + 0.1j)
        rho = dual_rail_density(q, CUT)
        d = CUT.dim
        assert rho.entries[0 * d + 1, 0 * d + 1] == pytest.approx(0.3)
        assert rho.entries[1 * d + 0, 1 * d + 0] == pytest.approx(0.7)
        assert rho.entries[0 * d + 1, 1 * d + 0] == pytest.approx(0.2 + 0.1j)
        assert np.trace(rho.entries) == pytest.approx(1.0)


class TestTensorAndTrace:
    def test_partial_trace_inverts_tensor(self):
        rng = np.random.default_rng(3)
        a = random_state(rng)
        b = random_state(rng)
        ab = tensor(a, b)
        assert np.allclose(partial_trace(ab, [0]).entries, a.entries, atol=1e-12)
        assert np.allclose(partial_trace(ab, [1]).entries, b.entries, atol=1e-12)

    def test_partial_trace_three_modes(self):
        rng = np.random.default_rng(4)
        cut = FockCutoff(2)
        a = random_state(rng, cutoff=cut)
        b = random_state(rng, cutoff=cut)
        c = random_state(rng, cutoff=cut)
        abc = tensor(tensor(a, b), c)
        kept = partial_trace(abc, [0, 2])
        assert np.allclose(kept.entries, np.kron(a.entries, c.entries), atol=1e-12)

    def test_partial_trace_validates_modes(self):
        rng = np.random.default_rng(5)
        s = random_state(rng, num_modes=2, cutoff=FockCutoff(2))
        with pytest.raises(ValueError):
            partial_trace(s, [])
        with pytest.raises(ValueError):
            partial_trace(s, [2])


class TestBeamsplitter:
    @pytest.mark.parametrize("eta", [0.0, 0.3, 0.5, 0.9, 1.0])
    def test_unitarity(self, eta):
        u = beamsplitter_unitary(eta, 0, 1, 2, FockCutoff(4))
        assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-12)

    @pytest.mark.parametrize("eta", [0.17, 0.5, 0.83])
    def test_heisenberg_mode_map(self, eta):
        """U^dag a U = sqrt(eta) a + sqrt(1-eta) b on states clear of the
        cutoff; the reflected port picks up the minus sign."""
        cut = FockCutoff(8)
        u = beamsplitter_unitary(eta, 0, 1, 2, cut)
        a = mode_annihilation_op(0, 2, cut)
        b = mode_annihilation_op(1, 2, cut)
        d = cut.dim
        low = np.zeros(d * d, dtype=bool)
        for i in range(d):
            for j in range(d):
                if i + j <= 4:
                    low[i * d + j] = True
        t = math.sqrt(eta)
        r = math.sqrt(1.0 - eta)
        out_a = u.conj().T @ a @ u
        out_b = u.conj().T @ b @ u
        assert np.allclose(out_a[np.ix_(low, low)],
                           (t * a + r * b)[np.ix_(low, low)], atol=1e-12)
        assert np.allclose(out_b[np.ix_(low, low)],
                           (r * a - t * b)[np.ix_(low, low)], atol=1e-12)

    def test_thermal_states_are_invariant_in_distribution(self):
        """Mixing two equal thermal states leaves the reduced states thermal."""
        cut = FockCutoff(10)
        th = thermal_state(0.2, cut)
        joint = tensor(th, th)
        u = beamsplitter_unitary(0.7, 0, 1, 2, cut)
        out = apply_unitary(joint, u)
        red = partial_trace(out, [0])
        assert np.allclose(red.entries, th.entries, atol=1e-10)

    def test_amplifier_heisenberg_map(self):
        """U^dag a U = sqrt(G) a + sqrt(G-1) b^dag far below the cutoff.

        The squeezer does not conserve photon number, so the truncated map
        picks up contamination decaying like tanh(r)^(cutoff - subspace);
        the tolerance reflects that."""
        gain = 1.5
        cut = FockCutoff(30)
        u = two_mode_amplifier_unitary(gain, 0, 1, 2, cut)
        a = mode_annihilation_op(0, 2, cut)
        b = mode_annihilation_op(1, 2, cut)
        d = cut.dim
        low = np.zeros(d * d, dtype=bool)
        for i in range(d):
            for j in range(d):
                if i + j <= 3:
                    low[i * d + j] = True
        out_a = u.conj().T @ a @ u
        target = math.sqrt(gain) * a + math.sqrt(gain - 1.0) * b.conj().T
        assert np.allclose(out_a[np.ix_(low, low)], target[np.ix_(low, low)],
                           atol=1e-5)

    def test_amplifier_on_vacuum_gives_thermal(self):
        gain = 1.4
        cut = FockCutoff(25)
        vac = np.zeros((cut.dim, cut.dim), dtype=complex)
        vac[0, 0] = 1.0
        joint = tensor(DensityOperator(1, cut, vac),
                       DensityOperator(1, cut, vac.copy()))
        u = two_mode_amplifier_unitary(gain, 0, 1, 2, cut)
        out = partial_trace(apply_unitary(joint, u), [0])
        expected = thermal_state(gain - 1.0, cut)
        assert np.allclose(out.entries, expected.entries, atol=1e-10)


class TestCharFn:
    def test_thermal_product_closed_form(self):
        nbar = 0.25
        cut = FockCutoff(20)
        s = tensor(thermal_state(nbar, cut), thermal_state(nbar, cut))
        for z1, z2 in [(0.3, 0.1j), (1.0 + 0.5j, -0.2)]:
            val = anti_normal_char_fn(s, z1, z2)
            expected = math.exp(-(1 + nbar) * (abs(z1) ** 2 + abs(z2) ** 2))
            assert val == pytest.approx(expected, abs=1e-10)

    def test_truncation_error_raised_when_unconverged(self):
        s = tensor(thermal_state(1.5, FockCutoff(5)),
                   thermal_state(1.5, FockCutoff(5)))
        with pytest.raises(TruncationError):
            anti_normal_char_fn(s, 2.0, 2.0, error_tol=1e-12)

    def test_requires_two_modes(self):
        with pytest.raises(ValueError):
            anti_normal_char_fn(thermal_state(0.1, CUT), 0.1, 0.1)


class TestDivergences:
    def test_trace_distance_extremes(self):
        d = CUT.dim
        m0 = np.zeros((d, d), dtype=complex)
        m0[0, 0] = 1.0
        m1 = np.zeros((d, d), dtype=complex)
        m1[1, 1] = 1.0
        s0 = DensityOperator(1, CUT, m0)
        s1 = DensityOperator(1, CUT, m1)
        assert trace_distance(s0, s1) == pytest.approx(1.0)
        assert trace_distance(s0, s0) == pytest.approx(0.0)

    def test_qre_of_identical_states_is_zero(self):
        s = thermal_state(0.4, CUT)
        assert qre(s, s) == pytest.approx(0.0, abs=1e-12)

    def test_qre_base_conversion(self):
        rng = np.random.default_rng(8)
        a = random_state(rng)
        b = thermal_state(0.5, CUT)
        assert qre(a, b, base=2.0) == pytest.approx(
            qre(a, b, base=math.e) / math.log(2.0)
        )

    def test_qre_rank_deficient_reference_raises(self):
        d = CUT.dim
        m = np.zeros((d, d), dtype=complex)
        m[0, 0] = 1.0
        pure = DensityOperator(1, CUT, m)
        full = thermal_state(0.5, CUT)
        with pytest.raises(RankDeficiencyError):
            qre(full, pure)
        with pytest.raises(RankDeficiencyError):
            chi2_numeric(full, pure)

    def test_chi2_of_identical_states_is_zero(self):
        rng = np.random.default_rng(9)
        s = random_state(rng)
        assert chi2_numeric(s, s) == pytest.approx(0.0, abs=1e-12)

    def test_space_mismatch_rejected(self):
        a = thermal_state(0.4, CUT)
        b = thermal_state(0.4, FockCutoff(4))
        with pytest.raises(ValueError):
            trace_distance(a, b)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_divergence_properties_on_random_states(self, seed):
        rng = np.random.default_rng(seed)
        a = random_state(rng)
        b = random_state(rng)
        c = random_state(rng)
        td_ab = trace_distance(a, b)
        assert 0.0 <= td_ab <= 1.0 + 1e-12
        assert td_ab == pytest.approx(trace_distance(b, a))
        # triangle inequality
        assert td_ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10
        d_nats = qre(a, b, base=math.e)
        assert d_nats >= -1e-10
        # quantum Pinsker: (1/2)||a-b||_1 <= sqrt(D/2) in nats
        assert td_ab <= math.sqrt(max(d_nats, 0.0) / 2.0) + 1e-8
        # relative entropy is bounded by chi-squared
        assert d_nats <= chi2_numeric(a, b) + 1e-8
