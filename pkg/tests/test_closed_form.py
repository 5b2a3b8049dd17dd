import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covert_bosonic.closed_form import (
    DivergenceUndefinedError,
    LogicalQubit,
    bob_state_closed,
    chi2_bound,
    chi2_closed,
    p_fail,
    p_prime,
    p_total,
    w1_coeff,
    w2_coeff,
    willie_char_fn_closed,
    willie_state_closed,
)
from covert_bosonic.fock_core import (
    ChannelParams,
    FockCutoff,
    tensor,
    thermal_occupation,
    thermal_state,
)

FIG2 = ChannelParams(0.9, 0.12)
CUT = FockCutoff(12)


def valid_qubits():
    s = 1.0 / math.sqrt(2.0)
    return [
        LogicalQubit(1.0, 0.0),
        LogicalQubit(0.0, 1.0),
        LogicalQubit.pure(s, s),
        LogicalQubit.pure(s, s * 1j),
        LogicalQubit(0.5, 0.5, 0.0),
        LogicalQubit(0.3, 0.7, 0.2 - 0.3j),
    ]


class TestLogicalQubit:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            LogicalQubit(0.6, 0.6)

    def test_positivity_enforced(self):
        with pytest.raises(ValueError):
            LogicalQubit(0.5, 0.5, 0.6)

    def test_pure_constructor(self):
        q = LogicalQubit.pure(0.6, 0.8j)
        assert q.alpha_sq == pytest.approx(0.36)
        assert q.beta_sq == pytest.approx(0.64)
        assert q.gamma == pytest.approx(0.6 * (-0.8j))

    def test_pure_requires_normalized_amplitudes(self):
        with pytest.raises(ValueError):
            LogicalQubit.pure(1.0, 1.0)

    def test_matrix_is_psd_with_unit_trace(self):
        for q in valid_qubits():
            m = q.matrix()
            assert np.trace(m) == pytest.approx(1.0)
            assert np.linalg.eigvalsh(m)[0] >= -1e-12


class TestCoefficients:
    def test_w1_at_eta_one_is_thermal_product(self):
        params = ChannelParams(1.0, 0.12)
        for f in range(4):
            for g in range(4):
                expected = thermal_occupation(f, 0.12) * thermal_occupation(g, 0.12)
                assert w1_coeff(f, g, params) == pytest.approx(float(expected))

    def test_w1_g_zero_is_finite(self):
        # g=0 exercises the removable singularity of the g-1 exponent
        v = w1_coeff(0, 0, FIG2)
        n = 0.9 * 0.12
        expected = (1.0 / (1.0 + n) - (1.0 - 0.9) / (1.0 + n) ** 2) * (1.0 / (1.0 + n))
        assert v == pytest.approx(expected, rel=1e-14)

    def test_w2_zero_cases(self):
        assert w2_coeff(0, 3, FIG2) == 0.0
        assert w2_coeff(2, 1, ChannelParams(1.0, 0.12)) == 0.0

    def test_w2_direct_value(self):
        n = 0.9 * 0.12
        expected = 0.1 * n**0 / (1.0 + n) ** 4 * math.sqrt(1.0)
        assert w2_coeff(1, 0, FIG2) == pytest.approx(expected, rel=1e-14)

    def test_negative_indices_rejected(self):
        with pytest.raises(ValueError):
            w1_coeff(-1, 0, FIG2)
        with pytest.raises(ValueError):
            w2_coeff(0, -2, FIG2)


class TestWillieState:
    def test_eta_one_is_thermal_product(self):
        params = ChannelParams(1.0, 0.12)
        state = willie_state_closed(LogicalQubit.pure(0.6, 0.8), params, CUT)
        th = thermal_state(0.12, CUT)
        product = tensor(th, th)
        assert np.allclose(state.dense(), product.entries, atol=1e-12)

    def test_is_valid_density_operator(self):
        for q in valid_qubits():
            rho = willie_state_closed(q, FIG2, FockCutoff(20)).to_density_operator()
            assert rho.truncation_leak < 1e-10

    def test_pole_input_gives_diagonal_state(self):
        state = willie_state_closed(LogicalQubit(1.0, 0.0), FIG2, CUT)
        assert np.count_nonzero(state.upper) == 0
        d = CUT.dim
        for f in range(4):
            for g in range(4):
                assert state.diag[f, g] == pytest.approx(w1_coeff(f, g, FIG2))

    def test_support_pattern_conserves_total_photon_number(self):
        q = LogicalQubit.pure(0.6, 0.8j)
        dense = willie_state_closed(q, FIG2, CUT).dense()
        d = CUT.dim
        for row in range(d * d):
            for col in range(d * d):
                if dense[row, col] != 0.0:
                    assert row // d + row % d == col // d + col % d

    def test_lower_is_conjugate_of_upper(self):
        q = LogicalQubit.pure(0.6, 0.8j)
        state = willie_state_closed(q, FIG2, CUT)
        lower = state.lower
        for f in range(1, CUT.dim):
            for g in range(CUT.dim - 1):
                assert lower[f, g] == np.conj(state.upper[f - 1, g + 1])

    def test_bob_state_is_eta_swap(self):
        q = LogicalQubit(0.3, 0.7, 0.1j)
        swapped = ChannelParams(1.0 - FIG2.eta, FIG2.nbar_b)
        assert np.allclose(
            bob_state_closed(q, FIG2, CUT).dense(),
            willie_state_closed(q, swapped, CUT).dense(),
            atol=1e-15,
        )

    def test_bob_lossless_noiseless_returns_input(self):
        q = LogicalQubit(0.3, 0.7, 0.2 + 0.1j)
        dense = bob_state_closed(q, ChannelParams(1.0, 0.0), CUT).dense()
        d = CUT.dim
        assert dense[0 * d + 1, 0 * d + 1] == pytest.approx(0.3)
        assert dense[1 * d + 0, 1 * d + 0] == pytest.approx(0.7)
        assert dense[0 * d + 1, 1 * d + 0] == pytest.approx(0.2 + 0.1j)
        assert np.trace(dense) == pytest.approx(1.0)


class TestCharFn:
    def test_origin_is_one(self):
        q = LogicalQubit.pure(0.6, 0.8)
        assert willie_char_fn_closed(q, FIG2, 0.0, 0.0) == pytest.approx(1.0)

    def test_eta_one_is_pure_gaussian(self):
        q = LogicalQubit.pure(0.6, 0.8)
        params = ChannelParams(1.0, 0.12)
        z1, z2 = 0.4 + 0.1j, -0.2j
        expected = math.exp(-(1 + 0.12) * (abs(z1) ** 2 + abs(z2) ** 2))
        assert willie_char_fn_closed(q, params, z1, z2) == pytest.approx(expected)

    def test_hermiticity_symmetry(self):
        # chi(-zeta) = conj(chi(zeta)) for any state
        q = LogicalQubit(0.3, 0.7, 0.2 - 0.3j)
        z1, z2 = 0.5 + 0.2j, -0.1 + 0.7j
        assert willie_char_fn_closed(q, FIG2, -z1, -z2) == pytest.approx(
            np.conj(willie_char_fn_closed(q, FIG2, z1, z2))
        )


class TestChi2:
    def test_eta_one_is_zero(self):
        assert chi2_closed(LogicalQubit.pure(0.6, 0.8), ChannelParams(1.0, 0.5)) == 0.0

    def test_nbar_zero_raises(self):
        with pytest.raises(DivergenceUndefinedError):
            chi2_closed(LogicalQubit(1.0, 0.0), ChannelParams(0.5, 0.0))
        with pytest.raises(DivergenceUndefinedError):
            chi2_bound(ChannelParams(0.5, 0.0))

    def test_bound_direct_values(self):
        assert chi2_bound(FIG2) == pytest.approx(0.01 / (0.108 * 1.108))
        assert chi2_bound(ChannelParams(0.5, 1.0)) == pytest.approx(0.25 / (0.5 * 1.5))

    def test_full_coherence_attains_bound(self):
        s = 1.0 / math.sqrt(2.0)
        for params in (FIG2, ChannelParams(0.5, 1.0), ChannelParams(0.2, 0.05)):
            q = LogicalQubit.pure(s, s)
            assert chi2_closed(q, params) == pytest.approx(
                chi2_bound(params), rel=1e-12
            )
            # any pure state with |gamma| = |alpha beta| attains it
            q2 = LogicalQubit.pure(0.6, 0.8j)
            assert chi2_closed(q2, params) == pytest.approx(
                chi2_bound(params), rel=1e-12
            )

    def test_balanced_mixture_is_half_bound(self):
        q = LogicalQubit(0.5, 0.5, 0.0)
        assert chi2_closed(q, FIG2) == pytest.approx(0.5 * chi2_bound(FIG2), rel=1e-12)

    def test_phase_of_gamma_does_not_enter(self):
        mags = LogicalQubit(0.4, 0.6, 0.3)
        rotated = LogicalQubit(0.4, 0.6, 0.3 * np.exp(1.1j))
        assert chi2_closed(mags, FIG2) == chi2_closed(rotated, FIG2)

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=0.0, max_value=2 * math.pi),
        st.floats(min_value=0.01, max_value=0.99),
        st.floats(min_value=0.01, max_value=0.5),
    )
    def test_bound_dominates_all_qubits(self, a2, frac, phase, eta, nbar):
        gamma = frac * math.sqrt(a2 * (1.0 - a2)) * np.exp(1j * phase)
        q = LogicalQubit(a2, 1.0 - a2, gamma)
        params = ChannelParams(eta, nbar)
        assert chi2_closed(q, params) <= chi2_bound(params) * (1 + 1e-12)


class TestDepolarizingParameters:
    def test_pure_loss_limit(self):
        params = ChannelParams(0.75, 0.0)
        assert p_fail(params) == pytest.approx(0.25)
        assert p_prime(params) == 0.0
        assert p_total(params) == pytest.approx(0.25)

    def test_identity_channel(self):
        params = ChannelParams(1.0, 0.0)
        assert p_fail(params) == 0.0
        assert p_total(params) == 0.0

    def test_fig2_value(self):
        assert p_total(FIG2) == pytest.approx(1.0 - 0.9 / 1.012**4)

    def test_combination_identity(self):
        for eta in (0.1, 0.5, 0.9, 0.99):
            for nb in (0.0, 0.01, 0.12, 0.5, 2.0):
                params = ChannelParams(eta, nb)
                combined = p_prime(params) + (1 - p_prime(params)) * p_fail(params)
                assert combined == pytest.approx(p_total(params), abs=1e-12)

    def test_p_fail_matches_bob_state_populations(self):
        d = FockCutoff(20).dim
        for params in (FIG2, ChannelParams(0.5, 0.5), ChannelParams(0.2, 0.05)):
            q = LogicalQubit.pure(0.6, 0.8)
            dense = bob_state_closed(q, params, FockCutoff(20)).dense()
            kept = dense[0 * d + 1, 0 * d + 1] + dense[1 * d + 0, 1 * d + 0]
            assert 1.0 - kept.real == pytest.approx(p_fail(params), abs=1e-10)

    def test_p_total_monotonicity(self):
        etas = np.linspace(0.05, 0.95, 10)
        nbs = np.linspace(0.0, 1.0, 10)
        for nb in nbs:
            vals = [p_total(ChannelParams(e, nb)) for e in etas]
            assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))
            assert all(0.0 <= v <= 1.0 for v in vals)
        for e in etas:
            vals = [p_total(ChannelParams(e, nb)) for nb in nbs]
            assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
