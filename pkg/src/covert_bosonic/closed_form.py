"""Closed-form output states and divergences for dual-rail input.

A dual-rail qubit sent through the lossy thermal-noise channel produces,
at the warden's two reflected modes, a state that is tri-diagonal in the
Fock basis: population terms |fg><fg| plus single-excitation-exchange
coherences |fg><f+1,g-1| and |fg><f-1,g+1| (total photon number is
conserved across the two modes of the support pattern).  This module
evaluates those coefficients, the matching anti-normally ordered
characteristic function, the chi-squared divergence against the quiet
(thermal product) state, and the projection/depolarizing parameters of
the receiver-side reduction.  Everything is cross-checked entrywise by
the brute-force channel simulation in :mod:`covert_bosonic.oracle`.

Conventions fixed by that numeric cross-check (the relevant algebra
admits cheap transposition/sign typos, so the simulation is treated as
authoritative):

* the gamma term of the chi-squared closed form enters as ``2 (1-eta)^2
  |gamma|^2`` (an exponent of 4 fails the equality case |gamma| =
  |alpha beta| and disagrees with the numeric divergence);
* the coherence <fg|rho^W|f+1,g-1> equals ``+gamma * w2(g, f)``, i.e.
  the argument order is swapped relative to the diagonal convention;
* the projection failure probability is ``1 - <01|rho^B|01> -
  <10|rho^B|10>`` (both populations subtracted).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock_core import (
    ChannelParams,
    DensityOperator,
    FockCutoff,
    thermal_occupation,
)

__all__ = [
    "LogicalQubit",
    "TriDiagonalWillieState",
    "DivergenceUndefinedError",
    "w1_coeff",
    "w2_coeff",
    "willie_state_closed",
    "bob_state_closed",
    "willie_char_fn_closed",
    "char_fn_closed_effective",
    "chi2_closed",
    "chi2_bound",
    "p_fail",
    "p_prime",
    "p_total",
]

_NORM_TOL = 1e-12


class DivergenceUndefinedError(ValueError):
    """The divergence diverges: the quiet state is not full rank (nbar=0)."""


@dataclass(frozen=True)
class LogicalQubit:
    """A (possibly mixed) dual-rail input in the logical basis.

    ``alpha_sq`` and ``beta_sq`` are the populations of logical |0> = |01>
    and |1> = |10>; ``gamma`` is the off-diagonal coherence.  Positivity of
    the 2x2 logical density matrix requires |gamma|^2 <= alpha_sq*beta_sq.
    """

    alpha_sq: float
    beta_sq: float
    gamma: complex = 0.0

    def __post_init__(self):
        if not (0.0 <= self.alpha_sq <= 1.0 and 0.0 <= self.beta_sq <= 1.0):
            raise ValueError("populations must lie in [0, 1]")
        if abs(self.alpha_sq + self.beta_sq - 1.0) > _NORM_TOL:
            raise ValueError(
                f"populations must sum to 1, got {self.alpha_sq + self.beta_sq!r}"
            )
        if abs(self.gamma) ** 2 > self.alpha_sq * self.beta_sq + _NORM_TOL:
            raise ValueError("|gamma|^2 exceeds alpha_sq * beta_sq (not PSD)")

    @classmethod
    def pure(cls, alpha: complex, beta: complex) -> "LogicalQubit":
        """Pure state alpha|01> + beta|10> (amplitudes, normalized)."""
        norm = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(norm - 1.0) > 1e-9:
            raise ValueError("amplitudes must be normalized")
        a2, b2 = abs(alpha) ** 2, abs(beta) ** 2
        g = alpha * np.conj(beta)
        # Clamp roundoff so the positivity check cannot trip on exact purity.
        if abs(g) ** 2 > a2 * b2:
            g *= np.sqrt(a2 * b2) / abs(g)
        return cls(a2, b2, complex(g))

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.alpha_sq, self.gamma], [np.conj(self.gamma), self.beta_sq]]
        )


@dataclass(frozen=True)
class TriDiagonalWillieState:
    """Sparse tri-diagonal representation of the warden-side output state.

    ``diag[f, g]`` is <fg|rho|fg>; ``upper[f, g]`` is <fg|rho|f+1,g-1>
    (zero where g = 0 or f+1 exceeds the cutoff); the lower coherences are
    the conjugates of the matching upper entries.  Total photon number f+g
    is conserved between bra and ket on every nonzero entry.
    """

    cutoff: FockCutoff
    diag: np.ndarray
    upper: np.ndarray

    @property
    def truncation_leak(self) -> float:
        return float(max(0.0, 1.0 - self.diag.sum()))

    @property
    def lower(self) -> np.ndarray:
        """``lower[f, g]`` is <fg|rho|f-1,g+1>, the conjugate of the matching
        upper coherence (Hermiticity), zero where f = 0 or g+1 exceeds the
        cutoff."""
        d = self.cutoff.dim
        m = np.zeros((d, d), dtype=complex)
        for f in range(1, d):
            for g in range(d - 1):
                m[f, g] = np.conj(self.upper[f - 1, g + 1])
        return m

    def dense(self) -> np.ndarray:
        d = self.cutoff.dim
        m = np.zeros((d * d, d * d), dtype=complex)
        for f in range(d):
            for g in range(d):
                m[f * d + g, f * d + g] = self.diag[f, g]
                if g >= 1 and f + 1 < d:
                    m[f * d + g, (f + 1) * d + (g - 1)] = self.upper[f, g]
                    m[(f + 1) * d + (g - 1), f * d + g] = np.conj(self.upper[f, g])
        return m

    def to_density_operator(self) -> DensityOperator:
        return DensityOperator(2, self.cutoff, self.dense(), self.truncation_leak)


def _w1(f: int, g: int, reflect: float, occupancy: float) -> float:
    """Population coefficient with reflectance ``reflect`` toward this port
    and thermal occupancy ``occupancy`` at this port.

    The (occupancy - g) * occupancy^(g-1) factor is evaluated in the
    algebraically expanded form occupancy^g - g*occupancy^(g-1), so g = 0
    never touches a negative power (removable singularity).
    """
    n = occupancy
    corr = n**g - (g * n ** (g - 1) if g >= 1 else 0.0)
    bracket = thermal_occupation(g, n) - reflect * corr / (1.0 + n) ** (g + 2)
    return float(bracket * thermal_occupation(f, n))


def _w2(f: int, g: int, reflect: float, occupancy: float) -> float:
    """Coherence coefficient; zero at f = 0 via the sqrt(f) factor, so the
    f+g-1 exponent never produces a pole."""
    if f == 0 or reflect == 0.0:
        return 0.0
    n = occupancy
    return float(
        reflect * n ** (g + f - 1) / (1.0 + n) ** (g + f + 3) * np.sqrt(f * (g + 1))
    )


def w1_coeff(f: int, g: int, params: ChannelParams) -> float:
    """Population coefficient of the warden-side output state."""
    if f < 0 or g < 0:
        raise ValueError("Fock indices must be non-negative")
    return _w1(f, g, 1.0 - params.eta, params.eta * params.nbar_b)


def w2_coeff(f: int, g: int, params: ChannelParams) -> float:
    """Coherence coefficient of the warden-side output state."""
    if f < 0 or g < 0:
        raise ValueError("Fock indices must be non-negative")
    return _w2(f, g, 1.0 - params.eta, params.eta * params.nbar_b)


def _tridiagonal_state(
    qubit: LogicalQubit, reflect: float, occupancy: float, cutoff: FockCutoff
) -> TriDiagonalWillieState:
    d = cutoff.dim
    diag = np.zeros((d, d))
    upper = np.zeros((d, d), dtype=complex)
    for f in range(d):
        for g in range(d):
            diag[f, g] = qubit.alpha_sq * _w1(f, g, reflect, occupancy) + (
                qubit.beta_sq * _w1(g, f, reflect, occupancy)
            )
            if g >= 1 and f + 1 < d:
                upper[f, g] = qubit.gamma * _w2(g, f, reflect, occupancy)
    return TriDiagonalWillieState(cutoff, diag, upper)


def willie_state_closed(
    qubit: LogicalQubit, params: ChannelParams, cutoff: FockCutoff
) -> TriDiagonalWillieState:
    """Warden's two-mode output state for a dual-rail input.

    The warden's port sees reflectance 1 - eta of the signal and thermal
    occupancy eta * nbar_b from the environment.  At eta = 1 this is the
    bare thermal product state, independent of the input.
    """
    return _tridiagonal_state(
        qubit, 1.0 - params.eta, params.eta * params.nbar_b, cutoff
    )


def bob_state_closed(
    qubit: LogicalQubit, params: ChannelParams, cutoff: FockCutoff
) -> TriDiagonalWillieState:
    """Receiver's two-mode output state: same form with eta <-> 1 - eta."""
    return _tridiagonal_state(
        qubit, params.eta, (1.0 - params.eta) * params.nbar_b, cutoff
    )


def char_fn_closed_effective(
    qubit: LogicalQubit,
    reflect: float,
    occupancy: float,
    zeta1: complex,
    zeta2: complex,
) -> complex:
    """Anti-normal characteristic function of the reflected-port output of a
    thermal-noise beamsplitter with signal reflectance ``reflect`` and port
    thermal occupancy ``occupancy``:

        exp(-(1 + occupancy)(|z1|^2 + |z2|^2))
        * [1 - reflect (|a|^2 |z2|^2 + |b|^2 |z1|^2 + g z1 z2* + g* z1* z2)]
    """
    z1s = abs(zeta1) ** 2
    z2s = abs(zeta2) ** 2
    cross = qubit.gamma * zeta1 * np.conj(zeta2)
    bracket = 1.0 - reflect * (
        qubit.alpha_sq * z2s + qubit.beta_sq * z1s + cross + np.conj(cross)
    )
    return complex(np.exp(-(1.0 + occupancy) * (z1s + z2s)) * bracket)


def willie_char_fn_closed(
    qubit: LogicalQubit, params: ChannelParams, zeta1: complex, zeta2: complex
) -> complex:
    """Anti-normal characteristic function of the warden's output state."""
    return char_fn_closed_effective(
        qubit, 1.0 - params.eta, params.eta * params.nbar_b, zeta1, zeta2
    )


def chi2_closed(qubit: LogicalQubit, params: ChannelParams) -> float:
    """Chi-squared divergence between the warden's output for this input and
    the quiet thermal product state:

        (1-eta)^2 (alpha^4 + beta^4 + 2|gamma|^2) / (N (1 + N)),  N = eta nbar_b

    Phase of gamma does not enter.  Maximized (over valid inputs) by pure
    qubits with |gamma| = |alpha beta|, where it equals :func:`chi2_bound`;
    the balanced classical mixture gives exactly half the bound.
    """
    if params.eta == 1.0:
        return 0.0
    if params.nbar_b == 0.0:
        raise DivergenceUndefinedError(
            "quiet state is not full rank at nbar_b = 0; divergence is infinite"
        )
    n = params.eta * params.nbar_b
    pops = qubit.alpha_sq**2 + qubit.beta_sq**2
    return float(
        (1.0 - params.eta) ** 2
        * (pops + 2.0 * abs(qubit.gamma) ** 2)
        / (n * (1.0 + n))
    )


def chi2_bound(params: ChannelParams) -> float:
    """Input-independent bound (1-eta)^2 / (eta nbar_b (1 + eta nbar_b))."""
    if params.eta == 1.0:
        return 0.0
    if params.nbar_b == 0.0:
        raise DivergenceUndefinedError(
            "quiet state is not full rank at nbar_b = 0; divergence is infinite"
        )
    n = params.eta * params.nbar_b
    return float((1.0 - params.eta) ** 2 / (n * (1.0 + n)))


def p_fail(params: ChannelParams) -> float:
    """Probability that projecting the receiver's two modes onto the
    dual-rail basis {|01>, |10>} fails:

        1 - (2 nbar_b (1+nbar_b)(1-eta)^2 + eta) / (1 + (1-eta) nbar_b)^4

    Independent of the transmitted logical state.
    """
    eta, nb = params.eta, params.nbar_b
    return float(
        1.0 - (2.0 * nb * (1.0 + nb) * (1.0 - eta) ** 2 + eta)
        / (1.0 + (1.0 - eta) * nb) ** 4
    )


def p_prime(params: ChannelParams) -> float:
    """Depolarizing parameter of the channel restricted to the projected
    dual-rail subspace."""
    eta, nb = params.eta, params.nbar_b
    x = 2.0 * (1.0 - eta) ** 2 * nb * (1.0 + nb)
    return float(x / (eta + x))


def p_total(params: ChannelParams) -> float:
    """Overall depolarizing parameter seen by the decoder,

        p = p' + (1 - p') p_fail = 1 - eta / (1 + (1-eta) nbar_b)^4.
    """
    eta, nb = params.eta, params.nbar_b
    return float(1.0 - eta / (1.0 + (1.0 - eta) * nb) ** 4)
