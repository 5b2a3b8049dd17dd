"""Square-root-law bound pipeline for covert qubit transmission.

Detectability is kept below a budget delta by thinning transmissions: each
of the n two-mode rounds carries a dual-rail qubit with probability q, and
q <= 2 c_cov delta / sqrt(n) guarantees the relative-entropy covertness
criterion.  The achievable count of reliable covert qubits then scales as
sqrt(n) times the covertness constant times a hashing-bound rate for the
induced depolarizing channel; the converse side bounds the count by twice
the per-mode quantum capacity of an amplifier channel under the matching
mean-photon-number constraint.

All logarithms in reported quantities are base 2 (bits/qubits); the [x]+
clamp is always max(x, 0) applied after evaluating the full expression.
Every function here is pure, so curve sweeps may fan out freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .closed_form import DivergenceUndefinedError, p_fail, p_prime, p_total
from .fock_core import ChannelParams

__all__ = [
    "CovertBudget",
    "BoundsPoint",
    "PauliVector",
    "GainDecompositionError",
    "c_cov",
    "q_max",
    "qre_bound",
    "shannon_entropy",
    "depolarizing_pauli_vector",
    "hashing_rate",
    "lower_bound_qubits",
    "assisted_rate",
    "assisted_lower_bound_qubits",
    "converse_gain",
    "g_func",
    "converse_capacity",
    "nbar_s_max",
    "upper_bound_qubits",
    "upper_bound_srl_coefficient",
    "bounds_curve",
]


class GainDecompositionError(ValueError):
    """The amplifier/pure-loss decomposition behind the converse is invalid
    for these parameters (gain denominator not positive)."""


@dataclass(frozen=True)
class CovertBudget:
    """Covertness parameter delta, block length n, transmission probability q."""

    delta: float
    n: int
    q: float

    def __post_init__(self):
        if not 0.0 < self.delta < 0.5:
            raise ValueError(f"delta must be in (0, 1/2), got {self.delta}")
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must be in [0, 1]")

    @classmethod
    def at_q_max(cls, params: ChannelParams, delta: float, n: int) -> "CovertBudget":
        return cls(delta, n, q_max(params, delta, n))


@dataclass(frozen=True)
class BoundsPoint:
    """One sweep sample: round count n with both bound ordinates (qubits),
    the per-round rates behind them, and the operating point (q, nbar_s)."""

    n: float
    lower_qubits: float
    upper_qubits: float
    assisted_lower_qubits: float
    rate_R: float
    capacity_C: float
    q: float
    nbar_s: float
    seconds: Optional[float] = None


@dataclass(frozen=True)
class PauliVector:
    """Probabilities [p_I, p_X, p_Y, p_Z] of a Pauli channel."""

    probs: tuple

    def __post_init__(self):
        p = tuple(float(x) for x in self.probs)
        if len(p) != 4:
            raise ValueError("PauliVector needs exactly four probabilities")
        if min(p) < 0.0 or abs(sum(p) - 1.0) > 1e-12:
            raise ValueError(f"probabilities must be >= 0 and sum to 1, got {p}")
        object.__setattr__(self, "probs", p)


def depolarizing_pauli_vector(p: float) -> PauliVector:
    """Pauli vector [1 - 3p/4, p/4, p/4, p/4] of a depolarizing channel."""
    return PauliVector((1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p))


def c_cov(params: ChannelParams) -> float:
    """Covertness constant sqrt(2 eta nbar_b (1 + eta nbar_b)) / (1 - eta).

    Infinite at eta = 1 (the warden receives nothing) and zero at
    nbar_b = 0 (any transmission is perfectly distinguishable).
    """
    if params.eta == 1.0:
        return math.inf
    n = params.eta * params.nbar_b
    return math.sqrt(2.0 * n * (1.0 + n)) / (1.0 - params.eta)


def q_max(params: ChannelParams, delta: float, n: float) -> float:
    """Largest covert per-round transmission probability,
    min(1, 2 c_cov delta / sqrt(n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    return min(1.0, 2.0 * c_cov(params) * delta / math.sqrt(n))


def qre_bound(params: ChannelParams, q: float, n: float) -> float:
    """Covertness criterion value sqrt(D/8) <= q (1-eta) sqrt(n) /
    (2 sqrt(2 eta nbar_b (1 + eta nbar_b))); equals delta at q = q_max in
    the unclamped regime."""
    if params.nbar_b == 0.0:
        raise DivergenceUndefinedError("criterion diverges at nbar_b = 0")
    occ = params.eta * params.nbar_b
    return q * (1.0 - params.eta) * math.sqrt(n) / (
        2.0 * math.sqrt(2.0 * occ * (1.0 + occ))
    )


def shannon_entropy(p: PauliVector) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    return float(-sum(x * math.log2(x) for x in p.probs if x > 0.0))


def hashing_rate(params: ChannelParams) -> float:
    """Achievable qubit rate per round, [1 - H(p_vec)]+ for the depolarizing
    channel the projected receiver sees."""
    h = shannon_entropy(depolarizing_pauli_vector(p_total(params)))
    return max(0.0, 1.0 - h)


def lower_bound_qubits(params: ChannelParams, delta: float, n: float) -> float:
    """Achievable expected covert qubits over n rounds: q_max * n * R,
    i.e. 2 sqrt(n) c_cov R delta when q_max is unclamped."""
    if delta == 0.0:
        return 0.0
    return q_max(params, delta, n) * n * hashing_rate(params)


def assisted_rate(params: ChannelParams) -> float:
    """Qubit rate with a two-way classical side channel: the receiver
    reports which projections succeeded and the parties distill
    entanglement on those rounds, giving (1 - p_fail)[1 - H(p'_vec)]+."""
    h = shannon_entropy(depolarizing_pauli_vector(p_prime(params)))
    return (1.0 - p_fail(params)) * max(0.0, 1.0 - h)


def assisted_lower_bound_qubits(
    params: ChannelParams, delta: float, n: float
) -> float:
    if delta == 0.0:
        return 0.0
    return q_max(params, delta, n) * n * assisted_rate(params)


def converse_gain(params: ChannelParams) -> float:
    """Gain G = eta / (eta - (1-eta) nbar_b / 2) of the amplifier component
    in the channel decomposition used by the converse."""
    denom = params.eta - (1.0 - params.eta) * params.nbar_b / 2.0
    if denom <= 0.0:
        raise GainDecompositionError(
            f"amplifier/pure-loss decomposition invalid: eta - (1-eta) nbar_b/2 "
            f"= {denom!r} <= 0"
        )
    return params.eta / denom


def g_func(x: float) -> float:
    """Bosonic entropy function g(x) = (1+x) log2(1+x) - x log2(x); g(0) = 0."""
    if x < 0:
        raise ValueError(f"g is defined for x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    return (1.0 + x) * math.log2(1.0 + x) - x * math.log2(x)


def converse_capacity(params: ChannelParams, nbar_s: float) -> float:
    """Qubits per mode through the amplifier component at signal mean photon
    number nbar_s:

        [g(((G+1) nbar_s + Gbar) / 2) - g(Gbar (1 + nbar_s) / 2)]+
    """
    if nbar_s < 0:
        raise ValueError("nbar_s must be >= 0")
    g = converse_gain(params)
    gbar = g - 1.0
    val = g_func(((g + 1.0) * nbar_s + gbar) / 2.0) - g_func(gbar * (1.0 + nbar_s) / 2.0)
    return max(0.0, val)


def nbar_s_max(params: ChannelParams, delta: float, n: float) -> float:
    """Covertness cap on the signal mean photon number, 2 c_cov delta / sqrt(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 * c_cov(params) * delta / math.sqrt(n)


def upper_bound_qubits(params: ChannelParams, delta: float, n: float) -> float:
    """Converse: at most 2 n C(nbar_s_max) covert qubits over n rounds."""
    if delta == 0.0:
        return 0.0
    return 2.0 * n * converse_capacity(params, nbar_s_max(params, delta, n))


def upper_bound_srl_coefficient(params: ChannelParams, delta: float) -> float:
    """Large-n limit of upper_bound_qubits / sqrt(n):
    4 c_cov delta log2(1 + 2/Gbar), from first-order expansion of the
    capacity around nbar_s = 0."""
    gbar = converse_gain(params) - 1.0
    return 4.0 * c_cov(params) * delta * math.log2(1.0 + 2.0 / gbar)


def bounds_curve(
    params: ChannelParams,
    delta: float,
    n_values: Sequence[float],
    modes_per_second: Optional[float] = None,
) -> list[BoundsPoint]:
    """Evaluate both bounds over an ascending sweep of round counts.

    Each round occupies two optical modes, so with a modulation rate the
    abscissa in seconds is 2 n / modes_per_second.  Output order follows
    input order and every quantity is deterministic.
    """
    n_arr = np.asarray(list(n_values), dtype=float)
    if len(n_arr) == 0:
        return []
    if np.any(n_arr <= 0) or np.any(np.diff(n_arr) <= 0):
        raise ValueError("n_values must be positive and strictly ascending")
    rate = hashing_rate(params)
    rate_assisted = assisted_rate(params)
    points = []
    for n in n_arr:
        q = q_max(params, delta, n)
        ns = nbar_s_max(params, delta, n)
        cap = converse_capacity(params, ns)
        points.append(
            BoundsPoint(
                n=float(n),
                lower_qubits=q * n * rate,
                upper_qubits=2.0 * n * cap,
                assisted_lower_qubits=q * n * rate_assisted,
                rate_R=rate,
                capacity_C=cap,
                q=q,
                nbar_s=ns,
                seconds=(2.0 * n / modes_per_second) if modes_per_second else None,
            )
        )
    return points
