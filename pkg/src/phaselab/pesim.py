"""Exact simulation of the standard phase-estimation circuit.

Two independent routes to the same outcome statistics are provided: the
closed-form Fejer-kernel distribution, and an explicit state-vector
simulation (Hadamards, controlled phase powers, inverse QFT).  The
eigenstate register is never simulated; for the one-qubit phase gate with
eigenstate |1> every controlled power acts as a diagonal phase on the
counting register, which keeps the state size at 2**k.

Measurements are never sampled: exact distributions are returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .phases import DyadicPhase, unit_phase

__all__ = [
    "StateVector",
    "OutcomeDistribution",
    "pe_distribution",
    "pe_simulate",
    "cat_flatten_equiv",
    "qft_matrix",
    "tv_distance",
]

_MAX_SIM_BITS = 12
_MAX_CAT_QUBITS = 10


@dataclass(frozen=True)
class StateVector:
    """Normalised complex amplitudes of an n-qubit register."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if abs(np.linalg.norm(amp) - 1.0) > 1e-10:
            raise DomainError("state vector is not normalised")


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact probabilities over measurement outcomes m = 0..len-1."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        object.__setattr__(self, "probabilities", p)
        if p.min() < -1e-12:
            raise DomainError("negative probability")
        if abs(p.sum() - 1.0) > 1e-10:
            raise DomainError("probabilities do not sum to 1")

    def __getitem__(self, m: int) -> float:
        return float(self.probabilities[m])


def tv_distance(p: OutcomeDistribution, q: OutcomeDistribution) -> float:
    """Total-variation distance between two outcome distributions."""
    return 0.5 * float(np.abs(p.probabilities - q.probabilities).sum())


def _fejer_ratio(delta: np.ndarray, size: int) -> np.ndarray:
    """sin(size*pi*d)/(size*sin(pi*d)) evaluated stably, with value 1 at d=0.

    Uses the sinc form near integers (a Taylor-stable branch) and the direct
    quotient elsewhere.
    """
    frac = delta - np.round(delta)
    out = np.empty_like(frac)
    denom = np.sin(np.pi * frac)
    near = np.abs(denom) < 1e-9
    if np.any(near):
        out[near] = np.sinc(size * frac[near]) / np.sinc(frac[near])
    far = ~near
    out[far] = np.sin(size * np.pi * frac[far]) / (size * denom[far])
    return out


def pe_distribution(k: int, phi: DyadicPhase | float) -> OutcomeDistribution:
    """Closed-form outcome distribution of k-bit phase estimation.

    P(m) = |2^-k sum_j e^(2 pi i j (phi - m/2^k))|^2, evaluated through the
    Fejer kernel sin^2(2^k pi d) / (2^2k sin^2(pi d)).  Dyadic phases are
    resolved by exact integer arithmetic: outcomes where 2^k * d is an
    integer get probability exactly 1 (d integer) or 0.
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    size = 1 << k
    m = np.arange(size)
    if isinstance(phi, DyadicPhase):
        common = max(k, phi.k)
        modulus = 1 << common
        # numerator of (phi - m/2^k) at precision `common`, reduced mod 1
        d_num = (phi.lift(common) - (m << (common - k))) % modulus
        probs = np.zeros(size)
        exact = d_num == 0
        if np.any(exact):
            probs[exact] = 1.0
        else:
            kernel_zero = (d_num << k) % modulus == 0
            rest = ~kernel_zero
            delta = d_num[rest] / modulus
            probs[rest] = _fejer_ratio(delta, size) ** 2
        return OutcomeDistribution(probs)
    delta = float(phi) - m / size
    return OutcomeDistribution(_fejer_ratio(delta, size) ** 2)


def qft_matrix(num_bits: int) -> np.ndarray:
    """Quantum Fourier transform matrix on num_bits qubits.

    Entry (j, m) is e^(2 pi i j m / 2^n) / sqrt(2^n).
    """
    if num_bits > _MAX_SIM_BITS:
        raise ResourceError(f"refusing to build a QFT matrix beyond {_MAX_SIM_BITS} qubits")
    size = 1 << num_bits
    j = np.arange(size)
    return np.exp(2j * np.pi * np.outer(j, j) / size) / math.sqrt(size)


def _inverse_qft_apply(state: np.ndarray) -> np.ndarray:
    # Q^-1 has entries e^(-2 pi i j m / M)/sqrt(M); its action on a vector
    # is the unnormalised DFT scaled by 1/sqrt(M).
    return np.fft.fft(state) / math.sqrt(len(state))


def _hadamard(state: np.ndarray, qubit: int, n: int) -> np.ndarray:
    s = state.reshape([2] * n)
    s = np.moveaxis(s, qubit, 0)
    top, bot = s[0].copy(), s[1].copy()
    s[0] = (top + bot) / math.sqrt(2)
    s[1] = (top - bot) / math.sqrt(2)
    return np.moveaxis(s, 0, qubit).reshape(-1)


def pe_simulate(k: int, phi: DyadicPhase | float) -> OutcomeDistribution:
    """State-vector simulation of the k-bit phase-estimation circuit.

    Prepares the counting register with Hadamards, applies the controlled
    phase powers (qubit t controls 2^(k-1-t) applications), applies the
    inverse QFT, and returns the exact measurement distribution.
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if k > _MAX_SIM_BITS:
        raise ResourceError(f"counting register limited to {_MAX_SIM_BITS} qubits, got {k}")
    size = 1 << k
    state = np.zeros(size, dtype=complex)
    state[0] = 1.0
    for qubit in range(k):
        state = _hadamard(state, qubit, k)
    indices = np.arange(size)
    for qubit in range(k):
        power = 1 << (k - 1 - qubit)
        if isinstance(phi, DyadicPhase):
            factor = unit_phase(power, phi)
        else:
            factor = np.exp(2j * np.pi * power * float(phi))
        controlled = (indices >> (k - 1 - qubit)) & 1 == 1
        state[controlled] *= factor
    state = _inverse_qft_apply(state)
    return OutcomeDistribution(np.abs(state) ** 2)


def _cnot(state: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    s = state.reshape([2] * n)
    s = np.moveaxis(s, (control, target), (0, 1))
    s[1, 0], s[1, 1] = s[1, 1].copy(), s[1, 0].copy()
    return np.moveaxis(s, (0, 1), (control, target)).reshape(-1)


def cat_flatten_equiv(p: int, phi: DyadicPhase | float) -> StateVector:
    """Cat-state parallelisation of p phase applications, checked explicitly.

    Simulates: Hadamard + p-1 CNOTs to reach (|0..0> + |1..1>)/sqrt(2), one
    layer of the phase gate on every qubit, then the CNOTs undone.  Asserts
    the register factors as ((|0> + e^(2 pi i p phi) |1>)/sqrt(2)) |0..0>
    and returns the first-qubit state.
    """
    if not 1 <= p <= _MAX_CAT_QUBITS:
        raise ResourceError(f"explicit cat-state simulation limited to {_MAX_CAT_QUBITS} qubits")
    size = 1 << p
    state = np.zeros(size, dtype=complex)
    state[0] = 1.0
    state = _hadamard(state, 0, p)
    for q in range(p - 1):
        state = _cnot(state, q, q + 1, p)
    weights = np.array([bin(x).count("1") for x in range(size)])
    if isinstance(phi, DyadicPhase):
        phase_per_count = np.array([unit_phase(w, phi) for w in range(p + 1)])
        state = state * phase_per_count[weights]
    else:
        state = state * np.exp(2j * np.pi * weights * float(phi))
    for q in reversed(range(p - 1)):
        state = _cnot(state, q, q + 1, p)
    rest = np.delete(state, [0, size // 2])
    if np.abs(rest).max(initial=0.0) > 1e-10:
        raise AssertionError("trailing qubits did not return to |0>")
    expect = unit_phase(p, phi) if isinstance(phi, DyadicPhase) else np.exp(2j * np.pi * p * float(phi))
    if abs(state[0] - 1 / math.sqrt(2)) > 1e-10 or abs(state[size // 2] - expect / math.sqrt(2)) > 1e-10:
        raise AssertionError("first qubit is not (|0> + e^(2 pi i p phi)|1>)/sqrt(2)")
    return StateVector(np.array([state[0], state[size // 2]]))
