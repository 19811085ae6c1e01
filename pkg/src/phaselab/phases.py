"""Exact dyadic phases and the promised phase sets they are drawn from.

Phases are stored as integer numerators over a power-of-two denominator,
in turns (1 turn = 2*pi radians).  All phase multiples are reduced modulo
the denominator in integer arithmetic before any call to cos/sin, so
repeated applications of a phase gate never accumulate rounding error.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "DyadicPhase",
    "PromiseSet",
    "build_promise_set",
    "unit_phase",
    "min_gap",
]


@dataclass(frozen=True)
class DyadicPhase:
    """A phase num / 2**k in [0, 1), held exactly.

    Two instances compare equal when they denote the same rational, e.g.
    DyadicPhase(1, 2) == DyadicPhase(2, 3).
    """

    num: int
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise DomainError(f"precision k must be >= 0, got {self.k}")
        if not 0 <= self.num < (1 << self.k):
            raise DomainError(
                f"numerator {self.num} out of range [0, 2^{self.k})"
            )

    def _reduced(self) -> tuple[int, int]:
        num, k = self.num, self.k
        while k > 0 and num % 2 == 0:
            num //= 2
            k -= 1
        return num, k

    def lift(self, k: int) -> int:
        """Numerator of this phase at precision ``k`` bits (k >= self.k)."""
        if k < self.k:
            raise DomainError(f"cannot lift precision {self.k} down to {k}")
        return self.num << (k - self.k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicPhase):
            return NotImplemented
        return self._reduced() == other._reduced()

    def __hash__(self) -> int:
        return hash(self._reduced())

    def __float__(self) -> float:
        return self.num / (1 << self.k)

    def __repr__(self) -> str:
        return f"DyadicPhase({self.num}/2^{self.k})"


def unit_phase(j: int, phi: DyadicPhase) -> complex:
    """e^(2*pi*i*j*phi) for j >= 0 applications of the phase phi.

    The product j*num is reduced mod 2**k exactly before evaluating, so the
    result is periodic in j with period 2**k bit-for-bit.
    """
    if j < 0:
        raise DomainError(f"application count must be >= 0, got {j}")
    r = (j * phi.num) % (1 << phi.k)
    return cmath.exp(2j * cmath.pi * r / (1 << phi.k))


@dataclass(frozen=True)
class PromiseSet:
    """The 2**(ell+1) promised phases, organised as 2**ell pairs.

    Pair r consists of r/2**ell and r/2**ell + (r+1)/2**k; ``pairs`` holds
    index pairs into the ascending ``phases`` tuple.
    """

    k: int
    ell: int
    phases: tuple[DyadicPhase, ...]
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.phases)

    def pair_phases(self, r: int) -> tuple[DyadicPhase, DyadicPhase]:
        i, j = self.pairs[r]
        return self.phases[i], self.phases[j]

    def to_json(self) -> str:
        return json.dumps(
            {"k": self.k, "ell": self.ell, "numerators": [p.lift(self.k) for p in self.phases]}
        )

    @classmethod
    def from_json(cls, text: str) -> "PromiseSet":
        data = json.loads(text)
        built = build_promise_set(data["k"], data["ell"])
        got = [p.lift(built.k) for p in built.phases]
        if got != list(data["numerators"]):
            raise DomainError("numerators do not describe a promise set")
        return built


def build_promise_set(k: int, ell: int) -> PromiseSet:
    """Construct the promise set for precision k and pair parameter ell.

    Requires k >= 2*ell + 1 so that all 2**(ell+1) phases are distinct and
    stay below 1.
    """
    if ell < 1:
        raise DomainError(f"ell must be >= 1, got {ell}")
    if k < 2 * ell + 1:
        raise DomainError(f"need k >= 2*ell + 1 (got k={k}, ell={ell})")
    phases = []
    pairs = []
    for r in range(1 << ell):
        base = r << (k - ell)
        partner = base + (r + 1)
        pairs.append((2 * r, 2 * r + 1))
        phases.append(DyadicPhase(base, k))
        phases.append(DyadicPhase(partner, k))
    return PromiseSet(k=k, ell=ell, phases=tuple(phases), pairs=tuple(pairs))


def min_gap(promise: PromiseSet | list[DyadicPhase]) -> DyadicPhase:
    """Smallest distance mod 1 between distinct phases of the set.

    Distance between numerators a, b at common precision K is
    min(d, 2**K - d) with d = |a - b|.
    """
    phases = promise.phases if isinstance(promise, PromiseSet) else tuple(promise)
    if len(phases) < 2:
        raise DomainError("need at least two phases to have a gap")
    common = max(p.k for p in phases)
    nums = sorted(p.lift(common) for p in phases)
    modulus = 1 << common
    best = modulus
    for a, b in zip(nums, nums[1:]):
        best = min(best, b - a)
    best = min(best, nums[0] + modulus - nums[-1])  # wraparound
    return DyadicPhase(best, common)
