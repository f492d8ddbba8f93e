"""Two-qubit preparation states, the antidistinguishing entangled basis,
and exact Born-rule probabilities.

Preparation states (h = 1..4): each qubit is |0> or |+>, so the pair is
|0>|0>, |0>|+>, |+>|0>, |+>|+>.  The measurement basis (i = 1..4) is the
entangled one whose outcome i never occurs on preparation i; its Born
rows are all permutations of (0, 1/4, 1/4, 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import INV_SQRT2, ONE, ZERO, ExactAmplitude


@dataclass(frozen=True)
class Ket:
    """Exact real-amplitude state vector, normalized on construction."""

    amplitudes: tuple[ExactAmplitude, ...]

    def __post_init__(self) -> None:
        total = ZERO
        for amp in self.amplitudes:
            total = total + amp * amp
        if total != ONE:
            raise ValueError(f"ket is not normalized: |ket|^2 = {total}")

    @property
    def dim(self) -> int:
        return len(self.amplitudes)

    def to_floats(self) -> list[float]:
        return [a.to_float() for a in self.amplitudes]


def ket(*amps: ExactAmplitude) -> Ket:
    return Ket(tuple(amps))


KET0 = ket(ONE, ZERO)
KET1 = ket(ZERO, ONE)
KET_PLUS = ket(INV_SQRT2, INV_SQRT2)
KET_MINUS = ket(INV_SQRT2, -INV_SQRT2)


def tensor(a: Ket, b: Ket) -> Ket:
    amps = tuple(x * y for x in a.amplitudes for y in b.amplitudes)
    return Ket(amps)


def inner(a: Ket, b: Ket) -> ExactAmplitude:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    total = ZERO
    for x, y in zip(a.amplitudes, b.amplitudes):
        total = total + x * y
    return total


def born_probability(outcome: Ket, state: Ket) -> Fraction:
    return inner(outcome, state).squared_magnitude()


def superpose(terms: list[tuple[ExactAmplitude, Ket]]) -> Ket:
    """Normalized linear combination sum_i c_i |k_i>."""
    dim = terms[0][1].dim
    amps = [ZERO] * dim
    for coeff, k in terms:
        if k.dim != dim:
            raise ValueError("dimension mismatch in superposition")
        for idx, amp in enumerate(k.amplitudes):
            amps[idx] = amps[idx] + coeff * amp
    return Ket(tuple(amps))


def pbr_states() -> list[Ket]:
    """The four non-orthogonal preparation pairs, indexed h = 1..4."""
    return [
        tensor(KET0, KET0),
        tensor(KET0, KET_PLUS),
        tensor(KET_PLUS, KET0),
        tensor(KET_PLUS, KET_PLUS),
    ]


def pbr_basis() -> list[Ket]:
    """The entangled measurement basis, indexed i = 1..4, orthonormal."""
    return [
        superpose([(INV_SQRT2, tensor(KET0, KET1)),
                   (INV_SQRT2, tensor(KET1, KET0))]),
        superpose([(INV_SQRT2, tensor(KET0, KET_MINUS)),
                   (INV_SQRT2, tensor(KET1, KET_PLUS))]),
        superpose([(INV_SQRT2, tensor(KET_PLUS, KET1)),
                   (INV_SQRT2, tensor(KET_MINUS, KET0))]),
        superpose([(INV_SQRT2, tensor(KET_PLUS, KET_MINUS)),
                   (INV_SQRT2, tensor(KET_MINUS, KET_PLUS))]),
    ]


@dataclass(frozen=True)
class ProbabilityTable:
    """Exact outcome-by-preparation table; rows are preparations h=1..4,
    columns are basis outcomes i=1..4."""

    entries: tuple[tuple[Fraction, ...], ...]

    def row(self, h: int) -> tuple[Fraction, ...]:
        """1-based row access matching the preparation labels."""
        return self.entries[h - 1]

    def check_invariants(self) -> list[str]:
        problems = []
        expected = sorted([Fraction(0), Fraction(1, 4), Fraction(1, 4),
                           Fraction(1, 2)])
        for h, row in enumerate(self.entries, start=1):
            if sum(row) != 1:
                problems.append(f"row {h} does not sum to 1")
            if row[h - 1] != 0:
                problems.append(f"diagonal entry ({h},{h}) is not 0")
            if sorted(row) != expected:
                problems.append(f"row {h} is not a permutation of "
                                "{0, 1/4, 1/4, 1/2}")
        return problems

    def to_json(self) -> dict:
        return {
            "rows": [
                {f"outcome_{i}": {"num": p.numerator, "den": p.denominator}
                 for i, p in enumerate(row, start=1)}
                for row in self.entries
            ]
        }


@lru_cache(maxsize=1)
def born_matrix() -> ProbabilityTable:
    states = pbr_states()
    basis = pbr_basis()
    entries = tuple(
        tuple(born_probability(phi, psi) for phi in basis)
        for psi in states
    )
    return ProbabilityTable(entries)


def is_antidistinguishable(states: list[Ket], basis: list[Ket]) -> bool:
    """True iff outcome i certifies state i was not prepared, for all i."""
    if len(states) != len(basis):
        raise ValueError("states and basis must have equal length")
    return all(born_probability(phi, psi) == 0
               for psi, phi in zip(states, basis))
