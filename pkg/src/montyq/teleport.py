"""Single-qubit teleportation as a state-vector simulation, its Monty
Hall reformulation, and the lost-bit channel analysis.

The game layer stays in exact rationals (via the generic engine); the
quantum states here are complex floats because the teleported amplitudes
are arbitrary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engine import GameSpec
from .games import uniform_switch_policy

NORM_TOL = 1e-12
FIDELITY_WIN = 1.0 - 1e-10

Bits = tuple[int, int]

_I = np.eye(2)
_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def _parse_bits(bits: Bits | str) -> Bits:
    if isinstance(bits, str):
        if len(bits) != 2 or any(c not in "01" for c in bits):
            raise ValueError(f"expected two bits, got {bits!r}")
        return int(bits[0]), int(bits[1])
    x, y = bits
    if x not in (0, 1) or y not in (0, 1):
        raise ValueError(f"expected two bits, got {bits!r}")
    return x, y


@dataclass(frozen=True)
class QubitState:
    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: |a|^2+|b|^2 = {norm}")

    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


@dataclass(frozen=True)
class BellLabel:
    x: int
    y: int

    def __post_init__(self) -> None:
        if self.x not in (0, 1) or self.y not in (0, 1):
            raise ValueError("Bell label bits must be 0 or 1")

    @classmethod
    def parse(cls, bits: Bits | str) -> BellLabel:
        return cls(*_parse_bits(bits))

    def vector(self) -> np.ndarray:
        """(|0,y> + (-1)^x |1, not-y>) / sqrt(2) as a 4-vector."""
        v = np.zeros(4, dtype=complex)
        v[self.y] = 1.0
        v[2 + (1 - self.y)] = -1.0 if self.x else 1.0
        return v / np.sqrt(2.0)


@dataclass(frozen=True)
class CorrectionOp:
    name: str
    matrix: np.ndarray

    def apply(self, state: np.ndarray) -> np.ndarray:
        return self.matrix @ state


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2 — insensitive to global phase by construction."""
    return abs(np.vdot(a, b)) ** 2


def teleport_step(state: QubitState, bell: BellLabel
                  ) -> list[tuple[Bits, float, np.ndarray]]:
    """Runs the sender's circuit (CNOT on her two qubits, then Hadamard
    on the message qubit) and splits on her measurement result.

    Returns the four (result, probability, receiver state) branches;
    receiver states are normalized.
    """
    psi = state.vector()
    full = np.kron(psi, bell.vector())  # index = m*4 + a*2 + b

    # CNOT: control = message qubit, target = sender's Bell half
    cnot = full.copy()
    for b in (0, 1):
        cnot[4 + b], cnot[6 + b] = full[6 + b], full[4 + b]

    # Hadamard on the message qubit
    had = np.empty_like(cnot)
    for rest in range(4):
        lo, hi = cnot[rest], cnot[4 + rest]
        had[rest] = (lo + hi) / np.sqrt(2.0)
        had[4 + rest] = (lo - hi) / np.sqrt(2.0)

    branches = []
    for a in (0, 1):
        for b in (0, 1):
            sub = had[[a * 4 + b * 2, a * 4 + b * 2 + 1]]
            prob = float(np.vdot(sub, sub).real)
            bob = sub / np.sqrt(prob) if prob > 0 else sub
            branches.append(((a, b), prob, bob))
    return branches


def correction_for(bell: BellLabel, alice_result: Bits | str) -> CorrectionOp:
    """Receiver's fix-up for a given Bell label and measurement result.

    Needs X exactly when the result's second bit differs from y, and Z
    exactly when the first bit differs from x; the only tracked global
    phase is the -I case at bell = result = 11.
    """
    a, b = _parse_bits(alice_result)
    if (bell.x, bell.y, a, b) == (1, 1, 1, 1):
        return CorrectionOp("-I", -_I)
    xpow = b ^ bell.y
    zpow = a ^ bell.x
    matrix = (np.linalg.matrix_power(_Z, zpow)
              @ np.linalg.matrix_power(_X, xpow))
    name = ("I", "X", "Z", "ZX")[2 * zpow + xpow]
    return CorrectionOp(name, matrix)


# ---------------------------------------------------------------------------
# Monty Hall teleportation game

DOOR_BITS = {1: (0, 0), 2: (0, 1), 3: (1, 0), 4: (1, 1)}
BITS_DOOR = {v: k for k, v in DOOR_BITS.items()}


def monty_teleport_game(bell: BellLabel = BellLabel(0, 0)) -> GameSpec:
    """Doors are the four possible measurement results; the prize is the
    sender's actual result. The contestant's pick is the Bell label in
    use; the sender reveals a losing result she did not obtain."""
    doors = range(1, 5)
    pick = BITS_DOOR[(bell.x, bell.y)]
    quarter = Fraction(1, 4)
    host: dict[tuple[int, int, int], Fraction] = {}
    for i in doors:
        if i == pick:
            for k in doors:
                if k != pick:
                    host[(i, pick, k)] = Fraction(1, 3)
        else:
            for k in doors:
                if k not in (pick, i):
                    host[(i, pick, k)] = Fraction(1, 2)
    return GameSpec(
        door_count=4,
        prize_dist={i: quarter for i in doors},
        contestant_dist={(i, pick): Fraction(1) for i in doors},
        host_policy=host,
        switch_policy=uniform_switch_policy(4),
        label="monty-teleport",
        door_labels={i: f"{x}{y}" for i, (x, y) in DOOR_BITS.items()},
    )


# ---------------------------------------------------------------------------
# Unreliable channel: one of the two classical bits is lost in transit

def _consistent_results(v: int) -> list[Bits]:
    """Results compatible with observing value v in an unknown position."""
    return [(a, b) for a in (0, 1) for b in (0, 1) if a == v or b == v]


@dataclass
class UnreliableReport:
    """Exact win rates when the receiver sees one surviving bit value.

    stick = apply the correction for result == the Bell label in use
    (do nothing for label 00); switch = correct for a uniformly chosen
    other compatible result.
    """

    p_bit0: Fraction
    p_bit1: Fraction
    stick_given_bit0: Fraction
    switch_given_bit0: Fraction
    stick_given_bit1: Fraction
    switch_given_bit1: Fraction

    def to_json(self) -> dict:
        def fj(f: Fraction) -> dict:
            return {"num": f.numerator, "den": f.denominator}
        return {name: fj(getattr(self, name)) for name in (
            "p_bit0", "p_bit1", "stick_given_bit0", "switch_given_bit0",
            "stick_given_bit1", "switch_given_bit1")}


def unreliable_analysis(bell: BellLabel = BellLabel(0, 0)
                        ) -> UnreliableReport:
    """Enumerates (result, surviving position) exactly: results are
    uniform over four, the surviving position is uniform over two."""
    stick_guess = (bell.x, bell.y)
    quarter = Fraction(1, 4)
    half = Fraction(1, 2)

    p_v = {0: Fraction(0), 1: Fraction(0)}
    stick_win = {0: Fraction(0), 1: Fraction(0)}
    switch_win = {0: Fraction(0), 1: Fraction(0)}

    for ab in [(a, b) for a in (0, 1) for b in (0, 1)]:
        for pos in (0, 1):
            v = ab[pos]
            p = quarter * half
            p_v[v] += p
            if ab == stick_guess:
                stick_win[v] += p
            options = [r for r in _consistent_results(v)
                       if r != stick_guess]
            if ab in options:
                switch_win[v] += p * Fraction(1, len(options))

    return UnreliableReport(
        p_bit0=p_v[0],
        p_bit1=p_v[1],
        stick_given_bit0=stick_win[0] / p_v[0],
        switch_given_bit0=switch_win[0] / p_v[0],
        stick_given_bit1=stick_win[1] / p_v[1],
        switch_given_bit1=switch_win[1] / p_v[1],
    )


# ---------------------------------------------------------------------------
# Seeded simulation over Haar-random inputs

@dataclass
class TeleportSimulationReport:
    mode: str
    strategy: str
    trials: int
    seed: int
    wins: int
    mean_fidelity: float
    bit0_trials: int | None = None
    bit0_wins: int | None = None
    bit1_trials: int | None = None
    bit1_wins: int | None = None

    @property
    def win_rate(self) -> float:
        return self.wins / self.trials

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "strategy": self.strategy,
            "trials": self.trials,
            "seed": self.seed,
            "wins": self.wins,
            "win_rate": self.win_rate,
            "mean_fidelity": self.mean_fidelity,
        }
        if self.bit0_trials is not None:
            out.update({
                "bit0_trials": self.bit0_trials,
                "bit0_wins": self.bit0_wins,
                "bit1_trials": self.bit1_trials,
                "bit1_wins": self.bit1_wins,
            })
        return out


def _haar_states(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 2) complex array: alpha = cos(t/2), beta = e^{i phi} sin(t/2),
    cos t uniform on [-1, 1], phi uniform on [0, 2 pi)."""
    cos_t = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    half_t = np.arccos(cos_t) / 2.0
    return np.stack([np.cos(half_t),
                     np.exp(1j * phi) * np.sin(half_t)], axis=1)


def _pre_correction_matrix(bell: BellLabel, a: int, b: int) -> np.ndarray:
    """2x2 real matrix mapping (alpha, beta) to the receiver's state
    before any correction, for measurement result ab."""
    x, y = bell.x, bell.y
    m = np.zeros((2, 2))
    if b == 0:
        m[y, 0] = 1.0
        m[1 - y, 1] = (-1.0) ** (x + a)
    else:
        m[1 - y, 0] = (-1.0) ** x
        m[y, 1] = (-1.0) ** a
    return m


def simulate_teleport(mode: str, strategy: str, trials: int, seed: int,
                      bell: BellLabel = BellLabel(0, 0)
                      ) -> TeleportSimulationReport:
    """Runs the full pipeline on Haar-random inputs; a trial is a win
    when the receiver's final state matches the input up to global phase
    (fidelity >= 1 - 1e-10). Deterministic per seed."""
    if mode not in ("standard", "monty", "unreliable"):
        raise ValueError(f"unknown mode {mode!r}")
    if strategy not in ("stick", "switch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    rng = np.random.default_rng(seed)
    psi = _haar_states(rng, trials)
    results = rng.integers(0, 4, trials)  # index = 2a + b

    all_bits = [(0, 0), (0, 1), (1, 0), (1, 1)]
    pre = np.stack([_pre_correction_matrix(bell, a, b)
                    for a, b in all_bits])
    corr = np.stack([correction_for(bell, ab).matrix for ab in all_bits])
    pick_idx = 2 * bell.x + bell.y

    observed_bit = None
    if mode == "standard":
        guess = results.copy()
    elif mode == "monty":
        # sender reveals a losing result cd (not her result, not the pick)
        u = rng.random(trials)
        reveal = np.empty(trials, dtype=int)
        for r in range(4):
            mask = results == r
            if r == pick_idx:
                opts = [o for o in range(4) if o != pick_idx]
            else:
                opts = [o for o in range(4) if o not in (pick_idx, r)]
            reveal[mask] = np.array(opts)[
                np.minimum((u[mask] * len(opts)).astype(int), len(opts) - 1)]
        if strategy == "stick":
            guess = np.full(trials, pick_idx)
        else:
            u2 = rng.random(trials)
            guess = np.empty(trials, dtype=int)
            for r in range(4):
                mask = reveal == r
                opts = [o for o in range(4) if o not in (pick_idx, r)]
                guess[mask] = np.array(opts)[
                    np.minimum((u2[mask] * len(opts)).astype(int),
                               len(opts) - 1)]
    else:  # unreliable
        pos = rng.integers(0, 2, trials)
        bits = np.stack([results // 2, results % 2], axis=1)
        observed_bit = bits[np.arange(trials), pos]
        if strategy == "stick":
            guess = np.full(trials, pick_idx)
        else:
            u2 = rng.random(trials)
            guess = np.empty(trials, dtype=int)
            for v in (0, 1):
                mask = observed_bit == v
                opts = [2 * a + b for a, b in _consistent_results(v)
                        if (a, b) != (bell.x, bell.y)]
                guess[mask] = np.array(opts)[
                    np.minimum((u2[mask] * len(opts)).astype(int),
                               len(opts) - 1)]

    net = np.einsum("nij,njk->nik", corr[guess], pre[results])
    final = np.einsum("nij,nj->ni", net.astype(complex), psi)
    fid = np.abs(np.einsum("ni,ni->n", psi.conj(), final)) ** 2
    wins_mask = fid >= FIDELITY_WIN

    report = TeleportSimulationReport(
        mode=mode,
        strategy=strategy,
        trials=trials,
        seed=seed,
        wins=int(wins_mask.sum()),
        mean_fidelity=float(fid.mean()),
    )
    if observed_bit is not None:
        bit1 = observed_bit == 1
        report.bit0_trials = int((~bit1).sum())
        report.bit0_wins = int((wins_mask & ~bit1).sum())
        report.bit1_trials = int(bit1.sum())
        report.bit1_wins = int((wins_mask & bit1).sum())
    return report
