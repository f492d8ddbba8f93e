"""Catalog of the four Monty Hall variants.

classic    — 3 doors, host knows the prize and always reveals a goat.
ignorant   — 3 doors, host reveals blindly among the unpicked doors.
psi-ontic  — 4 doors, prize distributed by the exact Born row of one
             preparation state; the host opens the Born-forbidden door.
psi-epistemic — same host, but the forbidden door carries prize mass q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import qcore
from .engine import GameSpec, enumerate_joint

# Goat-conditioned stick and switch win rates cross at exactly this q.
CROSSOVER_Q = Fraction(1, 4)


def uniform_switch_policy(door_count: int) -> dict[tuple[int, int, int],
                                                   Fraction]:
    """Switch uniformly over the doors that are neither picked nor open."""
    policy: dict[tuple[int, int, int], Fraction] = {}
    doors = range(1, door_count + 1)
    for j in doors:
        for k in doors:
            if k == j:
                continue
            rest = [l for l in doors if l not in (j, k)]
            for l in rest:
                policy[(j, k, l)] = Fraction(1, len(rest))
    return policy


def classic_game() -> GameSpec:
    doors = range(1, 4)
    third = Fraction(1, 3)
    host = {}
    for i in doors:
        for j in doors:
            for k in doors:
                if k == j:
                    continue
                if i == j:
                    host[(i, j, k)] = Fraction(1, 2)
                elif k != i:
                    host[(i, j, k)] = Fraction(1)
    return GameSpec(
        door_count=3,
        prize_dist={i: third for i in doors},
        contestant_dist={(i, j): third for i in doors for j in doors},
        host_policy=host,
        switch_policy=uniform_switch_policy(3),
        label="classic",
    )


def ignorant_game() -> GameSpec:
    doors = range(1, 4)
    third = Fraction(1, 3)
    host = {(i, j, k): Fraction(1, 2)
            for i in doors for j in doors for k in doors if k != j}
    return GameSpec(
        door_count=3,
        prize_dist={i: third for i in doors},
        contestant_dist={(i, j): third for i in doors for j in doors},
        host_policy=host,
        switch_policy=uniform_switch_policy(3),
        label="ignorant",
    )


def _quantum_host_policy(forbidden: int) -> dict[tuple[int, int, int],
                                                 Fraction]:
    """Host trusts the Born rule: opens the forbidden door unless the
    contestant picked it, then falls back to a blind uniform reveal."""
    doors = range(1, 5)
    host = {}
    for i in doors:
        for j in doors:
            if j == forbidden:
                for k in doors:
                    if k != j:
                        host[(i, j, k)] = Fraction(1, 3)
            else:
                host[(i, j, forbidden)] = Fraction(1)
    return host


def psi_ontic_game(state: int = 1) -> GameSpec:
    """Prize distribution is the exact Born row for preparation `state`;
    the forbidden door (Born probability zero) is door `state`."""
    if state not in (1, 2, 3, 4):
        raise ValueError("state must be in 1..4")
    row = qcore.born_matrix().row(state)
    doors = range(1, 5)
    quarter = Fraction(1, 4)
    return GameSpec(
        door_count=4,
        prize_dist={i: row[i - 1] for i in doors},
        contestant_dist={(i, j): quarter for i in doors for j in doors},
        host_policy=_quantum_host_policy(forbidden=state),
        switch_policy=uniform_switch_policy(4),
        label=f"psi-ontic (state {state})" if state != 1 else "psi-ontic",
    )


@dataclass(frozen=True)
class EpistemicParams:
    """Deformation of the Born row: the forbidden door gains q = q1+q2+q3,
    taken from the two 1/4 doors (q1, q2) and the 1/2 door (q3)."""

    q1: Fraction
    q2: Fraction
    q3: Fraction

    def __post_init__(self) -> None:
        if not (0 <= self.q1 <= Fraction(1, 4)):
            raise ValueError(f"q1 = {self.q1} outside [0, 1/4]")
        if not (0 <= self.q2 <= Fraction(1, 4)):
            raise ValueError(f"q2 = {self.q2} outside [0, 1/4]")
        if not (0 <= self.q3 <= Fraction(1, 2)):
            raise ValueError(f"q3 = {self.q3} outside [0, 1/2]")

    @property
    def q(self) -> Fraction:
        return self.q1 + self.q2 + self.q3


def psi_epistemic_game(params: EpistemicParams, state: int = 1) -> GameSpec:
    """Same host and contestant behavior as the psi-ontic game, but the
    prize row gives the forbidden door probability q > 0."""
    spec = psi_ontic_game(state)
    row = qcore.born_matrix().row(state)
    # doors holding 1/4 in ascending order receive q1 then q2; the 1/2
    # door receives q3
    quarter_doors = [i for i in spec.doors if row[i - 1] == Fraction(1, 4)]
    half_door = next(i for i in spec.doors if row[i - 1] == Fraction(1, 2))
    prize = dict(spec.prize_dist)
    prize[state] = params.q
    prize[quarter_doors[0]] = Fraction(1, 4) - params.q1
    prize[quarter_doors[1]] = Fraction(1, 4) - params.q2
    prize[half_door] = Fraction(1, 2) - params.q3
    spec.prize_dist = prize
    spec.label = (f"psi-epistemic (q={params.q})" if state == 1
                  else f"psi-epistemic (state {state}, q={params.q})")
    return spec


def stick_given_goat(q: Fraction) -> Fraction:
    return Fraction(3) / (11 - 8 * q)


def switch_given_goat(q: Fraction) -> Fraction:
    return (4 - 4 * q) / (11 - 8 * q)


def switch_advantage(q: Fraction) -> Fraction:
    return (1 - 4 * q) / (11 - 8 * q)


@dataclass
class SweepRow:
    q1: Fraction
    q2: Fraction
    q3: Fraction
    q: Fraction | None = None
    stick: Fraction | None = None
    switch: Fraction | None = None
    advantage: Fraction | None = None
    error: str | None = None


def sweep_epistemic(q_values: list[tuple[Fraction, Fraction, Fraction]]
                    ) -> list[SweepRow]:
    """Tabulates the goat-conditioned closed forms over (q1, q2, q3)
    triples; invalid triples get an error instead of values."""
    rows = []
    for q1, q2, q3 in q_values:
        try:
            params = EpistemicParams(q1, q2, q3)
        except ValueError as exc:
            rows.append(SweepRow(q1, q2, q3, error=str(exc)))
            continue
        q = params.q
        rows.append(SweepRow(
            q1, q2, q3,
            q=q,
            stick=stick_given_goat(q),
            switch=switch_given_goat(q),
            advantage=switch_advantage(q),
        ))
    return rows


CATALOG = {
    "classic": classic_game,
    "ignorant": ignorant_game,
    "psi-ontic": psi_ontic_game,
    "psi-epistemic": psi_epistemic_game,
}


def make_game(name: str, q1: Fraction | None = None,
              q2: Fraction | None = None, q3: Fraction | None = None,
              state: int = 1) -> GameSpec:
    """Catalog lookup shared by the CLI and the session service."""
    if name == "classic":
        return classic_game()
    if name == "ignorant":
        return ignorant_game()
    if name == "psi-ontic":
        return psi_ontic_game(state)
    if name == "psi-epistemic":
        if q1 is None or q2 is None or q3 is None:
            raise ValueError("psi-epistemic requires q1, q2, q3")
        return psi_epistemic_game(EpistemicParams(q1, q2, q3), state)
    raise ValueError(f"unknown game {name!r}")


def analyze_game(name: str, **kwargs):
    return enumerate_joint(make_game(name, **kwargs))
