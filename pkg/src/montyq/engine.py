"""Generic finite Monty Hall machinery.

A game is four conditional distributions chained in order: prize door,
contestant pick, host reveal, switch target.  `enumerate_joint` works the
whole joint table in exact rationals; `simulate` runs seeded Monte Carlo
over the same distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

Frac = Fraction


def _frac_json(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def _frac_from_json(d: dict) -> Fraction:
    return Fraction(d["num"], d["den"])


@dataclass
class GameSpec:
    """Doors are labelled 1..door_count.

    prize_dist[i]              = P(prize behind door i)
    contestant_dist[(i, j)]    = P(contestant picks j | prize at i)
    host_policy[(i, j, k)]     = P(host opens k | prize i, pick j)
    switch_policy[(j, k, l)]   = P(switch target l | pick j, reveal k)
    """

    door_count: int
    prize_dist: dict[int, Fraction]
    contestant_dist: dict[tuple[int, int], Fraction]
    host_policy: dict[tuple[int, int, int], Fraction]
    switch_policy: dict[tuple[int, int, int], Fraction]
    label: str = ""
    door_labels: dict[int, str] = field(default_factory=dict)

    @property
    def doors(self) -> range:
        return range(1, self.door_count + 1)

    def prize(self, i: int) -> Fraction:
        return self.prize_dist.get(i, Fraction(0))

    def pick(self, i: int, j: int) -> Fraction:
        return self.contestant_dist.get((i, j), Fraction(0))

    def host(self, i: int, j: int, k: int) -> Fraction:
        return self.host_policy.get((i, j, k), Fraction(0))

    def switch(self, j: int, k: int, l: int) -> Fraction:
        return self.switch_policy.get((j, k, l), Fraction(0))

    def to_json(self) -> dict:
        n = self.door_count
        return {
            "label": self.label,
            "doors": n,
            "door_labels": [self.door_labels.get(i, str(i))
                            for i in self.doors],
            "prize_dist": [_frac_json(self.prize(i)) for i in self.doors],
            "contestant_dist": [[_frac_json(self.pick(i, j))
                                 for j in self.doors] for i in self.doors],
            "host_policy": [[[_frac_json(self.host(i, j, k))
                              for k in self.doors] for j in self.doors]
                            for i in self.doors],
            "switch_policy": [[[_frac_json(self.switch(j, k, l))
                                for l in self.doors] for k in self.doors]
                              for j in self.doors],
        }

    @classmethod
    def from_json(cls, data: dict) -> GameSpec:
        n = data["doors"]
        doors = range(1, n + 1)
        labels = data.get("door_labels") or [str(i) for i in doors]
        return cls(
            door_count=n,
            prize_dist={i: _frac_from_json(data["prize_dist"][i - 1])
                        for i in doors},
            contestant_dist={
                (i, j): _frac_from_json(data["contestant_dist"][i - 1][j - 1])
                for i in doors for j in doors},
            host_policy={
                (i, j, k):
                    _frac_from_json(data["host_policy"][i - 1][j - 1][k - 1])
                for i in doors for j in doors for k in doors},
            switch_policy={
                (j, k, l):
                    _frac_from_json(data["switch_policy"][j - 1][k - 1][l - 1])
                for j in doors for k in doors for l in doors},
            label=data.get("label", ""),
            door_labels={i: labels[i - 1] for i in doors},
        )


@dataclass
class GameAnalysis:
    """Exact results of a full joint enumeration.

    `joint` rows are (prize, pick, reveal, switch_target, probability);
    switch_target is None on branches where the host revealed the prize
    (the game ends, no switch stage).
    """

    joint: list[tuple[int, int, int, int | None, Fraction]]
    p_opens_prize: Fraction
    p_opens_goat: Fraction
    p_win_stick_and_goat: Fraction
    p_win_switch_and_goat: Fraction
    p_win_stick_given_goat: Fraction
    p_win_switch_given_goat: Fraction

    # A stick (switch) player wins overall exactly when the host revealed
    # a goat and their final door holds the prize, so the unconditional
    # win rates coincide with the and-goat joints.
    @property
    def p_win_stick(self) -> Fraction:
        return self.p_win_stick_and_goat

    @property
    def p_win_switch(self) -> Fraction:
        return self.p_win_switch_and_goat

    def to_json(self, include_joint: bool = False) -> dict:
        out = {
            "p_opens_prize": _frac_json(self.p_opens_prize),
            "p_opens_goat": _frac_json(self.p_opens_goat),
            "p_win_stick": _frac_json(self.p_win_stick),
            "p_win_switch": _frac_json(self.p_win_switch),
            "p_win_stick_and_goat": _frac_json(self.p_win_stick_and_goat),
            "p_win_switch_and_goat": _frac_json(self.p_win_switch_and_goat),
            "p_win_stick_given_goat": _frac_json(self.p_win_stick_given_goat),
            "p_win_switch_given_goat":
                _frac_json(self.p_win_switch_given_goat),
        }
        if include_joint:
            out["joint"] = [
                {"prize": i, "pick": j, "reveal": k, "switch_to": l,
                 "p": _frac_json(p)}
                for i, j, k, l, p in self.joint
            ]
        return out


@dataclass
class SimulationReport:
    trials: int
    seed: int
    strategy: str
    wins: int
    goat_reveals: int
    prize_reveals: int

    @property
    def empirical_win_given_goat(self) -> float:
        if self.goat_reveals == 0:
            return 0.0
        return self.wins / self.goat_reveals

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "strategy": self.strategy,
            "wins": self.wins,
            "goat_reveals": self.goat_reveals,
            "prize_reveals": self.prize_reveals,
            "empirical_win_given_goat": self.empirical_win_given_goat,
            "empirical_win_rate": self.wins / self.trials,
        }


class InvalidGameSpec(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


def validate(spec: GameSpec) -> list[str]:
    """Returns all invariant violations; an empty list means valid.

    Distributions conditioned on zero-probability histories are left
    unconstrained.
    """
    problems: list[str] = []
    doors = spec.doors

    total = sum(spec.prize(i) for i in doors)
    if total != 1:
        problems.append(f"prize distribution not normalized (sums to {total})")
    for i in doors:
        if spec.prize(i) < 0:
            problems.append(f"prize_dist[{i}] is negative")

    for i in doors:
        if spec.prize(i) == 0:
            continue
        row = sum(spec.pick(i, j) for j in doors)
        if row != 1:
            problems.append(
                f"contestant_dist(prize={i}, .) sums to {row}, not 1")
        for j in doors:
            if spec.pick(i, j) < 0:
                problems.append(f"contestant_dist[{i},{j}] is negative")

    for i in doors:
        for j in doors:
            if spec.prize(i) * spec.pick(i, j) == 0:
                continue
            if spec.host(i, j, j) != 0:
                problems.append(
                    f"host opens picked door: host_policy({i},{j},{j}) != 0")
            row = sum(spec.host(i, j, k) for k in doors)
            if row != 1:
                problems.append(
                    f"host_policy(prize={i}, pick={j}, .) sums to {row}, not 1")
            for k in doors:
                if spec.host(i, j, k) < 0:
                    problems.append(f"host_policy[{i},{j},{k}] is negative")

    # (j, k) pairs reachable with a goat reveal
    reachable = set()
    for i in doors:
        for j in doors:
            base = spec.prize(i) * spec.pick(i, j)
            if base == 0:
                continue
            for k in doors:
                if k != i and base * spec.host(i, j, k) > 0:
                    reachable.add((j, k))
    for j, k in sorted(reachable):
        for l in (j, k):
            if spec.switch(j, k, l) != 0:
                problems.append(
                    f"switch_policy(pick={j}, reveal={k}) puts mass on "
                    f"door {l}")
        row = sum(spec.switch(j, k, l) for l in doors)
        if row != 1:
            problems.append(
                f"switch_policy(pick={j}, reveal={k}, .) sums to {row}, not 1")
        for l in doors:
            if spec.switch(j, k, l) < 0:
                problems.append(f"switch_policy[{j},{k},{l}] is negative")

    return problems


def enumerate_joint(spec: GameSpec) -> GameAnalysis:
    """Exact chain-rule enumeration over (prize, pick, reveal, target)."""
    violations = validate(spec)
    if violations:
        raise InvalidGameSpec(violations)

    joint: list[tuple[int, int, int, int | None, Fraction]] = []
    p_opens_prize = Fraction(0)
    p_stick = Fraction(0)
    p_switch = Fraction(0)

    for i in spec.doors:
        pi = spec.prize(i)
        if pi == 0:
            continue
        for j in spec.doors:
            pij = pi * spec.pick(i, j)
            if pij == 0:
                continue
            for k in spec.doors:
                pijk = pij * spec.host(i, j, k)
                if pijk == 0:
                    continue
                if k == i:
                    # host revealed the prize: game over, no switch stage
                    p_opens_prize += pijk
                    joint.append((i, j, k, None, pijk))
                    continue
                if i == j:
                    p_stick += pijk
                for l in spec.doors:
                    pijkl = pijk * spec.switch(j, k, l)
                    if pijkl == 0:
                        continue
                    joint.append((i, j, k, l, pijkl))
                    if l == i:
                        p_switch += pijkl

    p_goat = 1 - p_opens_prize
    return GameAnalysis(
        joint=joint,
        p_opens_prize=p_opens_prize,
        p_opens_goat=p_goat,
        p_win_stick_and_goat=p_stick,
        p_win_switch_and_goat=p_switch,
        p_win_stick_given_goat=p_stick / p_goat if p_goat else Fraction(0),
        p_win_switch_given_goat=p_switch / p_goat if p_goat else Fraction(0),
    )


def _cumulative(matrix: np.ndarray) -> np.ndarray:
    """Row-normalized cumulative along the last axis; all-zero rows are
    left harmless (they are never reached)."""
    cum = np.cumsum(matrix, axis=-1)
    last = cum[..., -1:]
    safe = np.where(last > 0, last, 1.0)
    return cum / safe


def _draw(cum_rows: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF draw: first index whose cumulative exceeds u."""
    return (u[:, None] < cum_rows).argmax(axis=1)


def simulate(spec: GameSpec, strategy: str, trials: int,
             seed: int) -> SimulationReport:
    """Seeded Monte Carlo over the game's four distributions.

    Each trial draws prize, pick, reveal, and (when relevant) switch
    target by sequential inverse-CDF sampling; the whole run is
    deterministic for a fixed (spec, strategy, trials, seed).
    """
    if strategy not in ("stick", "switch", "per-trial-random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    violations = validate(spec)
    if violations:
        raise InvalidGameSpec(violations)

    n = spec.door_count
    doors = list(spec.doors)
    prize_p = np.array([float(spec.prize(i)) for i in doors])
    pick_p = np.array([[float(spec.pick(i, j)) for j in doors]
                       for i in doors])
    host_p = np.array([[[float(spec.host(i, j, k)) for k in doors]
                        for j in doors] for i in doors])
    switch_p = np.array([[[float(spec.switch(j, k, l)) for l in doors]
                          for k in doors] for j in doors])

    rng = np.random.default_rng(seed)
    cum_prize = _cumulative(prize_p.reshape(1, n))
    cum_pick = _cumulative(pick_p)
    cum_host = _cumulative(host_p)
    cum_switch = _cumulative(switch_p)

    prize = (rng.random(trials)[:, None] < cum_prize).argmax(axis=1)
    pick = _draw(cum_pick[prize], rng.random(trials))
    reveal = _draw(cum_host[prize, pick], rng.random(trials))
    target = _draw(cum_switch[pick, reveal], rng.random(trials))

    goat = reveal != prize
    if strategy == "stick":
        final = pick
    elif strategy == "switch":
        final = target
    else:
        switching = rng.random(trials) < 0.5
        final = np.where(switching, target, pick)

    wins = int(((final == prize) & goat).sum())
    goat_reveals = int(goat.sum())
    return SimulationReport(
        trials=trials,
        seed=seed,
        strategy=strategy,
        wins=wins,
        goat_reveals=goat_reveals,
        prize_reveals=trials - goat_reveals,
    )
