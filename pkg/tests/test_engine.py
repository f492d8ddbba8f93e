from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from montyq.engine import (
    GameSpec,
    InvalidGameSpec,
    enumerate_joint,
    simulate,
    validate,
)
from montyq.games import classic_game, ignorant_game, psi_ontic_game

from .mc import check_simulation
from .oracle import brute_force_analysis


def _normalize(weights: list[int]) -> list[Fraction]:
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


@st.composite
def valid_specs(draw) -> GameSpec:
    """Random fully-valid game specs with exact rational distributions."""
    n = draw(st.integers(min_value=3, max_value=4))
    doors = range(1, n + 1)
    weight = st.integers(min_value=0, max_value=5)
    positive = st.integers(min_value=1, max_value=5)

    def row(length):
        ws = draw(st.lists(weight, min_size=length, max_size=length))
        if sum(ws) == 0:
            ws[draw(st.integers(min_value=0, max_value=length - 1))] = \
                draw(positive)
        return _normalize(ws)

    prize = dict(zip(doors, row(n)))
    contestant = {}
    for i in doors:
        for j, p in zip(doors, row(n)):
            contestant[(i, j)] = p
    host = {}
    for i in doors:
        for j in doors:
            others = [k for k in doors if k != j]
            for k, p in zip(others, row(n - 1)):
                host[(i, j, k)] = p
    switch = {}
    for j in doors:
        for k in doors:
            if k == j:
                continue
            rest = [l for l in doors if l not in (j, k)]
            for l, p in zip(rest, row(len(rest))):
                switch[(j, k, l)] = p
    return GameSpec(n, prize, contestant, host, switch, label="random")


def test_catalog_specs_validate():
    for spec in (classic_game(), ignorant_game(), psi_ontic_game()):
        assert validate(spec) == []


def test_validate_host_opens_picked_door():
    spec = classic_game()
    spec.host_policy[(1, 1, 1)] = Fraction(1, 2)
    spec.host_policy[(1, 1, 2)] = Fraction(1, 4)
    spec.host_policy[(1, 1, 3)] = Fraction(1, 4)
    violations = validate(spec)
    assert any("host opens picked door" in v for v in violations)


def test_validate_unnormalized_prize():
    spec = classic_game()
    spec.prize_dist[1] = Fraction(1, 12)
    violations = validate(spec)
    assert any("prize distribution not normalized" in v for v in violations)


def test_validate_never_raises():
    spec = classic_game()
    spec.prize_dist = {1: Fraction(3, 4)}
    assert isinstance(validate(spec), list)


def test_enumerate_rejects_invalid_spec():
    spec = classic_game()
    spec.prize_dist[1] = Fraction(0)
    with pytest.raises(InvalidGameSpec) as excinfo:
        enumerate_joint(spec)
    assert excinfo.value.violations


def test_classic_exact_values():
    a = enumerate_joint(classic_game())
    assert a.p_win_switch == Fraction(2, 3)
    assert a.p_win_stick == Fraction(1, 3)
    assert a.p_opens_prize == 0


def test_ignorant_exact_values():
    a = enumerate_joint(ignorant_game())
    assert a.p_opens_prize == Fraction(1, 3)
    assert a.p_win_switch_given_goat == Fraction(1, 2)


def test_psi_ontic_exact_values():
    a = enumerate_joint(psi_ontic_game())
    assert a.p_opens_prize == Fraction(1, 12)


def test_joint_sums_to_one_for_catalog():
    for spec in (classic_game(), ignorant_game(), psi_ontic_game()):
        a = enumerate_joint(spec)
        assert sum(p for *_, p in a.joint) == 1


@settings(max_examples=60, deadline=None)
@given(valid_specs())
def test_joint_sums_to_one_randomized(spec):
    a = enumerate_joint(spec)
    assert sum(p for *_, p in a.joint) == 1
    assert a.p_opens_prize + a.p_opens_goat == 1


@settings(max_examples=60, deadline=None)
@given(valid_specs())
def test_conditioning_identity(spec):
    a = enumerate_joint(spec)
    assert a.p_win_stick_given_goat * a.p_opens_goat == a.p_win_stick_and_goat
    assert (a.p_win_switch_given_goat * a.p_opens_goat
            == a.p_win_switch_and_goat)


@settings(max_examples=60, deadline=None)
@given(valid_specs())
def test_oracle_equivalence_randomized(spec):
    a = enumerate_joint(spec)
    oracle = brute_force_analysis(spec)
    assert oracle["total"] == 1
    assert oracle["p_opens_prize"] == a.p_opens_prize
    assert oracle["p_win_stick_and_goat"] == a.p_win_stick_and_goat
    assert oracle["p_win_switch_and_goat"] == a.p_win_switch_and_goat
    assert oracle["p_win_stick_given_goat"] == a.p_win_stick_given_goat
    assert oracle["p_win_switch_given_goat"] == a.p_win_switch_given_goat


def test_oracle_equivalence_catalog():
    for spec in (classic_game(), ignorant_game(), psi_ontic_game()):
        a = enumerate_joint(spec)
        oracle = brute_force_analysis(spec)
        assert oracle["p_win_switch_given_goat"] == a.p_win_switch_given_goat
        assert oracle["p_win_stick_given_goat"] == a.p_win_stick_given_goat


def test_simulation_determinism():
    spec = classic_game()
    a = simulate(spec, "switch", 20_000, 99)
    b = simulate(spec, "switch", 20_000, 99)
    assert a == b


def test_simulation_counts_consistent():
    spec = ignorant_game()
    report = simulate(spec, "per-trial-random", 50_000, 7)
    assert report.wins <= report.goat_reveals <= report.trials
    assert report.prize_reveals + report.goat_reveals == report.trials


def test_simulation_three_sigma_classic():
    a = enumerate_joint(classic_game())
    check_simulation(classic_game(), "switch", a.p_win_switch_given_goat,
                     200_000, seed=11)


def test_simulation_three_sigma_psi_ontic_stick():
    a = enumerate_joint(psi_ontic_game())
    check_simulation(psi_ontic_game(), "stick", a.p_win_stick_given_goat,
                     200_000, seed=12)


def test_simulate_rejects_bad_input():
    with pytest.raises(ValueError):
        simulate(classic_game(), "always-lose", 10, 0)
    with pytest.raises(ValueError):
        simulate(classic_game(), "stick", 0, 0)


def test_gamespec_json_roundtrip():
    spec = psi_ontic_game()
    data = spec.to_json()
    back = GameSpec.from_json(data)
    assert back.to_json() == data
    assert enumerate_joint(back).p_win_switch_given_goat == Fraction(4, 11)
