import itertools
from fractions import Fraction

import numpy as np
import pytest

from montyq.engine import enumerate_joint
from montyq.teleport import (
    BellLabel,
    QubitState,
    correction_for,
    fidelity,
    monty_teleport_game,
    simulate_teleport,
    teleport_step,
    unreliable_analysis,
)

from .mc import three_sigma
from .oracle import brute_force_analysis

ALL_BITS = [(0, 0), (0, 1), (1, 0), (1, 1)]


def haar_states(seed: int, n: int) -> list[QubitState]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        half_t = np.arccos(rng.uniform(-1, 1)) / 2
        phi = rng.uniform(0, 2 * np.pi)
        out.append(QubitState(np.cos(half_t),
                              np.exp(1j * phi) * np.sin(half_t)))
    return out


def test_qubit_state_normalization():
    with pytest.raises(ValueError):
        QubitState(1.0, 1.0)


def test_teleport_step_result_00_is_input():
    psi = QubitState(0.6, 0.8j)
    branches = teleport_step(psi, BellLabel(0, 0))
    (ab, prob, bob) = branches[0]
    assert ab == (0, 0)
    assert fidelity(psi.vector(), bob) >= 1 - 1e-12


def test_teleport_step_result_01_swaps_amplitudes():
    psi = QubitState(0.6, 0.8)
    branches = {ab: bob for ab, _, bob in teleport_step(psi, BellLabel(0, 0))}
    expected = np.array([0.8, 0.6])
    assert fidelity(expected, branches[(0, 1)]) >= 1 - 1e-12


def test_branch_probabilities_quarter():
    # norm of each branch checked numerically for many inputs and all
    # Bell labels
    for psi in haar_states(5, 25):
        for x, y in ALL_BITS:
            branches = teleport_step(psi, BellLabel(x, y))
            for _, prob, _ in branches:
                assert abs(prob - 0.25) < 1e-12


def test_correction_table_bell_00():
    bell = BellLabel(0, 0)
    assert correction_for(bell, (0, 0)).name == "I"
    assert correction_for(bell, (0, 1)).name == "X"
    assert correction_for(bell, (1, 0)).name == "Z"
    assert correction_for(bell, (1, 1)).name == "ZX"
    assert correction_for(bell, "10").name == "Z"


def test_correction_matching_result_is_identity():
    for x, y in [(0, 0), (0, 1), (1, 0)]:
        assert correction_for(BellLabel(x, y), (x, y)).name == "I"


def test_correction_11_11_is_negative_identity():
    op = correction_for(BellLabel(1, 1), (1, 1))
    assert op.name == "-I"
    assert np.allclose(op.matrix, -np.eye(2))
    # it restores the state exactly, not just up to phase
    psi = QubitState(0.6, 0.8)
    branches = {ab: bob for ab, _, bob in teleport_step(psi, BellLabel(1, 1))}
    restored = op.apply(branches[(1, 1)])
    assert np.allclose(restored, psi.vector(), atol=1e-12)


@pytest.mark.parametrize("bell_bits", ALL_BITS)
def test_protocol_correctness_all_bells(bell_bits):
    bell = BellLabel(*bell_bits)
    for psi in haar_states(17, 50):
        for ab, prob, bob in teleport_step(psi, bell):
            corrected = correction_for(bell, ab).apply(bob)
            assert fidelity(psi.vector(), corrected) >= 1 - 1e-10


def test_bad_bits_rejected():
    with pytest.raises(ValueError):
        correction_for(BellLabel(0, 0), "012")
    with pytest.raises(ValueError):
        BellLabel(2, 0)


def test_monty_teleport_game_via_engine():
    a = enumerate_joint(monty_teleport_game())
    assert a.p_win_stick == Fraction(2, 8)
    assert a.p_win_switch == Fraction(3, 8)
    assert a.p_opens_prize == 0


def test_monty_teleport_game_oracle_agreement():
    oracle = brute_force_analysis(monty_teleport_game())
    assert oracle["p_win_stick_and_goat"] == Fraction(1, 4)
    assert oracle["p_win_switch_and_goat"] == Fraction(3, 8)


def brute_force_unreliable(stick_guess):
    """Independent enumeration over the 4x2 (result, position) space."""
    p_v = {0: Fraction(0), 1: Fraction(0)}
    stick = {0: Fraction(0), 1: Fraction(0)}
    switch = {0: Fraction(0), 1: Fraction(0)}
    for ab in ALL_BITS:
        for pos in (0, 1):
            p = Fraction(1, 8)
            v = ab[pos]
            p_v[v] += p
            if ab == stick_guess:
                stick[v] += p
            options = [r for r in ALL_BITS
                       if (r[0] == v or r[1] == v) and r != stick_guess]
            if ab in options:
                switch[v] += p / len(options)
    return {v: (p_v[v], stick[v] / p_v[v], switch[v] / p_v[v])
            for v in (0, 1)}


def test_unreliable_exact_values():
    report = unreliable_analysis()
    assert report.p_bit0 == Fraction(1, 2)
    assert report.p_bit1 == Fraction(1, 2)
    assert report.stick_given_bit0 == Fraction(1, 2)
    assert report.switch_given_bit0 == Fraction(1, 4)
    assert report.stick_given_bit1 == 0
    assert report.switch_given_bit1 == Fraction(1, 3)
    assert report.p_bit0 + report.p_bit1 == 1


def test_unreliable_matches_brute_force():
    report = unreliable_analysis()
    oracle = brute_force_unreliable((0, 0))
    assert oracle[0] == (report.p_bit0, report.stick_given_bit0,
                         report.switch_given_bit0)
    assert oracle[1] == (report.p_bit1, report.stick_given_bit1,
                         report.switch_given_bit1)


def test_simulate_standard_always_wins():
    report = simulate_teleport("standard", "stick", 1000, 3)
    assert report.wins == report.trials
    assert report.mean_fidelity >= 1 - 1e-10


def test_simulate_monty_three_sigma():
    trials = 200_000
    for strategy, exact in (("stick", 0.25), ("switch", 0.375)):
        report = simulate_teleport("monty", strategy, trials, 21)
        assert abs(report.win_rate - exact) <= three_sigma(exact, trials)


def test_simulate_unreliable_three_sigma():
    report = simulate_teleport("unreliable", "stick", 200_000, 9)
    rate0 = report.bit0_wins / report.bit0_trials
    assert abs(rate0 - 0.5) <= three_sigma(0.5, report.bit0_trials)
    assert report.bit1_wins == 0

    report = simulate_teleport("unreliable", "switch", 200_000, 9)
    rate0 = report.bit0_wins / report.bit0_trials
    rate1 = report.bit1_wins / report.bit1_trials
    assert abs(rate0 - 0.25) <= three_sigma(0.25, report.bit0_trials)
    assert abs(rate1 - 1 / 3) <= three_sigma(1 / 3, report.bit1_trials)


def test_simulate_deterministic():
    a = simulate_teleport("monty", "switch", 10_000, 5)
    b = simulate_teleport("monty", "switch", 10_000, 5)
    assert a == b


def test_simulate_rejects_bad_args():
    with pytest.raises(ValueError):
        simulate_teleport("nope", "stick", 10, 0)
    with pytest.raises(ValueError):
        simulate_teleport("monty", "hedge", 10, 0)
