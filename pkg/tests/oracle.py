"""Independent brute-force enumeration used to cross-check the engine.

Deliberately shares no logic with montyq.engine.enumerate_joint: it
walks the full (prize, pick, reveal, target) product space and sums
chain products directly.
"""

from fractions import Fraction
from itertools import product

from montyq.engine import GameSpec


def brute_force_analysis(spec: GameSpec) -> dict[str, Fraction]:
    doors = list(range(1, spec.door_count + 1))
    total = Fraction(0)
    p_prize_reveal = Fraction(0)
    p_stick_win = Fraction(0)
    p_switch_win = Fraction(0)

    for i, j, k in product(doors, doors, doors):
        p3 = spec.prize(i) * spec.pick(i, j) * spec.host(i, j, k)
        if p3 == 0:
            continue
        if k == i:
            # prize revealed: the game ends here
            total += p3
            p_prize_reveal += p3
            continue
        if i == j:
            p_stick_win += p3
        for l in doors:
            p4 = p3 * spec.switch(j, k, l)
            total += p4
            if l == i:
                p_switch_win += p4

    p_goat = 1 - p_prize_reveal
    return {
        "total": total,
        "p_opens_prize": p_prize_reveal,
        "p_opens_goat": p_goat,
        "p_win_stick_and_goat": p_stick_win,
        "p_win_switch_and_goat": p_switch_win,
        "p_win_stick_given_goat":
            p_stick_win / p_goat if p_goat else Fraction(0),
        "p_win_switch_given_goat":
            p_switch_win / p_goat if p_goat else Fraction(0),
    }
