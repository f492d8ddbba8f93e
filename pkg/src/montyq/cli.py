"""Command-line entry point.

Subcommands: analyze, simulate, sweep, born-matrix, teleport, serve.
Machine-readable output is a JSON envelope with exact results as
{"num", "den"} pairs plus float renderings.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, games, qcore, teleport
from .engine import InvalidGameSpec, enumerate_joint, simulate

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

DEFAULT_PORT_ENV = "MONTYQ_PORT"


class ValidationFailure(Exception):
    """User input failed a range or consistency check (exit code 1)."""


def parse_rational(text: str) -> Fraction:
    """Accepts 'num/den' or a dyadic decimal; other decimals are rejected
    so exactness is preserved end to end."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationFailure(f"cannot parse rational {text!r}: {exc}")
    den = f.denominator
    if den & (den - 1) != 0:
        raise ValidationFailure(
            f"{text} is not exactly representable as a decimal; "
            "pass it as a fraction like 1/3")
    return f


@dataclass
class OutputEnvelope:
    command: str
    parameters: dict
    exact_results: dict[str, Fraction] = field(default_factory=dict)
    float_results: dict[str, float] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        floats = dict(self.float_results)
        for name, f in self.exact_results.items():
            floats.setdefault(name, f.numerator / f.denominator)
        meta = {"version": __version__}
        meta.update(self.metadata)
        return {
            "command": self.command,
            "parameters": self.parameters,
            "exact_results": {
                name: {"num": f.numerator, "den": f.denominator}
                for name, f in self.exact_results.items()},
            "float_results": floats,
            "metadata": meta,
        }

    def print(self, as_json: bool) -> None:
        if as_json:
            print(json.dumps(self.to_json(), indent=2))
            return
        print(f"# {self.command}")
        for key, value in self.parameters.items():
            print(f"  {key} = {value}")
        width = max((len(n) for n in self.exact_results), default=0)
        for name, f in self.exact_results.items():
            print(f"{name:<{width}}  {str(f):>8}  "
                  f"({f.numerator / f.denominator:.10f})")
        for name, v in self.float_results.items():
            print(f"{name:<{width}}  {v}")


def _game_kwargs(args) -> dict:
    kwargs = {"state": getattr(args, "state", 1)}
    if args.game == "psi-epistemic":
        for name in ("q1", "q2", "q3"):
            raw = getattr(args, name)
            if raw is None:
                raise ValidationFailure(
                    "psi-epistemic requires --q1, --q2 and --q3")
            kwargs[name] = parse_rational(raw)
    return kwargs


def analysis_envelope(game: str, **kwargs) -> OutputEnvelope:
    try:
        analysis = games.analyze_game(game, **kwargs)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    params = {k: str(v) for k, v in kwargs.items()}
    return OutputEnvelope(
        command=f"analyze {game}",
        parameters={"game": game, **params},
        exact_results={
            "p_opens_prize": analysis.p_opens_prize,
            "p_opens_goat": analysis.p_opens_goat,
            "p_win_stick": analysis.p_win_stick,
            "p_win_switch": analysis.p_win_switch,
            "p_win_stick_and_goat": analysis.p_win_stick_and_goat,
            "p_win_switch_and_goat": analysis.p_win_switch_and_goat,
            "p_win_stick_given_goat": analysis.p_win_stick_given_goat,
            "p_win_switch_given_goat": analysis.p_win_switch_given_goat,
        },
    )


def cmd_analyze(args) -> int:
    env = analysis_envelope(args.game, **_game_kwargs(args))
    env.print(as_json=args.json)
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        spec = games.make_game(args.game, **_game_kwargs(args))
        report = simulate(spec, args.strategy, args.trials, args.seed)
    except (ValueError, InvalidGameSpec) as exc:
        raise ValidationFailure(str(exc))
    env = OutputEnvelope(
        command=f"simulate {args.game}",
        parameters={"game": args.game, "strategy": args.strategy},
        float_results={
            "empirical_win_given_goat": report.empirical_win_given_goat,
            "empirical_win_rate": report.wins / report.trials,
        },
        metadata={"seed": report.seed, "trials": report.trials,
                  "wins": report.wins, "goat_reveals": report.goat_reveals,
                  "prize_reveals": report.prize_reveals},
    )
    env.print(as_json=args.json)
    return EXIT_OK


def _sweep_triples(args) -> list[tuple[Fraction, Fraction, Fraction]]:
    q_from = parse_rational(args.q_from)
    q_to = parse_rational(args.q_to)
    steps = args.steps
    if steps < 1:
        raise ValidationFailure("--steps must be >= 1")
    if args.split == "equal":
        ratios = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    else:
        parts = args.split.split(",")
        if len(parts) != 3:
            raise ValidationFailure(
                "--split must be 'equal' or three comma-separated rationals")
        raw = tuple(parse_rational(p) for p in parts)
        total = sum(raw)
        if total == 0:
            raise ValidationFailure("--split ratios sum to zero")
        ratios = tuple(r / total for r in raw)
    triples = []
    for step in range(steps):
        if steps == 1:
            q = q_from
        else:
            q = q_from + (q_to - q_from) * Fraction(step, steps - 1)
        triples.append(tuple(q * r for r in ratios))
    return triples


def cmd_sweep(args) -> int:
    rows = games.sweep_epistemic(_sweep_triples(args))
    bad = [r for r in rows if r.error]
    table = []
    for row in rows:
        if row.error:
            table.append({"q1": str(row.q1), "q2": str(row.q2),
                          "q3": str(row.q3), "error": row.error})
        else:
            table.append({
                "q": str(row.q), "stick": str(row.stick),
                "switch": str(row.switch), "advantage": str(row.advantage),
                "q_float": float(row.q), "stick_float": float(row.stick),
                "switch_float": float(row.switch),
                "advantage_float": float(row.advantage),
            })
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["q", "stick", "switch", "advantage",
                             "q_float", "stick_float", "switch_float",
                             "advantage_float"])
            for row in rows:
                if row.error:
                    continue
                writer.writerow([
                    str(row.q), str(row.stick), str(row.switch),
                    str(row.advantage),
                    repr(float(row.q)), repr(float(row.stick)),
                    repr(float(row.switch)), repr(float(row.advantage)),
                ])
        print(f"wrote {len(rows) - len(bad)} rows to {args.out}")
    if args.json or not args.out:
        print(json.dumps({"command": "sweep", "rows": table}, indent=2))
    for row in bad:
        print(f"invalid triple ({row.q1}, {row.q2}, {row.q3}): {row.error}",
              file=sys.stderr)
    return EXIT_VALIDATION if bad else EXIT_OK


def cmd_born_matrix(args) -> int:
    table = qcore.born_matrix()
    if args.json:
        print(json.dumps({"command": "born-matrix", **table.to_json()},
                         indent=2))
        return EXIT_OK
    print("state    " + "".join(f"outcome_{i:<3}" for i in range(1, 5)))
    for h in range(1, 5):
        cells = "".join(f"{str(p):<11}" for p in table.row(h))
        print(f"state_{h}  {cells}")
    return EXIT_OK


def cmd_teleport_analyze(args) -> int:
    if args.mode == "monty":
        analysis = enumerate_joint(teleport.monty_teleport_game())
        env = OutputEnvelope(
            command="teleport analyze monty",
            parameters={"mode": "monty"},
            exact_results={
                "p_win_stick": analysis.p_win_stick,
                "p_win_switch": analysis.p_win_switch,
                "p_opens_prize": analysis.p_opens_prize,
            },
        )
    else:
        report = teleport.unreliable_analysis()
        env = OutputEnvelope(
            command="teleport analyze unreliable",
            parameters={"mode": "unreliable"},
            exact_results={
                "p_bit0": report.p_bit0,
                "p_bit1": report.p_bit1,
                "stick_given_bit0": report.stick_given_bit0,
                "switch_given_bit0": report.switch_given_bit0,
                "stick_given_bit1": report.stick_given_bit1,
                "switch_given_bit1": report.switch_given_bit1,
            },
        )
    env.print(as_json=args.json)
    return EXIT_OK


def cmd_teleport_simulate(args) -> int:
    try:
        report = teleport.simulate_teleport(args.mode, args.strategy,
                                            args.trials, args.seed)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    env = OutputEnvelope(
        command=f"teleport simulate {args.mode}",
        parameters={"mode": args.mode, "strategy": args.strategy},
        float_results={"win_rate": report.win_rate,
                       "mean_fidelity": report.mean_fidelity},
        metadata={"seed": report.seed, "trials": report.trials,
                  "wins": report.wins},
    )
    if report.bit0_trials is not None:
        env.metadata.update({
            "bit0_trials": report.bit0_trials,
            "bit0_wins": report.bit0_wins,
            "bit1_trials": report.bit1_trials,
            "bit1_wins": report.bit1_wins,
        })
    env.print(as_json=args.json)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    static = args.static
    if static is None and os.path.isdir("frontend/dist"):
        static = "frontend/dist"
    app = create_app(transcript_path=args.transcript, static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="montyq",
        description="Exact analysis and seeded simulation of quantum "
                    "Monty Hall games")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_game_args(p):
        p.add_argument("game", choices=["classic", "ignorant", "psi-ontic",
                                        "psi-epistemic"])
        p.add_argument("--q1")
        p.add_argument("--q2")
        p.add_argument("--q3")
        p.add_argument("--state", type=int, default=1, choices=[1, 2, 3, 4])

    p = sub.add_parser("analyze", help="exact joint enumeration of a game")
    add_game_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="seeded Monte Carlo run")
    add_game_args(p)
    p.add_argument("--strategy", default="switch",
                   choices=["stick", "switch", "per-trial-random"])
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="tabulate stick/switch over a q range")
    p.add_argument("--q-from", required=True)
    p.add_argument("--q-to", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--split", default="equal",
                   help="'equal' or r1,r2,r3 ratios for splitting q")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("born-matrix", help="the exact 4x4 outcome table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_born_matrix)

    p = sub.add_parser("teleport", help="teleportation analyses")
    tsub = p.add_subparsers(dest="teleport_command", required=True)
    ta = tsub.add_parser("analyze")
    ta.add_argument("--mode", required=True, choices=["monty", "unreliable"])
    ta.add_argument("--json", action="store_true")
    ta.set_defaults(func=cmd_teleport_analyze)
    ts = tsub.add_parser("simulate")
    ts.add_argument("--mode", required=True,
                    choices=["standard", "monty", "unreliable"])
    ts.add_argument("--strategy", default="switch",
                    choices=["stick", "switch"])
    ts.add_argument("--trials", type=int, default=1_000_000)
    ts.add_argument("--seed", type=int, default=0)
    ts.add_argument("--json", action="store_true")
    ts.set_defaults(func=cmd_teleport_simulate)

    p = sub.add_parser("serve", help="run the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get(DEFAULT_PORT_ENV, "8000")))
    p.add_argument("--transcript", help="append-only JSONL transcript file")
    p.add_argument("--static", help="directory of built web UI assets "
                   "(defaults to frontend/dist when present)")
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InvalidGameSpec as exc:
        for violation in exc.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
