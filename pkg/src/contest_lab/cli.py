"""Command-line front end: ``contest-lab {prob,oracle,pool,dynamics,asymptotics}``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 refused analysis.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .asymptotics import fit_decay_slope, gap_curve
from .contest import ContestSpec, DiscreteContestSpec, PowerProfile, win_probabilities
from .dynamics import DynamicsConfig, dominance_metrics, run
from .errors import InvalidInputError, NumericalFailureError, RefusedAnalysisError
from .exact import as_fraction, win_probabilities_exact
from .pooling import (
    format_action,
    is_nash,
    parse_action,
    partition_from_actions,
    pool_utilities,
    predicted_equilibrium,
    validate_actions,
)
from .sampling import McConfig, simulate_contest_continuous, simulate_contest_discrete
from .svg import line_chart

SCHEMA = "contest-lab/1"

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL, EXIT_REFUSED = 0, 2, 3, 4


def fmt(x: float) -> str:
    """17 significant digits: round-trips any double."""
    return format(float(x), ".17g")


class UsageError(InvalidInputError):
    pass


def parse_powers(text: str) -> tuple[list[Fraction], int | None]:
    """Comma-separated decimals, or a JSON file ``{"powers": [...], "n": int}``."""
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"cannot read powers file {text}: {exc}") from exc
        if not isinstance(doc, dict) or not isinstance(doc.get("powers"), list):
            raise InvalidInputError('powers file must hold {"powers": [...], "n": int}')
        n = doc.get("n")
        if n is not None and (isinstance(n, bool) or not isinstance(n, int)):
            raise InvalidInputError("n in powers file must be an integer")
        return [as_fraction(v) for v in doc["powers"]], n
    tokens = [t.strip() for t in text.split(",")]
    if not tokens or any(not t for t in tokens):
        raise InvalidInputError(f"bad powers list {text!r}")
    return [as_fraction(t) for t in tokens], None


def _spec(args) -> ContestSpec:
    powers, file_n = parse_powers(args.powers)
    n = args.n if args.n is not None else (file_n if file_n is not None else 1)
    return ContestSpec(PowerProfile.from_powers(powers), n)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"


def _float_powers(spec: ContestSpec) -> list[float]:
    return [float(x) for x in spec.profile.input_order()]


def cmd_prob(args) -> int:
    spec = _spec(args)
    if args.exact:
        probs = win_probabilities_exact(spec)
    else:
        probs = win_probabilities(spec)
    powers = _float_powers(spec)
    if args.format == "csv":
        header = ["player", "power", "probability"] + (["exact"] if probs.exact else [])
        rows = []
        for i, (x, p) in enumerate(zip(powers, probs.p)):
            row = [i + 1, fmt(x), fmt(p)]
            if probs.exact:
                row.append(str(probs.exact[i]))
            rows.append(row)
        _emit(args, _csv_text(header, rows))
    else:
        payload = {
            "command": "prob",
            "powers": powers,
            "n": spec.n_solutions,
            "method": probs.method.value,
            "abs_error_bound": probs.abs_error_bound,
            "probabilities": list(probs.p),
        }
        if probs.exact:
            payload["exact"] = [str(f) for f in probs.exact]
        _emit(args, _json_text(payload))
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = _spec(args)
    mc = McConfig(args.trials, args.seed, args.z)
    if args.discrete:
        est = simulate_contest_discrete(DiscreteContestSpec(spec, args.N), mc)
    else:
        est = simulate_contest_continuous(spec, mc)
    powers = _float_powers(spec)
    if args.format == "csv":
        rows = [
            [i + 1, fmt(x), fmt(p), fmt(h), w]
            for i, (x, p, h, w) in enumerate(zip(powers, est.p_hat, est.half_width, est.wins))
        ]
        _emit(args, _csv_text(["player", "power", "p_hat", "half_width", "wins"], rows))
    else:
        payload = {
            "command": "oracle",
            "model": "discrete" if args.discrete else "continuous",
            "powers": powers,
            "n": spec.n_solutions,
            "candidate_count": args.N if args.discrete else None,
            "trials": est.trials,
            "seed": est.seed,
            "confidence_z": mc.confidence_z,
            "p_hat": list(est.p_hat),
            "half_width": list(est.half_width),
            "wins": list(est.wins),
        }
        _emit(args, _json_text(payload))
    return EXIT_OK


def cmd_pool(args) -> int:
    spec = _spec(args)
    powers_exact = spec.profile.input_order()
    if args.predict:
        actions = predicted_equilibrium(spec.profile)
    else:
        actions = validate_actions(
            [parse_action(t) for t in args.check_profile.split(",")], spec.m
        )
    partition = partition_from_actions(actions, powers_exact)
    utilities = pool_utilities(spec, partition)
    report = is_nash(spec, actions, args.eps)
    verdict = "equilibrium" if report.is_equilibrium else "not an equilibrium"
    powers = _float_powers(spec)
    if args.format == "csv":
        bad = {player: (a, g) for player, a, g in report.violations}
        rows = []
        for i, (x, a, u) in enumerate(zip(powers, actions, utilities)):
            better, gain = bad.get(i, (None, None))
            rows.append([
                i + 1,
                fmt(x),
                format_action(a),
                fmt(u),
                "" if gain is None else format_action(better),
                "" if gain is None else fmt(gain),
            ])
        _emit(args, _csv_text(["player", "power", "action", "utility", "better_action", "gain"], rows))
    else:
        payload = {
            "command": "pool",
            "powers": powers,
            "n": spec.n_solutions,
            "profile": [format_action(a) for a in actions],
            "groups": [[i + 1 for i in g] for g in partition.groups],
            "utilities": list(utilities),
            "verdict": verdict,
            "epsilon": report.epsilon,
            "violations": [
                {"player": p + 1, "better_action": format_action(a), "gain": g}
                for p, a, g in report.violations
            ],
        }
        _emit(args, _json_text(payload))
    print(f"verdict: {verdict}", file=sys.stderr)
    return EXIT_OK


def _parse_pooling(text: str, m: int):
    if text in ("none", "requil", "re-equilibrate"):
        return ("none" if text == "none" else "re-equilibrate"), None
    if text.startswith("fixed:"):
        actions = [parse_action(t) for t in text[len("fixed:"):].split(",")]
        return "fixed", validate_actions(actions, m)
    raise InvalidInputError(f"--pooling must be none, requil or fixed:<actions>, got {text!r}")


def cmd_dynamics(args) -> int:
    spec = _spec(args)
    pooling, fixed = _parse_pooling(args.pooling, spec.m)
    dcfg = DynamicsConfig(
        rounds=args.rounds,
        reinvest_rate=args.eta,
        mode=args.mode,
        pooling=pooling,
        fixed_actions=fixed,
        seed=args.seed,
    )
    trace = run(spec, dcfg)
    metrics = dominance_metrics(trace)
    m = spec.m
    header = (
        ["round"]
        + [f"power_{i + 1}" for i in range(m)]
        + [f"share_{i + 1}" for i in range(m)]
        + ["max_share", "herfindahl"]
    )
    rows = [
        [rec.round, *map(fmt, rec.powers), *map(fmt, rec.shares), fmt(rec.max_share), fmt(h)]
        for rec, h in zip(trace.records, metrics.herfindahl)
    ]
    _emit(args, _csv_text(header, rows))
    if args.svg:
        rounds = [rec.round for rec in trace.records]
        series = [
            (f"player {i + 1}", rounds, [rec.shares[i] for rec in trace.records]) for i in range(m)
        ]
        Path(args.svg).write_text(
            line_chart(series, f"Power shares (n={spec.n_solutions})", "round", "share")
        )
    reached = metrics.rounds_to_threshold
    print(f"rounds_to_{metrics.threshold}: {'none' if reached is None else reached}", file=sys.stderr)
    return EXIT_OK


def parse_n_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise InvalidInputError(f"bad --n-list {text!r}") from exc
    return values


def cmd_asymptotics(args) -> int:
    spec = _spec(args)
    curve = gap_curve(spec.profile, parse_n_list(args.n_list))
    m = spec.m
    header = ["n"] + [f"gap_{i + 1}" for i in range(m)] + ["max_gap"]
    rows = [
        [n, *map(fmt, curve.per_player_gaps[k]), fmt(curve.gaps[k])]
        for k, n in enumerate(curve.n_values)
    ]
    _emit(args, _csv_text(header, rows))
    fit = None
    refused = None
    if args.fit:
        try:
            fit = fit_decay_slope(curve)
        except RefusedAnalysisError as exc:
            refused = exc
        else:
            print(
                f"fit: slope={fmt(fit.slope)} intercept={fmt(fit.intercept)} r_squared={fmt(fit.r_squared)}",
                file=sys.stderr,
            )
    if args.svg:
        series = [("max gap", curve.n_values, curve.gaps)]
        if fit is not None:
            series.append(
                ("fit", curve.n_values, [math.exp(fit.intercept) * n**fit.slope for n in curve.n_values])
            )
        Path(args.svg).write_text(
            line_chart(series, "Gap to proportional shares", "n", "max |p - x/sum x|",
                       log_x=True, log_y=True, dashed=("fit",))
        )
    if refused is not None:
        raise refused
    return EXIT_OK


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contest-lab",
        description="Winner-take-all computation contests: probabilities, pooling, dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        p.add_argument("--powers", required=True,
                       help="comma-separated powers, or a JSON file {\"powers\": [...], \"n\": int}")
        p.add_argument("--n", type=_positive_int, default=None, help="number of solutions (default 1)")
        p.add_argument("--out", help="write output here instead of stdout")
        if with_format:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("prob", help="winning probabilities")
    common(p)
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("oracle", help="Monte Carlo estimate of winning probabilities")
    common(p)
    p.add_argument("--trials", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--z", type=_positive_float, default=3.0, help="confidence multiplier")
    p.add_argument("--discrete", action="store_true", help="finite candidate set of size --N")
    p.add_argument("--N", type=_positive_int, default=None, help="candidate count (discrete only)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("pool", help="pool-choosing game: utilities and Nash check")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check-profile", help="actions a_1,...,a_m: labels 1..m or I")
    mode.add_argument("--predict", action="store_true", help="check the predicted equilibrium")
    p.add_argument("--eps", type=float, default=1e-9)
    p.set_defaults(func=cmd_pool)

    p = sub.add_parser("dynamics", help="reinvestment dynamics, CSV trace")
    common(p, with_format=False)
    p.add_argument("--rounds", type=_positive_int, required=True)
    p.add_argument("--eta", type=_positive_float, default=1.0)
    p.add_argument("--mode", choices=("expected", "stochastic"), default="expected")
    p.add_argument("--pooling", default="none", help="none | requil | fixed:a_1,...,a_m")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--svg", help="also write a share-vs-round chart")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("asymptotics", help="gap to proportional shares versus n")
    common(p, with_format=False)
    p.add_argument("--n-list", required=True, help="comma-separated solution counts")
    p.add_argument("--fit", action="store_true", help="fit the log-log decay slope")
    p.add_argument("--svg", help="also write a log-log chart")
    p.set_defaults(func=cmd_asymptotics)
    return parser


def _validate(args) -> None:
    if args.command == "oracle":
        if args.discrete and args.N is None:
            raise UsageError("--discrete requires --N")
        if args.N is not None and not args.discrete:
            raise UsageError("--N is only valid with --discrete")
    if args.command == "pool" and args.eps < 0:
        raise UsageError("--eps must be nonnegative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except RefusedAnalysisError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InvalidInputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc} (residual {exc.residual:.3e})", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
