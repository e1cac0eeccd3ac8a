"""Command-line front end.

    blockrace prob type1 --q 0.2
    blockrace table --format pretty
    blockrace curves --which q0,qb,qplus --gamma-step 0.05
    blockrace phase --resolution 40 --format pretty
    blockrace simulate type0 --q 0.2 --gamma 0.1 --trials 1000000

Every subcommand accepts ``--format {csv,json,pretty}`` and ``--out PATH``.
Exit status is 0 on success and 2 on any usage or validation error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from decimal import Decimal, InvalidOperation

from . import analytic, phase, simulate
from .records import FORMATS, places, render, sig

SEED_ENV = "BLOCKRACE_SEED"
CURVE_CHOICES = ("q0", "qb", "qc", "qplus", "qminus", "selfish", "influence")


class UsageError(Exception):
    pass


# argparse type helpers; their messages are prefixed with the flag name.


def _fraction(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be a fraction in [0, 1], got {text}")
    return value


def _step(text: str) -> Decimal:
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_finite() or not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1], got {text}")
    return value


def _int_at_least(minimum: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return parse


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an unsigned integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"must be an unsigned 64-bit integer, got {text}")
    return value


def _curve_list(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in CURVE_CHOICES]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown curve(s) {', '.join(bad) or '(empty)'}; choose from {', '.join(CURVE_CHOICES)}"
        )
    # Canonical order keeps the column set independent of flag order.
    return [c for c in CURVE_CHOICES if c in names]


def _grid(step: Decimal, top: Decimal) -> list[float]:
    count = int(top / step) + 1
    return [float(min(step * i, top)) for i in range(count)]


# Subcommands. Each returns (rows, columns, pretty_text_or_None).


def cmd_prob(args):
    s = args.strategy
    q = args.q
    if q is None:
        raise UsageError("--q is required")
    gamma, n, r, z = None, None, None, None
    if s == "type1":
        n, r = args.n or 1, 1 if args.r is None else args.r
        value = analytic.type1_success(q) if (n, r) == (1, 1) else analytic.revocation_prob(n, r, q)
    elif s == "type0":
        if args.gamma is None:
            raise UsageError("--gamma is required for type0")
        gamma = args.gamma
        value = analytic.type0_success(q, gamma)
    elif s == "tie":
        value = analytic.tie_prob(q)
    elif s == "catchup":
        if args.z is None:
            raise UsageError("--z is required for catchup")
        z, r = args.z, 1 if args.r is None else args.r
        if z < -r:
            raise UsageError(f"--z must be >= -r ({-r}), got {z}")
        value = analytic.catchup_prob(z, r, q)
    else:  # doublespend
        n = args.n or 1
        value = analytic.double_spend_prob(n, q)
    row = {
        "strategy": s,
        "q": sig(q),
        "gamma": sig(gamma),
        "n": n,
        "r": r,
        "z": z,
        "probability": sig(value),
    }
    return [row], list(row), None


def cmd_table(args):
    qs = _grid(args.q_step, args.q_max)
    ns = range(1, args.n_max + 1)
    rows = []
    for q in qs:
        for n in ns:
            value = analytic.revocation_prob(n, args.r, q)
            rows.append(
                {
                    "q": sig(q),
                    "n": n,
                    "r": args.r,
                    "probability": sig(value),
                    "percent": places(100.0 * value, 2),
                    "safe": value < args.threshold,
                }
            )
    columns = ["q", "n", "r", "probability", "percent", "safe"]
    pretty = None
    if args.format == "pretty":
        pretty = _pretty_table(rows, qs, ns, args.threshold)
    return rows, columns, pretty


def _pretty_table(rows, qs, ns, threshold) -> str:
    header = ["q"] + [f"n={n}" for n in ns]
    body = []
    it = iter(rows)
    for q in qs:
        line = [f"{places(100.0 * q, 2).normalize():f}%"]
        for _ in ns:
            row = next(it)
            line.append(f"{row['percent']}%" + ("*" if row["safe"] else " "))
        body.append(line)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in [header] + body]
    lines.append(f"* revocation probability below {threshold:g}")
    return "\n".join(lines) + "\n"


def _curve_value(name: str, gamma: float):
    if name == "influence":
        return phase.influence(phase.PhasePoint(gamma, phase.hiding_threshold(gamma)))
    return {
        "q0": lambda g: phase.q0(),
        "qb": phase.qb,
        "qc": phase.qc,
        "qplus": phase.qplus,
        "qminus": phase.qminus,
        "selfish": phase.selfish_curve,
    }[name](gamma)


def cmd_curves(args):
    which = args.which or list(CURVE_CHOICES)
    rows = []
    for gamma in _grid(args.gamma_step, Decimal(1)):
        row = {"gamma": sig(gamma)}
        for name in which:
            row[name] = sig(_curve_value(name, gamma))
        rows.append(row)
    return rows, ["gamma"] + which, None


def phase_grid(resolution: int, eps: float) -> list[dict]:
    """Cells centred at ((i + 1/2) / res, (j + 1/2) / res), gamma-major order."""
    rows = []
    for i in range(resolution):
        gamma = (i + 0.5) / resolution
        for j in range(resolution):
            q = (j + 0.5) / resolution
            ordering = phase.classify(phase.PhasePoint(gamma, q), eps)
            rows.append(
                {
                    "gamma": sig(gamma),
                    "q": sig(q),
                    "best": ordering.best.value,
                    "ranking": ordering.label(),
                    "flags": ";".join(sorted(ordering.boundary_flags)),
                }
            )
    return rows


def cmd_phase(args):
    rows = phase_grid(args.resolution, args.eps)
    pretty = None
    if args.format == "pretty":
        res = args.resolution
        lookup = {"Standard": "S", "Type0": "0", "TypeI": "1"}
        lines = []
        for j in reversed(range(res)):
            lines.append("".join(lookup[rows[i * res + j]["best"]] for i in range(res)))
        lines.append(f"q up, gamma right; S=Standard 0=Type0 1=TypeI; resolution {res}")
        pretty = "\n".join(lines) + "\n"
    return rows, ["gamma", "q", "best", "ranking", "flags"], pretty


def cmd_simulate(args):
    s = args.strategy
    if args.q is None:
        raise UsageError("--q is required")
    q = args.q
    n = args.n or 1
    r = 1 if args.r is None else args.r
    gamma = args.gamma
    z = None
    if s == "type1":
        cfg = simulate.RaceConfig(
            q=q, n=n, r=r, premine=args.premine, max_deficit=args.max_deficit,
            trials=args.trials, seed=args.seed,
        )
        est = simulate.simulate_type1(cfg, workers=args.workers)
        expected = analytic.race_success(n, r, q, args.premine)
    elif s == "type0":
        if gamma is None:
            raise UsageError("--gamma is required for type0")
        if args.n not in (None, 1):
            raise UsageError("--n must be 1 for type0")
        cfg = simulate.RaceConfig(
            q=q, gamma=gamma, max_deficit=args.max_deficit, trials=args.trials, seed=args.seed
        )
        est = simulate.simulate_type0(cfg, workers=args.workers)
        expected = analytic.type0_success(q, gamma)
        r = None
    else:  # catchup
        if args.z is None:
            raise UsageError("--z is required for catchup")
        z = args.z
        est = simulate.simulate_catchup(
            z, r, q, max_deficit=args.max_deficit, trials=args.trials, seed=args.seed,
            workers=args.workers,
        )
        expected = analytic.catchup_prob(z, r, q)
        n = None
    zscore = est.z_score(expected)
    row = {
        "strategy": s,
        "q": sig(q),
        "gamma": sig(gamma),
        "n": n,
        "r": r,
        "z": z,
        "premine": args.premine if s == "type1" else None,
        "max_deficit": args.max_deficit,
        "trials": est.trials,
        "seed": args.seed,
        "successes": est.successes,
        "p_hat": sig(est.p_hat),
        "std_err": sig(est.std_err),
        "closed_form": sig(expected),
        "z_score": sig(zscore) if math.isfinite(zscore) else None,
    }
    return [row], list(row), None


def _env_seed() -> int:
    text = os.environ.get(SEED_ENV)
    if text is None or text == "":
        return 0
    try:
        return _seed(text)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{SEED_ENV}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockrace",
        description="Success probabilities of block-hiding mining strategies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    p = sub.add_parser("prob", parents=[common], help="closed-form probability")
    p.add_argument("strategy", choices=("type1", "type0", "tie", "catchup", "doublespend"))
    p.add_argument("--q", type=_fraction)
    p.add_argument("--gamma", type=_fraction)
    p.add_argument("--n", type=_int_at_least(1))
    p.add_argument("--r", type=_int_at_least(0))
    p.add_argument("--z", type=_integer)
    p.set_defaults(handler=cmd_prob)

    p = sub.add_parser("table", parents=[common], help="revocation probability after n confirmations")
    p.add_argument("--n-max", type=_int_at_least(1), default=10)
    p.add_argument("--q-step", type=_step, default=Decimal("0.02"))
    p.add_argument("--q-max", type=_step, default=Decimal("0.5"))
    p.add_argument("--r", type=_int_at_least(0), default=1)
    p.add_argument("--threshold", type=_fraction, default=0.001)
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("curves", parents=[common], help="phase-space boundary curves sampled over gamma")
    p.add_argument("--which", type=_curve_list, help="comma-separated subset of " + ",".join(CURVE_CHOICES))
    p.add_argument("--gamma-step", type=_step, default=Decimal("0.01"))
    p.set_defaults(handler=cmd_curves)

    p = sub.add_parser("phase", parents=[common], help="best strategy on a (gamma, q) grid")
    p.add_argument("--resolution", type=_int_at_least(1), default=50)
    p.add_argument("--eps", type=_positive, default=phase.EPS_GRID)
    p.set_defaults(handler=cmd_phase)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate against the closed form")
    p.add_argument("strategy", choices=("type1", "type0", "catchup"))
    p.add_argument("--q", type=_fraction)
    p.add_argument("--gamma", type=_fraction)
    p.add_argument("--n", type=_int_at_least(1))
    p.add_argument("--r", type=_int_at_least(0))
    p.add_argument("--z", type=_integer)
    p.add_argument("--premine", type=int, choices=(0, 1), default=0)
    p.add_argument("--trials", type=_int_at_least(1), default=100_000)
    p.add_argument("--seed", type=_seed, default=None, help=f"defaults to ${SEED_ENV}, else 0")
    p.add_argument("--max-deficit", type=_int_at_least(1), default=simulate.DEFAULT_MAX_DEFICIT)
    p.add_argument("--workers", type=_int_at_least(1), default=1)
    p.set_defaults(handler=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _env_seed()
        rows, columns, pretty = args.handler(args)
        text = pretty if pretty is not None else render(rows, columns, args.format)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except (UsageError, ValueError, TypeError, OSError) as exc:
        parser.error(f"{args.command}: {exc}")
    return 0


def entry() -> None:
    sys.exit(main())
