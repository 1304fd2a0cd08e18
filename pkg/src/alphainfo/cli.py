"""Command line interface.

Every subcommand reads JSON inputs, writes one CSV (or JSON) table and exits
with 0 on success, 1 on invalid input and 2 when a solver does not converge.
Information values are printed in the base chosen with ``--base``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, units
from .bounds import (
    DEFAULT_ALPHA_GRID,
    bernoulli_bias_bayes_bound,
    dependence_bound,
    gen_error_bound,
    generalized_fano,
    hypothesis_testing_bound,
    shattering_witness,
    tpc_check,
)
from .capacity import DEFAULT_TOL as CAPACITY_TOL
from .capacity import (
    ExponentKind,
    alpha_nml,
    error_exponents,
    sibson_capacity,
    zero_error_feedback_capacity,
)
from .checks import SUITES, run_suite
from .errors import AlphaInfoError, NoConvergence, ParseError
from .formatting import format_value
from .gallery import EXAMPLES, emit_example, fano_table
from .prob_core import (
    Channel,
    JointPMF,
    ProbVector,
    as_prob_vector,
    joint_from_channel,
    load_joint,
    read_distribution,
    write_table,
)
from .renyi import renyi_divergence, renyi_entropy
from .sibson import DEFAULT_TOL as MI_TOL
from .sibson import (
    ConditionalVariant,
    arimoto_mi,
    conditional_maximal_leakage,
    conditional_sibson_mi,
    csiszar_mi,
    lapidoth_pfister_mi,
    maximal_leakage,
    sibson_mi,
)
from .variational import (
    ASCENT_TOL,
    Reference,
    estimate_sibson_by_ascent,
    f_star,
    g_star,
    var_rep_one,
    var_rep_ratio,
)

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Sequence
    from typing import Any, NoReturn

    from numpy.typing import NDArray

    from .bounds import EventMask

    Row = tuple[Any, ...]
    Handler = Callable[[argparse.Namespace], int]

__all__ = ["SweepSpec", "build_parser", "main", "parse_limits", "run"]

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_CONVERGENCE = 2

SCHEMA_HINT = (
    'distributions: {"pxy": [[...]]}, {"pxyz": [[[...]]]} or '
    '{"px": [...], "pygx": [[...]]}; events: {"event": [[...]]}; '
    'test functions: {"f": [[...]]} or {"g": [[...]]}; packings: '
    '{"models": [[...]], "center": [...], "prior": [...]}'
)
_LIMITS = {"0": 0.0, "1": 1.0, "inf": math.inf}
_VERBOSITY = (logging.WARNING, logging.INFO, logging.DEBUG)
DESCRIPTION = "Sibson α-mutual information, capacities and bounds."


@dataclass(frozen=True)
class SweepSpec:
    """A grid of orders with optional limit points.

    Examples:
        ```pycon
        >>> spec = SweepSpec.parse("1:4:4:linear", "inf")
        >>> spec.values()
        [1.0, 2.0, 3.0, 4.0, inf]

        ```
    """

    alpha_min: float
    alpha_max: float
    points: int
    scale: str = "log"
    include_limits: frozenset[float] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        """Reject empty, reversed or nonpositive ranges."""
        if self.points < 2:
            msg = f"A sweep needs at least 2 points, got {self.points}"
            raise ValueError(msg)
        if not 0 < self.alpha_min < self.alpha_max < math.inf:
            msg = f"Need 0 < min < max < inf, got {self.alpha_min}:{self.alpha_max}"
            raise ValueError(msg)
        if self.scale not in {"log", "linear"}:
            msg = f"Sweep scale must be 'log' or 'linear', got {self.scale!r}"
            raise ValueError(msg)

    @classmethod
    def parse(cls, text: str, limits: str | None = None) -> SweepSpec:
        """Read ``min:max:points[:log|linear]`` and a comma list out of ``0,1,inf``."""
        parts = text.split(":")
        if len(parts) not in {3, 4}:
            msg = f"Expected min:max:points[:log|linear], got {text!r}"
            raise ValueError(msg)
        scale = parts[3] if len(parts) == 4 else "log"
        return cls(
            float(parts[0]), float(parts[1]), int(parts[2]), scale, parse_limits(limits)
        )

    def values(self) -> list[float]:
        """Return the sorted orders of the sweep, limits included."""
        if self.scale == "log":
            grid = np.geomspace(self.alpha_min, self.alpha_max, self.points)
        else:
            grid = np.linspace(self.alpha_min, self.alpha_max, self.points)
        return sorted({*grid.tolist(), *self.include_limits})


def parse_limits(text: str | None) -> frozenset[float]:
    """Orders named in a comma list out of ``0``, ``1`` and ``inf``."""
    chosen: set[float] = set()
    for item in filter(None, (v.strip() for v in (text or "").split(","))):
        if item not in _LIMITS:
            msg = f"Limits are chosen from 0, 1 and inf, got {item!r}"
            raise ValueError(msg)
        chosen.add(_LIMITS[item])
    return frozenset(chosen)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n{SCHEMA_HINT}\n")


def _order(text: str) -> float:
    value = float(text)
    if math.isnan(value) or value < 0:
        msg = f"invalid order {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        msg = f"expected a comma-separated list of numbers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        msg = f"expected a comma-separated list of integers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from None


def _sweep(text: str) -> str:
    try:
        SweepSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        msg = f"expected a positive integer, got {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            what = f"{args.command} {getattr(args, 'kind', '')}".strip()
            args.command_parser.error(f"{what} requires --{name}")


def _alphas(
    args: argparse.Namespace, default: Iterable[float] | None = None
) -> list[float]:
    if args.alpha_sweep is not None:
        return SweepSpec.parse(args.alpha_sweep, args.limits).values()
    chosen = set(args.alpha or []) | parse_limits(args.limits)
    if chosen:
        return sorted(chosen)
    if default is None:
        args.command_parser.error("requires --alpha or --alpha-sweep")
    return sorted(default or ())


def _map(
    args: argparse.Namespace, fn: Callable[[float], Any], items: list[float]
) -> list[Any]:
    """Apply `fn` to every item, in order, on up to ``--threads`` workers."""
    if args.threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        return list(pool.map(fn, items))


def _emit(
    args: argparse.Namespace, header: Sequence[str], rows: Iterable[Row]
) -> int:
    if args.format == "csv":
        write_table(header, rows, args.out)
        return EXIT_OK
    records = [
        {name: format_value(value) for name, value in zip(header, row)} for row in rows
    ]
    text = json.dumps(records, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    return EXIT_OK


def _read_field(path: str, key: str, ndim: int) -> NDArray[np.float64]:
    try:
        with open(path, encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise ParseError(str(exc), source=path) from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            exc.msg, source=path, line=exc.lineno, column=exc.colno
        ) from exc
    if not isinstance(document, dict) or key not in document:
        msg = f"missing field; {SCHEMA_HINT}"
        raise ParseError(msg, source=path, field=key)
    try:
        arr = np.array(document[key], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        msg = f"not a numeric array ({exc})"
        raise ParseError(msg, source=path, field=key) from exc
    if arr.ndim != ndim:
        msg = f"expected a {ndim}-d array, got shape {arr.shape}"
        raise ParseError(msg, source=path, field=key)
    return arr


def _channel(path: str) -> tuple[ProbVector, Channel]:
    """Input law and channel of a 2-d distribution file of either schema."""
    loaded = read_distribution(path)
    if not isinstance(loaded, JointPMF):
        return loaded
    if loaded.is_triple:
        msg = f"{path}: expected a channel or a 2-d joint, got a triple"
        raise ValueError(msg)
    return ProbVector(loaded.px), loaded.channel()


def _measure(args: argparse.Namespace) -> int:
    kind = args.kind
    measures: dict[str, Callable[[float], float]]
    if kind in {"renyi-div", "renyi-ent"}:
        _require(args, "p", *(("q",) if kind == "renyi-div" else ()))
        p = as_prob_vector(args.p)
        q = as_prob_vector(args.q) if kind == "renyi-div" else p
        measures = {
            "renyi-div": lambda a: renyi_divergence(p, q, a),
            "renyi-ent": lambda a: renyi_entropy(p, a),
        }
    else:
        _require(args, "joint")
        joint = load_joint(args.joint)
        if kind == "leakage":
            value = (
                conditional_maximal_leakage(joint)
                if joint.is_triple
                else maximal_leakage(joint)
            )
            return _emit(args, ("leakage",), [(units.to_base(value),)])
        tol = MI_TOL if args.tol is None else args.tol
        variant = ConditionalVariant(args.variant)
        measures = {
            "sibson": lambda a: sibson_mi(joint, a).value,
            "arimoto": lambda a: arimoto_mi(joint, a),
            "csiszar": lambda a: csiszar_mi(joint, a, tol),
            "lp": lambda a: lapidoth_pfister_mi(joint, a, tol=tol, seed=args.seed),
            "conditional": lambda a: conditional_sibson_mi(joint, a, variant).value,
        }
    alphas = _alphas(args)
    values = _map(args, measures[kind], alphas)
    rows = [(a, units.to_base(v)) for a, v in zip(alphas, values)]
    return _emit(args, ("alpha", kind.replace("-", "_")), rows)


def _capacity(args: argparse.Namespace) -> int:
    _require(args, "channel")
    prior, channel = _channel(args.channel)
    tol = CAPACITY_TOL if args.tol is None else args.tol
    kind = args.kind
    if kind == "zero-error-fb":
        result = zero_error_feedback_capacity(channel, tol)
        return _emit(args, ("capacity",), [(units.to_base(result.value),)])
    if kind == "exponents":
        _require(args, "rates")
        lo, hi, points = _rate_grid(args.rates)
        rates = np.linspace(units.from_base(lo), units.from_base(hi), points)
        kind_of = ExponentKind(args.exponent)
        curve = error_exponents(channel, rates, kind_of, tol)
        rows = [(units.to_base(r), units.to_base(e)) for r, e in curve.rows()]
        return _emit(args, ("rate", "exponent"), rows)
    alphas = _alphas(args)
    if kind == "sibson":
        results = _map(args, lambda a: sibson_capacity(channel, a, tol), alphas)
        rows = [
            (a, units.to_base(r.value), units.to_base(r.gap))
            for a, r in zip(alphas, results)
        ]
        return _emit(args, ("alpha", "capacity", "gap"), rows)
    predictions = _map(args, lambda a: alpha_nml(channel, prior, a), alphas)
    header = ("alpha", "regret", *(f"p{k}" for k in range(channel.output_size)))
    rows = [
        (a, units.to_base(regret), *predictor.probs.tolist())
        for a, (predictor, regret) in zip(alphas, predictions)
    ]
    return _emit(args, header, rows)


def _rate_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        msg = f"Expected min:max:points for rates, got {text!r}"
        raise ValueError(msg)
    lo, hi, points = float(parts[0]), float(parts[1]), int(parts[2])
    if not 0 <= lo <= hi or points < 1:
        msg = f"Need 0 <= min <= max and points >= 1, got {text!r}"
        raise ValueError(msg)
    return lo, hi, points


def _bound(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind in {"gen-error", "hyp-test"}:
        _require(args, "n", "info", "eta" if kind == "gen-error" else "rate")
        info = units.from_base(args.info)
        alphas = _alphas(args)
        if kind == "gen-error":
            bounds = [gen_error_bound(args.n, args.eta, info, a) for a in alphas]
        else:
            rate = units.from_base(args.rate)
            bounds = [hypothesis_testing_bound(args.n, rate, info, a) for a in alphas]
        rows = [(a, b.value, b.raw) for a, b in zip(alphas, bounds)]
        return _emit(args, ("alpha", "bound", "raw"), rows)
    if kind == "bayes-risk":
        _require(args, "n")
        alphas = _alphas(args, DEFAULT_ALPHA_GRID)
        bound, rho, alpha = bernoulli_bias_bayes_bound(args.n, alphas)
        header = ("n", "bound", "rho", "alpha")
        return _emit(args, header, [(args.n, bound, rho, alpha)])
    if kind == "gen-fano":
        _require(args, "models", "beta-bound", "gamma")
        models = _read_field(args.models, "models", 2)
        center = _read_field(args.models, "center", 1)
        prior = _read_field(args.models, "prior", 1)
        beta = units.from_base(args.beta_bound)
        alphas = _alphas(args)
        values = [
            generalized_fano(list(models), center, beta, args.gamma, prior, a)
            for a in alphas
        ]
        return _emit(args, ("alpha", "risk_bound"), list(zip(alphas, values)))
    _require(args, "joint")
    joint = load_joint(args.joint)
    alphas = _alphas(args)
    if kind == "fano":
        table = fano_table(joint, alphas)
        return _emit(args, table.header, table.rows)
    if kind == "tpc":
        _require(args, "f", "c")
        f = _read_field(args.f, "f", 2)
        results = _map(args, lambda a: tpc_check(joint, f, a, args.c), alphas)
        rows = [(a, ok, gap) for a, (ok, gap) in zip(alphas, results)]
        return _emit(args, ("alpha", "condition_holds", "gap"), rows)
    if args.shatter:
        px, event = shattering_witness(joint.channel())
        joint = joint_from_channel(px, joint.channel())
        mask: EventMask | NDArray[np.bool_] = event
    else:
        _require(args, "event")
        mask = _read_field(args.event, "event", 2).astype(bool)
    pairs = [dependence_bound(joint, mask, a) for a in alphas]
    rows = [(a, lhs, rhs) for a, (lhs, rhs) in zip(alphas, pairs)]
    return _emit(args, ("alpha", "probability", "bound"), rows)


def _variational(args: argparse.Namespace) -> int:
    _require(args, "joint")
    joint = load_joint(args.joint)
    kind = args.kind
    alphas = _alphas(args)
    if kind == "witness":
        alpha = alphas[0]
        witness = (
            f_star(joint, alpha) if args.function == "f" else g_star(joint, alpha)
        )
        text = json.dumps({args.function: witness.table.tolist()}) + "\n"
        if args.out is None:
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(text)
        return EXIT_OK
    if kind == "estimate":
        tol = ASCENT_TOL if args.tol is None else args.tol
        estimates = _map(
            args,
            lambda a: estimate_sibson_by_ascent(
                joint, a, args.steps, args.rate, args.seed, tol
            )[0],
            alphas,
        )
        rows = [
            (a, units.to_base(e), units.to_base(sibson_mi(joint, a).value))
            for a, e in zip(alphas, estimates)
        ]
        return _emit(args, ("alpha", "estimate", "sibson_mi"), rows)
    _require(args, "f")
    table = _read_field(args.f, args.function, 2)
    if args.function == "f":
        values = [
            units.to_base(var_rep_one(table, joint, a, args.reference)) for a in alphas
        ]
    else:
        values = [var_rep_ratio(table, joint, a) for a in alphas]
    return _emit(args, ("alpha", "value"), list(zip(alphas, values)))


def _example(args: argparse.Namespace) -> int:
    if args.sweep is not None:
        alphas = SweepSpec.parse(args.sweep, args.limits).values()
    else:
        alphas = _alphas(args, ())
    params = {
        "epsilon": args.epsilon,
        "delta": args.delta,
        "p": args.p,
        "n": args.n,
        "n_grid": args.n_grid,
        "ratios": args.ratios,
        "points": args.points,
        "alphas": alphas or None,
    }
    try:
        table = emit_example(args.kind, **params)
    except TypeError as exc:
        args.command_parser.error(str(exc))
    return _emit(args, table.header, table.rows)


def _check(args: argparse.Namespace) -> int:
    report = run_suite(args.kind, args.instances, args.seed, args.tol)
    _emit(args, ("suite", "property", "passed", "failed"), report.rows())
    if not report.ok:
        logger.error("%s: %d violations", report.suite, report.violations)
        return EXIT_INVALID
    return EXIT_OK


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    group = common.add_argument_group("global options")
    group.add_argument(
        "--base",
        default="e",
        choices=("e", "2", "10", "nats", "bits", "hartleys"),
        help="Logarithm base of information inputs and outputs (default: e).",
    )
    group.add_argument("--tol", type=float, help="Solver tolerance.")
    group.add_argument("--seed", type=int, default=0, help="Seed of random restarts.")
    group.add_argument(
        "--threads", type=_positive_int, default=1, help="Workers for α sweeps."
    )
    group.add_argument("--out", help="Output path; standard output when omitted.")
    group.add_argument("--format", choices=("csv", "json"), default="csv")
    group.add_argument(
        "-v", "--verbose", action="count", default=0, help="Repeat for more logging."
    )
    return common


def _orders() -> argparse.ArgumentParser:
    orders = _Parser(add_help=False)
    group = orders.add_argument_group("orders")
    group.add_argument(
        "--alpha", type=_order, action="append", help="Order; repeatable, accepts inf."
    )
    group.add_argument(
        "--alpha-sweep", type=_sweep, help="Sweep min:max:points[:log|linear]."
    )
    group.add_argument("--limits", help="Limit orders to add, out of 0,1,inf.")
    return orders


_COMMANDS: dict[str, tuple[Handler, tuple[str, ...], str]] = {
    "measure": (
        _measure,
        (
            "sibson",
            "arimoto",
            "csiszar",
            "lp",
            "conditional",
            "renyi-div",
            "renyi-ent",
            "leakage",
        ),
        "Evaluate an information measure.",
    ),
    "capacity": (
        _capacity,
        ("sibson", "zero-error-fb", "exponents", "alpha-nml"),
        "Capacities, error exponents and α-NML prediction.",
    ),
    "bound": (
        _bound,
        (
            "dependence",
            "gen-error",
            "hyp-test",
            "tpc",
            "fano",
            "gen-fano",
            "bayes-risk",
        ),
        "Probability and risk bounds.",
    ),
    "variational": (
        _variational,
        ("eval", "witness", "estimate"),
        "Variational representations.",
    ),
    "example": (_example, tuple(sorted(EXAMPLES)), "Reproduce a worked example."),
    "check": (_check, tuple(sorted(SUITES)), "Run a property suite."),
}


def build_parser() -> argparse.ArgumentParser:
    """Build the ``alphainfo`` argument parser."""
    parser = _Parser(prog="alphainfo", description=DESCRIPTION)
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )
    parents = [_common(), _orders()]
    for name, (handler, kinds, help_text) in _COMMANDS.items():
        sub = commands.add_parser(name, parents=parents, help=help_text)
        sub.add_argument("kind", choices=kinds)
        sub.set_defaults(handler=handler, command_parser=sub)
        if name == "measure":
            sub.add_argument("--joint", help="Distribution file.")
            sub.add_argument("--p", type=_floats, help="Distribution, comma-separated.")
            sub.add_argument("--q", type=_floats, help="Reference, comma-separated.")
            sub.add_argument(
                "--variant",
                choices=[v.value for v in ConditionalVariant],
                default=ConditionalVariant.MIN_OVER_Q_Y_GIVEN_Z.value,
            )
        elif name == "capacity":
            sub.add_argument("--channel", help="Distribution file with the channel.")
            sub.add_argument(
                "--exponent",
                choices=[k.value for k in ExponentKind],
                default=ExponentKind.SPHERE_PACKING.value,
            )
            sub.add_argument("--rates", help="Rate grid min:max:points.")
        elif name == "bound":
            sub.add_argument("--joint", help="Distribution file.")
            sub.add_argument("--event", help='JSON file {"event": [[...]]}.')
            sub.add_argument(
                "--shatter", action="store_true", help="Use the shattering witness."
            )
            sub.add_argument("--f", help='JSON file {"f": [[...]]}.')
            sub.add_argument("--models", help="JSON file with a packing.")
            sub.add_argument("--n", type=_positive_int)
            sub.add_argument("--eta", type=float)
            sub.add_argument("--info", type=float)
            sub.add_argument("--rate", type=float)
            sub.add_argument("--c", type=float)
            sub.add_argument("--gamma", type=float)
            sub.add_argument("--beta-bound", type=float)
        elif name == "variational":
            sub.add_argument("--joint", help="Distribution file.")
            sub.add_argument("--f", help="JSON file with the test function.")
            sub.add_argument("--function", choices=("f", "g"), default="f")
            sub.add_argument(
                "--reference",
                choices=[r.value for r in Reference],
                default=Reference.R_STAR.value,
            )
            sub.add_argument("--steps", type=_positive_int, default=100_000)
            sub.add_argument("--rate", type=float, default=0.1)
        elif name == "example":
            sub.add_argument("--epsilon", type=float)
            sub.add_argument("--delta", type=float)
            sub.add_argument("--p", type=float)
            sub.add_argument("--n", type=_positive_int)
            sub.add_argument("--n-grid", type=_ints)
            sub.add_argument("--ratios", type=_floats)
            sub.add_argument("--points", type=_positive_int)
            sub.add_argument("--sweep", type=_sweep, help="min:max:points[:scale].")
        else:
            sub.add_argument("--instances", type=_positive_int, default=500)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse `argv` and run the chosen subcommand.

    Returns:
        int: 0 on success, 1 on invalid input or a failed check, 2 when a
            solver did not converge.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    level = _VERBOSITY[min(args.verbose, len(_VERBOSITY) - 1)]
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    units.activate(args.base)
    try:
        return int(args.handler(args))
    except NoConvergence as exc:
        best = "" if exc.best is None else f" (best value {exc.best})"
        sys.stderr.write(f"alphainfo: did not converge: {exc}{best}\n")
        return EXIT_NO_CONVERGENCE
    except (AlphaInfoError, ValueError) as exc:
        sys.stderr.write(f"alphainfo: error: {exc}\n")
        return EXIT_INVALID
    finally:
        units.deactivate()


def main() -> int:
    """Console entry point."""
    return run()
