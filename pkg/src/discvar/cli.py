"""Command-line interface for discvar."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Iterable, NoReturn

from sympy import isprime

from discvar.core.config import get_settings
from discvar.core.errors import ComputationError, InputError, SystemParseError
from discvar.core.fp_oracle import verify_system
from discvar.core.pipeline import (
    ComponentLabel,
    CriticalVariant,
    DiscriminantVarietyResult,
    ParametricSystem,
    SingularSource,
    discriminant_variety,
)
from discvar.report import emit_report
from discvar.scenarios import SYSTEMS
from discvar.systems.loader import SystemLoader

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_COMPUTATION = 2
EXIT_ORACLE = 3

COMPONENT_FLAGS = {
    "winf": ComponentLabel.W_INFINITY,
    "wf": ComponentLabel.W_F,
    "wc": ComponentLabel.W_C,
    "wsing": ComponentLabel.W_SING,
}


class _ArgumentParser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1), not argparse's default exit 2
    def error(self, message: str) -> NoReturn:
        raise InputError(f"{self.prog}: {message}")


def parse_components(text: str) -> list[ComponentLabel]:
    labels = []
    for item in text.split(","):
        key = item.strip()
        if key not in COMPONENT_FLAGS:
            raise InputError(f"unknown component {key!r}; choose from {', '.join(COMPONENT_FLAGS)}")
        labels.append(COMPONENT_FLAGS[key])
    return labels


def parse_primes(text: str) -> list[int]:
    primes = []
    for item in text.split(","):
        item = item.strip()
        if not item.isdigit() or not isprime(int(item)):
            raise InputError(f"--oracle-primes expects comma-separated primes, got {item!r}")
        primes.append(int(item))
    return primes


def configure_logging(args: argparse.Namespace) -> None:
    level = args.log_level or get_settings().log_level
    if args.verbose:
        level = "DEBUG" if args.verbose > 1 else "INFO"
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def load_system(args: argparse.Namespace, loader: SystemLoader) -> ParametricSystem:
    if args.example:
        spec = SYSTEMS.get(args.example)
        if spec is None:
            raise InputError(f"unknown example {args.example!r}; available: {', '.join(sorted(SYSTEMS))}")
        return spec.build()
    if not args.file:
        raise InputError("solve needs a system file or --example")
    return loader.load_system(args.file)


def solve(args: argparse.Namespace) -> int:
    loader = SystemLoader()
    system = load_system(args, loader)
    components = parse_components(args.components) if args.components else None
    primes = parse_primes(args.oracle_primes) if args.oracle_primes else None
    w_sd = loader.load_component(args.wsd_file, system.ring) if args.wsd_file else None

    result: DiscriminantVarietyResult = discriminant_variety(
        system,
        components=components,
        w_sd=w_sd,
        critical_variant=CriticalVariant(args.critical_variant),
        singular_source=SingularSource(args.singular_source),
    )
    outcome = None
    if primes is not None:
        outcome = verify_system(
            system.equalities,
            system.inequations,
            result.delta,
            result.preprocess.saturated,
            primes,
            seed=args.seed,
        )
    sys.stdout.write(emit_report(result, args.format, outcome))
    if outcome is not None and not outcome.passed:
        print("error: oracle check failed", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def show_example(args: argparse.Namespace) -> int:
    spec = SYSTEMS.get(args.name)
    if spec is None:
        raise InputError(f"unknown example {args.name!r}; available: {', '.join(sorted(SYSTEMS))}")
    sys.stdout.write(spec.text)
    return EXIT_OK


def list_systems(args: argparse.Namespace) -> int:
    width = max(len(name) for name in SYSTEMS)
    for name in sorted(SYSTEMS):
        print(f"{name:<{width}}  {SYSTEMS[name].description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="discvar", description="Minimal discriminant varieties of parametric polynomial systems")
    parser.add_argument("--log-level", help="Log level for diagnostics on stderr (default: DISCVAR_LOG_LEVEL or WARNING)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv)")
    subparsers = parser.add_subparsers(dest="command")

    solve_parser = subparsers.add_parser("solve", help="Compute the discriminant variety of a system")
    solve_parser.add_argument("file", nargs="?", help="System file (text format, .json, .yaml or .yml)")
    solve_parser.add_argument("--example", help="Solve a built-in system instead of a file")
    solve_parser.add_argument("--format", choices=["text", "json"], default="text", help="Report format (default: text)")
    solve_parser.add_argument(
        "--components",
        help=f"Comma-separated components to compute: {','.join(COMPONENT_FLAGS)} (default: all)",
    )
    solve_parser.add_argument("--wsd-file", help="JSON/YAML file with known W_sd generators")
    solve_parser.add_argument("--oracle-primes", help="Comma-separated primes for finite-field checks, e.g. 5,7")
    solve_parser.add_argument("--seed", type=int, default=0, help="Seed for the sampled self-consistency check")
    solve_parser.add_argument(
        "--critical-variant",
        choices=[v.value for v in CriticalVariant],
        default=CriticalVariant.EQUALITIES_JACOBIAN.value,
        help="Ideal used to compute W_c",
    )
    solve_parser.add_argument(
        "--singular-source",
        choices=[s.value for s in SingularSource],
        default=SingularSource.PROJECTION.value,
        help="Generators whose Jacobian defines W_sing",
    )

    example_parser = subparsers.add_parser("example", help="Print a built-in system in the input format")
    example_parser.add_argument("name", help="Name of the built-in system")

    subparsers.add_parser("list-systems", help="List the built-in systems")

    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    configure_logging(args)

    try:
        if args.command == "solve":
            return solve(args)
        if args.command == "example":
            return show_example(args)
        if args.command == "list-systems":
            return list_systems(args)
    except (SystemParseError, InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ComputationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COMPUTATION

    parser.print_help(sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
