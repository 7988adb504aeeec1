#!/usr/bin/env python3
"""
Command-line interface for the Coherence Fraction SDK.

Exit codes: 0 success, 1 property violation (verify), 2 parse, validation,
parameter or output-path failure, 3 optimizer did not converge.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from coherence_fraction_sdk.config import Config, OptimizerConfig, OutputConfig, RunConfig
from coherence_fraction_sdk.core import CoherenceAnalyzer
from coherence_fraction_sdk.errors import CoherenceError, ValidationError
from coherence_fraction_sdk.models import ChannelKind, OutputFormat, SweepSides, SweepSpec, VerifySuite
from coherence_fraction_sdk.sweeps import run_errata, run_sweep, write_table
from coherence_fraction_sdk.utils.serialization import save_json
from coherence_fraction_sdk.verify import run_suite

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3


def create_parser() -> argparse.ArgumentParser:
    """Create the command line argument parser."""
    parser = argparse.ArgumentParser(
        prog="coherence-fraction",
        description="Coherence fraction of states and optimal coherence fraction of channels",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Coherence fraction of a state file
  coherence-fraction fraction --input fixtures/qutrit_mixture.json

  # Channel report for a named channel
  coherence-fraction channel --channel fixtures/depolarizing_0.5.json

  # Property suite on 100 seeded instances, failures written to ./failures
  coherence-fraction verify theorem4 --count 100 --out failures

  # One- and two-sided depolarizing sweep to CSV
  coherence-fraction sweep --kind depolarizing --param p --start 0 --stop 1 --step 0.1 --out dep.csv

  # Bit-flip x amplitude damping surface
  coherence-fraction sweep --kind bit_flip --param p --start 0 --stop 1 --step 0.25 \\
      --sides cross --kind2 gad --param2 p --start2 0 --stop2 1 --step2 0.25 --out cross.csv
        """
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    fraction_parser = subparsers.add_parser('fraction', help='Coherence fraction of a state file')
    fraction_parser.add_argument('--input', '-i', required=True, help='State JSON file')

    channel_parser = subparsers.add_parser('channel', help='Coherence report of a channel file')
    channel_parser.add_argument('--channel', '-c', required=True, help='Channel JSON file')

    verify_parser = subparsers.add_parser('verify', help='Run a named property suite')
    verify_parser.add_argument('suite', choices=[s.value for s in VerifySuite], help='Suite to run')
    verify_parser.add_argument('--count', '-n', type=int, help='Number of seeded instances (suite default if omitted)')

    sweep_parser = subparsers.add_parser('sweep', help='Sweep a channel parameter on two qubits')
    sweep_parser.add_argument('--kind', required=True, choices=[k.value for k in ChannelKind], help='Channel family')
    sweep_parser.add_argument('--param', default='p', help='Swept parameter (default: p)')
    sweep_parser.add_argument('--start', type=float, default=0.0)
    sweep_parser.add_argument('--stop', type=float, default=1.0)
    sweep_parser.add_argument('--step', type=float, default=0.1)
    sweep_parser.add_argument('--fixed', action='append', default=[], metavar='NAME=VALUE', help='Fixed parameter of the first channel')
    sweep_parser.add_argument('--sides', choices=[s.value for s in SweepSides], default=SweepSides.TWO_SIDED.value)
    sweep_parser.add_argument('--kind2', choices=[k.value for k in ChannelKind], help='Second family (cross sweeps)')
    sweep_parser.add_argument('--param2', default='p')
    sweep_parser.add_argument('--start2', type=float)
    sweep_parser.add_argument('--stop2', type=float)
    sweep_parser.add_argument('--step2', type=float)
    sweep_parser.add_argument('--fixed2', action='append', default=[], metavar='NAME=VALUE', help='Fixed parameter of the second channel')

    errata_parser = subparsers.add_parser('errata', help='Printed closed forms against numerics')
    errata_parser.add_argument(
        '--kind',
        required=True,
        choices=[k.value for k in ChannelKind if k not in (ChannelKind.KRAUS, ChannelKind.IDENTITY)],
        help='Channel family',
    )
    errata_parser.add_argument('--count', '-n', type=int, default=9, help='Grid points per parameter (default: 9)')

    for subparser in [fraction_parser, channel_parser, verify_parser, sweep_parser, errata_parser]:
        subparser.add_argument('--out', '-o', help='Output file (directory for verify)')
        subparser.add_argument(
            '--format', '-f',
            choices=[f.value for f in OutputFormat],
            default=OutputFormat.CSV.value,
            help='Table format for sweep/errata output (default: csv)'
        )
        subparser.add_argument('--precision', type=int, default=Config.DEFAULT_PRECISION, help='Significant digits')
        subparser.add_argument('--seed', type=int, default=0, help='Base seed (default: 0)')
        subparser.add_argument('--restarts', type=int, default=16, help='Optimizer restarts (default: 16)')
        subparser.add_argument('--iters', type=int, default=500, help='Iteration cap per restart (default: 500)')
        subparser.add_argument('--tol', type=float, default=1e-10, help='Convergence tolerance (default: 1e-10)')
        subparser.add_argument('--grid', type=int, help='Oracle grid points per angle')
        subparser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from command-line flags only."""
    optimizer = OptimizerConfig(
        restarts=args.restarts,
        max_iters=args.iters,
        tol=args.tol,
        seed=args.seed,
        grid_points=args.grid,
    )
    output = OutputConfig(format=OutputFormat(args.format), precision=args.precision, path=args.out)
    return RunConfig(optimizer=optimizer, output=output)


def parse_fixed(pairs: List[str]) -> Dict[str, Any]:
    """NAME=VALUE pairs; values are parsed as JSON (numbers, lists) with strings as fallback."""
    fixed: Dict[str, Any] = {}
    for pair in pairs:
        if '=' not in pair:
            raise CoherenceError(f"expected NAME=VALUE, got '{pair}'")
        name, raw = pair.split('=', 1)
        try:
            fixed[name] = json.loads(raw)
        except json.JSONDecodeError:
            fixed[name] = raw
    return fixed


def _round(value: Any, precision: int) -> Any:
    if isinstance(value, float):
        return float(f"{value:.{precision}g}")
    if isinstance(value, list):
        return [_round(v, precision) for v in value]
    if isinstance(value, dict):
        return {k: _round(v, precision) for k, v in value.items()}
    return value


def print_results(results: Dict[str, Any], args: argparse.Namespace):
    """Print a report to the console."""
    results = _round(results, args.precision)
    if args.verbose:
        print(json.dumps(results, indent=2))
        return
    for key, value in results.items():
        if value is not None:
            print(f"{key}: {value}")


def save_results(results: Dict[str, Any], output_file: str):
    """Save a report to a JSON file."""
    save_json(results, output_file)
    print(f"Results saved to: {output_file}")


def cmd_fraction(args: argparse.Namespace, config: RunConfig) -> int:
    report = CoherenceAnalyzer(config).analyze_state_file(args.input)
    results = report.to_dict()
    print_results(results, args)
    if config.output.path:
        save_results(results, config.output.path)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def cmd_channel(args: argparse.Namespace, config: RunConfig) -> int:
    report = CoherenceAnalyzer(config).analyze_channel_file(args.channel)
    results = report.to_dict()
    print_results(results, args)
    if config.output.path:
        save_results(results, config.output.path)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    result = run_suite(args.suite, args.count, args.seed, config.optimizer, config.output.path)
    status = "PASS" if result.passed else "FAIL"
    print(f"{result.name}: {status} ({result.checked} checks, {len(result.failures)} failures, max gap {result.max_gap:.3e})")
    for note in result.notes:
        print(f"  note: {note}")
    for failure in result.failures:
        print(f"  failure: {failure.description} (gap {failure.gap:.3e})")
    if result.failures:
        print(f"  first failure instance: {json.dumps(result.failures[0].payload, sort_keys=True)}")
    return EXIT_OK if result.passed else EXIT_VIOLATION


def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    spec = SweepSpec(
        kind=ChannelKind(args.kind),
        param=args.param,
        start=args.start,
        stop=args.stop,
        step=args.step,
        sides=SweepSides(args.sides),
        fixed=parse_fixed(args.fixed),
        kind2=ChannelKind(args.kind2) if args.kind2 else None,
        param2=args.param2,
        start2=args.start2,
        stop2=args.stop2,
        step2=args.step2,
        fixed2=parse_fixed(args.fixed2),
    )
    table = run_sweep(spec, config.optimizer)
    return _emit_table(table, args, config)


def cmd_errata(args: argparse.Namespace, config: RunConfig) -> int:
    table = run_errata(ChannelKind(args.kind), config.optimizer, args.count)
    return _emit_table(table, args, config)


def _emit_table(table, args: argparse.Namespace, config: RunConfig) -> int:
    if config.output.path:
        write_table(table, config.output.path, config.output.format, config.output.precision)
        print(f"Results saved to: {config.output.path}")
    else:
        print(",".join(table.columns))
        for row in table.rows:
            print(",".join("" if v is None else f"{v:.{config.output.precision}g}" for v in row))
    return EXIT_OK


COMMANDS = {
    'fraction': cmd_fraction,
    'channel': cmd_channel,
    'verify': cmd_verify,
    'sweep': cmd_sweep,
    'errata': cmd_errata,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI function."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = build_config(args)
        return COMMANDS[args.command](args, config)
    except KeyboardInterrupt:
        print("\nOperation cancelled by user.", file=sys.stderr)
        return EXIT_VIOLATION
    except ValidationError as e:
        print(f"Error: {e.invariant}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (CoherenceError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
