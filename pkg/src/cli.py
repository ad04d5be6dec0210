"""Command-line driver.

    python -m src.cli synth SPEC [options]
    python -m src.cli gen CATEGORY N [-o PATH]

The first line printed by ``synth`` is REALIZABLE or UNREALIZABLE.
"""
import argparse
import logging
import sys
from typing import List, Optional, Tuple

from .core.aiger import export_monitor, export_strategy, read_circuit
from .core.automaton import dump
from .core.game import GameBackend, ResourceLimitError
from .core.layers import FragmentError
from .core.parser import ParseError
from .schemas.partition import SpecFile, SpecFormatError
from .schemas.synthesis import Stage
from .services.benchmark_service import BenchmarkService
from .services.synthesis_service import OracleMismatchError, SynthesisService

logger = logging.getLogger(__name__)

EXIT_REALIZABLE = 0
EXIT_UNREALIZABLE = 1
EXIT_INVALID_SPEC = 2
EXIT_RESOURCE_LIMIT = 3
EXIT_ORACLE_MISMATCH = 4


def _stem_loop(text: str) -> Tuple[int, int]:
    try:
        stem, loop = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected STEM,LOOP, e.g. 3,2")
    if stem < 0 or loop < 1:
        raise argparse.ArgumentTypeError("stem must be >= 0 and loop >= 1")
    return stem, loop


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ebrsynth", description="Realizability and synthesis for LTL-EBR")
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="decide realizability of a specification file")
    synth.add_argument("spec", type=str, help="specification file (.inputs/.outputs headers, then formulas)")
    synth.add_argument("--dump-pastified", action="store_true", help="print the pastified formula")
    synth.add_argument("--dump-canonical", action="store_true", help="print the canonical formula")
    synth.add_argument("--dump-automaton", action="store_true", help="print the compiled automaton")
    synth.add_argument("--aiger", metavar="PATH", type=str, help="write the monitor circuit")
    synth.add_argument("--strategy", metavar="PATH", type=str, help="write the strategy circuit")
    synth.add_argument("--oracle-check", metavar="STEM,LOOP", type=_stem_loop,
                       help="cross-check the automaton against the reference semantics before solving")
    synth.add_argument("--state-budget", type=int, help="maximum 2^|latches| for either backend")
    synth.add_argument("--backend", choices=[backend.value for backend in GameBackend], help="game backend")
    synth.add_argument("--from-stage", choices=[stage.value for stage in Stage], default=Stage.LTL.value,
                       help="stage the formulas are written in")
    synth.add_argument("--json", action="store_true", help="print the machine-readable report")

    gen = commands.add_parser("gen", help="generate a benchmark specification")
    gen.add_argument("category", type=int, choices=sorted(BenchmarkService.EXPECTED_REALIZABLE))
    gen.add_argument("n", type=int)
    gen.add_argument("-o", "--out", dest="out_file", type=str, help="output path, stdout by default")
    return parser


def _write(path: str, text: str) -> None:
    with open(path, "w") as handle:
        handle.write(text)


def run_synth(args: argparse.Namespace) -> int:
    try:
        with open(args.spec, "r") as handle:
            spec = SpecFile.from_text(handle.read())
        service = SynthesisService(backend=args.backend, state_budget=args.state_budget)
        run = service.run(spec, Stage(args.from_stage), oracle_check=args.oracle_check)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_SPEC
    except (ParseError, FragmentError, SpecFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_SPEC
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE_LIMIT
    except OracleMismatchError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ORACLE_MISMATCH

    print(run.verdict.value)
    if args.dump_pastified:
        print("# pastified")
        print(run.pastified)
    if args.dump_canonical:
        print("# canonical")
        print(run.canonical.to_formula())
    if args.dump_automaton:
        print("# automaton")
        print(dump(run.automaton), end="")

    if args.aiger:
        text = export_monitor(run.automaton)
        read_circuit(text)
        _write(args.aiger, text)
        logger.info(f"Monitor circuit written to {args.aiger}")
    if args.strategy and run.result.realizable:
        text = export_strategy(run.result, run.automaton)
        read_circuit(text)
        _write(args.strategy, text)
        logger.info(f"Strategy circuit written to {args.strategy}")
    elif args.strategy:
        logger.warning("No strategy written for an unrealizable specification")

    if args.json:
        print(service.report(run).json(indent=2))
    return EXIT_REALIZABLE if run.result.realizable else EXIT_UNREALIZABLE


def run_gen(args: argparse.Namespace) -> int:
    service = BenchmarkService()
    try:
        text = service.generate(args.category, args.n).to_text()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_SPEC
    if args.out_file:
        _write(args.out_file, text)
    else:
        print(text, end="")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "synth":
        return run_synth(args)
    return run_gen(args)


if __name__ == "__main__":
    sys.exit(main())
