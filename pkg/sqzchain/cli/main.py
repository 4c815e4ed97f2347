"""
Command-line front end.

    sqzchain <command> --config <file> [--data <csv>] [--out <csv>] [--seed <u64>]

Exit codes: 0 success, 2 configuration or parse error, 3 numeric or
nonphysical error.
"""

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from pydantic import ValidationError

from sqzchain.cli.commands import budget, fit, infer, spectrum, sweep
from sqzchain.cli.deps import CommandContext, CommandOutput
from sqzchain.cli.run_config import RunConfig, parse_config
from sqzchain.core.config import U64_LIMIT, settings
from sqzchain.core.errors import ConfigError, DomainError, SqzChainError
from sqzchain.core.logging import get_logger
from sqzchain.utils.csv_io import write_csv

logger = get_logger(__name__)

COMMANDS: dict[str, Callable[[CommandContext], CommandOutput]] = {
    "sweep": sweep.run,
    "fit": fit.run,
    "spectrum": spectrum.run,
    "budget": budget.run,
    "infer": infer.run,
}
# commands whose table goes to stdout when no --out is given
TABLE_COMMANDS = {"sweep", "fit", "spectrum"}


def run_command(
    name: str, config: RunConfig, data_path: Path | None = None, seed: int | None = None
) -> CommandOutput:
    if name not in COMMANDS:
        raise ConfigError(f"unknown command {name!r}")
    context = CommandContext(
        config=config,
        data_path=data_path,
        seed=settings.DEFAULT_SEED if seed is None else seed,
    )
    logger.info(
        {
            "event_type": "cli",
            "event_name": "command_start",
            "command": name,
            "data_path": str(data_path) if data_path else None,
            "seed": context.seed,
        }
    )
    try:
        return COMMANDS[name](context)
    except ValidationError as e:
        # a domain type rejected a value that passed config validation
        raise DomainError(str(e.errors()[0]["msg"]))


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < U64_LIMIT:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqzchain",
        description="Squeezed-light generation and all-optical detection toolkit",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, type=Path)
    parser.add_argument("--data", type=Path, default=None)
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--seed", type=_seed, default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            text = args.config.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}")
        output = run_command(args.command, parse_config(text), args.data, args.seed)
    except SqzChainError as e:
        logger.warning(
            {
                "event_type": "cli",
                "event_name": "command_failed",
                "command": args.command,
                "code": e.code,
            }
        )
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code

    summary = "".join(f"{line}\n" for line in output.summary)
    csv_text = write_csv(output.table) if output.table is not None else None
    if args.out is not None and csv_text is not None:
        args.out.write_text(csv_text, encoding="utf-8", newline="\n")
        sys.stdout.write(summary)
    elif args.command in TABLE_COMMANDS and csv_text is not None:
        sys.stdout.write(csv_text)
        sys.stderr.write(summary)
    else:
        sys.stdout.write(summary)
    return 0


if __name__ == "__main__":
    sys.exit(main())
