#!/usr/bin/env python3
"""
CLI for nstep-lab - thin experiment dispatcher.

Discovers commands from domain modules and dispatches to handlers.
"""
import argparse
import importlib
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import Optional

from . import load_env
from .config import Config
from .lib.errors import CertificationFailure, DiscrepancyError, ParameterError

logger = logging.getLogger(__name__)

# Domains to scan for commands
DOMAINS = [
    "graph",
    "special",
    "spaces",
    "energy",
    "invariants",
    "random_group",
    "admin",
]

RUN_PREFIX = "run:"

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_CERTIFICATION = 3
EXIT_IO = 4

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# Added to every command that produces a report
REPORT_ARGS = [
    {"names": ["--output", "-o"], "type": Path, "help": "Write the JSON report here instead of stdout"},
    {"name": "--csv", "type": Path, "help": "Write the experiment's table as CSV"},
    {"name": "--save", "action": "store_true", "help": "Write the report to {output_dir}/{experiment}.json"},
]


def discover_commands() -> dict[str, dict]:
    """
    Discover all commands from domain modules.

    Returns:
        Dict mapping command name to config dict with handler, help, topic, args
    """
    commands = {}

    for domain in DOMAINS:
        mod = importlib.import_module(f".domains.{domain}.commands", package=__package__)
        if hasattr(mod, "COMMANDS"):
            commands.update(mod.COMMANDS)

    return commands


def _add_args(subparser: argparse.ArgumentParser, specs: list[dict]) -> None:
    for arg in specs:
        names = arg.get("names") or [arg.get("name")]
        if isinstance(names, str):
            names = [names]

        kwargs = {}
        for key in ["help", "nargs", "type", "default", "action", "choices", "required", "metavar"]:
            if key in arg:
                kwargs[key] = arg[key]

        subparser.add_argument(*names, **kwargs)


def build_parser(commands: dict) -> argparse.ArgumentParser:
    """
    Build argument parser with all discovered commands.

    Args:
        commands: Dict of command configs

    Returns:
        Configured ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog="nstep",
        description="n-step energy, radial distortion and random group experiments",
    )

    # Global options
    parser.add_argument("--config", "-c", type=Path, help="Path to config file")
    parser.add_argument("--env", "-e", type=Path, help="Path to .env file")
    parser.add_argument("--verbose", action="store_true", help="Debug logging and tracebacks")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", help="Commands")

    for name, cmd_config in sorted(commands.items()):
        help_text = cmd_config.get("help", "")
        subparser = subparsers.add_parser(
            name,
            help=help_text,
            description=f"{help_text}\n\nTopic: {cmd_config['topic']}" if cmd_config.get("topic") else help_text,
            epilog=cmd_config.get("epilog"),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        _add_args(subparser, cmd_config.get("args", []))
        if not cmd_config.get("no_config"):
            _add_args(subparser, REPORT_ARGS)

    return parser


def get_run_aliases(commands: dict) -> dict[str, str]:
    """Build mapping of aliases to run: commands (e.g., 'delta-mu0' -> 'run:delta-mu0')."""
    aliases = {}
    for cmd_name in commands:
        if cmd_name.startswith(RUN_PREFIX):
            aliases[cmd_name[len(RUN_PREFIX):]] = cmd_name
    return aliases


def load_config(args) -> Config:
    """Load configuration from args and environment."""
    return Config.load(getattr(args, "config", None))


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the process exit status."""
    if isinstance(error, (CertificationFailure, DiscrepancyError)):
        return EXIT_CERTIFICATION
    if isinstance(error, ParameterError):
        return EXIT_USAGE
    if isinstance(error, (OSError, json.JSONDecodeError)):
        return EXIT_IO
    return EXIT_UNEXPECTED


def _fail(error: BaseException, verbose: bool) -> None:
    print(f"Error: {error}", file=sys.stderr)
    if verbose:
        traceback.print_exc()
    sys.exit(exit_code_for(error))


def main(argv: Optional[list[str]] = None) -> None:
    """Main entry point."""
    argv = list(sys.argv[1:] if argv is None else argv)
    commands = discover_commands()

    # Substitute the alias in argv (first non-option arg) before parsing
    aliases = get_run_aliases(commands)
    for i, arg in enumerate(argv):
        if not arg.startswith("-"):
            if arg in aliases:
                argv[i] = aliases[arg]
            break

    parser = build_parser(commands)
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    if not args.command:
        parser.print_help()
        sys.exit(EXIT_USAGE)

    if args.env:
        if not args.env.exists():
            _fail(FileNotFoundError(f".env file not found: {args.env}"), args.verbose)
        load_env(args.env)

    cmd_config = commands[args.command]

    # Commands that don't need config (like init and list)
    if cmd_config.get("no_config"):
        try:
            cmd_config["handler"](args)
        except Exception as e:
            _fail(e, args.verbose)
        return

    try:
        config = load_config(args)
    except Exception as e:
        print(f"Error loading config: {e}", file=sys.stderr)
        sys.exit(EXIT_IO if isinstance(e, (OSError, json.JSONDecodeError)) else EXIT_USAGE)

    problems = config.validate()
    if problems:
        _fail(ParameterError("invalid config: " + "; ".join(problems)), args.verbose)

    try:
        cmd_config["handler"](config, args)
    except Exception as e:
        _fail(e, args.verbose)


if __name__ == "__main__":
    main()
