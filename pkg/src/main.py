"""
ascentlab - Fitness landscapes of Boolean VCSP constructions
Main entry point
"""

import argparse
import logging
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler

from . import ui
from .commands import CommandManager
from .config import DEFAULT_CONFIG, RUN_KEYS, RunConfig, load_config
from .errors import AscentLabError

VERBOSITY = {0: None, 1: "INFO"}


def build_parser(manager: CommandManager) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ascentlab",
        description="ascentlab - Fitness landscapes of Boolean VCSP constructions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  ascentlab build cd-chain --n 2 --m 2 --variant p10 -o chain.json
  ascentlab build cd-gadget --n 3 --k 2 --P 1 --Q 0
  ascentlab ascend --m 4 --audit --expect-steps 150
  ascentlab ascend --instance chain.json --rule random --seed 7
  ascentlab verify explore --n 2 --m 2 --variant p10 --start designated
  ascentlab verify decomposition --cert cd-path
  ascentlab verify minor --cert ms-k5
  ascentlab verify peaks --n 4 --k 2
        """,
    )
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v info, -vv debug)",
    )
    manager.add_subparsers(parser)
    return parser


def configure_logging(level: str) -> None:
    """Route all library logging through a Rich handler on stderr"""
    root = logging.getLogger()
    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)
    root.addHandler(
        RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
    )
    root.setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, load configuration and run one command

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Exit status: 0 success, 1 verification failed, 2 usage error,
        3 budget exceeded
    """
    manager = CommandManager()
    parser = build_parser(manager)
    args = parser.parse_args(argv)

    try:
        base = load_config(args.config)
        level = VERBOSITY.get(args.verbose, "DEBUG") or base["log_level"]
        configure_logging(level)
        keys = set(DEFAULT_CONFIG) | set(RUN_KEYS)
        overrides = {key: getattr(args, key, None) for key in keys}
        config = RunConfig.from_mapping(
            args.command,
            overrides,
            base=base,
            output=args.output,
            format=args.format,
        )
    except AscentLabError as e:
        ui.show_error(str(e))
        return e.exit_code

    return manager.execute(config)


if __name__ == "__main__":
    raise SystemExit(main())
