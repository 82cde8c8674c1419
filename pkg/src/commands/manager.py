"""
Command Manager - Manages all commands and their execution
"""

import argparse
import logging
from typing import Dict, List, Optional

from .. import ui
from ..config import RunConfig
from ..errors import AscentLabError
from .ascend_command import AscendCommand
from .base import Command
from .build_command import BuildCommand
from .verify_command import VerifyCommand

logger = logging.getLogger(__name__)


class CommandManager:
    """Manages all available commands"""

    def __init__(self):
        """Initialize the command manager and register all commands"""
        self.commands: Dict[str, Command] = {}
        self._register_commands()

    def _register_commands(self):
        """Register all available commands"""
        commands = [
            BuildCommand(),
            AscendCommand(),
            VerifyCommand(),
        ]

        for command in commands:
            self.commands[command.name] = command

    def get_command_names(self) -> List[str]:
        """Get a sorted list of all command names"""
        return sorted(self.commands.keys())

    def add_subparsers(self, parser: argparse.ArgumentParser) -> None:
        """Attach one subparser per registered command"""
        subparsers = parser.add_subparsers(
            dest="command", metavar="COMMAND", required=True
        )
        for name in self.get_command_names():
            command = self.commands[name]
            sub = subparsers.add_parser(
                name,
                help=command.description,
                description=command.description,
                usage=command.usage,
            )
            command.configure_parser(sub)

    def execute(self, config: RunConfig) -> int:
        """
        Execute a command

        Args:
            config: Validated run configuration naming the command

        Returns:
            Exit status; library errors are shown and mapped to their exit code
        """
        command = self.get_command(config.command)
        if command is None:
            ui.show_error(f"unknown command '{config.command}'")
            return 2
        try:
            return command.execute(config)
        except AscentLabError as e:
            logger.debug("%s failed", config.command, exc_info=True)
            ui.show_error(str(e))
            return e.exit_code

    def get_command(self, name: str) -> Optional[Command]:
        """Get a command by name"""
        return self.commands.get(name)
