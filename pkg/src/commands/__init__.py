"""
Commands module - All available commands for ascentlab
"""

from .base import Command
from .manager import CommandManager

__all__ = ["Command", "CommandManager"]
