"""
Base command class for all commands
"""

import argparse
from abc import ABC, abstractmethod

from ..config import RunConfig
from ..constructions import BridgeConvention, CdParams, Variant, build_cd_chain
from ..errors import InvalidParams
from ..utils import read_json
from ..vcsp import VcspInstance


class Command(ABC):
    """Base class for all commands"""

    def __init__(self, name: str, description: str, usage: str = None):
        """
        Initialize a command

        Args:
            name: Subcommand name
            description: Brief description of what the command does
            usage: Optional usage string (e.g., "ascentlab build <generator>")
        """
        self.name = name
        self.description = description
        self.usage = usage or f"ascentlab {name}"

    @abstractmethod
    def configure_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add the command's flags to its subparser"""
        pass

    @abstractmethod
    def execute(self, config: RunConfig) -> int:
        """
        Execute the command

        Args:
            config: Validated run configuration

        Returns:
            Process exit status: 0 success, 1 verification failed
        """
        pass


def add_generator_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every command that can generate a cd instance"""
    group = parser.add_argument_group("generator")
    group.add_argument("--n", type=int, help="Weight-scale parameter n (default: m)")
    group.add_argument("--m", type=int, help="Number of gadgets in the chain (default: n)")
    group.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        help="Top-gadget unary variant (default: p10)",
    )
    group.add_argument(
        "--convention",
        choices=[c.value for c in BridgeConvention],
        help="Weight of the (k-1,B)-(k,A) bridge (default: a-side)",
    )


def chain_params(config: RunConfig) -> CdParams:
    """
    Chain parameters from --n/--m, each defaulting to the other

    Raises:
        InvalidParams: If neither --n nor --m is given
    """
    n, m = config.get("n"), config.get("m")
    if n is None and m is None:
        raise InvalidParams("give --n and/or --m, or --instance")
    return CdParams(
        n=n if n is not None else m,
        m=m if m is not None else n,
        variant=Variant(config.get("variant", Variant.P10.value)),
        bridge_convention=BridgeConvention(config.get("convention")),
    )


def load_instance(config: RunConfig) -> VcspInstance:
    """The --instance file, or a cd chain built from the generator flags"""
    path = config.get("instance")
    if path:
        return VcspInstance.from_dict(read_json(path))
    return build_cd_chain(chain_params(config))
