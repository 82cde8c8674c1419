"""
Build command - Generate an instance file
"""

import argparse

from .. import ui
from ..config import RunConfig
from ..constructions import (
    BridgeConvention,
    GadgetBoundary,
    build_cd_chain,
    build_cd_gadget,
    build_ms_scopes,
)
from ..errors import InvalidParams
from ..graphwidth import primal_dot
from ..utils import write_json, write_text
from .base import Command, add_generator_arguments, chain_params

GENERATORS = ("cd-chain", "cd-gadget", "ms-scopes")


class BuildCommand(Command):
    """Write a generated instance as JSON or its primal graph as DOT"""

    def __init__(self):
        super().__init__(
            name="build",
            description="Generate a cd chain, a single cd gadget or the MS scope structure",
            usage="ascentlab build {cd-chain|cd-gadget|ms-scopes} [flags]",
        )

    def configure_parser(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("target", choices=GENERATORS, help="Generator to run")
        add_generator_arguments(parser)
        gadget = parser.add_argument_group("cd-gadget")
        gadget.add_argument("--k", type=int, help="Gadget index")
        for bit, meaning in (
            ("P", "x(k+1,6)"),
            ("Q", "x(k-1,B)"),
            ("R", "x(k+1,A)"),
            ("S", "x(k-1,1)"),
        ):
            gadget.add_argument(
                f"--{bit}", type=int, help=f"Boundary bit {meaning} (default: 0)"
            )
        parser.add_argument(
            "-o", "--output", default="-", help="Output path (default: stdout)"
        )
        parser.add_argument("--format", choices=["json", "dot"], default="json")

    def execute(self, config: RunConfig) -> int:
        target = config.get("target")
        if target == "cd-chain":
            instance = build_cd_chain(chain_params(config))
        elif target == "cd-gadget":
            n, k = config.get("n"), config.get("k")
            if n is None or k is None:
                raise InvalidParams("cd-gadget needs --n and --k")
            boundary = GadgetBoundary(
                **{bit: config.get(bit, 0) for bit in ("P", "Q", "R", "S")}
            )
            convention = BridgeConvention(config.get("convention"))
            instance = build_cd_gadget(n, k, boundary, convention)
        elif target == "ms-scopes":
            if config.get("n") is None:
                raise InvalidParams("ms-scopes needs --n")
            instance = build_ms_scopes(config.get("n"))
        else:
            raise InvalidParams(f"unknown generator '{target}'")

        if config.format == "dot":
            destination = write_text(primal_dot(instance), config.output)
        elif config.format == "json":
            destination = write_json(instance.to_dict(), config.output)
        else:
            raise InvalidParams(f"build writes json or dot, not {config.format}")
        ui.show_instance_summary(instance, destination)
        return 0
