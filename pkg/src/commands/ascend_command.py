"""
Ascend command - Run one strict ascent and export its trace
"""

import argparse
import logging

from .. import ui
from ..config import RunConfig
from ..constructions import CdParams
from ..errors import StepBudgetExceeded
from ..search import (
    AscentTrace,
    AuditVerdict,
    PivotRule,
    default_step_budget,
    resolve_start,
    run_ascent,
)
from ..utils import write_json, write_jsonl, write_text
from ..vcsp import VcspInstance
from .base import Command, add_generator_arguments, load_instance

logger = logging.getLogger(__name__)


class AscendCommand(Command):
    """Climb from a start assignment with the chosen pivot rule"""

    def __init__(self):
        super().__init__(
            name="ascend",
            description="Run a strict local search and write the trace",
            usage="ascentlab ascend (--instance FILE | --n N --m M) [flags]",
        )

    def configure_parser(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--instance", help="Instance JSON file")
        add_generator_arguments(parser)
        parser.add_argument("--rule", choices=["first", "steepest", "random"])
        parser.add_argument("--seed", type=int, help="Seed for the random rule")
        parser.add_argument(
            "--start",
            help="designated, zeros or a bit string (default: designated for chains)",
        )
        parser.add_argument("--max-steps", type=int, help="Step budget")
        parser.add_argument(
            "--audit",
            action="store_true",
            default=None,
            help="Check that each step had exactly one improving move",
        )
        parser.add_argument(
            "--expect-steps", type=int, help="Fail unless the ascent has this many steps"
        )
        parser.add_argument(
            "-o", "--output", default="-", help="Output path (default: stdout)"
        )
        parser.add_argument(
            "--format", choices=["jsonl", "json", "text-table"], default="jsonl"
        )

    def execute(self, config: RunConfig) -> int:
        instance = load_instance(config)
        rule = PivotRule.parse(config.get("rule"), config.get("seed"))
        default_start = "designated" if CdParams.from_meta(instance.meta) else "zeros"
        start = resolve_start(instance, config.get("start", default_start))
        logger.info("ascending %r from %s with %s", instance, start, rule.kind.value)
        max_steps = config.get("max_steps")
        if max_steps is None:
            max_steps = default_step_budget(instance, config.get("default_step_budget"))

        try:
            trace = run_ascent(instance, start, rule, max_steps, bool(config.get("audit")))
        except StepBudgetExceeded as e:
            if e.trace is not None:
                self._write(e.trace, instance, config)
                ui.show_ascent_summary(e.trace)
            raise

        self._write(trace, instance, config)
        expected = config.get("expect_steps")
        ui.show_ascent_summary(trace, expected)
        if expected is not None and expected != trace.length:
            ui.show_error(f"expected {expected} steps, ascent took {trace.length}")
            return 1
        if trace.audited_unique is AuditVerdict.NO:
            state, count = trace.first_violation
            ui.show_warning(f"state {state} had {count} improving moves")
            return 1
        return 0

    def _write(self, trace: AscentTrace, instance: VcspInstance, config: RunConfig) -> None:
        if config.format == "json":
            write_json(trace.to_dict(instance), config.output)
        elif config.format == "text-table":
            write_text(ui.render_text(ui.trace_table(trace, instance)), config.output)
        else:
            write_jsonl(trace.records(instance), config.output)
