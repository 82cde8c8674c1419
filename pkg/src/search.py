"""
Search - strict local search with pivot rules, traces and uniqueness audits
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Mapping, NamedTuple, Optional, Set, Tuple

from .constructions import CdParams, cd_start
from .errors import (
    InvalidInstance,
    InvalidParams,
    InvalidStart,
    LengthMismatch,
    StepBudgetExceeded,
    UnknownGadget,
)
from .vcsp import INT64_MAX, Assignment, VcspInstance, check_int64, evaluate, flip_delta

logger = logging.getLogger(__name__)

DEFAULT_STEP_BUDGET = 10**8


class RuleKind(str, Enum):
    FIRST_IMPROVEMENT = "first"
    STEEPEST = "steepest"
    RANDOM_IMPROVEMENT = "random"


class AuditVerdict(str, Enum):
    YES = "yes"
    NO = "no"
    NOT_AUDITED = "not-audited"


@dataclass(frozen=True)
class PivotRule:
    """
    Which improving flip to take

    FIRST_IMPROVEMENT picks the lowest improving variable, STEEPEST the largest
    delta with ties to the lowest variable, RANDOM_IMPROVEMENT draws uniformly
    from the sorted improving set with random.Random(seed).
    """

    kind: RuleKind = RuleKind.FIRST_IMPROVEMENT
    seed: int = 0

    @classmethod
    def parse(cls, name: str, seed: int = 0) -> "PivotRule":
        try:
            return cls(RuleKind(str(name).lower()), int(seed))
        except ValueError as e:
            choices = ", ".join(kind.value for kind in RuleKind)
            raise InvalidParams(f"unknown rule '{name}' (choose from {choices})") from e

    def describe(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"rule": self.kind.value}
        if self.kind is RuleKind.RANDOM_IMPROVEMENT:
            data["seed"] = self.seed
        return data


class AscentStep(NamedTuple):
    var: int
    delta: int
    fitness: int
    improving_count: int


@dataclass
class AscentTrace:
    """
    Record of one ascent

    first_violation is (state index, improving-move count) for the first
    non-peak state that did not have exactly one improving move; state 0 is
    the start.
    """

    start: Assignment
    start_fitness: int
    rule: PivotRule
    steps: List[AscentStep] = field(default_factory=list)
    end: Optional[Assignment] = None
    audited_unique: AuditVerdict = AuditVerdict.NOT_AUDITED
    first_violation: Optional[Tuple[int, int]] = None
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def end_fitness(self) -> int:
        return self.steps[-1].fitness if self.steps else self.start_fitness

    def fitness_sequence(self) -> List[int]:
        return [self.start_fitness] + [step.fitness for step in self.steps]

    def header(self) -> Dict[str, Any]:
        data = {
            "type": "header",
            "start": str(self.start),
            "end": str(self.end) if self.end is not None else None,
            "start_fitness": self.start_fitness,
            "end_fitness": self.end_fitness,
            "steps": self.length,
            "audited_unique": self.audited_unique.value,
            "first_violation": list(self.first_violation) if self.first_violation else None,
            "truncated": self.truncated,
        }
        data.update(self.rule.describe())
        return data

    def records(self, instance: Optional[VcspInstance] = None) -> Iterator[Dict[str, Any]]:
        """Header followed by one record per step, the JSONL export"""
        yield self.header()
        for t, step in enumerate(self.steps, start=1):
            label = instance.label(step.var) if instance is not None else None
            yield {
                "step": t,
                "var": step.var,
                "label": [label.gadget, label.slot] if label else None,
                "delta": step.delta,
                "fitness": step.fitness,
                "improving_count": step.improving_count,
            }

    def to_dict(self, instance: Optional[VcspInstance] = None) -> Dict[str, Any]:
        records = list(self.records(instance))
        data = records[0]
        data["trace"] = records[1:]
        return data


def default_step_budget(instance: VcspInstance, fallback: int = DEFAULT_STEP_BUDGET) -> int:
    """Twice the designated length for generated chains, otherwise fallback"""
    params = CdParams.from_meta(instance.meta)
    if params is not None:
        return 2 * params.designated_length
    return fallback


class _DeltaTable:
    """Flip deltas of every variable, refreshed around each flip"""

    def __init__(self, instance: VcspInstance, bits: List[int]):
        self.instance = instance
        self.bits = bits
        self.checked = instance.total_abs_weight > INT64_MAX
        self.deltas = [self._compute(v) for v in range(instance.num_vars)]
        self.improving: Set[int] = {v for v, d in enumerate(self.deltas) if d > 0}

    def _compute(self, v: int) -> int:
        bits = self.bits
        value = 0
        for weight, others in self.instance.local_terms(v):
            if all(bits[u] for u in others):
                value += weight
        delta = -value if bits[v] else value
        if self.checked:
            check_int64(delta, "flip delta")
        return delta

    def _refresh(self, v: int) -> None:
        delta = self._compute(v)
        self.deltas[v] = delta
        if delta > 0:
            self.improving.add(v)
        else:
            self.improving.discard(v)

    def flip(self, v: int) -> None:
        self.bits[v] ^= 1
        self._refresh(v)
        for u in self.instance.neighbors(v):
            self._refresh(u)


def _choose(rule: PivotRule, table: _DeltaTable, rng: Optional[random.Random]) -> int:
    if rule.kind is RuleKind.FIRST_IMPROVEMENT:
        return min(table.improving)
    if rule.kind is RuleKind.STEEPEST:
        return min(table.improving, key=lambda v: (-table.deltas[v], v))
    return rng.choice(sorted(table.improving))


def run_ascent(
    instance: VcspInstance,
    start: Assignment,
    rule: PivotRule = PivotRule(),
    max_steps: Optional[int] = None,
    audit: bool = False,
) -> AscentTrace:
    """
    Climb from start until no flip improves fitness

    Args:
        instance: The VCSP instance
        start: Starting assignment
        rule: Pivot rule choosing among improving flips
        max_steps: Step budget; defaults to default_step_budget(instance)
        audit: Check that every non-peak state has exactly one improving flip

    Returns:
        The completed AscentTrace

    Raises:
        LengthMismatch: If start has the wrong length
        InvalidParams: If max_steps is negative
        StepBudgetExceeded: If improving flips remain after max_steps; the
            truncated trace is attached to the exception
    """
    if len(start) != instance.num_vars:
        raise LengthMismatch(
            f"start has {len(start)} bits, instance has {instance.num_vars} variables"
        )
    if max_steps is None:
        max_steps = default_step_budget(instance)
    if max_steps < 0:
        raise InvalidParams(f"max_steps must be non-negative, got {max_steps}")

    bits = list(start.bits)
    table = _DeltaTable(instance, bits)
    rng = random.Random(rule.seed) if rule.kind is RuleKind.RANDOM_IMPROVEMENT else None
    fitness = evaluate(instance, start)
    trace = AscentTrace(start=start, start_fitness=fitness, rule=rule)

    while table.improving:
        count = len(table.improving)
        if audit and count != 1 and trace.first_violation is None:
            trace.first_violation = (trace.length, count)
        if trace.length >= max_steps:
            trace.end = Assignment(tuple(bits))
            trace.truncated = True
            trace.audited_unique = _verdict(audit, trace)
            raise StepBudgetExceeded(
                f"ascent still improving after {max_steps} steps", trace=trace
            )
        v = _choose(rule, table, rng)
        delta = table.deltas[v]
        fitness = check_int64(fitness + delta, "fitness")
        table.flip(v)
        trace.steps.append(AscentStep(v, delta, fitness, count))

    trace.end = Assignment(tuple(bits))
    trace.audited_unique = _verdict(audit, trace)
    logger.info(
        "ascent (%s) took %d steps, fitness %d -> %d",
        rule.kind.value,
        trace.length,
        trace.start_fitness,
        trace.end_fitness,
    )
    return trace


def _verdict(audit: bool, trace: AscentTrace) -> AuditVerdict:
    if not audit:
        return AuditVerdict.NOT_AUDITED
    return AuditVerdict.NO if trace.first_violation else AuditVerdict.YES


def audit_uniqueness(
    instance: VcspInstance, start: Assignment, max_steps: Optional[int] = None
) -> Tuple[bool, AscentTrace]:
    """Walk the first-improvement ascent and audit every state on it"""
    trace = run_ascent(instance, start, PivotRule(), max_steps, audit=True)
    return trace.audited_unique is AuditVerdict.YES, trace


def replay(trace: AscentTrace) -> Assignment:
    """Apply the recorded flips to the start"""
    bits = list(trace.start.bits)
    for step in trace.steps:
        bits[step.var] ^= 1
    return Assignment(tuple(bits))


def trace_is_consistent(instance: VcspInstance, trace: AscentTrace) -> bool:
    """Replay reaches end, deltas are positive and sum to the fitness gain"""
    if trace.end is None or replay(trace) != trace.end:
        return False
    fitness = trace.start_fitness
    for step in trace.steps:
        if step.delta <= 0 or step.fitness != fitness + step.delta:
            return False
        fitness = step.fitness
    gain = evaluate(instance, trace.end) - evaluate(instance, trace.start)
    return gain == sum(step.delta for step in trace.steps)


def recurrence_holds(lengths: Mapping[int, int]) -> bool:
    """
    Check measured ascent lengths against T_1 = 10 and T_m = 10 + 2 T_{m-1}

    Args:
        lengths: Measured length per chain size m

    Returns:
        True if every available consecutive pair satisfies the recurrence
    """
    if 1 in lengths and lengths[1] != 10:
        return False
    return all(
        lengths[m] == 10 + 2 * lengths[m - 1] for m in lengths if m - 1 in lengths
    )


def _slot_key(slot: str) -> Tuple[int, Any]:
    return (0, int(slot)) if slot.isdigit() else (1, slot)


def gadget_slots(instance: VcspInstance, k: int) -> List[Tuple[str, int]]:
    """(slot, variable) pairs of gadget k; digits first, then letters"""
    pairs = [(label.slot, v) for v, label in instance.labels.items() if label.gadget == k]
    if not pairs:
        raise UnknownGadget(f"instance has no gadget {k}")
    return sorted(pairs, key=lambda pair: _slot_key(pair[0]))


def delta_row(instance: VcspInstance, x: Assignment, k: int) -> List[int]:
    """
    Flip deltas of gadget k's variables in slot order 1..6, A, B

    Raises:
        UnknownGadget: If no variable carries gadget index k
        LengthMismatch: If x has the wrong length
    """
    return [flip_delta(instance, x, v) for _, v in gadget_slots(instance, k)]


class GadgetWalkRow(NamedTuple):
    step: int
    P: int
    Q: int
    bits: str
    deltas: Tuple[int, ...]


def gadget_walk(instance: VcspInstance, trace: AscentTrace, k: int) -> List[GadgetWalkRow]:
    """
    Project an ascent onto gadget k

    A row is emitted for the start and whenever gadget k's bits or its context
    P = x(k+1,6), Q = x(k-1,B) change. Missing neighbors read as 0.
    """
    slots = gadget_slots(instance, k)
    p_var = instance.var_by_label(k + 1, "6")
    q_var = instance.var_by_label(k - 1, "B")
    rows: List[GadgetWalkRow] = []
    state = trace.start
    last_key = None
    for t in range(trace.length + 1):
        if t:
            state = state.flip(trace.steps[t - 1].var)
        P = state[p_var] if p_var is not None else 0
        Q = state[q_var] if q_var is not None else 0
        bits = "".join(str(state[v]) for _, v in slots)
        if (P, Q, bits) != last_key:
            deltas = tuple(flip_delta(instance, state, v) for _, v in slots)
            rows.append(GadgetWalkRow(t, P, Q, bits, deltas))
            last_key = (P, Q, bits)
    return rows


def resolve_start(instance: VcspInstance, text: str) -> Assignment:
    """
    Turn a start keyword or bit string into an assignment

    "designated" needs a cd-chain instance; "zeros" is the all-zero
    assignment; anything else is parsed as a bit string.

    Raises:
        InvalidStart: If the keyword does not apply or the bits do not parse
        LengthMismatch: If the bit string has the wrong length
    """
    if text == "designated":
        params = CdParams.from_meta(instance.meta)
        if params is None:
            raise InvalidStart("'designated' start needs a cd-chain instance")
        return cd_start(params)
    if text == "zeros":
        return Assignment.zeros(instance.num_vars)
    try:
        start = Assignment.from_string(text)
    except InvalidInstance as e:
        raise InvalidStart(f"cannot parse start '{text}'") from e
    if len(start) != instance.num_vars:
        raise LengthMismatch(
            f"start has {len(start)} bits, instance has {instance.num_vars} variables"
        )
    return start


def rule_variants(seed: int = 0) -> List[PivotRule]:
    return [PivotRule(kind, seed) for kind in RuleKind]
