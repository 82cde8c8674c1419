"""
Oracle - brute-force peaks, exhaustive ascent graphs and the gadget peak table

Assignments are handled as integers here: bit d-1-v of the code is variable v,
so numeric order is canonical order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .constructions import BridgeConvention, GadgetBoundary, build_cd_gadget, check_nk
from .errors import ArithmeticOverflow, BudgetExceeded, TooLarge
from .vcsp import INT64_MAX, CD_SLOTS, Assignment, VcspInstance, evaluate, improving_moves

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 24
DEFAULT_NODE_LIMIT = 10**7
BLOCK_SIZE = 1 << 16

# Peak rows per (P, Q); a '?' in the B column is resolved by R = x_(k+1,A)
PRINTED_PEAKS: Dict[Tuple[int, int], Tuple[str, ...]] = {
    (0, 0): ("00000000", "01100101"),
    (0, 1): ("00000011", "01100111"),
    (1, 0): ("1110010?", "11111001"),
    (1, 1): ("1001101?", "11111010"),
}


def _masked_terms(instance: VcspInstance) -> List[List[Tuple[int, int]]]:
    d = instance.num_vars
    return [
        [
            (weight, sum(1 << (d - 1 - u) for u in others))
            for weight, others in instance.local_terms(v)
        ]
        for v in range(d)
    ]


def _block_peaks(
    d: int, terms: List[List[Tuple[int, int]]], bounds: Tuple[int, int]
) -> np.ndarray:
    lo, hi = bounds
    codes = np.arange(lo, hi, dtype=np.int64)
    is_peak = np.ones(hi - lo, dtype=bool)
    for v in range(d):
        local = np.zeros(hi - lo, dtype=np.int64)
        for weight, mask in terms[v]:
            if mask:
                local += np.where((codes & mask) == mask, weight, 0)
            else:
                local += weight
        is_set = (codes >> (d - 1 - v)) & 1 == 1
        is_peak &= np.where(is_set, -local, local) <= 0
    return codes[is_peak]


def enumerate_peaks(
    instance: VcspInstance, workers: int = 1, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> List[Assignment]:
    """
    All local peaks, by checking every assignment

    Args:
        instance: The VCSP instance
        workers: Processes to spread the assignment blocks over
        limit: Largest variable count accepted

    Returns:
        Peaks in canonical order

    Raises:
        TooLarge: If the instance has more than limit variables
        ArithmeticOverflow: If the weights could overflow 64-bit sums
    """
    d = instance.num_vars
    if d > limit:
        raise TooLarge(f"exhaustive peak search is limited to {limit} variables, got {d}")
    if instance.total_abs_weight > INT64_MAX:
        raise ArithmeticOverflow("total absolute weight exceeds the 64-bit range")

    size = 1 << d
    blocks = [(lo, min(lo + BLOCK_SIZE, size)) for lo in range(0, size, BLOCK_SIZE)]
    scan = partial(_block_peaks, d, _masked_terms(instance))
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(scan, blocks))
    else:
        chunks = [scan(block) for block in blocks]

    peaks = [Assignment.from_int(int(code), d) for chunk in chunks for code in chunk]
    logger.info(
        "scanned %d assignments over %d blocks: %d peaks", size, len(blocks), len(peaks)
    )
    return peaks


@dataclass
class AscentGraphReport:
    """Summary of every ascent leaving one start"""

    start: Assignment
    reachable_count: int
    peaks_reached: List[Assignment]
    max_out_degree: int
    unique_maximal_path: bool
    path_length: Optional[int]
    longest_ascent: int
    shortest_ascent: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "start": str(self.start),
            "reachable_count": self.reachable_count,
            "peaks_reached": [str(p) for p in self.peaks_reached],
            "max_out_degree": self.max_out_degree,
            "unique_maximal_path": self.unique_maximal_path,
            "path_length": self.path_length,
            "longest_ascent": self.longest_ascent,
            "shortest_ascent": self.shortest_ascent,
        }


def explore_ascent_graph(
    instance: VcspInstance, start: Assignment, node_limit: int = DEFAULT_NODE_LIMIT
) -> AscentGraphReport:
    """
    Depth-first search over the improving-flip graph reachable from start

    Every arc raises fitness, so the graph is acyclic; each assignment is
    expanded once and longest/shortest ascent lengths are folded in post-order.

    Raises:
        BudgetExceeded: If more than node_limit assignments are reachable
        LengthMismatch: If start has the wrong length
    """
    d = instance.num_vars
    fitness = {start.to_int(): evaluate(instance, start)}
    children: Dict[int, List[int]] = {}
    longest: Dict[int, int] = {}
    shortest: Dict[int, int] = {}
    stack: List[Tuple[int, bool]] = [(start.to_int(), False)]

    while stack:
        code, finished = stack.pop()
        if finished:
            kids = children[code]
            longest[code] = 1 + max((longest[c] for c in kids), default=-1)
            shortest[code] = 1 + min((shortest[c] for c in kids), default=-1)
            continue
        if code in children:
            continue
        kids = []
        for v, delta in improving_moves(instance, Assignment.from_int(code, d)):
            child = code ^ (1 << (d - 1 - v))
            fitness.setdefault(child, fitness[code] + delta)
            kids.append(child)
        children[code] = kids
        if len(children) > node_limit:
            raise BudgetExceeded(f"more than {node_limit} assignments reachable")
        stack.append((code, True))
        stack.extend((c, False) for c in kids if c not in children)

    max_out = max(len(kids) for kids in children.values())
    peaks = sorted(code for code, kids in children.items() if not kids)
    unique = max_out <= 1
    report = AscentGraphReport(
        start=start,
        reachable_count=len(children),
        peaks_reached=[Assignment.from_int(code, d) for code in peaks],
        max_out_degree=max_out,
        unique_maximal_path=unique,
        path_length=len(children) - 1 if unique else None,
        longest_ascent=longest[start.to_int()],
        shortest_ascent=shortest[start.to_int()],
    )
    logger.info(
        "explored %d assignments, %d peaks, max out-degree %d",
        report.reachable_count,
        len(peaks),
        max_out,
    )
    return report


@dataclass
class PeakTableRow:
    P: int
    Q: int
    R: int
    printed: List[str]
    found: List[str]
    # printed rows that are not peaks, with the first improving flip (slot, delta)
    disqualified: Dict[str, Tuple[str, int]] = field(default_factory=dict)

    @property
    def missing(self) -> List[str]:
        return [p for p in self.printed if p not in self.found]

    @property
    def unexpected(self) -> List[str]:
        return [p for p in self.found if p not in self.printed]

    @property
    def matches(self) -> bool:
        return set(self.printed) == set(self.found)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "P": self.P,
            "Q": self.Q,
            "R": self.R,
            "printed": self.printed,
            "found": self.found,
            "missing": self.missing,
            "unexpected": self.unexpected,
            "disqualified": {k: list(v) for k, v in self.disqualified.items()},
            "matches": self.matches,
        }


@dataclass
class PeakTableReport:
    n: int
    k: int
    convention: BridgeConvention
    rows: List[PeakTableRow]
    assumption: str = "S = x(k-1,1) fixed to 0"

    @property
    def all_match(self) -> bool:
        return all(row.matches for row in self.rows)

    def mismatches(self) -> List[PeakTableRow]:
        return [row for row in self.rows if not row.matches]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "convention": self.convention.value,
            "assumption": self.assumption,
            "all_match": self.all_match,
            "rows": [row.to_dict() for row in self.rows],
        }


def printed_peaks(P: int, Q: int, R: int) -> List[str]:
    """Peak rows for (P, Q) with the undetermined B bit set to R"""
    return sorted(row.replace("?", str(R)) for row in PRINTED_PEAKS[(P, Q)])


def verify_peak_table(
    n: int,
    k: int,
    convention: BridgeConvention = BridgeConvention.A_SIDE,
    contexts: Sequence[Tuple[int, int, int]] = tuple(
        (P, Q, R) for P in (0, 1) for Q in (0, 1) for R in (0, 1)
    ),
) -> PeakTableReport:
    """
    Brute-force the peaks of gadget k under each (P, Q, R) and compare

    Args:
        n: Weight-scale parameter
        k: Gadget index
        convention: Bridge weight convention
        contexts: (P, Q, R) triples to check; S is held at 0

    Returns:
        PeakTableReport with one row per context

    Raises:
        ParamOutOfRange: If not 1 <= k <= n <= 48
    """
    check_nk(n, k)
    convention = BridgeConvention(convention)
    rows = []
    for P, Q, R in contexts:
        gadget = build_cd_gadget(n, k, GadgetBoundary(P=P, Q=Q, R=R), convention)
        found = [str(x) for x in enumerate_peaks(gadget)]
        printed = printed_peaks(P, Q, R)
        row = PeakTableRow(P, Q, R, printed, found)
        for bits in row.missing:
            moves = improving_moves(gadget, Assignment.from_string(bits))
            if moves:
                v, delta = moves[0]
                row.disqualified[bits] = (CD_SLOTS[v], delta)
        rows.append(row)
        if not row.matches:
            logger.info("P=%d Q=%d R=%d: printed %s, found %s", P, Q, R, printed, found)
    return PeakTableReport(n, k, convention, rows)
