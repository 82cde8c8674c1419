"""
VCSP core - Boolean valued constraint instances, assignments and fitness

An instance is a list of weighted scopes over Boolean variables. Read as a
polynomial it is the fitness function f(x) = sum_S C(S) * prod_{i in S} x_i;
read as a hypergraph it is the constraint structure used by graphwidth.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

from .errors import (
    ArithmeticOverflow,
    InvalidInstance,
    InvalidVariable,
    LengthMismatch,
)

logger = logging.getLogger(__name__)

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# Slot names accepted in labels: cd gadgets use 1..6, A, B; MS gadgets use 1..8
CD_SLOTS: Tuple[str, ...] = ("1", "2", "3", "4", "5", "6", "A", "B")


def check_int64(value: int, what: str = "value") -> int:
    """
    Ensure an integer fits the signed 64-bit range

    Args:
        value: Integer to check
        what: Name used in the error message

    Returns:
        The value unchanged

    Raises:
        ArithmeticOverflow: If the value leaves [-2^63, 2^63 - 1]
    """
    if value < INT64_MIN or value > INT64_MAX:
        raise ArithmeticOverflow(f"{what} {value} does not fit in 64 bits")
    return value


@dataclass(frozen=True, order=True)
class VarLabel:
    """Structured name of a variable: gadget index and slot"""

    gadget: int
    slot: str

    @property
    def name(self) -> str:
        return f"{self.gadget}.{self.slot}"


@dataclass(frozen=True)
class Constraint:
    """A weighted scope; the scope is stored sorted and duplicate-free"""

    scope: Tuple[int, ...]
    weight: int

    def __post_init__(self):
        scope = tuple(sorted(self.scope))
        if not scope:
            raise InvalidInstance("constraint scope must be nonempty")
        if len(set(scope)) != len(scope):
            raise InvalidInstance(f"constraint scope {self.scope} repeats a variable")
        if any(v < 0 for v in scope):
            raise InvalidInstance(f"constraint scope {self.scope} has a negative index")
        check_int64(self.weight, "constraint weight")
        object.__setattr__(self, "scope", scope)

    @property
    def arity(self) -> int:
        return len(self.scope)


@dataclass(frozen=True)
class Assignment:
    """A fixed-length bit vector in canonical variable order"""

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise InvalidInstance("assignment bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "Assignment":
        """Parse a bit string; spaces and underscores are ignored"""
        cleaned = text.replace(" ", "").replace("_", "")
        if any(ch not in "01" for ch in cleaned):
            raise InvalidInstance(f"'{text}' is not a bit string")
        return cls(tuple(int(ch) for ch in cleaned))

    @classmethod
    def zeros(cls, length: int) -> "Assignment":
        return cls((0,) * length)

    @classmethod
    def from_int(cls, value: int, length: int) -> "Assignment":
        """Decode an integer whose most significant bit is variable 0"""
        return cls(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    def to_int(self) -> int:
        value = 0
        for bit in self.bits:
            value = (value << 1) | bit
        return value

    def flip(self, v: int) -> "Assignment":
        if not 0 <= v < len(self.bits):
            raise InvalidVariable(
                f"variable {v} outside assignment of length {len(self.bits)}"
            )
        bits = list(self.bits)
        bits[v] ^= 1
        return Assignment(tuple(bits))

    def neighbors(self) -> Iterator["Assignment"]:
        """Yield the Hamming-1 neighbors in variable order"""
        for v in range(len(self.bits)):
            yield self.flip(v)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, v: int) -> int:
        return self.bits[v]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


class VcspInstance:
    """
    Immutable Boolean VCSP instance

    Scopes are unique (use InstanceBuilder to merge duplicates) and every scope
    references a valid variable. The per-variable index is derived once at
    construction and shared by all evaluation code.
    """

    def __init__(
        self,
        num_vars: int,
        constraints: Iterable[Constraint],
        labels: Optional[Mapping[int, VarLabel]] = None,
        meta: Optional[Mapping[str, Any]] = None,
    ):
        """
        Initialize an instance

        Args:
            num_vars: Number of Boolean variables
            constraints: Weighted scopes over range(num_vars)
            labels: Optional structured label per variable
            meta: Optional generator description (name and parameters)

        Raises:
            InvalidInstance: On out-of-range variables or repeated scopes
        """
        if num_vars < 0:
            raise InvalidInstance("num_vars must be non-negative")
        self._num_vars = num_vars
        self._constraints: Tuple[Constraint, ...] = tuple(constraints)
        self._labels: Dict[int, VarLabel] = dict(labels or {})
        self._meta: Dict[str, Any] = dict(meta or {})

        seen = set()
        for c in self._constraints:
            if c.scope[-1] >= num_vars:
                raise InvalidInstance(f"scope {c.scope} references a missing variable")
            if c.scope in seen:
                raise InvalidInstance(f"scope {c.scope} appears twice")
            seen.add(c.scope)
        for v in self._labels:
            if not 0 <= v < num_vars:
                raise InvalidInstance(f"label for missing variable {v}")

        self._by_label = {label: v for v, label in self._labels.items()}
        if len(self._by_label) != len(self._labels):
            raise InvalidInstance("two variables share a label")

        self._by_var = self._index_constraints()
        self._terms = tuple(
            tuple(
                (c.weight, tuple(u for u in c.scope if u != v))
                for c in (self._constraints[ci] for ci in self._by_var[v])
            )
            for v in range(num_vars)
        )
        self._neighbors = tuple(
            tuple(sorted({u for _, others in self._terms[v] for u in others}))
            for v in range(num_vars)
        )
        self._total_abs_weight = sum(abs(c.weight) for c in self._constraints)

    def _index_constraints(self) -> Tuple[Tuple[int, ...], ...]:
        by_var: List[List[int]] = [[] for _ in range(self._num_vars)]
        for ci, c in enumerate(self._constraints):
            for v in c.scope:
                by_var[v].append(ci)
        return tuple(tuple(ids) for ids in by_var)

    @property
    def num_vars(self) -> int:
        return self._num_vars

    @property
    def constraints(self) -> Tuple[Constraint, ...]:
        return self._constraints

    @property
    def labels(self) -> Dict[int, VarLabel]:
        return dict(self._labels)

    @property
    def meta(self) -> Dict[str, Any]:
        return dict(self._meta)

    @property
    def constraints_by_var(self) -> Tuple[Tuple[int, ...], ...]:
        """Constraint indices containing each variable"""
        return self._by_var

    @property
    def total_abs_weight(self) -> int:
        """Upper bound on |f(x)| and on every |delta|"""
        return self._total_abs_weight

    def index_is_consistent(self) -> bool:
        """Rebuild the per-variable index and compare"""
        return self._index_constraints() == self._by_var

    def local_terms(self, v: int) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
        """(weight, other scope members) for each constraint containing v"""
        return self._terms[v]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Variables sharing at least one scope with v"""
        return self._neighbors[v]

    def label(self, v: int) -> Optional[VarLabel]:
        return self._labels.get(v)

    def vertex_name(self, v: int) -> str:
        label = self._labels.get(v)
        return label.name if label else f"v{v}"

    def var_by_label(self, gadget: int, slot: str) -> Optional[int]:
        return self._by_label.get(VarLabel(gadget, str(slot)))

    def gadgets(self) -> List[int]:
        return sorted({label.gadget for label in self._labels.values()})

    def weight_of(self, scope: Iterable[int]) -> Optional[int]:
        """Weight of the constraint on exactly this scope, if present"""
        key = tuple(sorted(scope))
        for c in self._constraints:
            if c.scope == key:
                return c.weight
        return None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "num_vars": self._num_vars,
            "labels": [
                {"var": v, "gadget": label.gadget, "slot": label.slot}
                for v, label in sorted(self._labels.items())
            ],
            "constraints": [
                {"scope": list(c.scope), "weight": c.weight} for c in self._constraints
            ],
        }
        if self._meta:
            data["meta"] = dict(self._meta)
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "VcspInstance":
        """
        Parse the JSON instance format

        Args:
            data: Mapping with num_vars, constraints and optional labels/meta

        Returns:
            The parsed instance

        Raises:
            InvalidInstance: If keys are missing or malformed
        """
        try:
            num_vars = int(data["num_vars"])
            constraints = [
                Constraint(tuple(int(v) for v in item["scope"]), int(item["weight"]))
                for item in data["constraints"]
            ]
            labels = {
                int(item["var"]): VarLabel(int(item["gadget"]), str(item["slot"]))
                for item in data.get("labels", [])
            }
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInstance(f"malformed instance document: {e}") from e
        return cls(num_vars, constraints, labels, data.get("meta"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VcspInstance):
            return NotImplemented
        return (
            self._num_vars == other._num_vars
            and set(self._constraints) == set(other._constraints)
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return hash((self._num_vars, frozenset(self._constraints)))

    def __repr__(self) -> str:
        return (
            f"VcspInstance(num_vars={self._num_vars}, "
            f"constraints={len(self._constraints)}, meta={self._meta or None})"
        )


@dataclass
class InstanceBuilder:
    """Accumulates weighted scopes, summing weights on repeated scopes"""

    num_vars: int
    labels: Dict[int, VarLabel] = field(default_factory=dict)
    meta: Dict[str, Any] = field(default_factory=dict)
    _weights: Dict[Tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def add(self, scope: Iterable[int], weight: int) -> "InstanceBuilder":
        key = Constraint(tuple(scope), weight).scope
        merged = self._weights.get(key, 0) + weight
        self._weights[key] = check_int64(merged, f"merged weight on {key}")
        return self

    def build(self) -> VcspInstance:
        constraints = [Constraint(scope, w) for scope, w in self._weights.items()]
        return VcspInstance(self.num_vars, constraints, self.labels, self.meta)


def _check_length(instance: VcspInstance, x: Assignment) -> None:
    if len(x) != instance.num_vars:
        raise LengthMismatch(
            f"assignment has {len(x)} bits, instance has {instance.num_vars} variables"
        )


def evaluate(instance: VcspInstance, x: Assignment) -> int:
    """
    Fitness of an assignment

    Args:
        instance: The VCSP instance
        x: Assignment of matching length

    Returns:
        Sum of weights over scopes whose variables are all set

    Raises:
        LengthMismatch: If x has the wrong length
        ArithmeticOverflow: If the sum leaves the 64-bit range
    """
    _check_length(instance, x)
    bits = x.bits
    total = 0
    for c in instance.constraints:
        if all(bits[v] for v in c.scope):
            total += c.weight
    return check_int64(total, "fitness")


def evaluate_straight(instance: VcspInstance, x: Assignment) -> int:
    """Reference fitness: weight times explicit product, no shortcuts"""
    _check_length(instance, x)
    total = 0
    for c in instance.constraints:
        product = 1
        for v in c.scope:
            product *= x.bits[v]
        total += c.weight * product
    return check_int64(total, "fitness")


def _local_field(instance: VcspInstance, bits: Tuple[int, ...], v: int) -> int:
    field_value = 0
    for weight, others in instance.local_terms(v):
        if all(bits[u] for u in others):
            field_value += weight
    return field_value


def flip_delta(instance: VcspInstance, x: Assignment, v: int) -> int:
    """
    Fitness change from flipping variable v

    Only the constraints containing v are visited.

    Raises:
        InvalidVariable: If v is not a variable of the instance
        LengthMismatch: If x has the wrong length
        ArithmeticOverflow: If the change leaves the 64-bit range
    """
    if not 0 <= v < instance.num_vars:
        raise InvalidVariable(f"variable {v} outside 0..{instance.num_vars - 1}")
    _check_length(instance, x)
    field_value = _local_field(instance, x.bits, v)
    delta = -field_value if x.bits[v] else field_value
    return check_int64(delta, "flip delta")


def improving_moves(instance: VcspInstance, x: Assignment) -> List[Tuple[int, int]]:
    """All (variable, delta) with delta > 0, sorted by variable"""
    _check_length(instance, x)
    moves = []
    for v in range(instance.num_vars):
        delta = flip_delta(instance, x, v)
        if delta > 0:
            moves.append((v, delta))
    return moves


def naive_improving_moves(instance: VcspInstance, x: Assignment) -> List[Tuple[int, int]]:
    """Improving moves by evaluating both endpoints of every flip"""
    base = evaluate_straight(instance, x)
    moves = []
    for v in range(instance.num_vars):
        delta = evaluate_straight(instance, x.flip(v)) - base
        if delta > 0:
            moves.append((v, delta))
    return moves


def is_local_peak(instance: VcspInstance, x: Assignment) -> bool:
    return not improving_moves(instance, x)


def primal_graph(instance: VcspInstance) -> nx.Graph:
    """
    2-section of the constraint hypergraph

    Nodes are variable indices carrying a "name" attribute; edges of binary
    constraints carry their weight.
    """
    graph = nx.Graph()
    for v in range(instance.num_vars):
        graph.add_node(v, name=instance.vertex_name(v))
    for c in instance.constraints:
        scope = c.scope
        for i, u in enumerate(scope):
            for w in scope[i + 1:]:
                graph.add_edge(u, w)
        if c.arity == 2:
            graph.edges[scope[0], scope[1]]["weight"] = c.weight
    logger.debug(
        "primal graph: %d nodes, %d edges", graph.number_of_nodes(), graph.number_of_edges()
    )
    return graph
