"""
Constructions - controlled doubling chains, single gadgets and MS scope structure

Canonical bit order of a controlled doubling chain puts gadget m first and
gadget 1 last; inside a gadget the slots run 1, 2, 3, 4, 5, 6, A, B. The bit
of (k, slot) therefore sits at 8 * (m - k) + offset(slot).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from .errors import ParamOutOfRange
from .vcsp import CD_SLOTS, Assignment, InstanceBuilder, VarLabel, VcspInstance, check_int64

logger = logging.getLogger(__name__)

MAX_N = 48
SLOT_OFFSET: Dict[str, int] = {slot: i for i, slot in enumerate(CD_SLOTS)}

# Peak reached by the P10 ascent inside the top gadget
TOP_PEAK_BITS = "11111001"


class Variant(str, Enum):
    """Top-gadget unary variant of a chain"""

    P10 = "p10"
    P00 = "p00"


class BridgeConvention(str, Enum):
    """Which printed value the (k-1,B)-(k,A) bridge edge takes"""

    A_SIDE = "a-side"  # s_k + 6, the value the modified A unary relies on
    B_SIDE = "b-side"  # s_{k-1}, the value given from the B endpoint's gadget


def m_scale(n: int, k: int) -> int:
    """Doubling-channel scale m_k = 2^(k-1) * (8n + 16) - 16"""
    return check_int64(2 ** (k - 1) * (8 * n + 16) - 16, f"m_{k}")


def s_scale(n: int, k: int) -> int:
    """Control-channel scale s_k = 8 * (n - k)"""
    return 8 * (n - k)


def check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n <= MAX_N:
        raise ParamOutOfRange(f"need 1 <= k <= n <= {MAX_N}, got n={n}, k={k}")


@dataclass(frozen=True)
class CdParams:
    """Parameters of a controlled doubling chain"""

    n: int
    m: int
    variant: Variant = Variant.P10
    bridge_convention: BridgeConvention = BridgeConvention.A_SIDE

    def __post_init__(self):
        if not 1 <= self.m <= self.n <= MAX_N:
            raise ParamOutOfRange(
                f"need 1 <= m <= n <= {MAX_N}, got n={self.n}, m={self.m}"
            )
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(
            self, "bridge_convention", BridgeConvention(self.bridge_convention)
        )

    @classmethod
    def square(cls, m: int, variant=Variant.P10, convention=BridgeConvention.A_SIDE):
        """Chain with the smallest admissible weight scale, n = m"""
        return cls(n=m, m=m, variant=variant, bridge_convention=convention)

    @classmethod
    def from_meta(cls, meta: Mapping[str, Any]) -> Optional["CdParams"]:
        """Recover chain parameters from instance meta, None if not a chain"""
        if meta.get("generator") != "cd-chain":
            return None
        try:
            return cls(
                n=int(meta["n"]),
                m=int(meta["m"]),
                variant=Variant(meta.get("variant", Variant.P10.value)),
                bridge_convention=BridgeConvention(
                    meta.get("convention", BridgeConvention.A_SIDE.value)
                ),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParamOutOfRange(f"malformed cd-chain meta: {e}") from e

    @property
    def num_vars(self) -> int:
        return 8 * self.m

    @property
    def designated_length(self) -> int:
        """Length 10 * (2^m - 1) of the designated ascent"""
        return 10 * (2**self.m - 1)

    def as_meta(self) -> Dict[str, object]:
        return {
            "generator": "cd-chain",
            "n": self.n,
            "m": self.m,
            "variant": self.variant.value,
            "convention": self.bridge_convention.value,
        }


@dataclass(frozen=True)
class GadgetBoundary:
    """
    Neighbor bits seen by a single gadget k

    P is x_(k+1,6), Q is x_(k-1,B), R is x_(k+1,A) and S is x_(k-1,1).
    """

    P: int = 0
    Q: int = 0
    R: int = 0
    S: int = 0

    def __post_init__(self):
        for name in ("P", "Q", "R", "S"):
            if getattr(self, name) not in (0, 1):
                raise ParamOutOfRange(f"boundary bit {name} must be 0 or 1")


@dataclass(frozen=True)
class GadgetWeights:
    """Every weight of gadget k, keyed by slot names"""

    n: int
    k: int
    m_k: int
    s_k: int
    unary: Dict[str, int]
    binary: Dict[Tuple[str, str], int]
    ternary: Dict[Tuple[str, str, str], int]
    inter_gadget: int  # C((k,6),(k-1,1))
    up_link: int  # C((k+1,6),(k,1)) = m_{k+1}

    def bridge_in(self, convention: BridgeConvention) -> int:
        """Weight of the (k-1,B)-(k,A) edge"""
        if BridgeConvention(convention) is BridgeConvention.A_SIDE:
            return self.s_k + 6
        return self.s_k + 8  # s_{k-1}

    def bridge_out(self, convention: BridgeConvention) -> int:
        """Weight of the (k,B)-(k+1,A) edge"""
        if BridgeConvention(convention) is BridgeConvention.A_SIDE:
            return self.s_k - 2  # s_{k+1} + 6
        return self.s_k

    def internal(self) -> Iterator[Tuple[Tuple[str, ...], int]]:
        """The 8 unary, 11 binary and 2 ternary constraints of the gadget"""
        for slot, weight in self.unary.items():
            yield (slot,), weight
        yield from self.binary.items()
        yield from self.ternary.items()


def cd_weights(n: int, k: int) -> GadgetWeights:
    """
    Weight table of controlled doubling gadget k

    Args:
        n: Weight-scale parameter
        k: Gadget index, 1 <= k <= n

    Returns:
        GadgetWeights with every unary, binary, ternary and linking weight

    Raises:
        ParamOutOfRange: If not 1 <= k <= n <= 48
        ArithmeticOverflow: If a weight leaves the 64-bit range
    """
    check_nk(n, k)
    m = m_scale(n, k)
    s = s_scale(n, k)
    unary = {
        "1": -(2 * m + 13),
        "2": -(m + 5),
        "3": -(m + 3),
        "4": -(m + s + 7),
        "5": -1,
        "6": -(m + 1),
        "A": -(s + 5),
        "B": -(s + 3),
    }
    binary = {
        ("1", "2"): m + 6,
        ("2", "3"): m + 4,
        ("3", "6"): m + 2,
        ("1", "4"): m + 6,
        ("4", "5"): m + 4,
        ("5", "6"): -(m + 2),
        ("A", "B"): s + 4,
        ("1", "B"): -2,
        ("2", "B"): s + 4,
        ("4", "A"): s + 2,
        ("4", "B"): s + 2,
    }
    ternary = {
        ("2", "A", "B"): -(s + 4),
        ("4", "A", "B"): -(s + 2),
    }
    for weight in list(unary.values()) + list(binary.values()):
        check_int64(weight, f"gadget {k} weight")
    return GadgetWeights(
        n=n,
        k=k,
        m_k=m,
        s_k=s,
        unary=unary,
        binary=binary,
        ternary=ternary,
        inter_gadget=m,
        up_link=check_int64(2 * m + 16, f"m_{k + 1}"),
    )


def cd_var_index(params: CdParams, k: int, slot: str) -> int:
    """Canonical bit position of (k, slot) in a chain"""
    if not 1 <= k <= params.m:
        raise ParamOutOfRange(f"gadget {k} outside 1..{params.m}")
    return 8 * (params.m - k) + SLOT_OFFSET[str(slot)]


def build_cd_chain(params: CdParams) -> VcspInstance:
    """
    Build the chain of gadgets m, m-1, ..., 1

    Gadget m gets the P10 or P00 unary on slot 1; consecutive gadgets are
    linked by (k,6)-(k-1,1) and by the bridge (k-1,B)-(k,A); gadget 1 carries
    the merged (1,6)-(1,A) constraint of weight 8n.

    Args:
        params: Chain parameters

    Returns:
        Instance on 8m variables with (gadget, slot) labels
    """
    n, m = params.n, params.m
    labels = {
        cd_var_index(params, k, slot): VarLabel(k, slot)
        for k in range(1, m + 1)
        for slot in CD_SLOTS
    }
    builder = InstanceBuilder(params.num_vars, labels, params.as_meta())
    tables = {k: cd_weights(n, k) for k in range(1, m + 1)}

    def pos(k: int, slot: str) -> int:
        return cd_var_index(params, k, slot)

    for k in range(m, 0, -1):
        for slots, weight in tables[k].internal():
            builder.add([pos(k, slot) for slot in slots], weight)
    if params.variant is Variant.P10:
        # merges into the slot-1 unary: -(2m_m + 13) + m_{m+1} = 3
        builder.add([pos(m, "1")], tables[m].up_link)
    for k in range(2, m + 1):
        builder.add([pos(k, "6"), pos(k - 1, "1")], tables[k].inter_gadget)
        builder.add(
            [pos(k - 1, "B"), pos(k, "A")], tables[k].bridge_in(params.bridge_convention)
        )
    builder.add([pos(1, "6"), pos(1, "A")], 8 * n)

    instance = builder.build()
    logger.info(
        "built cd-chain n=%d m=%d %s %s: %d vars, %d constraints",
        n,
        m,
        params.variant.value,
        params.bridge_convention.value,
        instance.num_vars,
        len(instance.constraints),
    )
    return instance


def cd_start(params: CdParams) -> Assignment:
    """Designated start: 0^{8m} for P10, the P10 peak for P00"""
    zeros = Assignment.zeros(params.num_vars)
    if params.variant is Variant.P10:
        return zeros
    return _top_peak(params)


def cd_end(params: CdParams) -> Assignment:
    """Designated end: the P10 peak for P10, 0^{8m} for P00"""
    if params.variant is Variant.P10:
        return _top_peak(params)
    return Assignment.zeros(params.num_vars)


def _top_peak(params: CdParams) -> Assignment:
    return Assignment.from_string(TOP_PEAK_BITS + "0" * (8 * (params.m - 1)))


def build_cd_gadget(
    n: int,
    k: int,
    boundary: GadgetBoundary = GadgetBoundary(),
    convention: BridgeConvention = BridgeConvention.A_SIDE,
) -> VcspInstance:
    """
    Build gadget k as a closed 8-variable instance

    The neighbor bits are folded into unaries: P adds m_{k+1} to slot 1,
    Q adds the bridge-in weight to slot A, S adds m_k to slot 6 and R adds
    the bridge-out weight to slot B. The first-gadget merge of a chain is
    not applied here.
    """
    check_nk(n, k)
    convention = BridgeConvention(convention)
    table = cd_weights(n, k)
    labels = {i: VarLabel(k, slot) for i, slot in enumerate(CD_SLOTS)}
    meta = {
        "generator": "cd-gadget",
        "n": n,
        "k": k,
        "P": boundary.P,
        "Q": boundary.Q,
        "R": boundary.R,
        "S": boundary.S,
        "convention": convention.value,
    }
    builder = InstanceBuilder(8, labels, meta)
    for slots, weight in table.internal():
        builder.add([SLOT_OFFSET[slot] for slot in slots], weight)
    folded = {
        "1": boundary.P * table.up_link,
        "A": boundary.Q * table.bridge_in(convention),
        "6": boundary.S * table.inter_gadget,
        "B": boundary.R * table.bridge_out(convention),
    }
    for slot, weight in folded.items():
        if weight:
            builder.add([SLOT_OFFSET[slot]], weight)
    return builder.build()


def ms_var_order(n: int) -> List[VarLabel]:
    """(n+1,1), (n+1,2), gadgets n..1 slots 1..8, then (0,1), (0,8)"""
    order = [VarLabel(n + 1, "1"), VarLabel(n + 1, "2")]
    for k in range(n, 0, -1):
        order.extend(VarLabel(k, str(i)) for i in range(1, 9))
    order.extend([VarLabel(0, "1"), VarLabel(0, "8")])
    return order


def build_ms_scopes(n: int) -> VcspInstance:
    """
    Scope structure of the MS chain on 8n + 4 variables, unit weights

    Gadget k has the path (k,1)-...-(k,8); its slots 2, 4, 6 touch (k-1,1)
    and its slots 3, 5, 7 touch (k-1,8). Gadget 0 is the edge (0,1)-(0,8);
    the final gadget is (n+1,1)-(n+1,2), hooked to (n,1).

    Raises:
        ParamOutOfRange: If n < 1
    """
    if n < 1:
        raise ParamOutOfRange(f"need n >= 1, got {n}")
    order = ms_var_order(n)
    index = {label: i for i, label in enumerate(order)}

    def pos(k: int, i: int) -> int:
        return index[VarLabel(k, str(i))]

    builder = InstanceBuilder(
        len(order), dict(enumerate(order)), {"generator": "ms-scopes", "n": n}
    )
    for k in range(n, 0, -1):
        for i in range(1, 8):
            builder.add([pos(k, i), pos(k, i + 1)], 1)
        for i in (2, 4, 6):
            builder.add([pos(k, i), pos(k - 1, 1)], 1)
        for i in (3, 5, 7):
            builder.add([pos(k, i), pos(k - 1, 8)], 1)
    builder.add([pos(0, 1), pos(0, 8)], 1)
    builder.add([pos(n + 1, 1), pos(n + 1, 2)], 1)
    builder.add([pos(n + 1, 1), pos(n, 1)], 1)
    return builder.build()
