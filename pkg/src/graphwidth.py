"""
Graph width - path decompositions, clique minors and exact pathwidth

Vertices are named "<k>.<slot>" (see VcspInstance.vertex_name). Decompositions
are checked against hyperedges directly; minors and exact pathwidth work on
the primal graph.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import InterfaceMismatch, InvalidInstance, TooLarge, UnknownVertex
from .vcsp import VcspInstance, primal_graph

logger = logging.getLogger(__name__)

MAX_EXACT_VERTICES = 22


@dataclass(frozen=True)
class Hypergraph:
    """Named vertices and hyperedges; edges may be unknown for figure-only data"""

    vertices: FrozenSet[str]
    edges: Tuple[FrozenSet[str], ...] = ()
    edges_available: bool = True

    @classmethod
    def from_instance(cls, instance: VcspInstance) -> "Hypergraph":
        names = [instance.vertex_name(v) for v in range(instance.num_vars)]
        edges = {frozenset(names[v] for v in c.scope) for c in instance.constraints}
        return cls(frozenset(names), tuple(sorted(edges, key=sorted)))

    @classmethod
    def vertices_only(cls, vertices: Iterable[str]) -> "Hypergraph":
        return cls(frozenset(vertices), (), edges_available=False)

    def induced(self, keep: Iterable[str]) -> "Hypergraph":
        """Sub-hypergraph on keep with the hyperedges lying inside it"""
        kept = frozenset(keep)
        missing = kept - self.vertices
        if missing:
            raise UnknownVertex(f"unknown vertices {sorted(missing)}")
        edges = tuple(e for e in self.edges if e <= kept)
        return Hypergraph(kept, edges, self.edges_available)

    def primal_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.vertices))
        for edge in self.edges:
            members = sorted(edge)
            for i, u in enumerate(members):
                for w in members[i + 1:]:
                    graph.add_edge(u, w)
        return graph


def named_primal_graph(instance: VcspInstance) -> nx.Graph:
    """Primal graph relabelled with vertex names"""
    graph = primal_graph(instance)
    return nx.relabel_nodes(graph, {v: data["name"] for v, data in graph.nodes(data=True)})


@dataclass(frozen=True)
class PathDecomposition:
    """Ordered bins; each bin keeps the order it was written in"""

    bins: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(tuple(b) for b in self.bins))

    @property
    def width(self) -> int:
        if not self.bins:
            return -1
        return max(len(set(b)) for b in self.bins) - 1

    @property
    def vertices(self) -> FrozenSet[str]:
        return frozenset(v for b in self.bins for v in b)

    @property
    def bin_sets(self) -> List[FrozenSet[str]]:
        return [frozenset(b) for b in self.bins]

    def without_bin(self, index: int) -> "PathDecomposition":
        return PathDecomposition(self.bins[:index] + self.bins[index + 1:])

    def to_dict(self) -> Dict[str, Any]:
        return {"bins": [list(b) for b in self.bins]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PathDecomposition":
        try:
            return cls(tuple(tuple(str(v) for v in b) for b in data["bins"]))
        except (KeyError, TypeError) as e:
            raise InvalidInstance(f"malformed decomposition document: {e}") from e


@dataclass(frozen=True)
class MinorCertificate:
    """Branch sets claimed to witness a K_target minor"""

    branch_sets: Tuple[Tuple[str, ...], ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "branch_sets", tuple(tuple(s) for s in self.branch_sets))

    @property
    def vertices(self) -> FrozenSet[str]:
        return frozenset(v for s in self.branch_sets for v in s)

    def to_dict(self) -> Dict[str, Any]:
        return {"branch_sets": [list(s) for s in self.branch_sets], "target": self.target}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MinorCertificate":
        try:
            sets = tuple(tuple(str(v) for v in s) for s in data["branch_sets"])
            return cls(sets, int(data["target"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInstance(f"malformed certificate document: {e}") from e


@dataclass
class DecompositionReport:
    valid: bool
    width: int
    violations: List[str] = field(default_factory=list)
    edges_checked: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "width": self.width,
            "edges_checked": self.edges_checked,
            "violations": list(self.violations),
        }


@dataclass
class MinorReport:
    valid: bool
    violations: List[str] = field(default_factory=list)
    edges_checked: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "edges_checked": self.edges_checked,
            "violations": list(self.violations),
        }


def _fmt(vertices: Iterable[str]) -> str:
    return "{" + ", ".join(sorted(vertices)) + "}"


def validate_decomposition(
    hypergraph: Hypergraph,
    pd: PathDecomposition,
    first_must_contain: Iterable[str] = (),
    last_must_contain: Iterable[str] = (),
) -> DecompositionReport:
    """
    Check a path decomposition against a hypergraph

    Args:
        hypergraph: Vertex universe and hyperedges
        pd: Candidate decomposition
        first_must_contain: Interface vertices required in the first bin
        last_must_contain: Interface vertices required in the last bin

    Returns:
        DecompositionReport with validity, width and itemized violations

    Raises:
        UnknownVertex: If pd or the interface sets name vertices outside the universe
    """
    first = frozenset(first_must_contain)
    last = frozenset(last_must_contain)
    unknown = (pd.vertices | first | last) - hypergraph.vertices
    if unknown:
        raise UnknownVertex(f"decomposition names unknown vertices {_fmt(unknown)}")

    bins = pd.bin_sets
    violations: List[str] = []
    for v in sorted(hypergraph.vertices):
        hits = [i for i, b in enumerate(bins) if v in b]
        if not hits:
            violations.append(f"vertex {v} is in no bin")
        elif hits[-1] - hits[0] + 1 != len(hits):
            violations.append(f"vertex {v} occupies non-contiguous bins {hits}")
    if hypergraph.edges_available:
        for edge in hypergraph.edges:
            if not any(edge <= b for b in bins):
                violations.append(f"hyperedge {_fmt(edge)} is in no bin")
    if first and (not bins or not first <= bins[0]):
        missing = first - (bins[0] if bins else frozenset())
        violations.append(f"first bin lacks {_fmt(missing)}")
    if last and (not bins or not last <= bins[-1]):
        missing = last - (bins[-1] if bins else frozenset())
        violations.append(f"last bin lacks {_fmt(missing)}")

    return DecompositionReport(
        valid=not violations,
        width=pd.width,
        violations=violations,
        edges_checked=hypergraph.edges_available,
    )


def validate_branch_sets(cert: MinorCertificate) -> List[str]:
    """Count, emptiness and disjointness checks that need no edges"""
    violations = []
    if len(cert.branch_sets) != cert.target:
        violations.append(
            f"{len(cert.branch_sets)} branch sets given for a K_{cert.target} claim"
        )
    seen: Dict[str, int] = {}
    for i, branch in enumerate(cert.branch_sets):
        if not branch:
            violations.append(f"branch set {i} is empty")
        for v in branch:
            if v in seen and seen[v] != i:
                violations.append(f"vertex {v} is in branch sets {seen[v]} and {i}")
            seen.setdefault(v, i)
    return violations


def validate_minor(graph: nx.Graph, cert: MinorCertificate) -> MinorReport:
    """
    Check that branch sets witness a K_t minor of graph

    Each set must induce a connected subgraph and every pair of sets must be
    joined by an edge.

    Raises:
        UnknownVertex: If a branch set names a vertex outside the graph
    """
    unknown = cert.vertices - set(graph.nodes)
    if unknown:
        raise UnknownVertex(f"certificate names unknown vertices {_fmt(unknown)}")

    violations = validate_branch_sets(cert)
    sets = [set(b) for b in cert.branch_sets]
    for i, branch in enumerate(sets):
        if branch and not nx.is_connected(graph.subgraph(branch)):
            violations.append(f"branch set {i} {_fmt(branch)} is not connected")
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not nx.node_boundary(graph, sets[i], sets[j]):
                violations.append(
                    f"branch sets {i} {_fmt(sets[i])} and {j} {_fmt(sets[j])} are not adjacent"
                )
    return MinorReport(valid=not violations, violations=violations)


def _separation_table(graph: nx.Graph):
    """
    Vertex separation DP over all vertex subsets

    best[S] is the least possible maximum boundary over orderings that place
    S first; the boundary of S counts members with a neighbor outside S.
    """
    nodes = sorted(graph.nodes, key=str)
    n = len(nodes)
    if n > MAX_EXACT_VERTICES:
        raise TooLarge(f"exact pathwidth is limited to {MAX_EXACT_VERTICES} vertices, got {n}")
    pos = {v: i for i, v in enumerate(nodes)}
    masks = [0] * n
    for u, w in graph.edges():
        if u != w:
            masks[pos[u]] |= 1 << pos[w]
            masks[pos[w]] |= 1 << pos[u]

    size = 1 << n
    subsets = np.arange(size, dtype=np.int64)
    boundary = np.zeros(size, dtype=np.int8)
    popcount = np.zeros(size, dtype=np.int8)
    for i in range(n):
        member = ((subsets >> i) & 1).astype(bool)
        popcount += member
        open_ = (subsets & masks[i]) != masks[i]
        boundary += member & open_

    best = np.full(size, n, dtype=np.int8)
    best[0] = 0
    order = np.argsort(popcount, kind="stable")
    counts = np.bincount(popcount, minlength=n + 1)
    start = int(counts[0])
    for layer in range(1, n + 1):
        idx = order[start:start + int(counts[layer])]
        start += int(counts[layer])
        cand = np.full(len(idx), n, dtype=np.int8)
        for i in range(n):
            has = ((idx >> i) & 1).astype(bool)
            if has.any():
                cand[has] = np.minimum(cand[has], best[idx[has] ^ (1 << i)])
        best[idx] = np.maximum(boundary[idx], cand)
    logger.debug("vertex separation table over %d vertices (%d subsets)", n, size)
    return nodes, masks, best


def exact_pathwidth(graph: nx.Graph) -> int:
    """
    Exact pathwidth via the vertex separation number

    Raises:
        TooLarge: If the graph has more than 22 vertices
    """
    nodes, _, best = _separation_table(graph)
    return int(best[(1 << len(nodes)) - 1])


def pathwidth_layout(graph: nx.Graph) -> Tuple[List[Any], PathDecomposition]:
    """
    Optimal vertex order and the path decomposition it induces

    Bin t holds vertex t of the order plus the already placed vertices that
    still have a neighbor further on.
    """
    nodes, masks, best = _separation_table(graph)
    n = len(nodes)
    remaining = (1 << n) - 1
    reverse: List[int] = []
    while remaining:
        for i in range(n):
            bit = 1 << i
            if remaining & bit and best[remaining ^ bit] <= best[remaining]:
                reverse.append(i)
                remaining ^= bit
                break
    order = list(reversed(reverse))

    bins = []
    placed = 0
    for i in order:
        frontier = [j for j in order if placed >> j & 1 and masks[j] & ~placed]
        bins.append(tuple(str(nodes[j]) for j in frontier + [i]))
        placed |= 1 << i
    return [nodes[i] for i in order], PathDecomposition(tuple(bins))


@dataclass(frozen=True)
class ChainPiece:
    """One gadget's decomposition plus the interface vertices at its two ends"""

    decomposition: PathDecomposition
    entry: FrozenSet[str] = frozenset()
    exit: FrozenSet[str] = frozenset()


def compose_chain_decomposition(
    pieces: Sequence[ChainPiece], edges: Iterable[FrozenSet[str]] = ()
) -> PathDecomposition:
    """
    Concatenate per-gadget decompositions into one chain decomposition

    Vertices shared by consecutive pieces must sit in the last bin of the
    first and the first bin of the second. Hyperedges crossing from one piece
    to the next must lie inside exit(i) | entry(i+1); a junction bin holding
    that union is placed between the two pieces.

    Args:
        pieces: Pieces in chain order
        edges: Hyperedges of the whole chain (internal ones are ignored)

    Returns:
        The composed PathDecomposition

    Raises:
        InterfaceMismatch: If a shared vertex or a crossing edge cannot be placed
        UnknownVertex: If an edge names a vertex in no piece
    """
    if not pieces:
        raise InterfaceMismatch("no pieces to compose")
    owners: Dict[str, List[int]] = {}
    for i, piece in enumerate(pieces):
        if not piece.decomposition.bins:
            raise InterfaceMismatch(f"piece {i} has no bins")
        for v in piece.decomposition.vertices:
            owners.setdefault(v, []).append(i)

    junctions = set()
    for edge in edges:
        unknown = [v for v in edge if v not in owners]
        if unknown:
            raise UnknownVertex(f"edge {_fmt(edge)} names vertices in no piece")
        if any(edge <= pieces[i].decomposition.vertices for i in owners[next(iter(edge))]):
            continue
        touched = sorted({i for v in edge for i in owners[v]})
        pairs = [i for i in touched[:-1] if i + 1 in touched]
        crossing = [
            i
            for i in pairs
            if edge <= pieces[i].exit | pieces[i + 1].entry
            | (pieces[i].decomposition.vertices & pieces[i + 1].decomposition.vertices)
        ]
        if not crossing:
            raise InterfaceMismatch(
                f"edge {_fmt(edge)} does not lie in the interface of consecutive pieces"
            )
        junctions.add(crossing[0])

    bins: List[Tuple[str, ...]] = list(pieces[0].decomposition.bins)
    for i in range(1, len(pieces)):
        prev, cur = pieces[i - 1], pieces[i]
        prev_last = frozenset(prev.decomposition.bins[-1])
        cur_first = frozenset(cur.decomposition.bins[0])
        shared = prev.decomposition.vertices & cur.decomposition.vertices
        if not shared <= prev_last & cur_first:
            raise InterfaceMismatch(
                f"pieces {i - 1} and {i} share {_fmt(shared - (prev_last & cur_first))} "
                "outside their junction bins"
            )
        if i - 1 in junctions:
            if not prev.exit <= prev_last or not cur.entry <= cur_first:
                raise InterfaceMismatch(
                    f"interface sets of pieces {i - 1} and {i} are not in their end bins"
                )
            bins.append(tuple(sorted(prev.exit | cur.entry)))
        bins.extend(cur.decomposition.bins)
    composed = PathDecomposition(tuple(bins))
    logger.debug(
        "composed %d pieces into %d bins, width %d",
        len(pieces),
        len(bins),
        composed.width,
    )
    return composed


def primal_dot(instance: VcspInstance) -> str:
    """DOT text of the named primal graph with unary and binary weights as labels"""
    graph = named_primal_graph(instance)
    for c in instance.constraints:
        if c.arity == 1:
            name = instance.vertex_name(c.scope[0])
            graph.nodes[name]["label"] = f'"{name} ({c.weight})"'
    for u, w, data in graph.edges(data=True):
        if "weight" in data:
            data["label"] = str(data["weight"])
    for _, data in graph.nodes(data=True):
        data.pop("name", None)
    return nx.nx_pydot.to_pydot(graph).to_string()
