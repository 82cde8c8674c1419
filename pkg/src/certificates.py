"""
Certificates - bundled path decompositions and clique-minor witnesses

Each certificate is stored with the structure it is checked against, so the
verify command can run any of them by name. Printed data that does not check
out is kept next to its corrected form under a "-printed" name.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Union

from .constructions import MAX_N, CdParams, build_cd_chain, build_cd_gadget, build_ms_scopes
from .errors import ParamOutOfRange, UnknownVertex
from .graphwidth import (
    ChainPiece,
    DecompositionReport,
    Hypergraph,
    MinorCertificate,
    MinorReport,
    PathDecomposition,
    compose_chain_decomposition,
    validate_branch_sets,
    validate_decomposition,
    validate_minor,
)

logger = logging.getLogger(__name__)

# Width-3 bins of a controlled doubling gadget, slots only
CD_PATH_SLOTS = (
    ("1", "B", "2", "4"),
    ("B", "2", "4", "A"),
    ("2", "4", "A", "3"),
    ("4", "A", "3", "5"),
    ("A", "3", "5", "6"),
)
CD_K4_SLOTS = (("1",), ("A", "2", "3"), ("B",), ("4", "5", "6"))

# MT vertex names as drawn; the figure carries the edges, so only names ship
MT_PATH = (
    ("C0", "C1", "C2", "C3", "C4", "D0"),
    ("C3", "C4", "C5", "C6", "D0", "F10"),
    ("A6", "B6", "C6", "C10", "D0", "F10"),
    ("C6", "C7", "C8", "C9", "C10", "F10"),
    ("C6", "C8", "C10", "E14", "F10", "G12"),
    ("C10", "E14", "F10", "G10", "G11", "G12"),
    ("C10", "E14", "F10", "G10", "G11", "G12"),
    ("C10", "D10", "E10", "E14", "F10", "G12"),
    ("C10", "E14", "F12", "F13", "F14", "G12"),
    ("C10", "C12", "D12", "D13", "F12"),
    ("A12", "B12", "C12", "C13", "D13"),
)
MT_K5 = (
    ("C0", "D0", "C1", "C2", "C3", "C4", "C5", "C6", "B6", "A6"),
    ("C10", "C9", "D10", "E10"),
    ("F10", "G10", "G11"),
    ("C7", "C8", "E14", "D13", "C13"),
    ("G12", "F12", "F13", "F14", "D12", "C12", "B12", "A12"),
)

# Short names accepted by the verify command
CERTIFICATE_ALIASES: Dict[str, str] = {
    "prop1": "mt-path",
    "prop1-k5": "mt-k5",
    "prop2": "ms-path",
    "prop2-k5": "ms-k5",
    "prop3": "cd-path",
    "prop3-k4": "cd-k4",
}


def canonical_certificate_name(name: str) -> str:
    """Map a short certificate name to its bundled name"""
    return CERTIFICATE_ALIASES.get(name, name)


@dataclass(frozen=True)
class Certificate:
    """A named decomposition or minor claim plus the structure it is about"""

    name: str
    description: str
    hypergraph: Hypergraph
    decomposition: Optional[PathDecomposition] = None
    minor: Optional[MinorCertificate] = None
    first_must_contain: FrozenSet[str] = frozenset()
    last_must_contain: FrozenSet[str] = frozenset()
    expect_valid: bool = True

    @property
    def kind(self) -> str:
        return "decomposition" if self.decomposition is not None else "minor"


def _names(k: int, slots: Sequence[str]) -> tuple:
    return tuple(f"{k}.{slot}" for slot in slots)


def cd_path(k: int) -> PathDecomposition:
    return PathDecomposition(tuple(_names(k, b) for b in CD_PATH_SLOTS))


def cd_k4(k: int) -> MinorCertificate:
    return MinorCertificate(tuple(_names(k, s) for s in CD_K4_SLOTS), 4)


def ms_path(k: int, printed: bool = False) -> PathDecomposition:
    """
    Width-4 bins for MS gadget k and the two vertices it shares with gadget k-1

    The printed fourth bin repeats (k,4) where (k,7) is needed.
    """
    p1, p8 = f"{k - 1}.1", f"{k - 1}.8"
    g = {i: f"{k}.{i}" for i in range(1, 9)}
    fourth = g[4] if printed else g[7]
    return PathDecomposition(
        (
            (p1, p8, g[6], g[4], g[5]),
            (p1, p8, g[6], g[4], g[3]),
            (p1, p8, g[6], g[7], g[3]),
            (p1, g[2], fourth, g[3]),
            (g[1], g[8], g[2], g[7]),
        )
    )


def ms_k5(k: int, printed: bool = False) -> MinorCertificate:
    """
    K5 branch sets around MS gadget k

    Inside one gadget {k.1, k.2, k.3} and {k.6, k.7, k.8} share no edge; the
    corrected sets reach into gadget k+1 through (k+1,2) and (k+1,3). The
    singletons (k-1,1) and (k-1,8) are adjacent only for k = 1.
    """
    low = [f"{k}.1", f"{k}.2", f"{k}.3"]
    high = [f"{k}.6", f"{k}.7", f"{k}.8"]
    if not printed:
        low.append(f"{k + 1}.2")
        high.append(f"{k + 1}.3")
    sets = ((f"{k - 1}.1",), (f"{k - 1}.8",), tuple(low), (f"{k}.4", f"{k}.5"), tuple(high))
    return MinorCertificate(sets, 5)


def cd_chain_pieces(m: int, n: Optional[int] = None) -> List[ChainPiece]:
    """
    Per-gadget decompositions of a chain in bit order, gadget m first

    Entry is the side facing gadget k+1, exit the side facing gadget k-1.
    """
    n = m if n is None else n
    CdParams(n=n, m=m)
    return [
        ChainPiece(
            cd_path(k),
            entry=frozenset(_names(k, ("1", "B"))),
            exit=frozenset(_names(k, ("6", "A"))),
        )
        for k in range(m, 0, -1)
    ]


def cd_chain_decomposition(m: int, n: Optional[int] = None) -> PathDecomposition:
    """Composed width-3 decomposition of a whole controlled doubling chain"""
    n = m if n is None else n
    chain = Hypergraph.from_instance(build_cd_chain(CdParams(n=n, m=m)))
    return compose_chain_decomposition(cd_chain_pieces(m, n), chain.edges)


def bundled_certificates(k: int = 1) -> Dict[str, Certificate]:
    """
    Every bundled certificate, instantiated around gadget k

    Args:
        k: Gadget index the certificates are written for

    Returns:
        Certificates keyed by name

    Raises:
        ParamOutOfRange: If k is outside 1..47
    """
    if not 1 <= k < MAX_N:
        raise ParamOutOfRange(f"certificate gadget index must be in 1..{MAX_N - 1}, got {k}")

    cd = Hypergraph.from_instance(build_cd_gadget(k, k))
    ms = Hypergraph.from_instance(build_ms_scopes(k + 1))
    ms_local = ms.induced(
        [f"{k}.{i}" for i in range(1, 9)] + [f"{k - 1}.1", f"{k - 1}.8"]
    )
    mt = Hypergraph.vertices_only(
        [v for b in MT_PATH for v in b] + [v for s in MT_K5 for v in s]
    )
    cd_first = frozenset(_names(k, ("1", "B")))
    cd_last = frozenset(_names(k, ("6", "A")))
    ms_first = frozenset({f"{k - 1}.1", f"{k - 1}.8"})
    ms_last = frozenset({f"{k}.1", f"{k}.8"})

    certs = [
        Certificate(
            "cd-path", "width-3 decomposition of a controlled doubling gadget", cd,
            decomposition=cd_path(k), first_must_contain=cd_first, last_must_contain=cd_last,
        ),
        Certificate("cd-k4", "K4 minor of a controlled doubling gadget", cd, minor=cd_k4(k)),
        Certificate(
            "ms-path", "width-4 decomposition of an MS gadget", ms_local,
            decomposition=ms_path(k), first_must_contain=ms_first, last_must_contain=ms_last,
        ),
        Certificate(
            "ms-path-printed", "MS decomposition as printed", ms_local,
            decomposition=ms_path(k, printed=True),
            first_must_contain=ms_first, last_must_contain=ms_last, expect_valid=False,
        ),
        Certificate(
            "ms-k5", "K5 minor across MS gadgets k and k+1", ms,
            minor=ms_k5(k), expect_valid=k == 1,
        ),
        Certificate(
            "ms-k5-printed", "MS K5 branch sets as printed", ms,
            minor=ms_k5(k, printed=True), expect_valid=False,
        ),
        Certificate("mt-path", "width-5 decomposition of the MT gadget", mt,
                    decomposition=PathDecomposition(MT_PATH)),
        Certificate(
            "mt-k5", "K5 minor of the MT gadget", mt, minor=MinorCertificate(MT_K5, 5)
        ),
    ]
    return {cert.name: cert for cert in certs}


def check_certificate(cert: Certificate) -> Union[DecompositionReport, MinorReport]:
    """
    Validate a bundled certificate against its own structure

    Minor certificates without edges only get the count and disjointness checks.
    """
    if cert.decomposition is not None:
        report = validate_decomposition(
            cert.hypergraph,
            cert.decomposition,
            cert.first_must_contain,
            cert.last_must_contain,
        )
    elif cert.hypergraph.edges_available:
        report = validate_minor(cert.hypergraph.primal_graph(), cert.minor)
    else:
        unknown = cert.minor.vertices - cert.hypergraph.vertices
        if unknown:
            raise UnknownVertex(f"certificate names unknown vertices {sorted(unknown)}")
        violations = validate_branch_sets(cert.minor)
        report = MinorReport(valid=not violations, violations=violations, edges_checked=False)
    logger.debug("certificate %s: valid=%s", cert.name, report.valid)
    return report
