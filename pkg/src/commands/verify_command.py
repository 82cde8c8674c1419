"""
Verify command - Oracles and width checks with a pass/fail exit status
"""

import argparse
from typing import Any, Dict, Optional, Tuple

from rich.table import Table

from .. import ui
from ..certificates import (
    bundled_certificates,
    canonical_certificate_name,
    cd_chain_decomposition,
    check_certificate,
)
from ..config import RunConfig
from ..constructions import BridgeConvention, CdParams, build_cd_chain
from ..errors import InvalidParams, TooLarge
from ..graphwidth import (
    Hypergraph,
    MinorCertificate,
    PathDecomposition,
    named_primal_graph,
    pathwidth_layout,
    validate_decomposition,
    validate_minor,
)
from ..oracle import enumerate_peaks, explore_ascent_graph, verify_peak_table
from ..search import (
    PivotRule,
    default_step_budget,
    gadget_slots,
    gadget_walk,
    resolve_start,
    run_ascent,
)
from ..utils import read_json, write_json, write_text
from ..vcsp import VcspInstance
from .base import Command, add_generator_arguments, chain_params, load_instance

TARGETS = ("peaks", "explore", "decomposition", "minor", "pathwidth", "delta-table")

# Decomposition of a whole chain, composed from per-gadget pieces
CHAIN_CERTIFICATE = "cd-chain-path"

Outcome = Tuple[Dict[str, Any], bool, Optional[Table]]


def _default_start(instance: VcspInstance) -> str:
    return "designated" if CdParams.from_meta(instance.meta) else "zeros"


class VerifyCommand(Command):
    """Dispatch to the oracle and graph-width checks"""

    def __init__(self):
        super().__init__(
            name="verify",
            description="Check peaks, ascent graphs, decompositions, minors and pathwidth",
            usage="ascentlab verify {" + "|".join(TARGETS) + "} [flags]",
        )

    def configure_parser(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("target", choices=TARGETS, help="What to verify")
        parser.add_argument("--instance", help="Instance JSON file")
        add_generator_arguments(parser)
        parser.add_argument("--k", type=int, help="Gadget index")
        parser.add_argument("--cert", help="Bundled certificate name")
        parser.add_argument("--cert-file", help="Decomposition or minor certificate JSON file")
        parser.add_argument("--start", help="designated, zeros or a bit string")
        parser.add_argument("--node-limit", type=int, help="Exploration node budget")
        parser.add_argument("--workers", type=int, help="Processes for peak enumeration")
        parser.add_argument("--expect-steps", type=int, help="Expected unique path length")
        parser.add_argument(
            "-o", "--output", default="-", help="Output path (default: stdout)"
        )
        parser.add_argument("--format", choices=["json", "text-table"], default="json")

    def execute(self, config: RunConfig) -> int:
        handlers = {
            "peaks": self._peaks,
            "explore": self._explore,
            "decomposition": lambda c: self._certificate(c, "decomposition"),
            "minor": lambda c: self._certificate(c, "minor"),
            "pathwidth": self._pathwidth,
            "delta-table": self._delta_table,
        }
        target = config.get("target")
        if target not in handlers:
            raise InvalidParams(f"unknown verify target '{target}'")
        data, ok, table = handlers[target](config)
        data = {"target": target, "ok": ok, **data}
        if config.format == "text-table" and table is not None:
            write_text(ui.render_text(table), config.output)
        else:
            write_json(data, config.output)
        if ok:
            ui.show_success(f"verify {target}: passed")
        else:
            ui.show_warning(f"verify {target}: failed")
        return 0 if ok else 1

    def _peaks(self, config: RunConfig) -> Outcome:
        k = config.get("k")
        if k is not None and not config.get("instance") and config.get("m") is None:
            report = verify_peak_table(
                config.get("n", k), k, BridgeConvention(config.get("convention"))
            )
            ui.show_peak_table(report)
            return report.to_dict(), report.all_match, ui.peak_table(report)

        instance = load_instance(config)
        peaks = enumerate_peaks(
            instance, workers=config.get("workers"), limit=config.get("exhaustive_limit")
        )
        ui.show_peaks(peaks)
        data = {
            "num_vars": instance.num_vars,
            "count": len(peaks),
            "peaks": [str(p) for p in peaks],
        }
        return data, True, None

    def _explore(self, config: RunConfig) -> Outcome:
        instance = load_instance(config)
        start = resolve_start(instance, config.get("start", _default_start(instance)))
        report = explore_ascent_graph(instance, start, config.get("node_limit"))
        ui.show_explore_report(report)
        ok = report.unique_maximal_path
        expected = config.get("expect_steps")
        if expected is not None:
            ok = ok and report.path_length == expected
        return report.to_dict(), ok, None

    def _certificate(self, config: RunConfig, kind: str) -> Outcome:
        name, path = config.get("cert"), config.get("cert_file")
        if name == CHAIN_CERTIFICATE and kind == "decomposition":
            params = chain_params(config)
            chain = Hypergraph.from_instance(build_cd_chain(params))
            pd = cd_chain_decomposition(params.m, params.n)
            report = validate_decomposition(chain, pd)
            data = {"certificate": name, "bins": len(pd.bins), **report.to_dict()}
        elif name:
            certs = bundled_certificates(config.get("k", 1))
            name = canonical_certificate_name(name)
            if name not in certs or certs[name].kind != kind:
                names = [n for n, c in certs.items() if c.kind == kind]
                if kind == "decomposition":
                    names.append(CHAIN_CERTIFICATE)
                raise InvalidParams(
                    f"no {kind} certificate '{name}' (choose from {', '.join(names)})"
                )
            cert = certs[name]
            report = check_certificate(cert)
            data = {
                "certificate": name,
                "description": cert.description,
                "expect_valid": cert.expect_valid,
                **report.to_dict(),
            }
        elif path:
            instance = load_instance(config)
            document = read_json(path)
            if kind == "decomposition":
                report = validate_decomposition(
                    Hypergraph.from_instance(instance), PathDecomposition.from_dict(document)
                )
            else:
                report = validate_minor(
                    named_primal_graph(instance), MinorCertificate.from_dict(document)
                )
            data = {"certificate": str(path), **report.to_dict()}
        else:
            raise InvalidParams("give --cert NAME or --cert-file FILE")
        ui.show_width_report(data["certificate"], data)
        return data, report.valid, None

    def _pathwidth(self, config: RunConfig) -> Outcome:
        name = config.get("cert")
        if name:
            name = canonical_certificate_name(name)
            certs = bundled_certificates(config.get("k", 1))
            if name not in certs:
                raise InvalidParams(f"no certificate '{name}'")
            hypergraph = certs[name].hypergraph
            if not hypergraph.edges_available:
                raise InvalidParams(f"certificate '{name}' has no edge set")
        else:
            hypergraph = Hypergraph.from_instance(load_instance(config))
        graph = hypergraph.primal_graph()
        limit = config.get("pathwidth_limit")
        if graph.number_of_nodes() > limit:
            raise TooLarge(f"graph has {graph.number_of_nodes()} vertices, limit is {limit}")
        order, pd = pathwidth_layout(graph)
        data = {
            "vertices": graph.number_of_nodes(),
            "pathwidth": max(pd.width, 0),
            "order": [str(v) for v in order],
            **pd.to_dict(),
        }
        ui.show_width_report("Exact pathwidth", {"valid": True, **data})
        return data, True, None

    def _delta_table(self, config: RunConfig) -> Outcome:
        instance = load_instance(config)
        k = config.get("k", 1)
        slots = [slot for slot, _ in gadget_slots(instance, k)]
        start = resolve_start(instance, config.get("start", _default_start(instance)))
        budget = default_step_budget(instance, config.get("default_step_budget"))
        trace = run_ascent(instance, start, PivotRule(), config.get("max_steps", budget))
        rows = gadget_walk(instance, trace, k)
        ui.show_delta_walk(rows, slots)
        data = {
            "k": k,
            "slots": slots,
            "steps": trace.length,
            "rows": [row._asdict() for row in rows],
        }
        return data, True, ui.delta_walk_table(rows, slots)
