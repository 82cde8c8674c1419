"""
UI and display utilities for ascentlab

Everything here writes to stderr so that stdout carries only the primary
output (JSON, JSONL, DOT or a text table).
"""

import io
from typing import Any, Iterable, List, Mapping, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .oracle import AscentGraphReport, PeakTableReport
from .search import AscentTrace, AuditVerdict, GadgetWalkRow
from .vcsp import Assignment, VcspInstance

# Professional color scheme
BRAND_COLOR = "#7C3AED"  # Purple
ACCENT_COLOR = "#10B981"  # Green
TEXT_PRIMARY = "#E5E7EB"  # Light gray
TEXT_SECONDARY = "#9CA3AF"  # Medium gray
SUCCESS_COLOR = "#10B981"  # Green
WARNING_COLOR = "#F59E0B"  # Amber


def _console() -> Console:
    return Console(stderr=True)


def _table(*columns: str) -> Table:
    table = Table(
        show_header=True,
        header_style=f"bold {BRAND_COLOR}",
        border_style=f"dim {TEXT_SECONDARY}",
        box=box.ROUNDED,
        padding=(0, 1),
    )
    for column in columns:
        table.add_column(column, style=f"{TEXT_PRIMARY}")
    return table


def _summary_panel(title: str, rows: Iterable[tuple]) -> Panel:
    grid = Table.grid(padding=(0, 2))
    grid.add_column(style=f"bold {TEXT_SECONDARY}", justify="right", width=20)
    grid.add_column(style=f"{TEXT_PRIMARY}")
    for label, value in rows:
        grid.add_row(label, value if isinstance(value, Text) else str(value))
    return Panel(
        grid,
        title=f"[bold {BRAND_COLOR}]{title}[/bold {BRAND_COLOR}]",
        border_style=f"dim {TEXT_SECONDARY}",
        padding=(1, 2),
    )


def _verdict(ok: bool, yes: str = "valid", no: str = "invalid") -> Text:
    return Text(f"✓ {yes}" if ok else f"✗ {no}", style=SUCCESS_COLOR if ok else "bold red")


def render_text(renderable: Any, width: int = 120) -> str:
    """Render a Rich object to plain text, for text-table output files"""
    buffer = io.StringIO()
    Console(file=buffer, width=width, color_system=None).print(renderable)
    return buffer.getvalue()


def show_error(error_msg: str):
    """Display error message"""
    console = _console()
    error_text = Text()
    error_text.append("  ✗ ", style="bold red")
    error_text.append("Error: ", style="bold red")
    error_text.append(error_msg, style=f"{TEXT_PRIMARY}")

    console.print()
    console.print(error_text)
    console.print()


def show_success(message: str):
    """Display a success message"""
    console = _console()
    console.print()

    success_text = Text()
    success_text.append("  ✅ ", style=f"bold {SUCCESS_COLOR}")
    success_text.append(message, style=f"{TEXT_PRIMARY}")

    console.print(success_text)
    console.print()


def show_warning(message: str):
    """Display a warning message"""
    console = _console()
    console.print()

    warning_text = Text()
    warning_text.append("  ⚠️  ", style=f"bold {WARNING_COLOR}")
    warning_text.append(message, style=f"{TEXT_PRIMARY}")

    console.print(warning_text)
    console.print()


def show_instance_summary(instance: VcspInstance, destination: str):
    """Display variable/constraint counts and the generator parameters"""
    arities = {}
    for c in instance.constraints:
        arities[c.arity] = arities.get(c.arity, 0) + 1
    rows = [
        ("Variables", instance.num_vars),
        ("Constraints", len(instance.constraints)),
        ("By arity", ", ".join(f"{a}: {n}" for a, n in sorted(arities.items()))),
    ]
    rows.extend((key, value) for key, value in instance.meta.items())
    rows.append(("Written to", destination))
    _console().print(_summary_panel("Instance", rows))


def trace_table(trace: AscentTrace, instance: Optional[VcspInstance] = None) -> Table:
    """One row per step: variable, label, delta, fitness, improving-move count"""
    table = _table("Step", "Var", "Label", "Delta", "Fitness", "Improving")
    for t, step in enumerate(trace.steps, start=1):
        label = instance.vertex_name(step.var) if instance is not None else ""
        table.add_row(
            str(t),
            str(step.var),
            label,
            f"+{step.delta}",
            str(step.fitness),
            str(step.improving_count),
        )
    return table


def show_ascent_summary(trace: AscentTrace, expected: Optional[int] = None):
    """Display step count, end assignment and audit verdict"""
    rows: List[tuple] = [
        ("Rule", trace.rule.kind.value),
        ("Steps", trace.length),
        ("Start", str(trace.start)),
        ("End", str(trace.end)),
        ("Fitness", f"{trace.start_fitness} → {trace.end_fitness}"),
    ]
    if trace.audited_unique is not AuditVerdict.NOT_AUDITED:
        unique = trace.audited_unique is AuditVerdict.YES
        verdict = _verdict(unique, "improving_count=1 at every step", "not unique")
        rows.append(("Unique", verdict))
        if trace.first_violation:
            state, count = trace.first_violation
            rows.append(("First violation", f"state {state}: {count} improving moves"))
    if expected is not None:
        matched = _verdict(expected == trace.length, str(expected), str(expected))
        rows.append(("Expected steps", matched))
    if trace.truncated:
        rows.append(("Truncated", Text("step budget reached", style=WARNING_COLOR)))
    _console().print(_summary_panel("Ascent", rows))


def show_peaks(peaks: List[Assignment]):
    console = _console()
    console.print()
    header = Text()
    header.append("  Local peaks", style=f"bold {BRAND_COLOR}")
    header.append(f"  ({len(peaks)})", style=f"dim {TEXT_SECONDARY}")
    console.print(header)
    for peak in peaks:
        console.print(Text(f"    {peak}", style=f"{TEXT_PRIMARY}"))
    console.print()


def show_explore_report(report: AscentGraphReport):
    rows = [
        ("Start", str(report.start)),
        ("Reachable", report.reachable_count),
        ("Max out-degree", report.max_out_degree),
        ("Unique path", _verdict(report.unique_maximal_path, "yes", "no")),
        ("Path length", report.path_length if report.path_length is not None else "-"),
        ("Longest ascent", report.longest_ascent),
        ("Shortest ascent", report.shortest_ascent),
        ("Peaks reached", ", ".join(str(p) for p in report.peaks_reached)),
    ]
    _console().print(_summary_panel("Ascent graph", rows))


def show_width_report(title: str, report: Mapping[str, Any]):
    """Display a decomposition or minor report with its violations"""
    rows: List[tuple] = [("Result", _verdict(bool(report.get("valid"))))]
    if "width" in report:
        rows.append(("Width", report["width"]))
    if "pathwidth" in report:
        rows.append(("Pathwidth", report["pathwidth"]))
    if not report.get("edges_checked", True):
        rows.append(("Edges", Text("unavailable, structure only", style=WARNING_COLOR)))
    for violation in report.get("violations", []):
        rows.append(("Violation", Text(violation, style="red")))
    _console().print(_summary_panel(title, rows))


def peak_table(report: PeakTableReport) -> Table:
    table = _table("P", "Q", "R", "Printed", "Found", "Disqualifying flip", "Match")
    for row in report.rows:
        flips = ", ".join(
            f"{bits}: {slot} +{delta}" for bits, (slot, delta) in row.disqualified.items()
        )
        table.add_row(
            str(row.P),
            str(row.Q),
            str(row.R),
            " ".join(row.printed),
            " ".join(row.found),
            flips,
            _verdict(row.matches, "yes", "no"),
        )
    return table


def show_peak_table(report: PeakTableReport):
    console = _console()
    console.print()
    header = Text()
    header.append(f"  Gadget {report.k} peaks, n={report.n}", style=f"bold {BRAND_COLOR}")
    header.append(
        f"  {report.convention.value}, {report.assumption}", style=f"dim {TEXT_SECONDARY}"
    )
    console.print(header)
    console.print(peak_table(report))
    console.print()


def delta_walk_table(rows: List[GadgetWalkRow], slots: List[str]) -> Table:
    table = _table("Step", "P", "Q", "Bits", *slots)
    for row in rows:
        cells = [
            Text(str(d), style=f"bold {SUCCESS_COLOR}") if d > 0 else Text(str(d))
            for d in row.deltas
        ]
        table.add_row(str(row.step), str(row.P), str(row.Q), row.bits, *cells)
    return table


def show_delta_walk(rows: List[GadgetWalkRow], slots: List[str]):
    console = _console()
    console.print()
    console.print(delta_walk_table(rows, slots))
    console.print()
