"""Arguments and output shared by every subcommand."""
import argparse
import logging
import math
import sys
from pathlib import Path

from opsg.core.exceptions import DegenerateInput
from opsg.core.graph import classify, is_perfect_matching, openness, pointed_vertices
from opsg.entities.schemas import ConstructionTrace, GraphClass, GraphReport, MaxDegree, PlaneGraph, PointSet
from opsg.libs.io import format_graph, read_points, write_graph
from opsg.libs.svg import write_svg

logger = logging.getLogger(__name__)


def format_angle(a: float) -> str:
    """Radians with 12 decimals and the multiple of pi, e.g. `4.712388980385 (1.5pi)`."""
    return f"{a:.12f} ({a / math.pi:.6g}pi)"


def add_input(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "points", type=Path, nargs=None if required else "?", help="Point file, one 'x y' line per point"
    )
    parser.add_argument("--trusted", action="store_true", help="Skip the general-position check")


def add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, help="Write the graph file here instead of stdout")
    parser.add_argument("--svg", type=Path, help="Also write an SVG figure")
    parser.add_argument("--annotate", action="store_true", help="Shade the widest angle at every vertex")
    parser.add_argument("--json", action="store_true", help="Print a JSON report instead of text")


def load_points(args: argparse.Namespace) -> PointSet:
    return read_points(args.points, trusted=args.trusted)


def check_index(s: PointSet, i: int, what: str = "index") -> int:
    if not 0 <= i < s.n:
        raise DegenerateInput(f"{what} {i} out of range for n={s.n}")
    return i


def class_names(g: PlaneGraph) -> list[str]:
    names: list[str] = []
    for tag in classify(g):
        match tag:
            case GraphClass():
                names.append(tag.value)
            case MaxDegree(k=k):
                names.append(f"deg<={k}")
    if is_perfect_matching(g):
        names.append(GraphClass.PERFECT_MATCHING.value)
    return sorted(names)


def graph_report(command: str, g: PlaneGraph, trace: ConstructionTrace | None = None) -> GraphReport:
    return GraphReport(
        command=command,
        n=g.n,
        m=len(g.edges),
        openness=openness(g).graph_openness,
        classes=class_names(g),
        edges=g.sorted_edges(),
        pointed=pointed_vertices(g),
        trace=trace,
    )


def emit_graph(args: argparse.Namespace, report: GraphReport, g: PlaneGraph) -> None:
    """Write the graph and figure, then print the report.

    Without --out the graph file goes to stdout followed by a `#` summary
    line, so stdout stays a readable graph file.
    """
    if args.out is not None:
        write_graph(g, args.out)
    if args.svg is not None:
        write_svg(g, args.svg, annotate=args.annotate)

    if args.json:
        print(report.model_dump_json())
        return
    if args.out is None:
        sys.stdout.write(format_graph(g))
    print(f"# {report.command}: n={report.n} m={report.m} openness {format_angle(report.openness)}")
    print(f"# classes: {' '.join(report.classes)}")
    print(f"# pointed: {len(report.pointed)} of {report.n}")
