"""`verify`: check a graph file against a class and an openness bound."""
import argparse
import logging
from pathlib import Path

from opsg.commands.common import class_names, format_angle, graph_report
from opsg.core.config import settings
from opsg.core.exceptions import ValidationFailed
from opsg.core.graph import OPENNESS_BOUNDS, is_plane
from opsg.libs.io import read_graph

logger = logging.getLogger(__name__)

# --class value -> (graph class, implied degree bound)
REQUIRED: dict[str, tuple[str, int | None]] = {
    "triangulation": ("triangulation", None),
    "tree": ("tree", None),
    "tree3": ("tree", 3),
    "tree4": ("tree", 4),
    "path-convex": ("path", None),
    "path": ("path", None),
    "matching": ("matching", None),
}


def run_verify(args: argparse.Namespace) -> int:
    """Exit 0 iff the graph is plane, in the class and open enough.

    Raises:
        ValidationFailed: On the first failed check
    """
    g = read_graph(args.graph, trusted=args.trusted)
    report = graph_report("verify", g)

    if not is_plane(g):
        raise ValidationFailed(f"{args.graph}: graph is not plane")

    wanted, max_degree = REQUIRED.get(args.graph_class, (None, None))
    if args.max_degree is not None:
        max_degree = args.max_degree
    if wanted is not None and wanted not in report.classes:
        raise ValidationFailed(f"{args.graph}: not a {wanted} (classes: {', '.join(report.classes)})")
    if max_degree is not None and max(g.degrees()) > max_degree:
        raise ValidationFailed(f"{args.graph}: maximum degree {max(g.degrees())} exceeds {max_degree}")

    bound = args.min_openness
    if bound is None and args.graph_class is not None:
        bound = OPENNESS_BOUNDS[args.graph_class]
    if bound is not None and report.openness < bound - settings.EPS:
        raise ValidationFailed(
            f"{args.graph}: openness {format_angle(report.openness)} below {format_angle(bound)}"
        )

    logger.info(f"{args.graph} verified: {', '.join(class_names(g))}")
    if args.json:
        print(report.model_dump_json())
    else:
        print(f"ok openness {format_angle(report.openness)}")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "verify",
        help="Check a graph file",
        description="Exit 0 iff the graph is plane, belongs to --class and meets --min-openness.",
    )
    parser.add_argument("graph", type=Path, help="Graph file")
    parser.add_argument("--trusted", action="store_true", help="Skip the general-position check")
    parser.add_argument(
        "--class",
        dest="graph_class",
        choices=sorted(OPENNESS_BOUNDS),
        help="Required class; also sets the default --min-openness",
    )
    parser.add_argument(
        "--min-openness",
        type=float,
        help="Openness lower bound in radians; passes when openness >= bound - EPS (the configured angle tolerance)",
    )
    parser.add_argument("--max-degree", type=int, help="Maximum vertex degree")
    parser.add_argument("--json", action="store_true", help="Print a JSON report instead of text")
    parser.set_defaults(handler=run_verify)
