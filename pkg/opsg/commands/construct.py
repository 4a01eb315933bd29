"""Construction subcommands: read a point file, build an open graph, emit it."""
import argparse
import logging
from typing import Callable

from opsg.commands.common import add_input, add_output, check_index, emit_graph, graph_report, load_points
from opsg.constructions.bounded_tree import open_tree_deg3, open_tree_deg4
from opsg.constructions.convex_path import best_zigzag, open_convex_path, path_from_endpoint
from opsg.constructions.general_path import open_path, path_from_hull_vertex, path_through_edge
from opsg.constructions.matching import open_perfect_matching
from opsg.constructions.spanning_tree import open_spanning_tree
from opsg.constructions.triangulation import open_triangulation
from opsg.entities.schemas import ConstructionTrace, PlaneGraph, PointSet

logger = logging.getLogger(__name__)

Built = tuple[PlaneGraph, ConstructionTrace]
Builder = Callable[[argparse.Namespace, PointSet], Built]


# ---------------------------------------------------------
# Builders
# ---------------------------------------------------------
def _convex_from(args: argparse.Namespace, s: PointSet) -> Built:
    return path_from_endpoint(s, check_index(s, args.i))


def _path_from(args: argparse.Namespace, s: PointSet) -> Built:
    return path_from_hull_vertex(s, check_index(s, args.i))


def _path_edge(args: argparse.Namespace, s: PointSet) -> Built:
    return path_through_edge(s, check_index(s, args.i), check_index(s, args.j))


# name -> (help, builder, positional index arguments)
CONSTRUCTIONS: dict[str, tuple[str, Builder, tuple[str, ...]]] = {
    "triangulate": ("2pi/3-open triangulation", lambda a, s: open_triangulation(s), ()),
    "tree": ("5pi/3-open plane spanning tree", lambda a, s: open_spanning_tree(s), ()),
    "tree3": ("3pi/2-open spanning tree of degree at most 3", lambda a, s: open_tree_deg3(s), ()),
    "tree4": ("3pi/2-open spanning tree of degree at most 4", lambda a, s: open_tree_deg4(s), ()),
    "zigzag": ("3pi/2-open zigzag path of a convex set", lambda a, s: best_zigzag(s), ()),
    "path-convex": ("3pi/2-open spanning path of a convex set", lambda a, s: open_convex_path(s), ()),
    "path-convex-from": ("3pi/2-open convex path starting at point i", _convex_from, ("i",)),
    "path": ("5pi/4-open spanning path", lambda a, s: open_path(s), ()),
    "path-from": ("5pi/4-open path starting at hull vertex i", _path_from, ("i",)),
    "path-edge": ("5pi/4-open path using hull edge (i, j)", _path_edge, ("i", "j")),
    "matching": ("plane perfect matching", lambda a, s: open_perfect_matching(s), ()),
}


def run_construction(args: argparse.Namespace) -> int:
    s = load_points(args)
    _, builder, _ = CONSTRUCTIONS[args.command]
    logger.info(f"Running {args.command} on {s.n} points")
    g, trace = builder(args, s)
    emit_graph(args, graph_report(args.command, g, trace if args.json else None), g)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    for name, (help_text, _, positionals) in CONSTRUCTIONS.items():
        parser = subparsers.add_parser(name, help=help_text, description=help_text)
        add_input(parser)
        for arg in positionals:
            parser.add_argument(arg, type=int, help="Point index")
        add_output(parser)
        parser.set_defaults(handler=run_construction)
