"""`oracle`: exhaustive maximum openness of a class on a small point file."""
import argparse
import inspect
import logging
import math

from opsg.commands.common import add_input, add_output, check_index, format_angle, load_points
from opsg.core.config import settings
from opsg.core.exceptions import DegenerateInput
from opsg.core.generators import FAMILIES
from opsg.core.oracle import max_openness_paths, max_openness_trees, max_openness_triangulations, sweep_path_conjecture
from opsg.entities.schemas import GraphClass, OracleResult, PointSet
from opsg.libs.io import format_graph, write_graph
from opsg.libs.svg import write_svg

logger = logging.getLogger(__name__)

ORACLE_CLASSES = [GraphClass.SPANNING_PATH.value, GraphClass.SPANNING_TREE.value, GraphClass.TRIANGULATION.value]
# families that take a seed and nothing but the size
SWEEP_FAMILIES = sorted(
    name for name, family in FAMILIES.items() if set(inspect.signature(family).parameters) == {"n", "seed"}
)


def _search(args: argparse.Namespace, s: PointSet) -> OracleResult:
    match args.graph_class:
        case GraphClass.SPANNING_PATH.value:
            endpoint = None if args.endpoint is None else check_index(s, args.endpoint, "endpoint")
            edge = None
            if args.edge is not None:
                edge = (check_index(s, args.edge[0], "edge endpoint"), check_index(s, args.edge[1], "edge endpoint"))
            return max_openness_paths(s, endpoint_constraint=endpoint, edge_constraint=edge, max_n=args.max_n)
        case GraphClass.SPANNING_TREE.value:
            return max_openness_trees(s, max_degree=args.max_degree, max_n=args.max_n)
        case _:
            return max_openness_triangulations(s, max_n=args.max_n)


def _sweep(args: argparse.Namespace) -> OracleResult:
    """Worst best-path openness over `--count` seeded members of a family."""
    if args.count < 1:
        raise DegenerateInput(f"--count must be positive, got {args.count}")
    family = FAMILIES[args.sweep]
    base = settings.seed() if args.seed is None else args.seed
    sets = [family(n=args.size, seed=base + k) for k in range(args.count)]
    result = sweep_path_conjecture(sets, max_n=args.max_n)
    logger.info(f"Swept {args.count} {args.sweep} sets of {args.size} points from seed {base}")
    return result


def run_oracle(args: argparse.Namespace) -> int:
    if args.sweep is not None:
        result = _sweep(args)
        n = args.size
    elif args.points is None:
        raise DegenerateInput("oracle needs a point file unless --sweep is given")
    else:
        s = load_points(args)
        result = _search(args, s)
        n = s.n

    if result.witness is not None:
        if args.out is not None:
            write_graph(result.witness, args.out)
        if args.svg is not None:
            write_svg(result.witness, args.svg, annotate=args.annotate)

    if args.json:
        print(result.model_dump_json())
        return 0
    if result.witness is None:
        print(f"# no {result.graph_class.value} on {n} points")
        return 0
    if args.out is None:
        print(format_graph(result.witness), end="")
    print(f"# max openness {format_angle(result.max_openness)} over {result.count_enumerated} graphs")
    if args.sweep is not None:
        verdict = "below" if result.max_openness < 3 * math.pi / 2 - settings.EPS else "at least"
        print(f"# worst of {args.count} {args.sweep} sets is {verdict} 3pi/2")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "oracle",
        help="Exhaustive maximum openness on a small set",
        description="Enumerate every plane graph of the class and print the most open one.",
    )
    add_input(parser, required=False)
    parser.add_argument("--class", dest="graph_class", choices=ORACLE_CLASSES, default="path")
    parser.add_argument("--max-n", type=int, help="Refuse sets larger than this (never above the configured cap)")
    parser.add_argument("--max-degree", type=int, help="Degree bound for trees")
    parser.add_argument("--endpoint", type=int, help="Paths must end at this point")
    parser.add_argument("--edge", type=int, nargs=2, metavar=("I", "J"), help="Paths must use this edge")

    sweep = parser.add_argument_group("sweep", "Search paths on generated sets instead of a point file")
    sweep.add_argument(
        "--sweep",
        choices=SWEEP_FAMILIES,
        metavar="FAMILY",
        help=f"Report the set whose best spanning path is least open ({', '.join(SWEEP_FAMILIES)})",
    )
    sweep.add_argument("--size", type=int, default=7, help="Points per generated set")
    sweep.add_argument("--count", type=int, default=20, help="Number of generated sets")
    sweep.add_argument("--seed", type=int, help="First seed (default: OPSG_SEED or the configured seed)")
    add_output(parser)
    parser.set_defaults(handler=run_oracle)
