"""`gen`: write a member of a named point-set family."""
import argparse
import inspect
import logging
import sys
from pathlib import Path

from opsg.core.exceptions import BadShape
from opsg.core.generators import FAMILIES
from opsg.libs.io import format_points, write_points
from opsg.libs.svg import write_svg

logger = logging.getLogger(__name__)


def run_gen(args: argparse.Namespace) -> int:
    """Call the family generator with the parameters it accepts.

    Raises:
        BadShape: If the family needs --eps and none was given
    """
    family = FAMILIES[args.family]
    accepted = inspect.signature(family).parameters
    kwargs: dict[str, float | int | None] = {"n": args.n}
    if "eps" in accepted:
        if args.eps is None:
            raise BadShape(f"family {args.family} needs --eps")
        kwargs["eps"] = args.eps
    elif args.eps is not None:
        logger.warning(f"Family {args.family} ignores --eps")
    if "seed" in accepted:
        kwargs["seed"] = args.seed

    s = family(**kwargs)
    logger.info(f"Generated {args.family} with {s.n} points")
    if args.out is not None:
        write_points(s, args.out)
    else:
        sys.stdout.write(format_points(s))
    if args.svg is not None:
        write_svg(s, args.svg)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "gen",
        help="Generate a point-set family",
        description="Write a point file for a lower-bound family or a random set.",
    )
    parser.add_argument("family", choices=sorted(FAMILIES))
    parser.add_argument("n", type=int, help="Family size parameter")
    parser.add_argument("--eps", type=float, help="Perturbation for the lower-bound families")
    parser.add_argument("--seed", type=int, help="Random seed (default: OPSG_SEED or the configured seed)")
    parser.add_argument("--out", type=Path, help="Write the point file here instead of stdout")
    parser.add_argument("--svg", type=Path, help="Also write an SVG figure")
    parser.set_defaults(handler=run_gen)
