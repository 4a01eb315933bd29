"""Plane perfect matchings, 2*pi-open since every vertex has degree one."""
import logging

from opsg.core.exceptions import BadShape, ConstructionInvariantViolated
from opsg.core.graph import is_perfect_matching, is_plane
from opsg.entities.schemas import ConstructionTrace, PlaneGraph, PointSet

logger = logging.getLogger(__name__)


def open_perfect_matching(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """Pair consecutive points in lexicographic order.

    Consecutive pairs occupy vertical strips that overlap at most in a
    boundary line, which each segment meets only at an endpoint.

    Raises:
        BadShape: If n is odd
    """
    if s.n % 2:
        raise BadShape(f"perfect matching needs an even number of points, got {s.n}")
    trace = ConstructionTrace(construction="matching")
    order = sorted(range(s.n), key=lambda i: s[i].key())
    pairs = list(zip(order[::2], order[1::2]))
    trace.record("pairs", pairs=pairs)

    g = PlaneGraph(base=s, edges=frozenset(pairs))
    if not is_perfect_matching(g) or not is_plane(g):
        raise ConstructionInvariantViolated("lexicographic pairing is not a plane perfect matching")
    logger.info(f"Matched {s.n} points into {len(pairs)} pairs")
    return g, trace
