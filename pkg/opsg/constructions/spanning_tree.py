"""Spanning trees in which every vertex keeps an incident angle of at least 5*pi/3.

A backbone path of at most five vertices is chosen around the diameter
(a, b) and the extreme points c (above) and d (below). Every path vertex
owns a cone of at most pi/3 and each remaining point is attached to the
apex of a cone containing it.
"""
import itertools
import logging
import math
from typing import Iterator, NamedTuple, Sequence

from opsg.core.config import settings
from opsg.core.exceptions import ConstructionInvariantViolated, DegenerateInput
from opsg.core.geometry import (
    ccw_vector_angle,
    diameter,
    direction,
    edges_conflict,
    in_direction_cone,
    interior_angle,
    orientation,
    signed_area2,
    vector_angle,
)
from opsg.core.graph import classify, is_plane, openness
from opsg.entities.schemas import (
    AngleLabels,
    BackboneCase,
    BackboneLabel,
    Cone,
    ConstructionTrace,
    GraphClass,
    Orientation,
    PlaneGraph,
    PointSet,
)

logger = logging.getLogger(__name__)

SMALL = math.pi / 3
BOUND = 5 * math.pi / 3


def is_small(angle: float) -> bool:
    return angle <= SMALL + settings.EPS


class Frame(NamedTuple):
    """Diameter (a, b) with a on the left, extreme points c above and d below."""

    a: int
    b: int
    c: int | None
    d: int | None
    u: tuple[float, float]
    nrm: tuple[float, float]


# ---------------------------------------------------------
# Frame and angle labels
# ---------------------------------------------------------
def diameter_frame(s: PointSet) -> Frame:
    a, b = diameter(s)
    pa, pb = s[a], s[b]
    length = math.dist(pa.key(), pb.key())
    u = ((pb.x - pa.x) / length, (pb.y - pa.y) / length)
    nrm = (-u[1], u[0])

    def farthest(side: Orientation) -> int | None:
        pool = [i for i in range(s.n) if i not in (a, b) and orientation(pa, pb, s[i]) == side]
        if not pool:
            return None
        return max(pool, key=lambda i: (abs(signed_area2(pa, pb, s[i])), -s[i].x, -s[i].y, -i))

    return Frame(a, b, farthest(Orientation.COUNTERCLOCKWISE), farthest(Orientation.CLOCKWISE), u, nrm)


def angle_labels(s: PointSet, a: int, b: int, c: int | None, d: int | None) -> AngleLabels:
    """Angles of the frame (a, b, c, d); gamma and delta are split by segment cd."""
    p = s.points
    labels: dict[str, float | None] = {}
    if c is not None:
        labels.update(
            alpha1=interior_angle(p[b], p[a], p[c]),
            beta1=interior_angle(p[a], p[b], p[c]),
            gamma=interior_angle(p[a], p[c], p[b]),
        )
    if d is not None:
        labels.update(
            alpha2=interior_angle(p[b], p[a], p[d]),
            beta2=interior_angle(p[a], p[b], p[d]),
            delta=interior_angle(p[a], p[d], p[b]),
        )
    if c is not None and d is not None:
        labels.update(
            gamma1=interior_angle(p[a], p[c], p[d]),
            gamma2=interior_angle(p[d], p[c], p[b]),
            delta1=interior_angle(p[a], p[d], p[c]),
            delta2=interior_angle(p[c], p[d], p[b]),
        )
    return AngleLabels(**labels)


def _far_side(s: PointSet, x: int, y: int, ref: int, exclude: Sequence[int]) -> list[int]:
    """Points strictly on the other side of line xy than ref."""
    ref_side = orientation(s[x], s[y], s[ref])
    return [
        i
        for i in range(s.n)
        if i not in exclude and orientation(s[x], s[y], s[i]) == -ref_side
    ]


def _case_two(
    s: PointSet, a: int, b: int, c: int, d: int, u: tuple[float, float], trace: ConstructionTrace | None
) -> list[tuple[BackboneLabel, tuple[int, ...]]]:
    """Case with both angles at a large, in a frame where a plays that role."""
    lab = angle_labels(s, a, b, c, d)
    assert lab.beta1 is not None and lab.beta2 is not None
    assert lab.gamma2 is not None and lab.delta2 is not None
    b1p, b2p = lab.beta1_prime, lab.beta2_prime
    assert b1p is not None and b2p is not None

    if is_small(lab.beta1 + lab.beta2):
        return [(BackboneLabel.C2_1, (c, b, d))]
    if is_small(b1p) and is_small(lab.gamma2):
        return [(BackboneLabel.C2_2_1, (a, d, c, b))]
    if is_small(b2p) and is_small(lab.delta2):
        return [(BackboneLabel.C2_2_1, (a, c, d, b))]

    if not is_small(b1p):
        s_c = _far_side(s, c, b, a, (a, b, c, d))
        if all(is_small(interior_angle(s[p], s[b], s[c])) for p in s_c):
            return [(BackboneLabel.C2_2_2_1_1, (a, d, c, b))]
        e = max(s_c, key=lambda p: (interior_angle(s[p], s[b], s[c]), -s[p].x, -s[p].y, -p))
        _check_detour(s, BackboneLabel.C2_2_2_1_2, c, e, a, b, u, trace)
        return [(BackboneLabel.C2_2_2_1_2, (c, e, a, b, d))]

    s_d = _far_side(s, d, b, a, (a, b, c, d))
    if all(is_small(interior_angle(s[d], s[b], s[q])) for q in s_d):
        return [(BackboneLabel.C2_2_2_2A, (a, c, d, b))]
    f = max(s_d, key=lambda q: (interior_angle(s[d], s[b], s[q]), -s[q].x, -s[q].y, -q))
    _check_detour(s, BackboneLabel.C2_2_2_2B, d, f, a, b, u, trace)
    return [(BackboneLabel.C2_2_2_2B, (c, b, a, f, d))]


def _check_detour(
    s: PointSet,
    label: BackboneLabel,
    x: int,
    e: int,
    a: int,
    b: int,
    u: tuple[float, float],
    trace: ConstructionTrace | None,
) -> None:
    """Angles of the detour x -> e -> a -> b around triangle x b e.

    x is the extreme point c or d and e the point maximising the angle at b.
    The path angles at e and a and the box angle at x must all be small.

    Raises:
        ConstructionInvariantViolated: If one of the three exceeds pi/3
    """
    bounded = {
        "rho": interior_angle(s[x], s[e], s[a]),
        "omega": interior_angle(s[e], s[a], s[b]),
        "nu": min(vector_angle(direction(s[x], s[e]), t) for t in (u, (-u[0], -u[1]))),
    }
    if trace is not None:
        trace.record(
            f"triangle_{'cbe' if label is BackboneLabel.C2_2_2_1_2 else 'dbf'}",
            point=e,
            angle_at_extreme=interior_angle(s[e], s[x], s[b]),
            phi=interior_angle(s[e], s[b], s[x]),
            angle_at_point=interior_angle(s[x], s[e], s[b]),
            epsilon=interior_angle(s[a], s[e], s[b]),
            **bounded,
        )
    wide = {name: value for name, value in bounded.items() if not is_small(value)}
    if wide:
        logger.error(f"Case {label.value} with point {e}: angles above pi/3 {wide}")
        raise ConstructionInvariantViolated(f"case {label.value}: angles above pi/3 {sorted(wide)}")


def _primary_paths(
    s: PointSet, fr: Frame, trace: ConstructionTrace | None
) -> list[tuple[BackboneLabel, tuple[int, ...]]]:
    a, b, c, d = fr.a, fr.b, fr.c, fr.d
    lab = angle_labels(s, a, b, c, d)
    if trace is not None:
        trace.record("labels", **lab.model_dump())

    if c is None and d is None:
        return [(BackboneLabel.HULL_EDGE, (a, b))]
    if c is None:
        assert lab.beta2 is not None and d is not None
        return [(BackboneLabel.HULL_EDGE, (a, b, d) if is_small(lab.beta2) else (b, a, d))]
    if d is None:
        assert lab.beta1 is not None
        return [(BackboneLabel.HULL_EDGE, (a, b, c) if is_small(lab.beta1) else (b, a, c))]

    assert lab.alpha1 is not None and lab.alpha2 is not None
    assert lab.beta1 is not None and lab.beta2 is not None
    if is_small(lab.alpha1) and is_small(lab.beta2):
        return [(BackboneLabel.C1, (c, a, b, d))]
    if is_small(lab.alpha2) and is_small(lab.beta1):
        return [(BackboneLabel.C1, (c, b, a, d))]
    if not is_small(lab.alpha1) and not is_small(lab.alpha2):
        return _case_two(s, a, b, c, d, fr.u, trace)
    # both angles at b are large: mirror the frame by a half turn
    return _case_two(s, b, a, d, c, fr.u, trace)


def _alternative_paths(s: PointSet, fr: Frame) -> list[tuple[BackboneLabel, tuple[int, ...]]]:
    """Every case path of both frames, used when the dispatched one does not verify."""
    a, b, c, d = fr.a, fr.b, fr.c, fr.d
    out: list[tuple[BackboneLabel, tuple[int, ...]]] = []
    if c is None and d is None:
        return out
    if c is None or d is None:
        x = d if c is None else c
        assert x is not None
        return [(BackboneLabel.HULL_EDGE, (a, b, x)), (BackboneLabel.HULL_EDGE, (b, a, x))]
    out += [(BackboneLabel.C1, (c, a, b, d)), (BackboneLabel.C1, (c, b, a, d))]
    for fa, fb, fc, fd in ((a, b, c, d), (b, a, d, c)):
        out += [
            (BackboneLabel.C2_1, (fc, fb, fd)),
            (BackboneLabel.C2_2_1, (fa, fd, fc, fb)),
            (BackboneLabel.C2_2_1, (fa, fc, fd, fb)),
        ]
        s_c = _far_side(s, fc, fb, fa, (a, b, c, d))
        if s_c:
            e = max(s_c, key=lambda p: (interior_angle(s[p], s[fb], s[fc]), -s[p].x, -s[p].y, -p))
            out.append((BackboneLabel.C2_2_2_1_2, (fc, e, fa, fb, fd)))
        s_d = _far_side(s, fd, fb, fa, (a, b, c, d))
        if s_d:
            f = max(s_d, key=lambda q: (interior_angle(s[fd], s[fb], s[q]), -s[q].x, -s[q].y, -q))
            out.append((BackboneLabel.C2_2_2_2B, (fc, fb, fa, f, fd)))
    return out


def _special_points(s: PointSet, fr: Frame) -> list[int]:
    pts = [fr.a, fr.b] + [x for x in (fr.c, fr.d) if x is not None]
    for _, path in _alternative_paths(s, fr):
        pts += [v for v in path if v not in pts]
    return pts


# ---------------------------------------------------------
# Cones and assignment
# ---------------------------------------------------------
def _box_directions(fr: Frame, v: int) -> list[tuple[float, float]]:
    u, nrm = fr.u, fr.nrm
    horizontal = [u, (-u[0], -u[1])]
    vertical = [nrm, (-nrm[0], -nrm[1])]
    dirs: list[tuple[float, float]] = []
    if v in (fr.c, fr.d):
        dirs += horizontal
    if v in (fr.a, fr.b):
        dirs += vertical
        if fr.c is None or fr.d is None:
            dirs += horizontal
    return dirs


def _wedge(apex: int, e1: tuple[float, float], e2: tuple[float, float]) -> Cone:
    if ccw_vector_angle(e1, e2) <= math.pi:
        start, end = e1, e2
    else:
        start, end = e2, e1
    return Cone(apex=apex, start=start, end=end, tight=is_small(vector_angle(e1, e2)))


def path_cones(s: PointSet, fr: Frame, path: Sequence[int]) -> list[Cone]:
    """Cone of every path vertex: between its path edges, or between its edge and the bounding box."""
    cones = []
    for k, v in enumerate(path):
        nbrs = [path[j] for j in (k - 1, k + 1) if 0 <= j < len(path)]
        if len(nbrs) == 2:
            cones.append(_wedge(v, direction(s[v], s[nbrs[0]]), direction(s[v], s[nbrs[1]])))
            continue
        edge = direction(s[v], s[nbrs[0]])
        box = _box_directions(fr, v)
        if not box:
            continue
        side = min(box, key=lambda t: vector_angle(edge, t))
        cones.append(_wedge(v, edge, side))
    return cones


def assign_to_cones(s: PointSet, path: Sequence[int], cones: Sequence[Cone]) -> dict[int, int] | None:
    """Map every point off the path to a cone containing it.

    Tight cones are tried first, in path order; a wide endpoint cone is only
    used for points no tight cone takes. The connecting segment must not
    cross the path.

    Returns:
        Point -> cone index, or None if some point is not covered
    """
    on_path = set(path)
    path_edges = list(zip(path, path[1:]))
    assignment: dict[int, int] = {}
    for p in range(s.n):
        if p in on_path:
            continue
        chosen = None
        for want_tight in (True, False):
            for k, cone in enumerate(cones):
                if cone.tight != want_tight:
                    continue
                if not in_direction_cone(s[cone.apex], cone.start, cone.end, s[p]):
                    continue
                if any(edges_conflict(s.points, (cone.apex, p), e) for e in path_edges):
                    continue
                chosen = k
                break
            if chosen is not None:
                break
        if chosen is None:
            return None
        assignment[p] = chosen
    return assignment


def _backbone(s: PointSet, fr: Frame, label: BackboneLabel, path: tuple[int, ...]) -> BackboneCase | None:
    cones = path_cones(s, fr, path)
    if any(not is_small(interior_angle(s[x], s[v], s[y])) for x, v, y in zip(path, path[1:], path[2:])):
        return None
    assignment = assign_to_cones(s, path, cones)
    if assignment is None:
        return None
    return BackboneCase(label=label, path=path, cones=cones, assignment=assignment)


def backbone_candidates(
    s: PointSet, trace: ConstructionTrace | None = None, search: bool | None = None
) -> Iterator[BackboneCase]:
    """Backbones with a complete cone cover, dispatched case first.

    With `search` on, the dispatched case is followed by the paths of every
    other case and then by all ordered sequences of three to five special
    points. `search` defaults to `settings.TREE_BACKBONE_SEARCH`.

    Raises:
        ConstructionInvariantViolated: If the dispatched backbone has a wide
            path angle or leaves a point uncovered and `search` is off
    """
    if search is None:
        search = settings.TREE_BACKBONE_SEARCH
    fr = diameter_frame(s)
    if trace is not None:
        trace.record("diameter", a=fr.a, b=fr.b, c=fr.c, d=fr.d)

    seen: set[tuple[int, ...]] = set()

    def fresh(path: tuple[int, ...]) -> bool:
        key = min(path, path[::-1])
        if key in seen:
            return False
        seen.add(key)
        return True

    for label, path in _primary_paths(s, fr, trace):
        if fresh(path):
            case = _backbone(s, fr, label, path)
            if case is not None:
                yield case
                continue
            if trace is not None:
                trace.record("rejected", label=label.value, path=list(path))
            if not search:
                logger.error(f"Dispatched backbone {path} ({label.value}) fails its angles or cone cover on {s.n} points")
                raise ConstructionInvariantViolated(f"case {label.value}: backbone {path} fails its angles or cone cover")
    if not search:
        return
    for label, path in _alternative_paths(s, fr):
        if fresh(path):
            case = _backbone(s, fr, label, path)
            if case is not None:
                yield case

    special = _special_points(s, fr)
    for length in range(3, 6):
        for path in itertools.permutations(special, length):
            if fresh(path):
                case = _backbone(s, fr, BackboneLabel.SEARCH, path)
                if case is not None:
                    yield case


def select_backbone(s: PointSet) -> BackboneCase:
    """First backbone whose cones cover every remaining point.

    Raises:
        DegenerateInput: If n < 2
        ConstructionInvariantViolated: If no candidate covers the set
    """
    if s.n < 2:
        raise DegenerateInput(f"spanning tree needs at least 2 points, got {s.n}")
    for case in backbone_candidates(s):
        return case
    raise ConstructionInvariantViolated("no backbone path covers the point set")


def attach_leftovers(case: BackboneCase, s: PointSet) -> PlaneGraph:
    """Join every point off the backbone to the apex of its cone."""
    edges = set(zip(case.path, case.path[1:]))
    edges.update((case.cones[k].apex, p) for p, k in case.assignment.items())
    return PlaneGraph(base=s, edges=frozenset(edges))


def _verified(g: PlaneGraph) -> float | None:
    if GraphClass.SPANNING_TREE not in classify(g) or not is_plane(g):
        return None
    value = openness(g).graph_openness
    return value if value >= BOUND - settings.EPS else None


def open_spanning_tree(s: PointSet) -> tuple[PlaneGraph, ConstructionTrace]:
    """Plane spanning tree of s that is 5*pi/3-open.

    The backbone of the dispatched case is attached and checked for
    planarity, class and openness. Other candidates are only tried when
    `settings.TREE_BACKBONE_SEARCH` is on, and using one logs a warning.

    Args:
        s: Point set with at least two points

    Returns:
        The tree and the trace of case decisions and attachments

    Raises:
        DegenerateInput: If n < 2
        ConstructionInvariantViolated: If the dispatched case fails its checks
            (or, with the search on, no candidate verifies)
    """
    if s.n < 2:
        raise DegenerateInput(f"spanning tree needs at least 2 points, got {s.n}")
    trace = ConstructionTrace(construction="spanning_tree")
    search = settings.TREE_BACKBONE_SEARCH

    for case in backbone_candidates(s, trace, search=search):
        g = attach_leftovers(case, s)
        value = _verified(g)
        if value is None:
            trace.record("rejected", label=case.label.value, path=list(case.path))
            if not search:
                logger.error(f"Tree from backbone {case.path} ({case.label.value}) failed its checks")
                raise ConstructionInvariantViolated(f"case {case.label.value}: attached tree is not a 5pi/3-open plane tree")
            continue
        if "rejected" in trace.kinds():
            logger.warning(f"Spanning tree used fallback backbone {case.path} ({case.label.value})")
        trace.record("case", label=case.label.value, path=list(case.path))
        for p, k in sorted(case.assignment.items()):
            trace.record("attach", point=p, apex=case.cones[k].apex)
        logger.info(f"Spanning tree on {s.n} points via {case.label.value}, openness {value:.6f}")
        return g, trace

    logger.error(f"No backbone produced a 5pi/3-open tree for {s.n} points")
    raise ConstructionInvariantViolated("no backbone candidate yields a 5pi/3-open spanning tree")
