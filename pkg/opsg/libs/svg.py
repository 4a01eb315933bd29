"""SVG figures of point sets and plane graphs."""
import logging
import math
from pathlib import Path
from typing import Callable

from lxml import etree

from opsg.core.geometry import TAU
from opsg.core.graph import openness
from opsg.entities.schemas import PlaneGraph, PointSet

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = 0.05
VERTEX_RADIUS = 0.005
ARC_RADIUS = 0.04
STROKE = 0.002


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


def _normalizer(s: PointSet) -> Callable[[float, float], tuple[float, float]]:
    xs = [p.x for p in s.points]
    ys = [p.y for p in s.points]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    x0, y0 = min(xs), min(ys)

    # y grows downwards in SVG
    def to_box(x: float, y: float) -> tuple[float, float]:
        return (x - x0) / span, 1.0 - (y - y0) / span

    return to_box


def _arc_path(cx: float, cy: float, start: float, sweep: float) -> str:
    # math-ccw sweeps show as clockwise after the y flip, which is SVG sweep-flag 1
    x1, y1 = cx + ARC_RADIUS * math.cos(start), cy - ARC_RADIUS * math.sin(start)
    end = start + sweep
    x2, y2 = cx + ARC_RADIUS * math.cos(end), cy - ARC_RADIUS * math.sin(end)
    large = 1 if sweep > math.pi else 0
    return f"M {cx:.6f} {cy:.6f} L {x1:.6f} {y1:.6f} A {ARC_RADIUS} {ARC_RADIUS} 0 {large} 1 {x2:.6f} {y2:.6f} Z"


def _widest_gap(g: PlaneGraph, v: int, nbrs: list[int]) -> tuple[float, float] | None:
    if len(nbrs) < 2:
        return None
    p = g.base[v]
    thetas = sorted(math.atan2(g.base[u].y - p.y, g.base[u].x - p.x) for u in nbrs)
    gaps = [(b - a, a) for a, b in zip(thetas, thetas[1:])]
    gaps.append((thetas[0] + TAU - thetas[-1], thetas[-1]))
    sweep, start = max(gaps)
    return start, sweep


def render_svg(item: PlaneGraph | PointSet, annotate: bool = False) -> bytes:
    """Draw a point set or graph into the unit box with a 5% margin.

    Args:
        item: What to draw
        annotate: Shade the widest incident angle at every vertex of degree >= 2

    Returns:
        UTF-8 encoded SVG document
    """
    g = item if isinstance(item, PlaneGraph) else PlaneGraph(base=item, edges=frozenset())
    to_box = _normalizer(g.base)
    box = [to_box(p.x, p.y) for p in g.base.points]

    root = etree.Element(
        _tag("svg"),
        nsmap={None: SVG_NS},
        viewBox=f"{-MARGIN} {-MARGIN} {1 + 2 * MARGIN} {1 + 2 * MARGIN}",
        width="800",
        height="800",
    )
    if g.edges:
        desc = etree.SubElement(root, _tag("desc"))
        desc.text = f"openness {openness(g).graph_openness:.12f}"

    if annotate:
        arcs = etree.SubElement(root, _tag("g"), fill="#f4a261", attrib={"fill-opacity": "0.5"})
        for v, nbrs in enumerate(g.adjacency()):
            gap = _widest_gap(g, v, nbrs)
            if gap is not None:
                etree.SubElement(arcs, _tag("path"), d=_arc_path(*box[v], *gap))

    lines = etree.SubElement(root, _tag("g"), stroke="#264653", attrib={"stroke-width": str(STROKE)})
    for i, j in g.sorted_edges():
        (x1, y1), (x2, y2) = box[i], box[j]
        etree.SubElement(lines, _tag("line"), x1=f"{x1:.6f}", y1=f"{y1:.6f}", x2=f"{x2:.6f}", y2=f"{y2:.6f}")

    dots = etree.SubElement(root, _tag("g"), fill="#e76f51")
    for x, y in box:
        etree.SubElement(dots, _tag("circle"), cx=f"{x:.6f}", cy=f"{y:.6f}", r=str(VERTEX_RADIUS))

    return etree.tostring(root, xml_declaration=True, encoding="utf-8", pretty_print=True)


def write_svg(item: PlaneGraph | PointSet, path: Path, annotate: bool = False) -> None:
    path.write_bytes(render_svg(item, annotate))
    logger.info(f"Wrote figure to {path}")
