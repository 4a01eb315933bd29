"""Text codec for point files and graph files.

Point file: one "x y" line per point, "#" lines ignored, point index is the
0-based data-line order. Graph file: a "psg v1 n=<n> m=<m>" header, n point
lines, then m "i j" edge lines with i < j in lexicographic order. Floats
are written with 17 significant digits so that reading reproduces them
exactly.
"""
import logging
import re
from pathlib import Path
from typing import Iterator

from pydantic import ValidationError

from opsg.core.exceptions import MalformedFile
from opsg.entities.schemas import PlaneGraph, PointSet

logger = logging.getLogger(__name__)

HEADER = re.compile(r"^psg v1 n=(\d+) m=(\d+)$")


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _data_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_point(lineno: int, line: str, source: str) -> tuple[float, float]:
    fields = line.split()
    if len(fields) != 2:
        raise MalformedFile(f"{source}:{lineno}: expected 'x y', got {line!r}")
    try:
        return float(fields[0]), float(fields[1])
    except ValueError as e:
        raise MalformedFile(f"{source}:{lineno}: {e}") from e


def format_points(s: PointSet) -> str:
    return "".join(f"{_fmt(p.x)} {_fmt(p.y)}\n" for p in s.points)


def parse_points(text: str, source: str = "<text>", trusted: bool = False) -> PointSet:
    """Parse the point file format.

    Raises:
        MalformedFile: If a line is not two floats or the file has no points
        DegenerateInput: If the points are duplicated or not in general position
    """
    coords = [_parse_point(lineno, line, source) for lineno, line in _data_lines(text)]
    if not coords:
        raise MalformedFile(f"{source}: no points")
    return PointSet.from_coords(coords, trusted=trusted)


def format_graph(g: PlaneGraph) -> str:
    edges = "".join(f"{i} {j}\n" for i, j in g.sorted_edges())
    return f"psg v1 n={g.n} m={len(g.edges)}\n" + format_points(g.base) + edges


def parse_graph(text: str, source: str = "<text>", trusted: bool = False) -> PlaneGraph:
    """Parse the graph file format.

    Raises:
        MalformedFile: On a bad header, wrong line counts or bad edge lines
        DegenerateInput: If the points are duplicated or not in general position
    """
    lines = list(_data_lines(text))
    if not lines:
        raise MalformedFile(f"{source}: empty graph file")
    match = HEADER.match(lines[0][1])
    if match is None:
        raise MalformedFile(f"{source}:{lines[0][0]}: bad header {lines[0][1]!r}")
    n, m = int(match.group(1)), int(match.group(2))
    if len(lines) != 1 + n + m:
        raise MalformedFile(f"{source}: header announces {n} points and {m} edges, found {len(lines) - 1} lines")

    coords = [_parse_point(lineno, line, source) for lineno, line in lines[1 : 1 + n]]
    edges = []
    for lineno, line in lines[1 + n :]:
        fields = line.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise MalformedFile(f"{source}:{lineno}: expected 'i j', got {line!r}")
        i, j = int(fields[0]), int(fields[1])
        if i >= j:
            raise MalformedFile(f"{source}:{lineno}: edge endpoints must satisfy i < j")
        edges.append((i, j))
    repeated = sorted({e for e in edges if edges.count(e) > 1})
    if repeated:
        logger.warning(f"{source}: dropping repeated edge lines {repeated}, graph keeps {len(set(edges))} of {m} edges")

    base = PointSet.from_coords(coords, trusted=trusted)
    try:
        return PlaneGraph(base=base, edges=frozenset(edges))
    except ValidationError as e:
        raise MalformedFile(f"{source}: {e.errors()[0]['msg']}") from e


def read_points(path: Path, trusted: bool = False) -> PointSet:
    logger.debug(f"Reading points from {path}")
    return parse_points(_read(path), str(path), trusted)


def read_graph(path: Path, trusted: bool = False) -> PlaneGraph:
    logger.debug(f"Reading graph from {path}")
    return parse_graph(_read(path), str(path), trusted)


def write_points(s: PointSet, path: Path) -> None:
    path.write_text(format_points(s), encoding="utf-8")
    logger.info(f"Wrote {s.n} points to {path}")


def write_graph(g: PlaneGraph, path: Path) -> None:
    path.write_text(format_graph(g), encoding="utf-8")
    logger.info(f"Wrote graph with {len(g.edges)} edges to {path}")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise MalformedFile(f"{path}: {e}") from e
