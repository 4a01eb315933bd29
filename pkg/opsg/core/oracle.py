"""Exhaustive maximum openness per graph class on small point sets.

Every enumerator keeps the first optimum under lexicographic order of the
sorted edge list, so results do not depend on the enumeration order.
"""
import itertools
import logging
import math
from functools import lru_cache
from typing import Iterable, Sequence

from opsg.core.config import settings
from opsg.core.exceptions import OracleTooLarge
from opsg.core.geometry import TAU, convex_hull, edges_conflict, orientation, segments_cross_properly
from opsg.core.graph import angles_around, path_openness
from opsg.entities.schemas import GraphClass, OracleResult, Orientation, PlaneGraph, Point, PointSet

logger = logging.getLogger(__name__)

Edge = tuple[int, int]

# Ties closer than this count as equal openness.
TIE = 1e-12


def _cap(n: int, hard: int, requested: int | None, what: str) -> None:
    limit = hard if requested is None else min(hard, requested)
    if n > limit:
        raise OracleTooLarge(f"{what} oracle is limited to n <= {limit}, got {n}")


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _graph_openness(pts: Sequence[Point], edges: Iterable[Edge]) -> float:
    adj: list[list[int]] = [[] for _ in pts]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return min(max(angles_around(pts, v, adj[v])) for v in range(len(pts)))


class _Best:
    """Running maximum with a lexicographic tie-break on the sorted edge list."""

    def __init__(self) -> None:
        self.value = -math.inf
        self.edges: list[Edge] | None = None
        self.count = 0

    def offer(self, value: float, edges: Iterable[Edge]) -> None:
        self.count += 1
        if value < self.value - TIE:
            return
        ordered = sorted(edges)
        if value > self.value + TIE or self.edges is None or ordered < self.edges:
            self.value, self.edges = max(value, self.value), ordered

    def result(self, s: PointSet, graph_class: GraphClass, max_degree: int | None = None) -> OracleResult:
        if self.edges is None:
            return OracleResult(graph_class=graph_class, max_degree=max_degree, max_openness=0.0, count_enumerated=0)
        witness = PlaneGraph(base=s, edges=frozenset(self.edges))
        return OracleResult(
            graph_class=graph_class,
            max_degree=max_degree,
            max_openness=self.value,
            witness=witness,
            count_enumerated=self.count,
        )


# ---------------------------------------------------------
# Spanning paths
# ---------------------------------------------------------
def max_openness_paths(
    s: PointSet,
    endpoint_constraint: int | None = None,
    edge_constraint: Edge | None = None,
    max_n: int | None = None,
) -> OracleResult:
    """Best openness over all plane spanning paths.

    Args:
        s: Point set
        endpoint_constraint: Only paths with this endpoint
        edge_constraint: Only paths using this edge
        max_n: Lower the size cap below the configured one

    Raises:
        OracleTooLarge: If n exceeds the cap
    """
    n = s.n
    _cap(n, settings.ORACLE_MAX_PATH_N, max_n, "path")
    pts = s.points
    required = _edge(*edge_constraint) if edge_constraint is not None else None
    best = _Best()
    starts = range(n) if endpoint_constraint is None else [endpoint_constraint]

    def extend(path: list[int], used: list[Edge], visited: list[bool]) -> None:
        if len(path) == n:
            if endpoint_constraint is None and path[0] > path[-1]:
                return
            if required is not None and required not in used:
                return
            best.offer(path_openness(pts, path), used)
            return
        last = path[-1]
        for v in range(n):
            if visited[v]:
                continue
            e = _edge(last, v)
            if any(edges_conflict(pts, e, f) for f in used[:-1]):
                continue
            visited[v] = True
            path.append(v)
            used.append(e)
            extend(path, used, visited)
            used.pop()
            path.pop()
            visited[v] = False

    for start in starts:
        visited = [False] * n
        visited[start] = True
        extend([start], [], visited)
    logger.info(f"Path oracle on {n} points: {best.count} paths, best {best.value:.6f}")
    return best.result(s, GraphClass.SPANNING_PATH)


def sweep_path_conjecture(sets: Iterable[PointSet], max_n: int | None = None) -> OracleResult:
    """Smallest best path openness over a collection of small sets.

    A value below 3*pi/2 would be a set without a 3*pi/2-open spanning path.

    Raises:
        ValueError: If `sets` is empty
    """
    worst: OracleResult | None = None
    for k, s in enumerate(sets):
        result = max_openness_paths(s, max_n=max_n)
        if result.max_openness < 3 * math.pi / 2 - settings.EPS:
            logger.warning(f"Set {k} has no 3pi/2-open spanning path (best {result.max_openness:.12f})")
        if worst is None or result.max_openness < worst.max_openness:
            worst = result
    if worst is None:
        raise ValueError("the path-conjecture sweep needs at least one point set")
    return worst


# ---------------------------------------------------------
# Spanning trees
# ---------------------------------------------------------
class _RollbackUnionFind:
    """Union by size without path compression, so unions can be undone in LIFO order."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append((ra, rb))
        return True

    def undo(self) -> None:
        ra, rb = self.history.pop()
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]


def max_openness_trees(s: PointSet, max_degree: int | None = None, max_n: int | None = None) -> OracleResult:
    """Best openness over all plane spanning trees, optionally degree-bounded.

    Include/exclude search over the lexicographically sorted candidate edges,
    pruned by crossings, cycles, degrees and the number of edges left.

    Raises:
        OracleTooLarge: If n exceeds the cap
    """
    n = s.n
    _cap(n, settings.ORACLE_MAX_TREE_N, max_n, "tree")
    pts = s.points
    best = _Best()
    if n == 1:
        best.offer(TAU, [])
        return best.result(s, GraphClass.SPANNING_TREE, max_degree)

    candidates = list(itertools.combinations(range(n), 2))
    limit = max_degree if max_degree is not None else n - 1
    uf = _RollbackUnionFind(n)
    degree = [0] * n
    chosen: list[Edge] = []

    def search(k: int) -> None:
        if len(chosen) == n - 1:
            best.offer(_graph_openness(pts, chosen), chosen)
            return
        if len(chosen) + len(candidates) - k < n - 1:
            return
        u, v = candidates[k]
        if (
            degree[u] < limit
            and degree[v] < limit
            and not any(edges_conflict(pts, (u, v), f) for f in chosen)
            and uf.union(u, v)
        ):
            degree[u] += 1
            degree[v] += 1
            chosen.append((u, v))
            search(k + 1)
            chosen.pop()
            degree[u] -= 1
            degree[v] -= 1
            uf.undo()
        search(k + 1)

    search(0)
    logger.info(f"Tree oracle on {n} points (max degree {max_degree}): {best.count} trees, best {best.value:.6f}")
    return best.result(s, GraphClass.SPANNING_TREE, max_degree)


# ---------------------------------------------------------
# Triangulations
# ---------------------------------------------------------
def _inside_polygon(p: Point, poly: Sequence[Point]) -> bool:
    # even-odd rule; callers never pass boundary points
    inside = False
    m = len(poly)
    for k in range(m):
        a, b = poly[k], poly[(k + 1) % m]
        if (a.y > p.y) != (b.y > p.y):
            x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > p.x:
                inside = not inside
    return inside


def _triangulations(s: PointSet, poly: tuple[int, ...], interior: frozenset[int]) -> list[frozenset[Edge]]:
    pts = s.points

    @lru_cache(maxsize=None)
    def solve(poly: tuple[int, ...], interior: frozenset[int]) -> tuple[frozenset[Edge], ...]:
        if len(poly) < 3:
            return (frozenset(),)
        a, b = poly[0], poly[1]
        boundary = [(poly[k], poly[(k + 1) % len(poly)]) for k in range(len(poly))]
        found: list[frozenset[Edge]] = []
        for c in list(poly[2:]) + sorted(interior):
            if orientation(pts[a], pts[b], pts[c]) != Orientation.COUNTERCLOCKWISE:
                continue
            if not _chord_ok(a, c, poly, boundary) or not _chord_ok(c, b, poly, boundary):
                continue
            others = [v for v in list(poly) + list(interior) if v not in (a, b, c)]
            if any(_strictly_inside(pts[v], pts[a], pts[b], pts[c]) for v in others):
                continue
            triangle = frozenset({_edge(a, b), _edge(b, c), _edge(a, c)})
            if c in interior:
                parts = [solve((a, c) + poly[1:], interior - {c})]
            else:
                j = poly.index(c)
                left, right = poly[1 : j + 1], poly[j:] + (a,)
                rest = interior
                pieces = []
                for sub in (left, right):
                    mine = frozenset(v for v in rest if len(sub) >= 3 and _inside_polygon(pts[v], [pts[i] for i in sub]))
                    rest = rest - mine
                    pieces.append(solve(sub, mine))
                if rest:
                    continue
                parts = pieces
            for combo in itertools.product(*parts):
                found.append(triangle.union(*combo))
        return tuple(found)

    def _chord_ok(u: int, v: int, poly: tuple[int, ...], boundary: list[Edge]) -> bool:
        if (u, v) in boundary or (v, u) in boundary:
            return True
        pu, pv = pts[u], pts[v]
        for x, y in boundary:
            if len({u, v, x, y}) == 4 and segments_cross_properly(pu, pv, pts[x], pts[y]):
                return False
        mid = Point(x=(pu.x + pv.x) / 2, y=(pu.y + pv.y) / 2)
        return _inside_polygon(mid, [pts[i] for i in poly])

    return list(dict.fromkeys(solve(poly, interior)))


def _strictly_inside(p: Point, a: Point, b: Point, c: Point) -> bool:
    o1, o2, o3 = orientation(a, b, p), orientation(b, c, p), orientation(c, a, p)
    return o1 == o2 == o3 != Orientation.COLLINEAR


def max_openness_triangulations(s: PointSet, max_n: int | None = None) -> OracleResult:
    """Best openness over all triangulations.

    The triangle on a fixed boundary edge is chosen in every possible way
    and the remaining region is triangulated recursively; results are
    deduplicated by edge set.

    Raises:
        OracleTooLarge: If n exceeds the cap
    """
    n = s.n
    _cap(n, settings.ORACLE_MAX_TRIANGULATION_N, max_n, "triangulation")
    best = _Best()
    if n < 3:
        return best.result(s, GraphClass.TRIANGULATION)
    hull = convex_hull(s)
    interior = frozenset(range(n)) - set(hull)
    for edges in _triangulations(s, tuple(hull), interior):
        best.offer(_graph_openness(s.points, edges), edges)
    logger.info(f"Triangulation oracle on {n} points: {best.count} triangulations, best {best.value:.6f}")
    return best.result(s, GraphClass.TRIANGULATION)
