"""Pydantic models for point sets, graphs, reports and traces using Pydantic 2.0."""
import math
from enum import Enum, IntEnum
from typing import Any, Iterable, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    computed_field,
    field_validator,
    model_validator,
)

from opsg.core.config import settings
from opsg.core.exceptions import DegenerateInput


# ---------------------------------------------------------
# Enumerations
# ---------------------------------------------------------
class Orientation(IntEnum):
    """Sign of the signed area of an ordered triple."""

    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class HalfPlaneSide(str, Enum):
    """Direction of a half-plane bounded by an oriented segment."""

    PLUS = "+"
    MINUS = "-"

    def flipped(self) -> "HalfPlaneSide":
        return HalfPlaneSide.MINUS if self is HalfPlaneSide.PLUS else HalfPlaneSide.PLUS


class Turn(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class GraphClass(str, Enum):
    """Graph classes reported by `classify` and searched by the oracle."""

    SPANNING_TREE = "tree"
    SPANNING_PATH = "path"
    TRIANGULATION = "triangulation"
    PERFECT_MATCHING = "matching"


class BackboneLabel(str, Enum):
    """Case of the spanning-tree backbone selection that produced the path."""

    C1 = "C1"
    C2_1 = "C2_1"
    C2_2_1 = "C2_2_1"
    C2_2_2_1_1 = "C2_2_2_1_1"
    C2_2_2_1_2 = "C2_2_2_1_2"
    C2_2_2_2A = "C2_2_2_2a"
    C2_2_2_2B = "C2_2_2_2b"
    HULL_EDGE = "HullEdge"
    SEARCH = "Search"


# ---------------------------------------------------------
# Points
# ---------------------------------------------------------
class Point(BaseModel):
    """A point of the plane.

    Attributes:
        x: First coordinate
        y: Second coordinate
    """

    x: float = Field(..., allow_inf_nan=False, description="First coordinate")
    y: float = Field(..., allow_inf_nan=False, description="Second coordinate")

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"x": 0.5, "y": 0.8660254037844386}},
    )

    def key(self) -> tuple[float, float]:
        return (self.x, self.y)


class PointSet(BaseModel):
    """Immutable ordered planar point set in general position.

    Index i always refers to `points[i]`. Validation checks pairwise
    distinctness and that no three points are collinear; sets larger than
    MAX_VALIDATED_POINTS must be passed with `trusted=True`.

    Attributes:
        points: The points in input order
        trusted: Skip the general-position check
    """

    points: tuple[Point, ...] = Field(..., min_length=1, description="Points in input order")
    trusted: bool = Field(default=False, description="Skip the general-position check")

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "points": [{"x": 0, "y": 0}, {"x": 1, "y": 0}, {"x": 0.5, "y": 0.8}],
                "trusted": False,
            }
        },
    )

    @model_validator(mode="after")
    def check_general_position(self) -> "PointSet":
        if len({p.key() for p in self.points}) != len(self.points):
            raise ValueError("point set contains duplicate points")
        if self.trusted:
            return self
        if len(self.points) > settings.MAX_VALIDATED_POINTS:
            raise ValueError(
                f"{len(self.points)} points exceed MAX_VALIDATED_POINTS="
                f"{settings.MAX_VALIDATED_POINTS}; pass trusted=True"
            )
        from opsg.core.geometry import find_collinear_triple

        triple = find_collinear_triple(self.points)
        if triple is not None:
            raise ValueError(f"points {triple} are collinear")
        return self

    @classmethod
    def from_coords(cls, coords: Iterable[Iterable[float]], trusted: bool = False) -> "PointSet":
        """Build a point set from coordinate pairs.

        Args:
            coords: Iterable of (x, y) pairs
            trusted: Skip the general-position check

        Returns:
            The validated point set

        Raises:
            DegenerateInput: If the coordinates do not form a valid point set
        """
        try:
            pts = tuple(Point(x=float(x), y=float(y)) for x, y in coords)
            return cls(points=pts, trusted=trusted)
        except ValidationError as e:
            raise DegenerateInput(_first_error(e)) from e

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def coords(self) -> list[tuple[float, float]]:
        return [p.key() for p in self.points]

    def subset(self, indices: Iterable[int]) -> list[Point]:
        return [self.points[i] for i in indices]


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    return str(err.get("msg", e))


# ---------------------------------------------------------
# Graphs
# ---------------------------------------------------------
class PlaneGraph(BaseModel):
    """Straight-line graph over the indices of a point set.

    Edges are stored as (i, j) with i < j. Planarity is not enforced here;
    use `opsg.core.graph.is_plane`.

    Attributes:
        base: The point set the indices refer to
        edges: Undirected edges as sorted index pairs
    """

    base: PointSet = Field(..., description="Underlying point set")
    edges: frozenset[tuple[int, int]] = Field(
        default_factory=frozenset, description="Undirected edges (i < j)"
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "base": {"points": [{"x": 0, "y": 0}, {"x": 1, "y": 0}], "trusted": False},
                "edges": [[0, 1]],
            }
        },
    )

    @field_validator("edges", mode="before")
    @classmethod
    def normalize_edges(cls, v: Any) -> Any:
        if isinstance(v, (list, tuple, set, frozenset)):
            out = set()
            for e in v:
                i, j = (int(k) for k in e)
                if i == j:
                    raise ValueError(f"self loop at {i}")
                out.add((min(i, j), max(i, j)))
            return frozenset(out)
        return v

    @model_validator(mode="after")
    def check_indices(self) -> "PlaneGraph":
        n = len(self.base)
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        return self

    @classmethod
    def from_path(cls, base: PointSet, order: Iterable[int]) -> "PlaneGraph":
        order = list(order)
        return cls(base=base, edges=frozenset(zip(order, order[1:])))

    @property
    def n(self) -> int:
        return len(self.base)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]


class MaxDegree(BaseModel):
    """Class tag carrying the maximum vertex degree of a graph."""

    k: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)


# ---------------------------------------------------------
# Reports
# ---------------------------------------------------------
class OpennessReport(BaseModel):
    """Per-vertex openness and the graph minimum.

    Attributes:
        per_vertex: (vertex, maximum incident angle) for every vertex
        graph_openness: Minimum of the per-vertex values
    """

    per_vertex: list[tuple[int, float]] = Field(..., description="Vertex openness values")
    graph_openness: float = Field(..., gt=0, le=2 * math.pi + 1e-9)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "per_vertex": [[0, 6.283185307179586], [1, 4.71238898038469]],
                "graph_openness": 4.71238898038469,
            }
        }
    )

    def vertex(self, v: int) -> float:
        return self.per_vertex[v][1]


class TraceStep(BaseModel):
    """One decision taken by a construction.

    Attributes:
        kind: Name of the step or case that fired
        detail: Indices and angles the decision was based on
    """

    kind: str = Field(..., description="Step or case name")
    detail: dict[str, Any] = Field(default_factory=dict)


class ConstructionTrace(BaseModel):
    """Ordered log of the decisions of one construction run."""

    construction: str = Field(..., description="Name of the construction")
    steps: list[TraceStep] = Field(default_factory=list)

    def record(self, kind: str, **detail: Any) -> None:
        self.steps.append(TraceStep(kind=kind, detail=detail))

    def kinds(self) -> list[str]:
        return [s.kind for s in self.steps]


# ---------------------------------------------------------
# Construction state
# ---------------------------------------------------------
class TriangleSubproblem(BaseModel):
    """Triangle of the recursive triangulation and the points strictly inside it."""

    corners: tuple[int, int, int]
    interior: tuple[int, ...] = ()


class Cone(BaseModel):
    """Closed cone at an apex swept counterclockwise from `start` to `end`.

    Attributes:
        apex: Index of the apex point
        start: Direction vector of the first ray
        end: Direction vector of the second ray
        tight: The cone spans at most pi/3
    """

    apex: int
    start: tuple[float, float]
    end: tuple[float, float]
    tight: bool = True


class BackboneCase(BaseModel):
    """Backbone path of the open spanning tree and the cones that cover the rest.

    Attributes:
        label: Case that produced the path
        path: 2 to 5 vertex indices
        cones: Attachment cones at the path vertices
        assignment: Leftover point -> index into `cones`
    """

    label: BackboneLabel
    path: tuple[int, ...] = Field(..., min_length=2, max_length=5)
    cones: list[Cone] = Field(default_factory=list)
    assignment: dict[int, int] = Field(default_factory=dict)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"label": "C1", "path": [2, 0, 1, 3], "cones": [], "assignment": {}}
        }
    )

    @model_validator(mode="after")
    def check_distinct(self) -> "BackboneCase":
        if len(set(self.path)) != len(self.path):
            raise ValueError(f"backbone path {self.path} repeats a vertex")
        return self


class AngleLabels(BaseModel):
    """Angles of the diameter frame used by the spanning-tree case analysis.

    Angles at c or d are None when that point does not exist.
    """

    alpha1: float | None = None
    alpha2: float | None = None
    beta1: float | None = None
    beta2: float | None = None
    gamma: float | None = None
    delta: float | None = None
    gamma1: float | None = None
    gamma2: float | None = None
    delta1: float | None = None
    delta2: float | None = None

    @staticmethod
    def _prime(v: float | None) -> float | None:
        return None if v is None else math.pi / 2 - v

    @computed_field  # type: ignore[prop-decorator]
    @property
    def alpha1_prime(self) -> float | None:
        return self._prime(self.alpha1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def alpha2_prime(self) -> float | None:
        return self._prime(self.alpha2)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def beta1_prime(self) -> float | None:
        return self._prime(self.beta1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def beta2_prime(self) -> float | None:
        return self._prime(self.beta2)


class Assignment(BaseModel):
    """Set of points assigned to an owner in the bounded-degree tree.

    Attributes:
        owner: Vertex the members will be connected through
        members: Indices of the assigned points
        wedge: Cone at the owner containing every member
    """

    owner: int
    members: frozenset[int]
    wedge: Cone | None = None


class ZigzagPath(BaseModel):
    """Spanning path of a convex set alternating between both hull chains.

    Attributes:
        order: Vertex indices along the path
        start: First vertex
        first_turn: Whether the first step follows the counterclockwise chain
    """

    order: tuple[int, ...]
    start: int
    first_turn: Turn

    model_config = ConfigDict(frozen=True)


class PathState(BaseModel):
    """Recursion state of the general-position path construction."""

    remaining: tuple[int, ...]
    prefix: tuple[int, ...] = ()
    mode: Literal["vertex", "edge"]
    anchor: tuple[int, ...]


class ConeLocation(BaseModel):
    """Where an exterior point lies with respect to the outer normal cones of a hull.

    Attributes:
        kind: "in_cone" for a vertex cone, "between" for the region of an edge
        vertices: (p,) for a vertex cone, (y, z) in ccw hull order otherwise
        on_boundary: The point lies on a cone boundary ray
    """

    kind: Literal["in_cone", "between"]
    vertices: tuple[int, ...]
    on_boundary: bool = False


class OracleResult(BaseModel):
    """Exhaustive optimum of a graph class on a small point set.

    Attributes:
        graph_class: Class that was enumerated
        max_degree: Degree bound applied to trees, if any
        max_openness: Best openness found (0 when nothing qualifies)
        witness: First optimal graph in lexicographic edge order
        count_enumerated: Number of qualifying graphs seen
    """

    graph_class: GraphClass
    max_degree: int | None = None
    max_openness: float = Field(..., ge=0)
    witness: PlaneGraph | None = None
    count_enumerated: int = Field(..., ge=0)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "graph_class": "path",
                "max_degree": None,
                "max_openness": 4.71238898038469,
                "witness": None,
                "count_enumerated": 12,
            }
        }
    )


# ---------------------------------------------------------
# Command output
# ---------------------------------------------------------
class ErrorReport(BaseModel):
    """Single JSON line the CLI writes to stderr on failure."""

    error: str = Field(..., description="Exception class name")
    message: str
    exit_code: int = Field(..., ge=1, le=3)


class GraphReport(BaseModel):
    """Summary of a constructed or verified graph.

    Attributes:
        command: Subcommand that produced the report
        n: Number of points
        m: Number of edges
        openness: Graph openness in radians
        classes: Class names from `classify`, plus "deg<=k"
        edges: Sorted edge list
        pointed: Vertices with an incident angle above pi
        trace: Decisions of the construction, if one ran
    """

    command: str
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=0)
    openness: float
    classes: list[str] = Field(default_factory=list)
    edges: list[tuple[int, int]] = Field(default_factory=list)
    pointed: list[int] = Field(default_factory=list)
    trace: ConstructionTrace | None = None

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "command": "tree",
                "n": 3,
                "m": 2,
                "openness": 5.235987755982989,
                "classes": ["tree", "path", "deg<=2"],
                "edges": [[0, 1], [1, 2]],
                "pointed": [0, 1, 2],
                "trace": None,
            }
        }
    )
