"""Resolution (plumbing) graphs of normal surface singularities.

A graph has one vertex per exceptional curve, weighted by its
self-intersection and genus, and one edge per intersection point of two
curves.  The intersection form must be negative definite; a graph that
fails this is rejected at construction time because every downstream
computation depends on it.

File format (UTF-8, line oriented)::

    # comment
    vertex <id> <self_intersection> <genus>
    edge <id> <id>

Repeated ``edge`` lines give multi-edges.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exact import leading_minors


class GraphError(ValueError):
    """Invalid graph input.  ``line`` is the 1-based source line, if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotNegativeDefiniteError(GraphError):
    def __init__(self, failing_minor: int, minors):
        self.failing_minor = failing_minor
        self.minors = minors
        super().__init__(
            f"intersection form is not negative definite: leading minor {failing_minor} "
            f"= {minors[failing_minor - 1]} has the wrong sign"
        )


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    self_intersection: int
    genus: int = 0


@dataclass(frozen=True)
class ResolutionGraph:
    """Validated, immutable resolution graph.

    ``edges`` is stored canonically: each pair ordered by vertex position, the
    list sorted, multi-edges repeated.  Two graphs with the same declaration
    order therefore compare equal regardless of how their edges were listed.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if not vertices:
            raise GraphError("graph has no vertices")
        index = {}
        for v in vertices:
            if v.id in index:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            if v.genus < 0:
                raise GraphError(f"vertex {v.id!r} has negative genus")
            index[v.id] = len(index)
        edges = []
        for a, b in self.edges:
            for x in (a, b):
                if x not in index:
                    raise GraphError(f"edge refers to unknown vertex {x!r}")
            if a == b:
                raise GraphError(f"self-loop at vertex {a!r}")
            edges.append((a, b) if index[a] < index[b] else (b, a))
        edges.sort(key=lambda e: (index[e[0]], index[e[1]]))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "_index", index)
        if not self._connected():
            raise GraphError("graph is disconnected")
        ok, k = check_negative_definite(intersection_matrix(self))
        if not ok:
            raise NotNegativeDefiniteError(k, leading_minors(intersection_matrix(self)))

    def _connected(self) -> bool:
        adj = {v.id: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @property
    def s(self) -> int:
        return len(self.vertices)

    def index(self, vertex_id: str) -> int:
        return self._index[vertex_id]

    @property
    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    @property
    def self_intersections(self) -> list[int]:
        return [v.self_intersection for v in self.vertices]

    @property
    def genera(self) -> list[int]:
        return [v.genus for v in self.vertices]

    @property
    def non_minimal_vertices(self) -> list[str]:
        """Rational (-1)-curves; their presence means the resolution is not minimal."""
        return [v.id for v in self.vertices if v.self_intersection == -1 and v.genus == 0]

    @property
    def is_minimal(self) -> bool:
        return not self.non_minimal_vertices

    @property
    def warnings(self) -> list[str]:
        if self.is_minimal:
            return []
        return [f"non-minimal input: rational (-1)-curve(s) {', '.join(self.non_minimal_vertices)}"]

    def degree(self, vertex_id: str) -> int:
        return sum((a == vertex_id) + (b == vertex_id) for a, b in self.edges)


def intersection_matrix(g: ResolutionGraph) -> tuple[tuple[int, ...], ...]:
    """Symmetric integer Gram matrix: self-intersections on the diagonal,
    edge multiplicities off it."""
    n = g.s
    M = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        M[i][i] = v.self_intersection
    for a, b in g.edges:
        i, j = g.index(a), g.index(b)
        M[i][j] += 1
        M[j][i] += 1
    return tuple(tuple(row) for row in M)


def check_negative_definite(M: Sequence[Sequence[int]]) -> tuple[bool, int | None]:
    """Sylvester's criterion in exact arithmetic.

    Returns ``(True, None)`` or ``(False, k)`` where k is the first (1-based)
    leading minor whose sign differs from ``(-1)**k``.
    """
    for k, minor in enumerate(leading_minors(M), start=1):
        if (-1) ** k * minor <= 0:
            return False, k
    return True, None


def cycle_rank(g: ResolutionGraph) -> int:
    return len(g.edges) - g.s + 1


def link_first_betti(g: ResolutionGraph) -> int:
    """First Betti number of the link: twice the total genus plus the cycle rank."""
    return 2 * sum(g.genera) + cycle_rank(g)


def graph_euler_characteristic(g: ResolutionGraph) -> int:
    return g.s - len(g.edges)


# ---------------------------------------------------------------------------
# text format

def parse_resolution_graph(text: str) -> ResolutionGraph:
    vertices: list[Vertex] = []
    edges: list[tuple[str, str]] = []
    seen: dict[str, int] = {}
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 4:
                raise GraphError("expected 'vertex <id> <self_intersection> <genus>'", lineno)
            vid = parts[1]
            try:
                w, gen = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphError("self-intersection and genus must be integers", lineno) from None
            if vid in seen:
                raise GraphError(f"duplicate vertex id {vid!r}", lineno)
            if gen < 0:
                raise GraphError("genus must be nonnegative", lineno)
            seen[vid] = lineno
            vertices.append(Vertex(vid, w, gen))
        elif kind == "edge":
            if len(parts) != 3:
                raise GraphError("expected 'edge <id> <id>'", lineno)
            edges.append((parts[1], parts[2]))
            edge_lines.append(lineno)
        else:
            raise GraphError(f"unknown directive {kind!r}", lineno)
    for (a, b), lineno in zip(edges, edge_lines):
        if a == b:
            raise GraphError(f"self-loop at vertex {a!r}", lineno)
        for x in (a, b):
            if x not in seen:
                raise GraphError(f"edge refers to unknown vertex {x!r}", lineno)
    return ResolutionGraph(tuple(vertices), tuple(edges))


def serialize_resolution_graph(g: ResolutionGraph) -> str:
    lines = [f"vertex {v.id} {v.self_intersection} {v.genus}" for v in g.vertices]
    lines += [f"edge {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> ResolutionGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_resolution_graph(fh.read())


def write_graph(g: ResolutionGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_resolution_graph(g))


# ---------------------------------------------------------------------------
# families

def from_matrix(weights: Sequence[int], edges: Iterable[tuple[int, int]], genera: Sequence[int] | None = None) -> ResolutionGraph:
    """Build a graph with ids ``v0, v1, ...`` from weights and index-pair edges."""
    genera = genera or [0] * len(weights)
    vs = tuple(Vertex(f"v{i}", int(w), int(gg)) for i, (w, gg) in enumerate(zip(weights, genera)))
    return ResolutionGraph(vs, tuple((f"v{i}", f"v{j}") for i, j in edges))


def chain(n: int, w: int = -2) -> ResolutionGraph:
    if n < 1:
        raise FamilyError("chain needs n >= 1")
    weights = [w] * n if isinstance(w, int) else list(w)
    return from_matrix(weights, [(i, i + 1) for i in range(len(weights) - 1)])


def star(center_weight: int, arms: Sequence[Sequence[int]], center_genus: int = 0) -> ResolutionGraph:
    """A central vertex with chains (``arms``, listed from the center outward)."""
    weights = [center_weight]
    genera = [center_genus]
    edges = []
    for arm in arms:
        prev = 0
        for w in arm:
            weights.append(w)
            genera.append(0)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return from_matrix(weights, edges, genera)


def cone(d: int) -> ResolutionGraph:
    """Minimal resolution of the cone over a smooth plane curve of degree d."""
    if d < 2:
        raise FamilyError("cone needs d >= 2")
    return from_matrix([-d], [], [(d - 1) * (d - 2) // 2])


def dynkin(kind: str, n: int | None = None) -> ResolutionGraph:
    """ADE graphs (all weights -2): ``A``n, ``D``n (n >= 4), ``E``6/7/8."""
    kind = kind.upper()
    if kind == "A":
        return chain(n)
    if kind == "D":
        if n < 4:
            raise FamilyError("D_n needs n >= 4")
        return star(-2, [[-2], [-2], [-2] * (n - 3)])
    if kind == "E":
        if n not in (6, 7, 8):
            raise FamilyError("E_n needs n in 6, 7, 8")
        return star(-2, [[-2], [-2, -2], [-2] * (n - 4)])
    raise FamilyError(f"unknown Dynkin type {kind!r}")


def random_graph(
    n: int,
    weight_range: tuple[int, int] = (-4, -2),
    genus_range: Sequence[int] = (0,),
    seed: int = 0,
    extra_edges: int = 0,
    max_tries: int = 1000,
    minimal: bool = False,
) -> ResolutionGraph:
    """Random connected graph on n vertices, rejection-sampled until negative definite.

    The skeleton is a random tree (each vertex attached to an earlier one);
    ``extra_edges`` further random edges raise the cycle rank.  With
    ``minimal`` set, graphs containing a rational -1 curve are rejected too.
    Deterministic for fixed arguments; ``seed`` may be anything
    ``numpy.random.default_rng`` accepts.
    """
    if n < 1:
        raise FamilyError("random graph needs n >= 1")
    lo, hi = sorted(weight_range)
    genus_choices = list(genus_range)
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        weights = rng.integers(lo, hi + 1, size=n).tolist()
        genera = [int(genus_choices[k]) for k in rng.integers(0, len(genus_choices), size=n)]
        edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
        if n >= 2:
            for _ in range(extra_edges):
                i, j = rng.choice(n, size=2, replace=False).tolist()
                edges.append((min(i, j), max(i, j)))
        try:
            g = from_matrix(weights, edges, genera)
        except NotNegativeDefiniteError:
            continue
        if minimal and not g.is_minimal:
            continue
        return g
    raise FamilyError(f"no negative definite graph found within {max_tries} tries")


def generate_family(params: dict) -> ResolutionGraph:
    """Dispatch on ``params["family"]``: chain, star, cone, dynkin or random."""
    params = dict(params)
    family = params.pop("family")
    try:
        if family == "chain":
            return chain(int(params["n"]), int(params.get("w", -2)))
        if family == "star":
            return star(int(params["center_weight"]), params["arms"], int(params.get("center_genus", 0)))
        if family == "cone":
            return cone(int(params["d"]))
        if family == "dynkin":
            return dynkin(params["kind"], params.get("n"))
        if family == "random":
            return random_graph(
                int(params["n"]),
                tuple(params.get("weight_range", (-4, -2))),
                tuple(params.get("genus_range", (0,))),
                int(params.get("seed", 0)),
                int(params.get("extra_edges", 0)),
                int(params.get("max_tries", 1000)),
                bool(params.get("minimal", False)),
            )
    except KeyError as exc:
        raise FamilyError(f"missing parameter {exc.args[0]!r} for family {family!r}") from None
    except GraphError as exc:
        raise FamilyError(str(exc)) from None
    raise FamilyError(f"unknown family {family!r}")


def edge_multiplicities(g: ResolutionGraph) -> Counter:
    return Counter(g.edges)
