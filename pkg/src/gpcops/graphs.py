"""Graph families for pursuit games: generalized Petersen graphs and I-graphs.

GP(n, k) is the cubic graph on outer-rim vertices a_0..a_{n-1} (a cycle),
spokes (a_i, b_i), and inner-rim edges (b_i, b_{i+k}) with indices mod n.
I(n, j, k) generalizes the outer rim to edges (a_i, a_{i+j}).  Vertex ids
follow the fixed scheme a_i -> i and b_i -> n + i so that labels and ids
convert in O(1), including inside cover windows.

All graphs are immutable after construction and safe for shared
concurrent reads; construction is single-threaded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _fast
from .errors import ParameterError, ParseError, PreconditionError

RIM_OUTER = "A"
RIM_INNER = "B"

#: Marker used for the girth of forests and for unreachable distances.
INFINITY = math.inf


@dataclass(frozen=True)
class GpParams:
    """Parameters (n, k) of a generalized Petersen graph, n >= 5, 1 <= k < n/2."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 5:
            raise ParameterError(f"GP(n,k) requires n >= 5, got n={self.n}")
        if not 1 <= self.k or 2 * self.k >= self.n:
            raise ParameterError(
                f"GP(n,k) requires 1 <= k < n/2, got k={self.k} with n={self.n}"
            )

    @property
    def j(self) -> int:
        """Outer-rim step; fixed to 1, which embeds GP(n,k) = I(n,1,k)."""
        return 1

    def describe(self) -> str:
        return f"GP({self.n},{self.k})"


@dataclass(frozen=True)
class IGraphParams:
    """Parameters (n, j, k) of an I-graph, n >= 5, 0 < j < n/2, 0 < k < n/2.

    j is the step on the outer (A) rim and k the step on the inner (B) rim.
    """

    n: int
    j: int
    k: int

    def __post_init__(self):
        if self.n < 5:
            raise ParameterError(f"I(n,j,k) requires n >= 5, got n={self.n}")
        if not 0 < self.j or 2 * self.j >= self.n:
            raise ParameterError(
                f"I(n,j,k) requires 0 < j < n/2, got j={self.j} with n={self.n}"
            )
        if not 0 < self.k or 2 * self.k >= self.n:
            raise ParameterError(
                f"I(n,j,k) requires 0 < k < n/2, got k={self.k} with n={self.n}"
            )

    def describe(self) -> str:
        return f"I({self.n},{self.j},{self.k})"


class Graph:
    """Immutable undirected simple graph with contiguous vertex ids.

    ``labels`` optionally carries a per-vertex (rim, index) pair for the
    two-rim families; ``params`` records the family parameters when the
    graph was built by a family constructor.
    """

    __slots__ = ("n_vertices", "adjacency", "labels", "params",
                 "_indptr", "_indices", "_label_ids", "_edge_set")

    def __init__(self, n_vertices: int,
                 edges: Iterable[tuple[int, int]],
                 labels: Sequence[tuple[str, int]] | None = None,
                 params: GpParams | IGraphParams | None = None):
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n_vertices)]
        for u, v in edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise PreconditionError(f"edge ({u},{v}) outside vertex range")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise PreconditionError(f"duplicate edge ({u},{v})")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        self.n_vertices = n_vertices
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self.labels = tuple(labels) if labels is not None else None
        self.params = params
        self._edge_set = frozenset(seen)
        indptr = np.zeros(n_vertices + 1, np.int32)
        for v in range(n_vertices):
            indptr[v + 1] = indptr[v] + len(self.adjacency[v])
        self._indptr = indptr
        self._indices = np.fromiter(
            (w for nbrs in self.adjacency for w in nbrs), np.int32,
            count=int(indptr[-1]))
        self._label_ids = (
            {lab: v for v, lab in enumerate(self.labels)} if self.labels else None
        )

    # -- basic accessors ---------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self._edge_set)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edge_set)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return self._edge_set

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) adjacency arrays for the numba kernels."""
        return self._indptr, self._indices

    # -- labelled access ---------------------------------------------------

    def vertex_id(self, rim: str, index: int) -> int:
        if self._label_ids is None:
            raise PreconditionError("graph carries no rim labels")
        return self._label_ids[(rim, index)]

    def label_of(self, v: int) -> tuple[str, int]:
        if self.labels is None:
            raise PreconditionError("graph carries no rim labels")
        return self.labels[v]

    def vertex_name(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        rim, index = self.labels[v]
        return f"{'a' if rim == RIM_OUTER else 'b'}{index}"

    def describe(self) -> str:
        if self.params is not None:
            return self.params.describe()
        return f"graph(n={self.n_vertices},m={self.n_edges})"

    def __repr__(self) -> str:
        return f"<Graph {self.describe()}>"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and self.n_vertices == other.n_vertices
                and self._edge_set == other._edge_set)

    def __hash__(self) -> int:
        return hash((self.n_vertices, self._edge_set))


# -- family constructors ----------------------------------------------------

def _rim_labels(n: int) -> list[tuple[str, int]]:
    return [(RIM_OUTER, i) for i in range(n)] + [(RIM_INNER, i) for i in range(n)]


def build_gp(params: GpParams) -> Graph:
    """Construct GP(n, k) with vertices a_i -> i and b_i -> n + i."""
    n, k = params.n, params.k
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph(2 * n, edges, labels=_rim_labels(n), params=params)


def build_igraph(params: IGraphParams) -> Graph:
    """Construct I(n, j, k); for j = 1 the edge set equals build_gp(n, k)."""
    n, j, k = params.n, params.j, params.k
    edges = []
    for i in range(n):
        edges.append((i, (i + j) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph(2 * n, edges, labels=_rim_labels(n), params=params)


def is_connected_igraph(params: IGraphParams) -> bool:
    """Connectivity criterion for I-graphs: gcd(n, j, k) = 1."""
    return math.gcd(params.n, params.j, params.k) == 1


def is_connected(g: Graph) -> bool:
    if g.n_vertices == 0:
        return True
    indptr, indices = g.csr()
    dist = _fast.bfs_multi(indptr, indices, np.array([0], np.int32), g.n_vertices)
    return bool((dist >= 0).all())


# -- metrics ----------------------------------------------------------------

def distances(g: Graph, source: int) -> np.ndarray:
    """BFS hop counts from ``source``; unreachable vertices are inf."""
    if not 0 <= source < g.n_vertices:
        raise PreconditionError(f"vertex {source} outside graph")
    indptr, indices = g.csr()
    d = _fast.bfs_multi(indptr, indices, np.array([source], np.int32), g.n_vertices)
    out = d.astype(np.float64)
    out[d < 0] = INFINITY
    return out


def multi_source_distances(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """Hop counts to the nearest of ``sources`` (int32, -1 unreachable)."""
    indptr, indices = g.csr()
    src = np.asarray(sorted(set(sources)), np.int32)
    return _fast.bfs_multi(indptr, indices, src, g.n_vertices)


def min_degree(g: Graph) -> int:
    if g.n_vertices == 0:
        raise PreconditionError("empty graph")
    return min(len(nbrs) for nbrs in g.adjacency)


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; INFINITY for forests."""
    indptr, indices = g.csr()
    best = _fast.shortest_cycle(indptr, indices, g.n_vertices)
    return INFINITY if best < 0 else int(best)


# -- degree/girth lower bounds and family upper bounds -----------------------

@dataclass(frozen=True)
class BoundReport:
    """Cop-number bounds derived from degree, girth, and graph family."""

    min_degree: int
    girth: int | float
    aigner_fromme_lb: int
    frankl_lb: int
    upper_bound: int | None


def aigner_fromme_bound(delta: int, girth_value: int | float) -> int:
    """Lower bound delta when girth >= 5; otherwise the trivial bound 1."""
    return max(1, delta) if girth_value >= 5 else 1


def frankl_bound(delta: int, girth_value: int | float) -> int:
    """Best bound (delta-1)^t + 1 over t >= 1 with girth >= 8t - 3.

    The underlying inequality is strict, hence the +1.  A finite forest
    always has a vertex of degree <= 1, so infinite girth never meets the
    delta >= 2 hypothesis.
    """
    if delta < 2 or girth_value == INFINITY:
        return 1
    t_max = (int(girth_value) + 3) // 8
    if t_max < 1:
        return 1
    return max((delta - 1) ** t + 1 for t in range(1, t_max + 1))


def lower_bounds(g: Graph) -> BoundReport:
    """Degree/girth lower bounds plus the family upper bound when known."""
    if g.n_vertices == 0:
        raise PreconditionError("empty graph")
    delta = min_degree(g)
    gir = girth(g)
    upper: int | None = None
    if isinstance(g.params, GpParams):
        upper = 4
    elif isinstance(g.params, IGraphParams) and is_connected_igraph(g.params):
        upper = 5
    return BoundReport(
        min_degree=delta,
        girth=gir,
        aigner_fromme_lb=aigner_fromme_bound(delta, gir),
        frankl_lb=frankl_bound(delta, gir),
        upper_bound=upper,
    )


# -- subgraphs ---------------------------------------------------------------

@dataclass(frozen=True)
class Subgraph:
    """A vertex/edge subset of some host graph, edges stored as (u, v), u < v."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Subgraph":
        vs = tuple(sorted(set(vertices)))
        es = tuple(sorted({(u, v) if u < v else (v, u) for u, v in edges}))
        return cls(vs, es)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Subgraph:
    vs = sorted(set(vertices))
    vset = set(vs)
    es = [(u, v) for u, v in g.edges() if u in vset and v in vset]
    return Subgraph.make(vs, es)


def _check_contained(g: Graph, sub: Subgraph) -> None:
    for v in sub.vertices:
        if not 0 <= v < g.n_vertices:
            raise PreconditionError(f"subgraph vertex {v} not in host graph")
    for u, v in sub.edges:
        if u not in set(sub.vertices) or v not in set(sub.vertices):
            raise PreconditionError(f"subgraph edge ({u},{v}) has endpoint outside vertex set")
        if not g.has_edge(u, v):
            raise PreconditionError(f"subgraph edge ({u},{v}) not in host graph")


def subgraph_distances(sub: Subgraph, source: int) -> dict[int, float]:
    """BFS distances within the subgraph; INFINITY for unreachable vertices."""
    adj = sub.adjacency()
    dist = {v: INFINITY for v in sub.vertices}
    dist[source] = 0
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if dist[w] == INFINITY:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def is_tree(sub: Subgraph) -> bool:
    """True iff the subgraph is connected with |E| = |V| - 1."""
    if not sub.vertices:
        return False
    if len(sub.edges) != len(sub.vertices) - 1:
        return False
    dist = subgraph_distances(sub, sub.vertices[0])
    return all(d != INFINITY for d in dist.values())


def is_isometric_subgraph(g: Graph, sub: Subgraph) -> bool:
    """True iff distances inside the subgraph match distances in ``g``.

    The subgraph must be contained in ``g`` and connected.
    """
    _check_contained(g, sub)
    if not sub.vertices:
        raise PreconditionError("empty subgraph")
    inner0 = subgraph_distances(sub, sub.vertices[0])
    if any(d == INFINITY for d in inner0.values()):
        raise PreconditionError("subgraph is not connected")
    for u in sub.vertices:
        inner = subgraph_distances(sub, u)
        outer = distances(g, u)
        for v in sub.vertices:
            if inner[v] != outer[v]:
                return False
    return True


# -- edge-list text format ----------------------------------------------------
#
# First line "p <n_vertices> <n_edges>", then one "u v" pair per line with
# 0-based ids; lines starting with '#' are ignored.

def parse_edge_list(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "p":
                raise ParseError(f"line {lineno}: expected header 'p <n> <m>', got {line!r}")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer header fields in {line!r}") from None
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id in {line!r}") from None
    if header is None:
        raise ParseError("missing 'p <n> <m>' header line")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} were given")
    try:
        return Graph(n, edges)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n_vertices} {g.n_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def load_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def dump_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
