"""Guarding a finite isometric subtree of a graph with a single cop.

The guard keeps the condition that every tree vertex is at least as close
to the cop (within the tree) as it is to the robber (within the whole
graph).  Vertices violating that condition form the deficient set; for an
isometric subtree the deficient set always lies inside one component of
the tree minus the cop, so stepping toward it shrinks it strictly.  Once
the condition holds at the end of a cop turn, one step per turn restores
it forever, and a robber entering the tree is captured immediately or on
the cop's next move.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import PreconditionError
from .graphs import (
    Graph,
    Subgraph,
    induced_subgraph,
    is_isometric_subgraph,
    is_tree,
    multi_source_distances,
    subgraph_distances,
)


@dataclass(frozen=True)
class GuardStatus:
    """Snapshot of the guard at the end of a cop turn."""

    guarded_tree: Subgraph
    cop_position: int
    gc_holds: bool
    deficient_set: frozenset[int]
    captured: bool = False


class TreeGuard:
    """Single-cop controller guarding a finite isometric subtree.

    ``step`` consumes the robber's current vertex and performs one cop
    turn (a move within the tree, a capture, or a pass), returning the
    resulting :class:`GuardStatus`.
    """

    def __init__(self, g: Graph, tree: Subgraph, start: int, validate: bool = True):
        if validate:
            if not is_tree(tree):
                raise PreconditionError("guarded subgraph must be a tree")
            if not is_isometric_subgraph(g, tree):
                raise PreconditionError("guarded tree must be isometric in the host graph")
        if start not in set(tree.vertices):
            raise PreconditionError(f"start vertex {start} not in the guarded tree")
        self.graph = g
        self.tree = tree
        self.cop = start
        self.established = False
        self._tree_adj = tree.adjacency()
        self._tree_dist = {v: subgraph_distances(tree, v) for v in tree.vertices}
        self._tree_set = set(tree.vertices)

    def deficient_set(self, robber: int) -> frozenset[int]:
        """Tree vertices strictly closer to the robber than to the cop."""
        host = multi_source_distances(self.graph, [robber])
        d_cop = self._tree_dist[self.cop]
        return frozenset(
            v for v in self.tree.vertices
            if host[v] >= 0 and d_cop[v] > host[v]
        )

    def threatened_component(self, robber: int) -> frozenset[int]:
        """Vertices of the component of T - {cop} holding the deficient set.

        This is the quantity that shrinks strictly on every establishment
        step (it always loses at least the vertex the cop steps onto);
        empty when the guarding condition holds.
        """
        deficient = self.deficient_set(robber)
        if not deficient:
            return frozenset()
        door = self._first_step(next(iter(deficient)))
        comp = {v for v in self.tree.vertices
                if v != self.cop and self._tree_dist[door][v] < self._tree_dist[self.cop][v]}
        if not deficient <= comp:
            raise AssertionError("deficient set spans several components")
        return frozenset(comp)

    def _first_step(self, target: int) -> int:
        """Unique tree neighbor of the cop on the tree path to ``target``."""
        d = self._tree_dist[self.cop][target]
        for w in self._tree_adj[self.cop]:
            if self._tree_dist[w][target] == d - 1:
                return w
        raise AssertionError("tree path step not found")

    def step(self, robber: int) -> GuardStatus:
        """One cop turn against the robber's current position."""
        if robber in self._tree_set and self._tree_dist[self.cop][robber] <= 1:
            self.cop = robber
            return GuardStatus(self.tree, self.cop, True, frozenset(), captured=True)
        deficient = self.deficient_set(robber)
        if not deficient:
            self.established = True
            return GuardStatus(self.tree, self.cop, True, deficient)
        steps = {self._first_step(u) for u in deficient}
        if len(steps) != 1:
            # contradicts the one-component property of isometric subtrees
            raise AssertionError("deficient set spans several components")
        self.cop = steps.pop()
        after = self.deficient_set(robber)
        if not after:
            self.established = True
        return GuardStatus(self.tree, self.cop, len(after) == 0, after)


def find_isometric_subtree(g: Graph, rng: random.Random,
                           attempts: int = 30) -> Subgraph | None:
    """Search for a verified isometric subtree with at least one edge.

    Proposes random geodesics and geodesic stars, keeping only proposals
    that verify as isometric trees.  Returns None when nothing larger
    than a single edge is found within the attempt budget.
    """
    n = g.n_vertices
    if n < 2:
        return None
    best: Subgraph | None = None
    for _ in range(attempts):
        u = rng.randrange(n)
        v = rng.randrange(n)
        path = _geodesic(g, u, v, rng)
        if path is None:
            continue
        vertices = set(path)
        edges = set(zip(path, path[1:]))
        # try to grow the geodesic into a star through a random hub
        if len(path) >= 3 and rng.random() < 0.7:
            hub = path[len(path) // 2]
            w = rng.randrange(n)
            extra = _geodesic(g, hub, w, rng)
            if extra is not None:
                evs = set(extra)
                if evs & vertices == {hub}:
                    vertices |= evs
                    edges |= set(zip(extra, extra[1:]))
        sub = Subgraph.make(vertices, edges)
        if not is_tree(sub):
            continue
        if not is_isometric_subgraph(g, sub):
            continue
        if best is None or len(sub.vertices) > len(best.vertices):
            best = sub
    if best is not None and len(best.vertices) >= 2:
        return best
    return None


def _geodesic(g: Graph, u: int, v: int, rng: random.Random) -> list[int] | None:
    """A shortest u-v path, choosing uniformly among predecessor options."""
    dist = multi_source_distances(g, [u])
    if dist[v] < 0:
        return None
    path = [v]
    cur = v
    while cur != u:
        options = [w for w in g.adjacency[cur] if dist[w] == dist[cur] - 1]
        cur = rng.choice(options)
        path.append(cur)
    path.reverse()
    return path


def gp_inner_outer_tree(window_graph: Graph, base_index: int, span: int = 3) -> Subgraph:
    """The tree on a_{i}..a_{i+span-1}, b_{i}..b_{i+span-1} of a cover window.

    For GP(infinity, k) windows with span = k this is the isometric
    subtree whose removal disconnects the cover: the outer path plus one
    spoke per index.
    """
    ids = []
    edges = []
    for t in range(span):
        a = window_graph.vertex_id("A", base_index + t)
        b = window_graph.vertex_id("B", base_index + t)
        ids.extend([a, b])
        edges.append((a, b))
        if t + 1 < span:
            edges.append((a, window_graph.vertex_id("A", base_index + t + 1)))
    return Subgraph.make(ids, edges)


__all__ = ["GuardStatus", "TreeGuard", "find_isometric_subtree", "gp_inner_outer_tree"]
