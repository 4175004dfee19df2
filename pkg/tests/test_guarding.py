import random
from collections import deque

import pytest

from gpcops import GpParams, PreconditionError, Subgraph, build_gp, is_connected
from gpcops.cover import build_window
from gpcops.graphs import Graph, induced_subgraph, is_isometric_subgraph, is_tree
from gpcops.guarding import TreeGuard, find_isometric_subtree, gp_inner_outer_tree


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def c12_with_path():
    g = cycle(12)
    tree = Subgraph.make(range(5), [(i, i + 1) for i in range(4)])
    return g, tree


def exhaustive_guard_check(g, tree, start, require_entry_capture=True):
    """Search every robber behaviour for a guard-condition failure.

    Explores the deterministic controller against all robber placements
    and all move sequences (BFS over (cop, robber, established) states).
    Checks: the deficient set shrinks strictly during establishment, the
    condition holds at the end of every later cop turn, and a robber on a
    tree vertex is captured within one cop move.
    """
    tset = set(tree.vertices)
    seen = set()
    frontier = deque()
    for r0 in range(g.n_vertices):
        if r0 == start:
            continue
        frontier.append((start, r0, False))
    while frontier:
        cop, robber, established = frontier.popleft()
        if (cop, robber, established) in seen:
            continue
        seen.add((cop, robber, established))
        guard = TreeGuard(g, tree, cop, validate=False)
        guard.established = established
        before = guard.threatened_component(robber)
        status = guard.step(robber)
        if robber in tset and not status.captured:
            # entry must be punished within one cop move
            if require_entry_capture and established:
                raise AssertionError(
                    f"robber on tree vertex {robber} not captured (cop {cop})")
        if status.captured:
            continue
        now_established = established or guard.established
        if established:
            assert status.gc_holds, (cop, robber)
        elif before:
            # establishment progress: the threatened component loses at
            # least the vertex the cop stepped onto
            after = guard.threatened_component(robber)
            assert after < before, (cop, robber, before, after)
        c1 = guard.cop
        for r1 in g.adjacency[robber] + (robber,):
            if r1 == c1:
                continue  # stepping onto the cop is immediate capture
            frontier.append((c1, r1, now_established))
    return len(seen)


def test_guard_requires_tree(petersen):
    sub = Subgraph.make(range(5), [(i, (i + 1) % 5) for i in range(5)])
    with pytest.raises(PreconditionError):
        TreeGuard(petersen, sub, 0)


def test_guard_requires_isometric():
    g = cycle(8)
    sub = Subgraph.make(range(6), [(i, i + 1) for i in range(5)])
    assert is_tree(sub)
    with pytest.raises(PreconditionError):
        TreeGuard(g, sub, 0)


def test_guard_requires_start_in_tree():
    g, tree = c12_with_path()
    with pytest.raises(PreconditionError):
        TreeGuard(g, tree, 7)


def test_cop_passes_when_robber_far():
    g, tree = c12_with_path()
    guard = TreeGuard(g, tree, 2)
    status = guard.step(8)  # antipodal: no tree vertex is closer to the robber
    assert status.gc_holds and guard.cop == 2 and not status.captured


def test_establishment_walks_toward_deficiency():
    g, tree = c12_with_path()
    guard = TreeGuard(g, tree, 0)
    before = guard.threatened_component(6)  # the 1..4 side is threatened
    assert before == frozenset({1, 2, 3, 4})
    status = guard.step(6)
    assert guard.cop == 1
    assert guard.threatened_component(6) < before
    assert not status.captured


def test_robber_entering_tree_is_captured():
    g, tree = c12_with_path()
    guard = TreeGuard(g, tree, 2)
    assert guard.step(7).gc_holds
    # robber steps onto tree vertex 4: within reach after (GC)
    for robber in (6, 5, 4):
        status = guard.step(robber)
        if status.captured:
            break
    assert status.captured


def test_exhaustive_c12_isometric_path():
    g, tree = c12_with_path()
    assert is_isometric_subgraph(g, tree)
    states = exhaustive_guard_check(g, tree, start=2)
    assert states > 20  # deterministic cop: modest reachable state space


def test_exhaustive_on_gp_window_tree():
    w = build_window(GpParams(9, 3), -18, 18)
    tree = gp_inner_outer_tree(w.graph, 1, span=3)
    assert is_tree(tree) and is_isometric_subgraph(w.graph, tree)
    exhaustive_guard_check(w.graph, tree, start=w.graph.vertex_id("A", 2),
                           require_entry_capture=True)


def test_window_tree_disconnects_cover():
    w = build_window(GpParams(9, 3), -18, 18)
    tree = gp_inner_outer_tree(w.graph, 1, span=3)
    keep = [v for v in range(w.graph.n_vertices) if v not in set(tree.vertices)]
    sub = induced_subgraph(w.graph, keep)
    adj = sub.adjacency()
    comp = {keep[0]}
    frontier = [keep[0]]
    while frontier:
        u = frontier.pop()
        for v in adj[u]:
            if v not in comp:
                comp.add(v)
                frontier.append(v)
    assert len(comp) < len(keep)  # the guarded tree separates the window


def test_find_isometric_subtree_on_random_graphs():
    rng = random.Random(7)
    found = 0
    for _ in range(30):
        n = rng.randint(5, 12)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.35]
        try:
            g = Graph(n, edges)
        except PreconditionError:
            continue
        if not edges or not is_connected(g):
            continue
        tree = find_isometric_subtree(g, rng)
        if tree is None:
            continue
        found += 1
        assert is_tree(tree)
        assert is_isometric_subgraph(g, tree)
    assert found >= 15


@pytest.mark.parametrize("seed", range(8))
def test_exhaustive_guard_on_random_corpus_sample(seed):
    # a small slice of the acceptance criterion's 200-graph corpus
    rng = random.Random(1000 + seed)
    while True:
        n = rng.randint(6, 12)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.3]
        try:
            g = Graph(n, edges)
        except PreconditionError:
            continue
        if not edges or not is_connected(g):
            continue
        tree = find_isometric_subtree(g, rng)
        if tree is not None:
            break
    exhaustive_guard_check(g, tree, start=tree.vertices[0])
