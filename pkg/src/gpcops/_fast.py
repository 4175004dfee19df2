"""Numba kernels for hot paths: BFS distances and shortest-cycle search.

All kernels operate on CSR adjacency (indptr int32, indices int32) as
stored by :class:`gpcops.graphs.Graph`.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def bfs_multi(indptr, indices, sources, n):
    """Hop counts from the nearest source; -1 marks unreachable vertices."""
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    tail = 0
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for ii in range(indptr[u], indptr[u + 1]):
            v = indices[ii]
            if dist[v] < 0:
                dist[v] = du
                queue[tail] = v
                tail += 1
    return dist


@nb.njit(cache=True)
def shortest_cycle(indptr, indices, n):
    """Length of a shortest cycle, or -1 if the graph is a forest.

    BFS from every root; a non-tree edge seen at depth d closes a walk of
    length dist[u] + dist[v] + 1 through the root, which is an upper bound
    that is attained exactly when the root lies on a shortest cycle.
    """
    best = -1
    dist = np.empty(n, np.int32)
    parent = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for root in range(n):
        dist[:] = -1
        dist[root] = 0
        parent[root] = -1
        queue[0] = root
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if best >= 0 and 2 * du >= best:
                break  # deeper layers can only close walks of length >= best
            for ii in range(indptr[u], indptr[u + 1]):
                v = indices[ii]
                if dist[v] < 0:
                    dist[v] = du + 1
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
                elif parent[u] != v and parent[v] != u:
                    cand = du + dist[v] + 1
                    if best < 0 or cand < best:
                        best = cand
    return best
