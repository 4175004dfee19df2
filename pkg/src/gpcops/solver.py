"""Exact decision procedure for "do c cops win on G?" by retrograde analysis.

Game rules: cops place first, the robber places second and moves second.
On a cop turn every cop simultaneously moves within its closed
neighborhood (cops may stack); on a robber turn the robber moves within
his closed neighborhood.  Capture is checked after either player's move,
and a robber placed onto a cop is captured immediately.

States are (sorted cop multiset, robber vertex, side to move).  Cop
multisets are ranked combinatorially (stars and bars, colex order), so a
state has a canonical rank in [0, C(nv+c-1, c) * nv * 2).  Labels form
the least fixed point of the win-propagation rules, computed by a
counter-based retrograde sweep that relaxes each edge of the game
digraph exactly once.  Distances are stored in plies (half-moves);
``capture_distance`` converts to cop moves.

Table construction is a pure function of (graph, c); afterwards the
table is immutable and safe for shared reads.
"""

from __future__ import annotations

import enum
import itertools
import json
import time
from dataclasses import dataclass
from math import comb

import numba as nb
import numpy as np

from .errors import BudgetError, PreconditionError
from .graphs import Graph, is_connected

#: Total game states (both sides) allowed by default; ~200M states keeps
#: peak memory within a few GB.
DEFAULT_STATE_BUDGET = 250_000_000


class Side(enum.Enum):
    COP = "cop"
    ROBBER = "robber"


class Label(enum.Enum):
    COP_WIN = "cop_win"
    ROBBER_SAFE = "robber_safe"


@dataclass(frozen=True)
class GameState:
    """(sorted cop multiset, robber vertex, side to move)."""

    cops: tuple[int, ...]
    robber: int
    to_move: Side

    def __post_init__(self):
        if tuple(sorted(self.cops)) != self.cops:
            raise PreconditionError("cop multiset must be sorted ascending")


# -- multiset ranking ---------------------------------------------------------

def config_rank(cops: tuple[int, ...], nv: int) -> int:
    """Colex rank of a sorted cop multiset among C(nv+c-1, c) configs."""
    return sum(comb(v + i, i + 1) for i, v in enumerate(cops))


def config_unrank(rank: int, c: int, nv: int) -> tuple[int, ...]:
    out = [0] * c
    for i in range(c - 1, -1, -1):
        y = nv + i - 1
        while comb(y, i + 1) > rank:
            y -= 1
        out[i] = y - i
        rank -= comb(y, i + 1)
    return tuple(out)


def state_rank(state: GameState, nv: int) -> int:
    """Canonical rank, a bijection onto [0, C(nv+c-1, c) * nv * 2)."""
    p = config_rank(state.cops, nv)
    return (p * nv + state.robber) * 2 + (0 if state.to_move is Side.COP else 1)


def state_unrank(rank: int, c: int, nv: int) -> GameState:
    side = Side.COP if rank % 2 == 0 else Side.ROBBER
    rank //= 2
    return GameState(config_unrank(rank // nv, c, nv), rank % nv, side)


# -- numba kernels -------------------------------------------------------------

@nb.njit(cache=True)
def _enum_configs(nv, c, M):
    """All sorted cop multisets in colex-rank order, shape (M, c)."""
    out = np.empty((M, c), np.int16)
    x = np.zeros(c, np.int64)
    for r in range(M):
        for i in range(c):
            out[r, i] = x[i]
        i = 0
        while i < c:
            limit = x[i + 1] if i + 1 < c else nv - 1
            if x[i] < limit:
                x[i] += 1
                for t in range(i):
                    x[t] = 0
                break
            i += 1
    return out


@nb.njit(cache=True)
def _config_successors(nv, c, M, cfg, indptr, indices, binom):
    """CSR of deduplicated joint-move successors over config ranks.

    Joint moves are enumerated cop by cop over closed neighborhoods,
    re-sorted, colex-ranked and deduplicated; the relation is symmetric,
    so the same arrays serve as predecessor lists.
    """
    counts = np.zeros(M, np.int64)
    maxw = 1
    for p in range(M):
        w = 1
        for i in range(c):
            v = cfg[p, i]
            w *= indptr[v + 1] - indptr[v]
        if w > maxw:
            maxw = w
    tmp = np.empty(maxw, np.int64)
    srt = np.empty(c, np.int64)
    deg = np.empty(c, np.int64)
    pos = np.empty(c, np.int64)
    succ_indptr = np.zeros(M + 1, np.int64)
    succ_indices = np.empty(0, np.int32)
    for phase in range(2):
        if phase == 1:
            for p in range(M):
                succ_indptr[p + 1] = succ_indptr[p] + counts[p]
            succ_indices = np.empty(succ_indptr[M], np.int32)
        for p in range(M):
            w = 1
            for i in range(c):
                v = cfg[p, i]
                deg[i] = indptr[v + 1] - indptr[v]
                pos[i] = 0
                w *= deg[i]
            for t in range(w):
                for i in range(c):
                    srt[i] = indices[indptr[cfg[p, i]] + pos[i]]
                for i in range(1, c):  # insertion sort, c <= 5
                    key = srt[i]
                    m = i - 1
                    while m >= 0 and srt[m] > key:
                        srt[m + 1] = srt[m]
                        m -= 1
                    srt[m + 1] = key
                rank = 0
                for i in range(c):
                    rank += binom[srt[i] + i, i + 1]
                tmp[t] = rank
                i = 0
                while i < c:
                    pos[i] += 1
                    if pos[i] < deg[i]:
                        break
                    pos[i] = 0
                    i += 1
            sub = np.sort(tmp[:w])
            cnt = 0
            prev = -1
            for t in range(w):
                if sub[t] != prev:
                    prev = sub[t]
                    if phase == 1:
                        succ_indices[succ_indptr[p] + cnt] = np.int32(sub[t])
                    cnt += 1
            counts[p] = cnt
    return succ_indptr, succ_indices


@nb.njit(cache=True)
def _retrograde(nv, c, M, cfg, nbr_indptr, nbr_indices,
                succ_indptr, succ_indices, dtm_cop, dtm_rob, counters, queue):
    """Counter-based backward propagation from the capture states.

    dtm arrays hold plies to capture (-1 = not cop-win).  Because the
    move relations are symmetric, successor lists double as predecessor
    lists.  Returns the number of labeled state pops.
    """
    tail = 0
    for p in range(M):
        base = p * nv
        for i in range(c):
            s = base + cfg[p, i]
            if dtm_rob[s] < 0:
                dtm_rob[s] = 0
                queue[tail] = s * 2 + 1
                tail += 1
            if dtm_cop[s] < 0:
                dtm_cop[s] = 0
                queue[tail] = s * 2
                tail += 1
    head = 0
    while head < tail:
        code = queue[head]
        head += 1
        s = code >> 1
        p = s // nv
        r = s - p * nv
        if code & 1:
            # robber-to-move state won: any predecessor cop state wins in d+1
            d = dtm_rob[s] + 1
            for ii in range(succ_indptr[p], succ_indptr[p + 1]):
                s2 = succ_indices[ii] * nv + r
                if dtm_cop[s2] < 0:
                    dtm_cop[s2] = d
                    queue[tail] = s2 * 2
                    tail += 1
        else:
            # cop-to-move state won: robber predecessors lose an escape route
            d = dtm_cop[s] + 1
            base = p * nv
            for ii in range(nbr_indptr[r], nbr_indptr[r + 1]):
                s2 = base + nbr_indices[ii]
                if dtm_rob[s2] < 0:
                    counters[s2] -= 1
                    if counters[s2] == 0:
                        dtm_rob[s2] = d
                        queue[tail] = s2 * 2 + 1
                        tail += 1
    return tail


def _closed_csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    nv = g.n_vertices
    indptr = np.zeros(nv + 1, np.int32)
    rows = []
    for v in range(nv):
        row = sorted(g.adjacency[v] + (v,))
        rows.append(row)
        indptr[v + 1] = indptr[v] + len(row)
    indices = np.fromiter((x for row in rows for x in row), np.int32,
                          count=int(indptr[-1]))
    return indptr, indices


# -- solve tables ---------------------------------------------------------------

@dataclass(frozen=True)
class SolveStats:
    states: int
    iterations: int
    seconds: float
    peak_bytes: int

    def to_json_line(self) -> str:
        return json.dumps({
            "states": self.states,
            "iterations": self.iterations,
            "seconds": round(self.seconds, 4),
            "peak_bytes": self.peak_bytes,
        })


class SolveTable:
    """Win/loss labels with plies-to-capture for every game state."""

    __slots__ = ("graph", "n_cops", "_nv", "_M", "_dtm_cop", "_dtm_rob", "stats")

    def __init__(self, graph: Graph, n_cops: int, dtm_cop: np.ndarray,
                 dtm_rob: np.ndarray, stats: SolveStats):
        self.graph = graph
        self.n_cops = n_cops
        self._nv = graph.n_vertices
        self._M = comb(self._nv + n_cops - 1, n_cops)
        self._dtm_cop = dtm_cop
        self._dtm_rob = dtm_rob
        self.stats = stats

    def _plies_raw(self, state: GameState) -> int:
        if len(state.cops) != self.n_cops:
            raise PreconditionError(
                f"state has {len(state.cops)} cops, table solved for {self.n_cops}")
        s = config_rank(state.cops, self._nv) * self._nv + state.robber
        arr = self._dtm_cop if state.to_move is Side.COP else self._dtm_rob
        return int(arr[s])

    def label(self, state: GameState) -> Label:
        return Label.COP_WIN if self._plies_raw(state) >= 0 else Label.ROBBER_SAFE

    def is_cop_win(self, state: GameState) -> bool:
        return self._plies_raw(state) >= 0

    def plies_to_capture(self, state: GameState) -> int:
        """Half-moves to capture under optimal play from a cop-win state."""
        d = self._plies_raw(state)
        if d < 0:
            raise PreconditionError("state is ROBBER_SAFE")
        return d

    def capture_distance(self, state: GameState) -> int:
        """Cop moves to capture under optimal play; 0 iff already captured."""
        return (self.plies_to_capture(state) + 1) // 2

    def placement_wins(self, cops: tuple[int, ...]) -> bool:
        """True iff this cop placement wins against every robber placement."""
        p = config_rank(tuple(sorted(cops)), self._nv)
        row = self._dtm_rob[p * self._nv:(p + 1) * self._nv]
        if (row >= 0).all():
            return True
        safe = np.nonzero(row < 0)[0]
        return all(int(r) in cops for r in safe)

    def winning_placements(self) -> np.ndarray:
        """Boolean mask over config ranks of placements that win."""
        win = self._dtm_rob.reshape(self._M, self._nv) >= 0
        cfg = _enum_configs(self._nv, self.n_cops, self._M)
        member = np.zeros((self._M, self._nv), bool)
        rows = np.repeat(np.arange(self._M), self.n_cops)
        member[rows, cfg.ravel().astype(np.int64)] = True
        return np.all(win | member, axis=1)


def solve(g: Graph, c: int, max_states: int = DEFAULT_STATE_BUDGET) -> SolveTable:
    """Label the full c-cop game state space on ``g``.

    Raises BudgetError when 2 * C(nv+c-1, c) * nv exceeds ``max_states``
    and PreconditionError for disconnected input.
    """
    if c < 1:
        raise PreconditionError(f"need at least one cop, got c={c}")
    if g.n_vertices == 0:
        raise PreconditionError("empty graph")
    if not is_connected(g):
        raise PreconditionError("solve requires a connected graph")
    nv = g.n_vertices
    M = comb(nv + c - 1, c)
    total = 2 * M * nv
    if total > max_states:
        raise BudgetError(
            f"{g.describe()} with c={c} needs {total} states "
            f"(budget {max_states})", required_states=total)
    t0 = time.perf_counter()
    indptr, indices = _closed_csr(g)
    binom = np.zeros((nv + c + 2, c + 2), np.int64)
    binom[:, 0] = 1
    for a in range(1, nv + c + 2):
        for b in range(1, c + 2):
            binom[a, b] = binom[a - 1, b - 1] + binom[a - 1, b]
    cfg = _enum_configs(nv, c, M)
    succ_indptr, succ_indices = _config_successors(nv, c, M, cfg, indptr,
                                                   indices, binom)
    S = M * nv
    dtm_cop = np.full(S, -1, np.int16)
    dtm_rob = np.full(S, -1, np.int16)
    closed_deg = (indptr[1:] - indptr[:-1])
    # 8-bit escape counters when degrees allow, wider fallback otherwise
    counter_dtype = np.uint8 if int(closed_deg.max()) <= 255 else np.int32
    counters = np.tile(closed_deg.astype(counter_dtype), M)
    queue = np.empty(2 * S, np.int32 if 2 * S < 2**31 else np.int64)
    peak = (dtm_cop.nbytes + dtm_rob.nbytes + counters.nbytes + queue.nbytes
            + succ_indices.nbytes + succ_indptr.nbytes + cfg.nbytes)
    pops = _retrograde(nv, c, M, cfg, indptr, indices, succ_indptr,
                       succ_indices, dtm_cop, dtm_rob, counters, queue)
    seconds = time.perf_counter() - t0
    stats = SolveStats(states=total, iterations=int(pops), seconds=seconds,
                       peak_bytes=int(peak))
    return SolveTable(g, c, dtm_cop, dtm_rob, stats)


def is_copwin(g: Graph, c: int, max_states: int = DEFAULT_STATE_BUDGET,
              table: SolveTable | None = None) -> tuple[bool, tuple[int, ...] | None]:
    """Whether some c-cop placement beats every robber placement.

    Returns (True, witness placement with the smallest canonical rank) or
    (False, None).  The robber places after the cops and moves second;
    placing onto a cop is immediate capture.
    """
    t = table if table is not None else solve(g, c, max_states=max_states)
    ok = t.winning_placements()
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        return False, None
    return True, config_unrank(int(hits[0]), c, g.n_vertices)


@dataclass(frozen=True)
class CopNumberResult:
    graph: str
    cop_number: int | None  # None when every c <= c_max fails
    witness_placement: tuple[int, ...] | None
    stats: tuple[SolveStats, ...]  # one entry per attempted cop count


def cop_number(g: Graph, c_max: int, max_states: int = DEFAULT_STATE_BUDGET) -> CopNumberResult:
    """Smallest c <= c_max with a winning placement, by increasing c."""
    if c_max < 1:
        raise PreconditionError(f"c_max must be >= 1, got {c_max}")
    stats = []
    for c in range(1, c_max + 1):
        t = solve(g, c, max_states=max_states)
        stats.append(t.stats)
        won, witness = is_copwin(g, c, table=t)
        if won:
            return CopNumberResult(g.describe(), c, witness, tuple(stats))
    return CopNumberResult(g.describe(), None, None, tuple(stats))


# -- optimal-policy extraction ---------------------------------------------------

def joint_cop_moves(g: Graph, cops: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All distinct sorted cop multisets reachable in one joint move."""
    choices = [sorted(g.adjacency[v] + (v,)) for v in cops]
    return sorted({tuple(sorted(pick)) for pick in itertools.product(*choices)})


def optimal_cop_move(table: SolveTable, state: GameState) -> tuple[int, ...]:
    """Joint move minimizing the successor's capture distance.

    Ties break toward the successor state with the smallest canonical
    rank.  Raises on ROBBER_SAFE states or when it is not the cops' turn.
    """
    if state.to_move is not Side.COP:
        raise PreconditionError("not the cop player's turn")
    if not table.is_cop_win(state):
        raise PreconditionError("no winning cop move from a ROBBER_SAFE state")
    nv = table.graph.n_vertices
    best: tuple[int, int, tuple[int, ...]] | None = None
    for move in joint_cop_moves(table.graph, state.cops):
        succ = GameState(move, state.robber, Side.ROBBER)
        d = 0 if state.robber in move else table._plies_raw(succ)
        if d < 0:
            continue
        key = (d, state_rank(succ, nv))
        if best is None or key < (best[0], best[1]):
            best = (key[0], key[1], move)
    assert best is not None  # a cop-win state has a winning successor
    return best[2]


def optimal_robber_move(table: SolveTable, state: GameState) -> int:
    """A safe successor when one exists, else the longest-surviving one.

    Ties break toward the smallest vertex id.  Raises when the robber is
    already captured or it is not the robber's turn.
    """
    if state.to_move is not Side.ROBBER:
        raise PreconditionError("not the robber player's turn")
    if state.robber in state.cops:
        raise PreconditionError("robber is already captured")
    g = table.graph
    options = sorted(g.adjacency[state.robber] + (state.robber,))
    best_safe: int | None = None
    best_delay: tuple[int, int] | None = None
    for r2 in options:
        succ = GameState(state.cops, r2, Side.COP)
        d = table._plies_raw(succ)
        if d < 0:
            if best_safe is None:
                best_safe = r2
        elif best_delay is None or -d < best_delay[0]:
            best_delay = (-d, r2)
    if best_safe is not None:
        return best_safe
    assert best_delay is not None
    return best_delay[1]
