"""Robber policies and the deterministic simulation harness.

``simulate`` alternates cop turns (from a controller) and robber turns
(from a policy), cops first, and records every ply into a
:class:`gpcops.trace.GameTrace`.  Simulations are single-threaded and
deterministic; independent simulations can run concurrently.
"""

from __future__ import annotations

import random

from .errors import PreconditionError
from .graphs import Graph, GpParams, multi_source_distances
from .solver import (
    DEFAULT_STATE_BUDGET,
    GameState,
    Side,
    SolveTable,
    optimal_robber_move,
    solve,
)
from .trace import (
    ACTOR_COPS,
    ACTOR_ROBBER,
    GameTrace,
    MoveRecord,
    OUTCOME_CAPTURE,
    OUTCOME_PUSHED_OUT,
    OUTCOME_TURN_LIMIT,
)


class IllegalMoveError(PreconditionError):
    """A pawn move outside its closed neighborhood; carries the partial trace."""

    def __init__(self, message: str, trace: GameTrace | None = None):
        super().__init__(message)
        self.trace = trace


def _encode(board: Graph, v: int):
    if board.labels is not None:
        rim, idx = board.labels[v]
        return [rim, idx]
    return v


class ScriptedRobber:
    """Plays a fixed vertex sequence: placement first, then one move per
    turn, passing once the script is exhausted.

    Entries are vertex ids or (rim, index) labels; labels are resolved
    against the live board each turn, so scripts survive window rebuilds.
    """

    def __init__(self, vertices: list):
        if not vertices:
            raise PreconditionError("scripted robber needs at least a placement")
        self.vertices = list(vertices)
        self._i = 0

    def describe(self) -> str:
        return f"scripted({len(self.vertices)})"

    @staticmethod
    def _resolve(view, spec) -> int:
        if isinstance(spec, tuple):
            return view.board.vertex_id(*spec)
        return spec

    def place(self, view) -> int:
        self._i = 1
        return self._resolve(view, self.vertices[0])

    def move(self, view, robber: int) -> int:
        if self._i >= len(self.vertices):
            return robber
        v = self._resolve(view, self.vertices[self._i])
        self._i += 1
        return v


class RandomRobber:
    """Uniform random placement and moves from a seeded generator."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def describe(self) -> str:
        return f"random({self.seed})"

    def place(self, view) -> int:
        return self._rng.choice(sorted(view.placements))

    def move(self, view, robber: int) -> int:
        options = sorted(view.board.adjacency[robber] + (robber,))
        return self._rng.choice(options)


class GreedyRobber:
    """Maximizes hop distance to the nearest visible cop, smallest id on ties."""

    def describe(self) -> str:
        return "greedy"

    @staticmethod
    def _score(dist, v) -> float:
        d = int(dist[v])
        return float("inf") if d < 0 else float(d)

    def place(self, view) -> int:
        dist = multi_source_distances(view.board, view.cops)
        return max(sorted(view.placements), key=lambda v: self._score(dist, v))

    def move(self, view, robber: int) -> int:
        dist = multi_source_distances(view.board, view.cops)
        options = sorted(view.board.adjacency[robber] + (robber,))
        return max(options, key=lambda v: self._score(dist, v))


class OptimalRobber:
    """Table-driven adversary: plays the quotient game optimally and lifts
    the chosen move when the arena is a cover window."""

    def __init__(self, max_states: int = DEFAULT_STATE_BUDGET,
                 table: SolveTable | None = None):
        self.max_states = max_states
        self._table = table

    def describe(self) -> str:
        return "optimal"

    def _ensure_table(self, view) -> SolveTable:
        qgraph, qcops, _ = view.quotient_view(None)
        if self._table is None:
            self._table = solve(qgraph, len(qcops), max_states=self.max_states)
        return self._table

    def place(self, view) -> int:
        # the cops move first after placement, so judge placements with
        # the cop player to move
        t = self._ensure_table(view)
        qgraph, qcops, _ = view.quotient_view(None)
        cops = tuple(sorted(qcops))
        best_safe = None
        best_delay = None
        for r in range(qgraph.n_vertices):
            if r in cops:
                continue
            st = GameState(cops, r, Side.COP)
            if not t.is_cop_win(st):
                best_safe = r if best_safe is None else best_safe
            else:
                d = t.plies_to_capture(st)
                if best_delay is None or d > best_delay[0]:
                    best_delay = (d, r)
        target = best_safe if best_safe is not None else best_delay[1]
        return view.controller.central_board_vertex(target)

    def move(self, view, robber: int) -> int:
        t = self._ensure_table(view)
        _, qcops, qrobber = view.quotient_view(robber)
        st = GameState(tuple(sorted(qcops)), qrobber, Side.ROBBER)
        target = optimal_robber_move(t, st)
        return view.controller.lift_quotient_move(robber, target)


class BoardView:
    """What a robber policy may observe on its turn."""

    def __init__(self, controller):
        self.controller = controller

    @property
    def board(self) -> Graph:
        return self.controller.board()

    @property
    def cops(self) -> tuple[int, ...]:
        return self.controller.visible_cops()

    @property
    def placements(self) -> list[int]:
        return self.controller.robber_placements()

    def quotient_view(self, robber_id: int | None):
        return self.controller.quotient_view(robber_id)


def _robber_residue_step_ok(controller, prev: int, new: int) -> bool:
    """On GP windows the robber's index residue mod k moves by at most 1.

    Quotient indices wrap mod n, so the invariant only reads off cover
    windows, where indices are absolute.
    """
    base = getattr(controller, "base", None)
    if controller.arena != "window" or not isinstance(base, GpParams) or base.k < 2:
        return True
    board = controller.board()
    _, i_prev = board.labels[prev]
    _, i_new = board.labels[new]
    delta = (i_new - i_prev) % base.k
    return delta in (0, 1, base.k - 1)


def simulate(controller, robber_policy, max_turns: int | None = None) -> GameTrace:
    """Run controller vs policy to CAPTURE, PUSHED_OUT, or the turn limit.

    A turn is one cop move plus one robber move; capture is checked after
    each half-move.  Default turn budget is 50 * n.
    """
    if max_turns is None:
        max_turns = 50 * controller.turn_scale
    view = BoardView(controller)
    trace = GameTrace(
        graph=controller.describe(),
        params=controller.params_dict(),
        placements=list(controller.placement_records()),
        metadata=controller.metadata(),
    )
    trace.metadata["robber_policy"] = robber_policy.describe()
    trace.metadata["max_turns"] = max_turns

    board = controller.board()
    robber = robber_policy.place(view)
    if not 0 <= robber < board.n_vertices:
        raise IllegalMoveError(f"robber placement {robber} outside the board", trace)
    trace.placements.append({"pawn": "robber", "vertex": _encode(board, robber)})

    if controller.is_captured(robber):
        trace.outcome = OUTCOME_CAPTURE
        return trace
    controller.begin(robber)

    outcome = OUTCOME_TURN_LIMIT
    for _ in range(max_turns):
        result = controller.cop_turn(robber)
        robber = result.robber_id
        trace.turns.append(MoveRecord(ACTOR_COPS, result.moves,
                                      result.phase, result.gc))
        if result.captured:
            outcome = OUTCOME_CAPTURE
            break
        board = controller.board()
        new = robber_policy.move(view, robber)
        legal = new == robber or board.has_edge(robber, new)
        if not legal:
            trace.outcome = OUTCOME_TURN_LIMIT
            raise IllegalMoveError(
                f"robber move {robber} -> {new} is not pass-or-adjacent", trace)
        if not _robber_residue_step_ok(controller, robber, new):
            raise IllegalMoveError(
                "robber move changes its index residue by more than one", trace)
        trace.turns.append(MoveRecord(ACTOR_ROBBER, [{
            "pawn": "robber",
            "from": _encode(board, robber),
            "to": _encode(board, new),
        }], None, None))
        robber = controller.observe_robber(robber, new)
        if controller.is_captured(robber):
            outcome = OUTCOME_CAPTURE
            break
        if controller.push_outcome(robber):
            outcome = OUTCOME_PUSHED_OUT
            break
    trace.outcome = outcome
    return trace


def parse_policy(spec: str, max_states: int = DEFAULT_STATE_BUDGET):
    """Policy factory from a CLI spec: optimal | greedy | random:SEED |
    scripted:a1,b-2,... (names resolved against the live board)."""
    s = spec.strip().lower()
    if s == "optimal":
        return OptimalRobber(max_states=max_states)
    if s == "greedy":
        return GreedyRobber()
    if s.startswith("random:"):
        try:
            return RandomRobber(int(s.split(":", 1)[1]))
        except ValueError:
            raise PreconditionError(f"bad random seed in policy spec {spec!r}") from None
    if s == "random":
        return RandomRobber(0)
    if s.startswith("scripted:"):
        names = [t for t in s.split(":", 1)[1].split(",") if t]
        return ScriptedRobber([_vertex_spec(t) for t in names])
    raise PreconditionError(f"unknown robber policy {spec!r}")


def _vertex_spec(token: str):
    token = token.strip()
    if token[:1] in ("a", "b"):
        rim = "A" if token[0] == "a" else "B"
        try:
            return (rim, int(token[1:]))
        except ValueError:
            raise PreconditionError(f"unknown vertex name {token!r}") from None
    try:
        return int(token)
    except ValueError:
        raise PreconditionError(f"unknown vertex name {token!r}") from None
