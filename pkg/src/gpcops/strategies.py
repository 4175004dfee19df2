"""Executable cop strategies played on cover windows.

Each controller drives one joint cop move per turn from the observable
state (squad leads, robber position) and emits per-turn phase and guard
annotations.  The window strategies (two-squad push) play directly on a
cover window against a window robber; the quotient strategies (four-cop,
three-cop GP(n,3), five-cop I-graph) play on the finite graph while
internally tracking one fixed lift of the robber and projecting every
lead move down through the covering map.

The push machinery: one squad (the chaser) acquires an index congruent
to the robber's modulo the inner step, matches rim, and thereafter
mirrors or closes so the robber can never cross it; the other squad (the
pusher) walks the outer rim from strictly behind, re-picking its lead
whenever the robber slips past.  The robber then either runs in the push
direction without bound or is captured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .cover import (
    CoverWindow,
    SquadState,
    build_quotient,
    build_window,
    default_half_width,
    member_vertices,
    reselect_lead,
    rim_step,
)
from .errors import ParameterError, PreconditionError, WindowExhausted
from .graphs import (
    RIM_INNER,
    RIM_OUTER,
    GpParams,
    Graph,
    IGraphParams,
    Subgraph,
    is_connected_igraph,
    multi_source_distances,
)
from .guarding import TreeGuard, gp_inner_outer_tree

PHASE_CHASE = "CONGRUENCE_CHASE"
PHASE_PARITY = "PARITY_MATCH"
PHASE_PUSH = "PUSH"
PHASE_ESTABLISH = "ESTABLISH"
PHASE_GUARD = "GUARD"
PHASE_CAPTURE = "CAPTURE"

#: Minimum head start (in index units) of the robber over the guarded
#: tree in the GP(n,3) strategy; establishment needs at most 6 cop turns.
GUARD_GAP = 8


@dataclass
class TurnResult:
    moves: list[dict]
    phase: str | None
    gc: bool | None
    captured: bool
    robber_id: int


def _nearest_on_side(index: int, target: int, step: int, side: int,
                     window: CoverWindow) -> int:
    """Nearest index congruent to ``index`` mod ``step`` strictly on one
    side of ``target`` (side +1: below, -1: above)."""
    if side > 0:
        x = target - 1 - ((target - 1 - index) % step)
    else:
        x = target + 1 + ((index - target - 1) % step)
    if not window.contains_index(x):
        raise WindowExhausted(
            f"no member index near {target} on side {side} inside window")
    return x


def _toward_or_mirror(base, squad: SquadState, modulus: int,
                      prev_idx: int, cur_rim: str, cur_idx: int) -> tuple[str, int]:
    """One congruence-and-rim-preserving move of a matched squad lead.

    Mirrors the robber's rim switches by a spoke one turn late; on the
    shared rim it steps toward the robber when the rim step preserves the
    lead's residue, and mirrors the robber's index delta otherwise.
    """
    if cur_rim != squad.rim:
        # the robber's last move was a spoke (index unchanged), follow it
        return cur_rim, squad.lead_index
    step = rim_step(base, cur_rim)
    if step % modulus == 0:
        gap = cur_idx - squad.lead_index
        if abs(gap) > step:
            return cur_rim, squad.lead_index + (step if gap > 0 else -step)
        return cur_rim, squad.lead_index  # one step would cross: hold
    return cur_rim, squad.lead_index + (cur_idx - prev_idx)


class _PushPair:
    """Two squads driving the robber's index in the ``sign`` direction.

    style "spread": leads start at index 0 and walk +1 / -1 during the
    chase (the two-squad weak-cop opening).  style "drive": both leads
    start strictly behind the robber and climb in the push direction,
    and the chaser is re-picked behind the robber when it matches.
    """

    def __init__(self, base: GpParams, sign: int, squad_ids: tuple[str, str],
                 style: str, reselect_chaser: bool):
        self.base = base
        self.sign = sign
        self.style = style
        self.reselect_chaser = reselect_chaser
        self.squads = [SquadState(0, RIM_OUTER, squad_ids[0]),
                       SquadState(0, RIM_OUTER, squad_ids[1])]
        self.chaser_i: int | None = None
        self.phase = PHASE_CHASE
        self.prev_robber: tuple[str, int] | None = None
        self.relabels: dict[str, tuple[str, int]] = {}
        self.chase_turns = 0

    # -- plumbing ---------------------------------------------------------

    def _set(self, i: int, squad: SquadState) -> None:
        self.squads[i] = squad

    def _relabel(self, i: int, new_index: int) -> None:
        sq = self.squads[i]
        if new_index != sq.lead_index:
            self.relabels.setdefault(sq.squad_id, (sq.rim, sq.lead_index))
            self._set(i, replace(sq, lead_index=new_index))

    def begin(self, window: CoverWindow, r_rim: str, r_idx: int) -> None:
        if self.style == "drive":
            step = self.base.k * self.base.n
            for i in range(2):
                self._relabel(i, _nearest_on_side(
                    self.squads[i].lead_index, r_idx, step, self.sign, window))
        self.prev_robber = (r_rim, r_idx)

    def pull_into(self, window: CoverWindow, r_idx: int) -> None:
        """After a window rebuild, bring stranded leads back inside,
        preserving residues mod k*n and each lead's side of the robber."""
        step = self.base.k * self.base.n
        for i, sq in enumerate(self.squads):
            if not window.contains_index(sq.lead_index):
                side = 1 if sq.lead_index < r_idx else -1
                self._relabel(i, _nearest_on_side(
                    sq.lead_index, r_idx, step, side, window))

    def quotient_adjacent(self, squad: SquadState, r_rim: str, r_idx: int) -> bool:
        """True when some squad member sits next to the robber's vertex."""
        n = self.base.n
        d = (r_idx - squad.lead_index) % n
        if squad.rim == r_rim:
            step = rim_step(self.base, r_rim)
            return d == step % n or d == (-step) % n
        return d == 0

    def _capture_move(self, squad: SquadState, r_rim: str, r_idx: int) -> SquadState:
        n = self.base.n
        if squad.rim != r_rim:
            return replace(squad, rim=r_rim)
        step = rim_step(self.base, r_rim)
        delta = step if (r_idx - squad.lead_index) % n == step % n else -step
        return replace(squad, lead_index=squad.lead_index + delta)

    # -- the joint move -----------------------------------------------------

    def cop_turn(self, window: CoverWindow, r_rim: str, r_idx: int
                 ) -> tuple[list[tuple], bool]:
        """Compute this pair's moves; returns (move tuples, captured).

        Move tuples are (squad_id, from_label, to_label, relabel_from).
        All state changes are committed only after every new lead index
        has been checked against the window, so a WindowExhausted raise
        leaves the pair consistent for a retry on a rebuilt window.
        """
        for i, sq in enumerate(self.squads):
            if self.quotient_adjacent(sq, r_rim, r_idx):
                new = self._capture_move(sq, r_rim, r_idx)
                window.id_of(new.rim, new.lead_index)  # bounds check
                moves = []
                for t, other in enumerate(self.squads):
                    tgt = new if t == i else other
                    moves.append(self._move_tuple(other, tgt))
                self._set(i, new)
                self.phase = PHASE_CAPTURE
                self.prev_robber = (r_rim, r_idx)
                return moves, True
        if self.chaser_i is None:
            result = self._chase_turn(window, r_rim, r_idx)
        else:
            result = self._push_turn(window, r_rim, r_idx)
        self.prev_robber = (r_rim, r_idx)
        return result, False

    def _move_tuple(self, old: SquadState, new: SquadState) -> tuple:
        # "from" is the (possibly re-picked) lead's pre-move position;
        # relabel carries the previous lead so replays can track the swap
        relabel = self.relabels.pop(old.squad_id, None)
        return (old.squad_id, (old.rim, old.lead_index),
                (new.rim, new.lead_index), relabel)

    def _chase_turn(self, window, r_rim, r_idx) -> list[tuple]:
        k = self.base.k
        hit = None
        for i, sq in enumerate(self.squads):
            if (sq.lead_index - r_idx) % k == 0:
                hit = i
                break
        if hit is None:
            self.chase_turns += 1
            deltas = (1, -1) if self.style == "spread" else (self.sign, self.sign)
            news = []
            for i, sq in enumerate(self.squads):
                ni = sq.lead_index + deltas[i]
                window.id_of(sq.rim, ni)
                news.append(replace(sq, lead_index=ni))
            moves = [self._move_tuple(self.squads[i], news[i]) for i in range(2)]
            self.squads = news
            self.phase = PHASE_CHASE
            return moves
        # congruence achieved: fix roles, match rim, engage the pusher
        self.chaser_i = hit
        chaser = self.squads[hit]
        if self.reselect_chaser:
            sel = reselect_lead(chaser, r_idx, self.base.k, window, self.sign)
            if sel.lead_index != chaser.lead_index:
                self._relabel(hit, sel.lead_index)
                chaser = self.squads[hit]
        new_chaser = replace(chaser, rim=r_rim) if r_rim != chaser.rim else chaser
        window.id_of(new_chaser.rim, new_chaser.lead_index)
        pi = 1 - hit
        pusher = self.squads[pi]
        sel = reselect_lead(pusher, r_idx, self.base.k, window, self.sign)
        if sel.lead_index != pusher.lead_index:
            self._relabel(pi, sel.lead_index)
            pusher = self.squads[pi]
        new_pusher = replace(pusher, lead_index=pusher.lead_index + self.sign)
        window.id_of(new_pusher.rim, new_pusher.lead_index)
        ordered = {hit: (chaser, new_chaser), pi: (pusher, new_pusher)}
        moves = [self._move_tuple(*ordered[i]) for i in range(2)]
        self._set(hit, new_chaser)
        self._set(pi, new_pusher)
        self.phase = PHASE_PARITY
        return moves

    def _push_turn(self, window, r_rim, r_idx) -> list[tuple]:
        chaser = self.squads[self.chaser_i]
        _, prev_idx = self.prev_robber
        nrim, nidx = _toward_or_mirror(self.base, chaser, self.base.k,
                                       prev_idx, r_rim, r_idx)
        new_chaser = replace(chaser, rim=nrim, lead_index=nidx)
        window.id_of(nrim, nidx)
        pi = 1 - self.chaser_i
        pusher = self.squads[pi]
        if self.sign * pusher.lead_index >= self.sign * r_idx:
            sel = reselect_lead(pusher, r_idx, self.base.k, window, self.sign)
            self._relabel(pi, sel.lead_index)
            pusher = self.squads[pi]
        new_pusher = replace(pusher, lead_index=pusher.lead_index + self.sign)
        window.id_of(new_pusher.rim, new_pusher.lead_index)
        ordered = {self.chaser_i: (chaser, new_chaser), pi: (pusher, new_pusher)}
        moves = [self._move_tuple(*ordered[i]) for i in range(2)]
        self._set(self.chaser_i, new_chaser)
        self._set(pi, new_pusher)
        self.phase = PHASE_PUSH
        return moves


def _label_pair(label: tuple[str, int]) -> list:
    return [label[0], label[1]]


class _WindowMixin:
    """Shared window bookkeeping: recentering and member materialization."""

    def _recenter(self, r_idx: int) -> None:
        w = self.window
        self.window = CoverWindow(self.base, r_idx - self._half_width,
                                  r_idx + self._half_width, quotient=w.quotient)
        for pair in self._pairs():
            pair.pull_into(self.window, r_idx)
        self._after_recenter(r_idx)

    def _after_recenter(self, r_idx: int) -> None:
        pass

    def _needs_recenter(self, idx: int) -> bool:
        margin = (max(self.base.j, self.base.k) + 2) * self.base.n
        return idx - self.window.lo < margin or self.window.hi - idx < margin


class WindowPushController(_WindowMixin):
    """Two squads on a cover window: the weak-cop game and its one-sided
    force-right refinement."""

    arena = "window"

    def __init__(self, base: GpParams, forceright: bool = False, sign: int = 1,
                 half_width: int | None = None):
        self.base = base
        self._half_width = half_width or default_half_width(base)
        self.window = build_window(base, -self._half_width, self._half_width)
        span = 2 * self._half_width
        self.push_low = -self._half_width + span // 4
        self.push_high = -self._half_width + (3 * span) // 4
        if forceright:
            self.push_sides = ("high",) if sign > 0 else ("low",)
        else:
            self.push_sides = ("low", "high")
        self.pair = _PushPair(base, sign, ("S1", "S2"),
                              style="drive" if forceright else "spread",
                              reselect_chaser=forceright)
        self.n_cops = 2
        self.turn_scale = base.n

    def _pairs(self):
        return (self.pair,)

    def describe(self) -> str:
        return self.base.describe()

    def params_dict(self) -> dict:
        return {"n": self.base.n, "k": self.base.k}

    def metadata(self) -> dict:
        return {"arena": "window", "window": [self.window.lo, self.window.hi],
                "push_low": self.push_low, "push_high": self.push_high,
                "push_sides": list(self.push_sides)}

    def board(self) -> Graph:
        return self.window.graph

    def visible_cops(self) -> tuple[int, ...]:
        out = []
        for sq in self.pair.squads:
            out.extend(member_vertices(self.window, sq))
        return tuple(sorted(set(out)))

    def placement_records(self) -> list[dict]:
        return [{"pawn": sq.squad_id, "vertex": _label_pair((sq.rim, sq.lead_index))}
                for sq in self.pair.squads]

    def robber_placements(self) -> list[int]:
        ids = []
        for idx in range(self.push_low + 1, self.push_high):
            ids.append(self.window.id_of(RIM_OUTER, idx))
            ids.append(self.window.id_of(RIM_INNER, idx))
        return sorted(ids)

    def begin(self, robber_id: int) -> None:
        rim, idx = self.window.label_of(robber_id)
        self.pair.begin(self.window, rim, idx)

    def is_captured(self, robber_id: int) -> bool:
        rim, idx = self.window.label_of(robber_id)
        return any(sq.rim == rim and (idx - sq.lead_index) % self.base.n == 0
                   for sq in self.pair.squads)

    def cop_turn(self, robber_id: int) -> TurnResult:
        rim, idx = self.window.label_of(robber_id)
        if self._needs_recenter(idx):
            self._recenter(idx)
            robber_id = self.window.id_of(rim, idx)
        for _ in range(3):
            try:
                tuples, captured = self.pair.cop_turn(self.window, rim, idx)
                break
            except WindowExhausted:
                self._recenter(idx)
                robber_id = self.window.id_of(rim, idx)
        else:
            raise WindowExhausted("window rebuild did not recover the leads")
        moves = []
        for sid, frm, to, relabel in tuples:
            rec = {"pawn": sid, "from": _label_pair(frm), "to": _label_pair(to)}
            if relabel is not None:
                rec["relabel_from"] = _label_pair(relabel)
            moves.append(rec)
        return TurnResult(moves, self.pair.phase, None, captured, robber_id)

    def observe_robber(self, prev_id: int, new_id: int) -> int:
        return new_id

    def push_outcome(self, robber_id: int) -> bool:
        _, idx = self.window.label_of(robber_id)
        if "high" in self.push_sides and idx >= self.push_high:
            return True
        if "low" in self.push_sides and idx <= self.push_low:
            return True
        return False

    # hooks for the table-driven robber policy
    def quotient_view(self, robber_id: int | None):
        q = self.window.quotient
        cops = tuple(sorted(self.window.project_label(sq.rim, sq.lead_index)
                            for sq in self.pair.squads))
        r = None if robber_id is None else self.window.project(robber_id)
        return q, cops, r

    def lift_quotient_move(self, robber_id: int, q_target: int) -> int:
        q_from = self.window.project(robber_id)
        if q_target == q_from:
            return robber_id
        return self.window.lift_move((q_from, q_target), robber_id)

    def central_board_vertex(self, q_vertex: int) -> int:
        rim, qi = self.window.quotient.label_of(q_vertex)
        n = self.base.n
        center = (self.push_low + self.push_high) // 2
        idx = center + ((qi - center) % n)
        if idx >= self.push_high:
            idx -= n
        return self.window.id_of(rim, idx)


class _QuotientLiftController(_WindowMixin):
    """Shared lift bookkeeping for controllers that play on the quotient."""

    arena = "quotient"

    def board(self) -> Graph:
        return self.quotient

    def describe(self) -> str:
        return self.base.describe()

    def params_dict(self) -> dict:
        p = {"n": self.base.n, "k": self.base.k}
        if isinstance(self.base, IGraphParams):
            p = {"n": self.base.n, "j": self.base.j, "k": self.base.k}
        return p

    def metadata(self) -> dict:
        return {"arena": "quotient", "window": [self.window.lo, self.window.hi]}

    def robber_placements(self) -> list[int]:
        return list(range(self.quotient.n_vertices))

    def _central_lift_index(self, qi: int) -> int:
        n = self.base.n
        return qi if qi <= n // 2 else qi - n

    def _lift_robber_move(self, prev_qid: int, new_qid: int) -> None:
        if prev_qid == new_qid:
            return
        rim, idx = self.lift
        for _ in range(3):
            try:
                vid = self.window.id_of(rim, idx)
                new_vid = self.window.lift_move((prev_qid, new_qid), vid)
                self.lift = self.window.label_of(new_vid)
                break
            except WindowExhausted:
                self._recenter(idx)
        else:
            raise WindowExhausted("lift left the window after rebuilds")
        if self._needs_recenter(self.lift[1]):
            self._recenter(self.lift[1])

    def observe_robber(self, prev_id: int, new_id: int) -> int:
        self._lift_robber_move(prev_id, new_id)
        return new_id

    def is_captured(self, robber_id: int) -> bool:
        return robber_id in self.visible_cops()

    def push_outcome(self, robber_id: int) -> bool:
        return False

    def quotient_view(self, robber_id: int | None):
        return self.quotient, tuple(sorted(self.visible_cops())), robber_id

    def lift_quotient_move(self, robber_id: int, q_target: int) -> int:
        return q_target

    def central_board_vertex(self, q_vertex: int) -> int:
        return q_vertex

    def _project_squad(self, sq: SquadState) -> int:
        return self.window.project_label(sq.rim, sq.lead_index)

    def _squad_moves(self, tuples) -> list[dict]:
        moves = []
        for sid, frm, to, _relabel in tuples:
            moves.append({
                "pawn": sid,
                "from": _label_pair(self.window.quotient.label_of(
                    self.window.project_label(*frm))),
                "to": _label_pair(self.window.quotient.label_of(
                    self.window.project_label(*to))),
                "lift_from": _label_pair(frm),
                "lift_to": _label_pair(to),
            })
        return moves


class FourCopController(_QuotientLiftController):
    """Two opposed force-right pairs squeezing one robber lift."""

    def __init__(self, base: GpParams, half_width: int | None = None):
        self.base = base
        self.quotient = build_quotient(base)
        self._half_width = half_width or default_half_width(base)
        self.window = build_window(base, -self._half_width, self._half_width,
                                   quotient=self.quotient)
        self.right = _PushPair(base, 1, ("R1", "R2"), "drive", True)
        self.left = _PushPair(base, -1, ("L1", "L2"), "drive", True)
        self.lift: tuple[str, int] | None = None
        self.n_cops = 4
        self.turn_scale = base.n

    def _pairs(self):
        return (self.right, self.left)

    def visible_cops(self) -> tuple[int, ...]:
        return tuple(self._project_squad(sq)
                     for pair in self._pairs() for sq in pair.squads)

    def placement_records(self) -> list[dict]:
        recs = []
        for pair in self._pairs():
            for sq in pair.squads:
                q = self.quotient.label_of(self._project_squad(sq))
                recs.append({"pawn": sq.squad_id, "vertex": _label_pair(q)})
        return recs

    def begin(self, robber_qid: int) -> None:
        rim, qi = self.quotient.label_of(robber_qid)
        self.lift = (rim, self._central_lift_index(qi))
        for pair in self._pairs():
            pair.begin(self.window, *self.lift)

    def cop_turn(self, robber_qid: int) -> TurnResult:
        rim, idx = self.lift
        assert self.window.project_label(rim, idx) == robber_qid
        moves: list[dict] = []
        captured = False
        phases = []
        for pair in self._pairs():
            if captured:
                tuples = [(sq.squad_id, (sq.rim, sq.lead_index),
                           (sq.rim, sq.lead_index), None) for sq in pair.squads]
            else:
                for _ in range(3):
                    try:
                        tuples, captured = pair.cop_turn(self.window, rim, idx)
                        break
                    except WindowExhausted:
                        self._recenter(idx)
                else:
                    raise WindowExhausted("window rebuild did not recover the leads")
            moves.extend(self._squad_moves(tuples))
            phases.append(pair.phase)
        return TurnResult(moves, "/".join(phases), None, captured, robber_qid)


class GpN3Controller(_QuotientLiftController):
    """One squad guards a lifted inner/outer tree while a push pair drives
    the robber lift into it."""

    def __init__(self, n: int, half_width: int | None = None):
        self.base = GpParams(n, 3)
        self.quotient = build_quotient(self.base)
        self._half_width = half_width or default_half_width(self.base)
        self.window = build_window(self.base, -self._half_width, self._half_width,
                                   quotient=self.quotient)
        self.pair = _PushPair(self.base, -1, ("P1", "P2"), "drive", True)
        self.guard: TreeGuard | None = None
        self.guard_id = "G"
        self.tree_base: int | None = None
        self.lift: tuple[str, int] | None = None
        self.engaged = False
        self.n_cops = 3
        self.turn_scale = n

    def _pairs(self):
        return (self.pair,)

    def guard_squad_label(self) -> tuple[str, int]:
        return self.window.graph.labels[self.guard.cop]

    def visible_cops(self) -> tuple[int, ...]:
        cops = [self._project_squad(sq) for sq in self.pair.squads]
        if self.guard is None:
            cops.append(self.quotient.vertex_id(RIM_OUTER, 2))
        else:
            cops.append(self.window.project(self.guard.cop))
        return tuple(cops)

    def placement_records(self) -> list[dict]:
        recs = [{"pawn": self.guard_id,
                 "vertex": _label_pair((RIM_OUTER, 2))}]
        for sq in self.pair.squads:
            q = self.quotient.label_of(self._project_squad(sq))
            recs.append({"pawn": sq.squad_id, "vertex": _label_pair(q)})
        return recs

    def begin(self, robber_qid: int) -> None:
        rim, qi = self.quotient.label_of(robber_qid)
        lift_idx = self._central_lift_index(qi)
        self.lift = (rim, lift_idx)
        n = self.base.n
        # guarded tree strictly left of the robber with a safety gap, so
        # establishment finishes before the robber can reach the tree
        q = (lift_idx - GUARD_GAP - 3) // n
        self.tree_base = 1 + q * n
        self._bind_guard(start_label=(RIM_OUTER, self.tree_base + 1))

    def _bind_guard(self, start_label: tuple[str, int]) -> None:
        tree = gp_inner_outer_tree(self.window.graph, self.tree_base, span=3)
        start = self.window.graph.vertex_id(*start_label)
        validate = self.guard is None
        established = self.guard.established if self.guard else False
        self.guard = TreeGuard(self.window.graph, tree, start, validate=validate)
        self.guard.established = established

    def _after_recenter(self, r_idx: int) -> None:
        if self.guard is not None:
            self._bind_guard(start_label=self.guard_squad_label())

    def cop_turn(self, robber_qid: int) -> TurnResult:
        rim, idx = self.lift
        assert self.window.project_label(rim, idx) == robber_qid
        lift_vid = self.window.id_of(rim, idx)
        g_from = self.guard_squad_label()
        status = self.guard.step(lift_vid)
        g_to = self.guard_squad_label()
        moves = [{
            "pawn": self.guard_id,
            "from": _label_pair(self.quotient.label_of(self.window.project_label(*g_from))),
            "to": _label_pair(self.quotient.label_of(self.window.project_label(*g_to))),
            "lift_from": _label_pair(g_from),
            "lift_to": _label_pair(g_to),
        }]
        captured = status.captured
        if not self.engaged and not captured and self.guard.established:
            self.pair.begin(self.window, rim, idx)
            self.engaged = True
        if captured or not self.engaged:
            tuples = [(sq.squad_id, (sq.rim, sq.lead_index),
                       (sq.rim, sq.lead_index), None) for sq in self.pair.squads]
        else:
            for _ in range(3):
                try:
                    tuples, pair_captured = self.pair.cop_turn(self.window, rim, idx)
                    captured = captured or pair_captured
                    break
                except WindowExhausted:
                    self._recenter(idx)
                    lift_vid = self.window.id_of(rim, idx)
            else:
                raise WindowExhausted("window rebuild did not recover the leads")
        moves.extend(self._squad_moves(tuples))
        phase = PHASE_ESTABLISH if not self.guard.established else \
            (PHASE_GUARD + "+" + self.pair.phase if self.engaged else PHASE_GUARD)
        if captured:
            phase = PHASE_CAPTURE
        return TurnResult(moves, phase, status.gc_holds, captured, robber_qid)


@dataclass
class _CageCop:
    squad: SquadState
    modulus: int
    walk_rim: str
    walk_dir: int
    side: int
    matched: bool = False
    relabel: tuple[str, int] | None = None


class IGraphFiveCopController(_QuotientLiftController):
    """Four congruence-matched squads cage the robber lift on both rims
    while a fifth squad walks shortest paths to forbid stalling."""

    def __init__(self, params: IGraphParams, half_width: int | None = None):
        if not is_connected_igraph(params):
            raise ParameterError(
                f"{params.describe()} is disconnected (gcd(n,j,k) > 1)")
        self.base = params
        self.quotient = build_quotient(params)
        self._half_width = half_width or default_half_width(params)
        self.window = build_window(params, -self._half_width, self._half_width,
                                   quotient=self.quotient)
        j, k = params.j, params.k
        self.cage = [
            _CageCop(SquadState(0, RIM_OUTER, "C1"), k, RIM_OUTER, +1, +1),
            _CageCop(SquadState(0, RIM_OUTER, "C2"), k, RIM_OUTER, -1, -1),
            _CageCop(SquadState(0, RIM_OUTER, "C3"), j, RIM_INNER, +1, +1),
            _CageCop(SquadState(0, RIM_OUTER, "C4"), j, RIM_INNER, -1, -1),
        ]
        self.walker = SquadState(0, RIM_OUTER, "C5")
        self.lift: tuple[str, int] | None = None
        self.prev_robber: tuple[str, int] | None = None
        self.n_cops = 5
        self.turn_scale = params.n

    def _pairs(self):
        return ()

    def _squads(self) -> list[SquadState]:
        return [c.squad for c in self.cage] + [self.walker]

    def visible_cops(self) -> tuple[int, ...]:
        return tuple(self._project_squad(sq) for sq in self._squads())

    def placement_records(self) -> list[dict]:
        recs = []
        for sq in self._squads():
            q = self.quotient.label_of(self._project_squad(sq))
            recs.append({"pawn": sq.squad_id, "vertex": _label_pair(q)})
        return recs

    def begin(self, robber_qid: int) -> None:
        rim, qi = self.quotient.label_of(robber_qid)
        lift_idx = self._central_lift_index(qi)
        self.lift = (rim, lift_idx)
        self.prev_robber = self.lift
        n, g = self.base.n, math.gcd(self.base.j, self.base.k)
        x0 = next(q * n for q in range(g) if (q * n - lift_idx) % g == 0)
        x = lift_idx - ((lift_idx - x0) % (g * n))
        for cop in self.cage:
            cop.squad = replace(cop.squad, lead_index=x)
        self.walker = replace(self.walker, lead_index=x)

    def _after_recenter(self, r_idx: int) -> None:
        for cop in self.cage:
            sq = cop.squad
            if not self.window.contains_index(sq.lead_index):
                side = 1 if sq.lead_index < r_idx else -1
                step = cop.modulus * self.base.n
                new = _nearest_on_side(sq.lead_index, r_idx, step, side, self.window)
                cop.relabel = cop.relabel or (sq.rim, sq.lead_index)
                cop.squad = replace(sq, lead_index=new)
        if not self.window.contains_index(self.walker.lead_index):
            # the walker carries no congruence promise: restart it beside
            # the robber in its component
            g = math.gcd(self.base.j, self.base.k)
            step = g * self.base.n
            new = _nearest_on_side(self.walker.lead_index, r_idx, step, 1, self.window)
            self.walker = replace(self.walker, lead_index=new)

    def _walker_step(self, r_idx: int) -> SquadState:
        # chase the robber's spoke pair {a_i, b_i}: the target is stable
        # under rim flip-flops, so the walk cannot dither
        w = self.window
        targets = [w.id_of(RIM_OUTER, r_idx), w.id_of(RIM_INNER, r_idx)]
        dist = multi_source_distances(w.graph, targets)
        pos = w.id_of(self.walker.rim, self.walker.lead_index)
        if dist[pos] < 0:
            raise AssertionError("anti-stall squad outside the robber component")
        best = pos
        for nb in w.graph.adjacency[pos]:
            if dist[nb] == dist[pos] - 1 and (best == pos or nb < best):
                best = nb
        rim, idx = w.label_of(best)
        return replace(self.walker, rim=rim, lead_index=idx)

    def cop_turn(self, robber_qid: int) -> TurnResult:
        rim, idx = self.lift
        assert self.window.project_label(rim, idx) == robber_qid
        for _ in range(3):
            try:
                tuples, captured = self._cage_turn(rim, idx)
                break
            except WindowExhausted:
                self._recenter(idx)
        else:
            raise WindowExhausted("window rebuild did not recover the leads")
        moves = self._squad_moves(tuples)
        phase = PHASE_CAPTURE if captured else (
            PHASE_PUSH if all(c.matched for c in self.cage) else PHASE_CHASE)
        self.prev_robber = (rim, idx)
        return TurnResult(moves, phase, None, captured, robber_qid)

    def _cage_turn(self, r_rim: str, r_idx: int) -> tuple[list[tuple], bool]:
        w = self.window
        base = self.base
        n = base.n
        squads = self._squads()

        def adjacent(sq: SquadState) -> bool:
            d = (r_idx - sq.lead_index) % n
            if sq.rim == r_rim:
                step = rim_step(base, r_rim)
                return d == step % n or d == (-step) % n
            return d == 0

        for i, sq in enumerate(squads):
            if adjacent(sq):
                if sq.rim != r_rim:
                    new = replace(sq, rim=r_rim)
                else:
                    step = rim_step(base, r_rim)
                    delta = step if (r_idx - sq.lead_index) % n == step % n else -step
                    new = replace(sq, lead_index=sq.lead_index + delta)
                w.id_of(new.rim, new.lead_index)
                tuples = []
                for t, other in enumerate(squads):
                    tgt = new if t == i else other
                    tuples.append(self._cage_move_tuple(other, tgt, t))
                self._commit(i, new)
                return tuples, True

        prev_idx = self.prev_robber[1]
        # keep one maximal rim step of clearance so that a mirrored move
        # cannot carry a freshly re-picked lead back across the robber
        margin = max(base.j, base.k)
        plans: list[tuple[SquadState, SquadState, bool, tuple | None]] = []
        for cop in self.cage:
            sq = cop.squad
            relabel = None
            matched = cop.matched
            if not cop.matched and (sq.lead_index - r_idx) % cop.modulus == 0:
                step = cop.modulus * n
                new_idx = _nearest_on_side(sq.lead_index, r_idx - cop.side * margin,
                                           step, cop.side, w)
                relabel = (sq.rim, sq.lead_index)
                sq = replace(sq, lead_index=new_idx)
                matched = True
                new = replace(sq, rim=r_rim) if sq.rim != r_rim else sq
            elif not cop.matched:
                if sq.rim != cop.walk_rim:
                    new = replace(sq, rim=cop.walk_rim)
                else:
                    step = rim_step(base, cop.walk_rim)
                    new = replace(sq, lead_index=sq.lead_index + cop.walk_dir * step)
            else:
                if cop.side * (r_idx - sq.lead_index) <= 0:
                    # the robber leapt over this lead on the rim whose step
                    # does not divide the gap; re-pick a lead on its side
                    step = cop.modulus * n
                    new_idx = _nearest_on_side(sq.lead_index, r_idx - cop.side * margin,
                                               step, cop.side, w)
                    relabel = (sq.rim, sq.lead_index)
                    sq = replace(sq, lead_index=new_idx)
                nrim, nidx = _toward_or_mirror(base, sq, cop.modulus,
                                               prev_idx, r_rim, r_idx)
                new = replace(sq, rim=nrim, lead_index=nidx)
            w.id_of(new.rim, new.lead_index)
            plans.append((sq, new, matched, relabel))
        walker_new = self._walker_step(r_idx)
        tuples = []
        for i, cop in enumerate(self.cage):
            pre, new, matched, relabel = plans[i]
            if relabel is not None:
                cop.relabel = cop.relabel or relabel
            cop.matched = matched
            cop.squad = pre
            tuples.append(self._cage_move_tuple(pre, new, i))
            cop.squad = new
        tuples.append(self._cage_move_tuple(self.walker, walker_new, len(self.cage)))
        self.walker = walker_new
        return tuples, False

    def _cage_move_tuple(self, old: SquadState, new: SquadState, i: int) -> tuple:
        relabel = None
        if i < len(self.cage):
            relabel = self.cage[i].relabel
            self.cage[i].relabel = None
        return (old.squad_id, (old.rim, old.lead_index),
                (new.rim, new.lead_index), relabel)

    def _commit(self, i: int, new: SquadState) -> None:
        if i < len(self.cage):
            self.cage[i].squad = new
        else:
            self.walker = new


class GuardController:
    """Single-cop isometric-tree guard on an arbitrary graph."""

    arena = "graph"

    def __init__(self, g: Graph, tree: Subgraph, start: int):
        self.graph = g
        self.guard = TreeGuard(g, tree, start)
        self.n_cops = 1
        self.turn_scale = g.n_vertices

    def describe(self) -> str:
        return self.graph.describe()

    def params_dict(self) -> dict:
        return {}

    def metadata(self) -> dict:
        from .graphs import format_edge_list
        return {"arena": "graph", "edge_list": format_edge_list(self.graph),
                "tree_vertices": list(self.guard.tree.vertices)}

    def board(self) -> Graph:
        return self.graph

    def visible_cops(self) -> tuple[int, ...]:
        return (self.guard.cop,)

    def placement_records(self) -> list[dict]:
        return [{"pawn": "G", "vertex": self.guard.cop}]

    def robber_placements(self) -> list[int]:
        return list(range(self.graph.n_vertices))

    def begin(self, robber_id: int) -> None:
        pass

    def is_captured(self, robber_id: int) -> bool:
        return robber_id == self.guard.cop

    def cop_turn(self, robber_id: int) -> TurnResult:
        frm = self.guard.cop
        status = self.guard.step(robber_id)
        phase = PHASE_CAPTURE if status.captured else (
            PHASE_GUARD if self.guard.established else PHASE_ESTABLISH)
        moves = [{"pawn": "G", "from": frm, "to": self.guard.cop}]
        return TurnResult(moves, phase, status.gc_holds, status.captured, robber_id)

    def observe_robber(self, prev_id: int, new_id: int) -> int:
        return new_id

    def push_outcome(self, robber_id: int) -> bool:
        return False

    def quotient_view(self, robber_id: int | None):
        return self.graph, (self.guard.cop,), robber_id

    def lift_quotient_move(self, robber_id: int, q_target: int) -> int:
        return q_target

    def central_board_vertex(self, q_vertex: int) -> int:
        return q_vertex


# -- factories matching the operation names -----------------------------------

def weak_cop_controller(base: GpParams, half_width: int | None = None) -> WindowPushController:
    """Two-squad window play: capture or push the robber past a threshold."""
    return WindowPushController(base, forceright=False, half_width=half_width)


def force_right_controller(base: GpParams, half_width: int | None = None) -> WindowPushController:
    """Two-squad window play that only ever pushes the robber rightward."""
    return WindowPushController(base, forceright=True, sign=1, half_width=half_width)


def four_cop_controller(base: GpParams, half_width: int | None = None) -> FourCopController:
    return FourCopController(base, half_width=half_width)


def tree_guard_controller(g: Graph, tree: Subgraph, start: int) -> GuardController:
    return GuardController(g, tree, start)


def gp_n3_controller(n: int, half_width: int | None = None) -> GpN3Controller:
    return GpN3Controller(n, half_width=half_width)


def igraph_five_cop_controller(params: IGraphParams,
                               half_width: int | None = None) -> IGraphFiveCopController:
    return IGraphFiveCopController(params, half_width=half_width)
