"""Serializable game traces with an independent replay verifier.

A trace records placements and per-turn moves with phase and guard
annotations.  Serialization uses a stable field order
{graph, params, placements, turns, outcome, metadata} so traces can be
diffed and used as golden files.  Vertices serialize as [rim, index]
pairs on labelled arenas (window indices are signed) and as plain ids
otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError, PreconditionError
from .graphs import GpParams, IGraphParams, parse_edge_list

OUTCOME_CAPTURE = "CAPTURE"
OUTCOME_PUSHED_OUT = "PUSHED_OUT"
OUTCOME_TURN_LIMIT = "TURN_LIMIT"

ACTOR_COPS = "cops"
ACTOR_ROBBER = "robber"


@dataclass
class MoveRecord:
    actor: str
    moves: list[dict]
    phase: str | None = None
    gc: bool | None = None

    def to_dict(self) -> dict:
        return {"actor": self.actor, "moves": self.moves,
                "phase": self.phase, "gc": self.gc}


@dataclass
class GameTrace:
    graph: str
    params: dict
    placements: list[dict]
    turns: list[MoveRecord] = field(default_factory=list)
    outcome: str = OUTCOME_TURN_LIMIT
    metadata: dict = field(default_factory=dict)

    def to_json(self, indent: int | None = None) -> str:
        doc = {
            "graph": self.graph,
            "params": self.params,
            "placements": self.placements,
            "turns": [t.to_dict() for t in self.turns],
            "outcome": self.outcome,
            "metadata": self.metadata,
        }
        return json.dumps(doc, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "GameTrace":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad trace JSON: {exc}") from None
        turns = [MoveRecord(**t) for t in doc.get("turns", [])]
        return cls(graph=doc["graph"], params=doc.get("params", {}),
                   placements=doc["placements"], turns=turns,
                   outcome=doc["outcome"], metadata=doc.get("metadata", {}))


def _as_pos(v):
    """Normalize a serialized vertex: [rim, index] list or plain id."""
    if isinstance(v, list):
        return (v[0], v[1])
    return v


def _window_move_legal(frm, to, j: int, k: int) -> bool:
    (rim_f, i_f), (rim_t, i_t) = frm, to
    if rim_f == rim_t:
        step = j if rim_f == "A" else k
        return abs(i_t - i_f) in (0, step)
    return i_t == i_f


def verify_trace(trace: GameTrace):
    """Replay-check legality of every move and recompute the outcome.

    Returns the recomputed outcome string; raises PreconditionError on an
    illegal move or inconsistent record.
    """
    meta = trace.metadata
    arena = meta.get("arena")
    if arena not in ("window", "quotient", "graph"):
        raise PreconditionError(f"unknown arena {arena!r} in trace metadata")

    if arena in ("window", "quotient"):
        p = trace.params
        if "j" in p:
            base = IGraphParams(p["n"], p["j"], p["k"])
        else:
            base = GpParams(p["n"], p["k"])
        n, j, k = base.n, base.j, base.k
        quotient = None
        if arena == "quotient":
            from .cover import build_quotient  # deferred: avoids import cycle
            quotient = build_quotient(base)
    else:
        graph = parse_edge_list(meta["edge_list"])

    positions: dict = {}
    for rec in trace.placements:
        positions[rec["pawn"]] = _as_pos(rec["vertex"])
    robber = positions.get("robber")
    if robber is None:
        raise PreconditionError("trace has no robber placement")

    def cop_catches(pos, rob) -> bool:
        if arena == "window":
            # squads capture through any member: same rim, index mod n
            return pos[0] == rob[0] and (pos[1] - rob[1]) % n == 0
        return pos == rob

    def move_legal(frm, to) -> bool:
        if frm == to:
            return True
        if arena == "window":
            return _window_move_legal(frm, to, j, k)
        if arena == "quotient":
            u = quotient.vertex_id(*frm)
            v = quotient.vertex_id(*to)
            return quotient.has_edge(u, v)
        return graph.has_edge(frm, to)

    def captured_now() -> bool:
        return any(cop_catches(pos, positions["robber"])
                   for pawn, pos in positions.items() if pawn != "robber")

    outcome = OUTCOME_TURN_LIMIT
    if captured_now():
        outcome = OUTCOME_CAPTURE
    else:
        for rec in trace.turns:
            for mv in rec.moves:
                pawn = mv["pawn"]
                frm, to = _as_pos(mv["from"]), _as_pos(mv["to"])
                if "relabel_from" in mv:
                    # squad lead swap: all members move alike, so tracking may
                    # jump to another member (same rim, index shift mod n)
                    old = _as_pos(mv["relabel_from"])
                    if positions.get(pawn) != old:
                        raise PreconditionError(
                            f"{pawn} relabel from {old} but tracked at {positions.get(pawn)}")
                    if arena != "window" or old[0] != frm[0] or (frm[1] - old[1]) % n != 0:
                        raise PreconditionError(f"bad lead relabel for {pawn}: {old} -> {frm}")
                    positions[pawn] = frm
                if positions.get(pawn) != frm:
                    raise PreconditionError(
                        f"{pawn} recorded at {frm} but tracked at {positions.get(pawn)}")
                if not move_legal(frm, to):
                    raise PreconditionError(f"illegal move for {pawn}: {frm} -> {to}")
                positions[pawn] = to
            if captured_now():
                outcome = OUTCOME_CAPTURE
                break
            if rec.actor == ACTOR_ROBBER and arena == "window":
                idx = positions["robber"][1]
                lo_t, hi_t = meta.get("push_low"), meta.get("push_high")
                sides = meta.get("push_sides", [])
                if ("high" in sides and hi_t is not None and idx >= hi_t) or \
                   ("low" in sides and lo_t is not None and idx <= lo_t):
                    outcome = OUTCOME_PUSHED_OUT
                    break
    if outcome != trace.outcome:
        raise PreconditionError(
            f"recomputed outcome {outcome} != recorded {trace.outcome}")
    return outcome
