"""Finite windows of the infinite cyclic covers of GP and I-graphs.

The infinite cover of GP(n, k) has outer vertices ('A', i) and inner
vertices ('B', i) for every integer i, with edges (a_i, a_{i+1}),
(a_i, b_i), (b_i, b_{i+k}); I-graph covers use step j on the outer rim.
A :class:`CoverWindow` truncates the cover to lo <= i <= hi, keeping an
edge only when both endpoints lie in the window, and projects onto the
finite quotient graph by reducing indices mod n.

A cop squad is the full preimage of one quotient cop: pawns at every
index congruent to the lead's index mod n, on the lead's rim.  Squads
are represented by the lead alone; the other members are virtual because
every member's move is determined by the lead's move.  Windows are
immutable; :class:`SquadState` is a small value passed by copy.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ParameterError, PreconditionError, WindowExhausted
from .graphs import RIM_INNER, RIM_OUTER, GpParams, Graph, IGraphParams, build_gp, build_igraph


def rim_step(base: GpParams | IGraphParams, rim: str) -> int:
    """Index step of a rim move: j on the outer rim, k on the inner rim."""
    return base.j if rim == RIM_OUTER else base.k


def default_half_width(base: GpParams | IGraphParams) -> int:
    """Window half-width used by the strategy controllers.

    Lead reselection shifts indices by multiples of max(j, k) * n, so the
    window must hold a couple of such shifts on either side of the robber
    plus slack for the capture endgame.
    """
    return (2 * max(base.j, base.k) + 4) * base.n


def build_quotient(base: GpParams | IGraphParams) -> Graph:
    if isinstance(base, GpParams):
        return build_gp(base)
    return build_igraph(base)


class CoverWindow:
    """The cover restricted to indices lo..hi, plus the projection map."""

    __slots__ = ("base", "lo", "hi", "graph", "quotient", "_width")

    def __init__(self, base: GpParams | IGraphParams, lo: int, hi: int,
                 quotient: Graph | None = None):
        if hi - lo < 4 * base.n:
            raise ParameterError(
                f"window [{lo},{hi}] too small: needs hi - lo >= 4n = {4 * base.n}"
            )
        self.base = base
        self.lo = lo
        self.hi = hi
        self._width = hi - lo + 1
        j, k = base.j, base.k
        width = self._width
        labels = ([(RIM_OUTER, i) for i in range(lo, hi + 1)]
                  + [(RIM_INNER, i) for i in range(lo, hi + 1)])
        edges = []
        for i in range(lo, hi + 1):
            o = i - lo
            if i + j <= hi:
                edges.append((o, o + j))
            edges.append((o, width + o))
            if i + k <= hi:
                edges.append((width + o, width + o + k))
        self.graph = Graph(2 * width, edges, labels=labels)
        self.quotient = quotient if quotient is not None else build_quotient(base)

    # -- id/label arithmetic -------------------------------------------------

    def contains_index(self, index: int) -> bool:
        return self.lo <= index <= self.hi

    def id_of(self, rim: str, index: int) -> int:
        if not self.contains_index(index):
            raise WindowExhausted(f"index {index} outside window [{self.lo},{self.hi}]")
        off = index - self.lo
        return off if rim == RIM_OUTER else self._width + off

    def label_of(self, v: int) -> tuple[str, int]:
        return self.graph.labels[v]

    def interior(self, v: int) -> bool:
        """Vertices far enough from the truncation to have full degree 3."""
        _, i = self.label_of(v)
        margin = max(self.base.j, self.base.k)
        return self.lo + margin <= i <= self.hi - margin

    # -- covering map ----------------------------------------------------------

    def project(self, v: int) -> int:
        """Quotient vertex id of a window vertex: same rim, index mod n."""
        rim, i = self.label_of(v)
        return self.quotient.vertex_id(rim, i % self.base.n)

    def project_label(self, rim: str, index: int) -> int:
        return self.quotient.vertex_id(rim, index % self.base.n)

    def lift_move(self, quotient_edge: tuple[int, int] | None, at: int) -> int:
        """Head of the unique lift at ``at`` of an oriented quotient edge.

        ``None`` encodes a pass, which lifts to a pass.  Raises
        WindowExhausted when the lifted head falls outside the window.
        """
        if quotient_edge is None:
            return at
        tail, head = quotient_edge
        if not self.quotient.has_edge(tail, head):
            raise PreconditionError(
                f"({tail},{head}) is not a quotient edge")
        if self.project(at) != tail:
            raise PreconditionError(
                f"window vertex {self.label_of(at)} does not project to the edge tail")
        rim_t, qt = self.quotient.label_of(tail)
        rim_h, qh = self.quotient.label_of(head)
        rim_at, i = self.label_of(at)
        if rim_t != rim_h:
            # spoke: index unchanged, rim flips
            return self.id_of(rim_h, i)
        n = self.base.n
        step = rim_step(self.base, rim_t)
        if (qt + step) % n == qh:
            delta = step
        elif (qt - step) % n == qh:
            delta = -step
        else:  # unreachable for simple rim edges since 0 < step < n/2
            raise PreconditionError(f"edge ({tail},{head}) is not a rim step")
        return self.id_of(rim_h, i + delta)


def build_window(base: GpParams | IGraphParams, lo: int, hi: int,
                 quotient: Graph | None = None) -> CoverWindow:
    """Build the cover window over lo..hi (requires hi - lo >= 4n)."""
    return CoverWindow(base, lo, hi, quotient=quotient)


@dataclass(frozen=True)
class SquadState:
    """Lead cop of a squad; members sit at lead_index + q*n on the same rim."""

    lead_index: int
    rim: str
    squad_id: str

    def quotient_index(self, n: int) -> int:
        return self.lead_index % n


def member_indices(window: CoverWindow, squad: SquadState) -> list[int]:
    """Indices of all squad members that lie inside the window."""
    n = window.base.n
    first = window.lo + (squad.lead_index - window.lo) % n
    return list(range(first, window.hi + 1, n))


def member_vertices(window: CoverWindow, squad: SquadState) -> list[int]:
    return [window.id_of(squad.rim, i) for i in member_indices(window, squad)]


def reselect_lead(squad: SquadState, target_index: int, congruence_modulus: int,
                  window: CoverWindow, direction: int = 1) -> SquadState:
    """Re-pick the squad lead strictly on the far side of ``target_index``.

    The new lead index differs from the old by a multiple of
    congruence_modulus * n, so it keeps the lead's residues both mod n and
    mod the congruence modulus.  With direction +1 the result is the
    largest qualifying index below the target; with direction -1, the
    smallest above.  A lead that is already on the correct side is kept.
    """
    if congruence_modulus < 1:
        raise PreconditionError(f"bad congruence modulus {congruence_modulus}")
    s = 1 if direction >= 0 else -1
    step = congruence_modulus * window.base.n
    gap = s * squad.lead_index - s * target_index
    if gap < 0:
        return squad
    m = gap // step + 1
    new_index = squad.lead_index - s * m * step
    if not window.contains_index(new_index):
        raise WindowExhausted(
            f"no squad member at index {new_index} inside window "
            f"[{window.lo},{window.hi}]")
    return replace(squad, lead_index=new_index)
