import pytest

from gpcops import GpParams, IGraphParams, ParameterError, PreconditionError, WindowExhausted
from gpcops.cover import (
    SquadState,
    build_window,
    default_half_width,
    member_indices,
    reselect_lead,
)


@pytest.fixture(scope="module")
def w72():
    return build_window(GpParams(7, 2), -14, 14)


def test_window_vertex_count(w72):
    assert w72.graph.n_vertices == 58  # 2 * 29 indices


def test_interior_vertex_neighbors(w72):
    a0 = w72.id_of("A", 0)
    nbrs = {w72.label_of(v) for v in w72.graph.neighbors(a0)}
    assert nbrs == {("A", -1), ("A", 1), ("B", 0)}


def test_boundary_vertices_truncated(w72):
    b_hi = w72.id_of("B", 14)
    assert w72.graph.degree(b_hi) < 3
    assert all(w72.graph.degree(w72.id_of(r, i)) == 3
               for r in "AB" for i in range(-12, 13))


def test_window_too_small():
    with pytest.raises(ParameterError):
        build_window(GpParams(7, 2), 0, 27)  # needs hi - lo >= 28


def test_project_examples(w72):
    n = 7
    assert w72.project(w72.id_of("A", n + 3)) == w72.quotient.vertex_id("A", 3)
    assert w72.project(w72.id_of("B", -1)) == w72.quotient.vertex_id("B", n - 1)
    # deck transformation invariance: shifting by n projects identically
    for i in range(-7, 7):
        for rim in "AB":
            assert w72.project(w72.id_of(rim, i)) == w72.project(w72.id_of(rim, i + n))


def test_projection_is_homomorphism():
    for base in (GpParams(7, 2), GpParams(6, 1), IGraphParams(9, 2, 4)):
        w = build_window(base, -2 * base.n, 2 * base.n)
        for u, v in w.graph.edges():
            pu, pv = w.project(u), w.project(v)
            assert w.quotient.has_edge(pu, pv), (w.label_of(u), w.label_of(v))


def test_lift_move_wraparound_examples(w72):
    n = 7
    q = w72.quotient
    edge = (q.vertex_id("A", n - 1), q.vertex_id("A", 0))
    assert w72.label_of(w72.lift_move(edge, w72.id_of("A", n - 1))) == ("A", n)
    # another member of the same fiber lifts one period higher
    assert w72.label_of(w72.lift_move(edge, w72.id_of("A", -1))) == ("A", 0)


def test_lift_pass(w72):
    v = w72.id_of("B", 3)
    assert w72.lift_move(None, v) == v


def test_lift_tail_mismatch(w72):
    q = w72.quotient
    edge = (q.vertex_id("A", 0), q.vertex_id("A", 1))
    with pytest.raises(PreconditionError):
        w72.lift_move(edge, w72.id_of("A", 3))


def test_lift_exits_window(w72):
    q = w72.quotient
    edge = (q.vertex_id("A", 0), q.vertex_id("A", 1))
    with pytest.raises(WindowExhausted):
        w72.lift_move(edge, w72.id_of("A", 14))


def test_unique_lifting_interior():
    w = build_window(GpParams(6, 2), -12, 12)
    q = w.quotient
    for v in range(w.graph.n_vertices):
        if not w.interior(v):
            continue
        qv = w.project(v)
        for qh in q.neighbors(qv):
            preimages = [u for u in w.graph.neighbors(v) if w.project(u) == qh]
            assert len(preimages) == 1
            assert w.lift_move((qv, qh), v) == preimages[0]


def test_squad_members_and_shift_consistency(w72):
    sq = SquadState(3, "A", "S1")
    idxs = member_indices(w72, sq)
    assert all((i - 3) % 7 == 0 for i in idxs)
    assert idxs == list(range(-11, 15, 7))
    # lifting one quotient move at every member keeps the n-spacing
    q = w72.quotient
    edge = (q.vertex_id("A", 3), q.vertex_id("A", 4))
    lifted = [w72.label_of(w72.lift_move(edge, w72.id_of("A", i)))
              for i in idxs if w72.contains_index(i + 1)]
    assert all((j - lifted[0][1]) % 7 == 0 for _, j in lifted)


def test_interval_of_length_n_covers_quotient(w72):
    n = 7
    for start in (-14, -3, 0, 5):
        seen = {w72.project(w72.id_of(rim, i))
                for rim in "AB" for i in range(start, start + n)}
        assert len(seen) == w72.quotient.n_vertices


def test_default_half_width_is_large_enough():
    for base in (GpParams(7, 2), GpParams(30, 14), IGraphParams(9, 2, 4)):
        assert default_half_width(base) >= 2 * base.n
        assert default_half_width(base) >= (max(base.j, base.k) + 2) * base.n


# -- lead reselection --------------------------------------------------------------

def test_reselect_noop_when_already_below(w72):
    sq = SquadState(-3, "A", "S2")
    assert reselect_lead(sq, 4, 2, w72) is sq


def test_reselect_shifts_by_kn_multiples(w72):
    sq = SquadState(10, "B", "S1")
    out = reselect_lead(sq, 4, 2, w72)  # k*n = 14
    assert out.lead_index == -4
    assert (sq.lead_index - out.lead_index) % 14 == 0
    assert out.lead_index < 4
    # largest qualifying index below the target
    assert out.lead_index + 14 >= 4


def test_reselect_preserves_residues_and_projection(w72):
    sq = SquadState(9, "A", "S1")
    out = reselect_lead(sq, 2, 2, w72)
    assert out.lead_index % 2 == 9 % 2
    assert out.lead_index % 7 == 9 % 7
    assert w72.project_label(out.rim, out.lead_index) == \
        w72.project_label(sq.rim, sq.lead_index)


def test_reselect_exhausts_window(w72):
    sq = SquadState(-10, "A", "S1")
    with pytest.raises(WindowExhausted):
        reselect_lead(sq, -12, 2, w72)


def test_reselect_upward_direction(w72):
    sq = SquadState(-10, "A", "S1")
    out = reselect_lead(sq, -3, 2, w72, direction=-1)
    assert out.lead_index == 4
    assert out.lead_index > -3
