import itertools
import json
import random

import pytest

from gpcops import BudgetError, GpParams, IGraphParams, PreconditionError, build_gp, build_igraph
from gpcops.graphs import Graph
from gpcops.solver import (
    GameState,
    Label,
    Side,
    config_rank,
    config_unrank,
    cop_number,
    is_copwin,
    joint_cop_moves,
    optimal_cop_move,
    optimal_robber_move,
    solve,
    state_rank,
    state_unrank,
)

from oracles import naive_is_copwin, naive_solve


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def k2():
    return Graph(2, [(0, 1)])


# -- ranking -------------------------------------------------------------------

def test_config_rank_bijection():
    from math import comb
    nv, c = 6, 3
    seen = set()
    for cops in itertools.combinations_with_replacement(range(nv), c):
        r = config_rank(cops, nv)
        assert config_unrank(r, c, nv) == cops
        seen.add(r)
    assert seen == set(range(comb(nv + c - 1, c)))


def test_state_rank_bijection():
    from math import comb
    nv, c = 4, 2
    total = comb(nv + c - 1, c) * nv * 2
    seen = set()
    for cops in itertools.combinations_with_replacement(range(nv), c):
        for r in range(nv):
            for side in Side:
                st = GameState(cops, r, side)
                rank = state_rank(st, nv)
                assert 0 <= rank < total
                assert state_unrank(rank, c, nv) == st
                seen.add(rank)
    assert len(seen) == total


def test_gamestate_requires_sorted_cops():
    with pytest.raises(PreconditionError):
        GameState((3, 1), 0, Side.COP)


# -- basic solve behaviour ----------------------------------------------------------

def test_k2_all_states_cop_win():
    t = solve(k2(), 1)
    for cop in range(2):
        for r in range(2):
            for side in Side:
                assert t.is_cop_win(GameState((cop,), r, side))


def test_tree_is_one_cop_win():
    won, witness = is_copwin(path(5), 1)
    assert won and witness is not None


def test_cycle_needs_two_cops():
    assert not is_copwin(cycle(8), 1)[0]
    assert is_copwin(cycle(8), 2)[0]


def test_petersen_two_cops_always_escape(petersen):
    t = solve(petersen, 2)
    for cops in itertools.combinations_with_replacement(range(10), 2):
        safe = [r for r in range(10)
                if r not in cops and not t.is_cop_win(GameState(cops, r, Side.ROBBER))]
        assert safe, cops


def test_petersen_three_cops_win(petersen):
    won, witness = is_copwin(petersen, 3)
    assert won
    assert witness == (0, 0, 0)  # smallest canonical rank among winners


@pytest.mark.parametrize("n,k,expected", [(6, 2, 2), (9, 3, 2), (12, 4, 3)])
def test_small_gp_cop_numbers(n, k, expected):
    assert cop_number(build_gp(GpParams(n, k)), 4).cop_number == expected


def test_cop_number_exceeds_cmax():
    res = cop_number(build_gp(GpParams(5, 2)), 2)
    assert res.cop_number is None and res.witness_placement is None
    assert len(res.stats) == 2


def test_solve_rejects_disconnected():
    with pytest.raises(PreconditionError):
        solve(build_igraph(IGraphParams(6, 2, 2)), 1)


def test_budget_error_reports_required_states(petersen):
    with pytest.raises(BudgetError) as info:
        solve(petersen, 3, max_states=100)
    assert info.value.required_states == 2 * 220 * 10


def test_stats_json_line(petersen):
    t = solve(petersen, 1)
    doc = json.loads(t.stats.to_json_line())
    assert doc["states"] == t.stats.states
    assert set(doc) == {"states", "iterations", "seconds", "peak_bytes"}


# -- oracle equivalence ---------------------------------------------------------------

def _random_connected(rng, n):
    while True:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.45]
        try:
            g = Graph(n, edges)
        except Exception:
            continue
        from gpcops import is_connected
        if edges and is_connected(g):
            return g


@pytest.mark.parametrize("seed", range(6))
def test_solver_matches_naive_minimax_on_random_graphs(seed):
    rng = random.Random(seed)
    g = _random_connected(rng, rng.randint(4, 9))
    for c in (1, 2):
        t = solve(g, c)
        cop_wins, rob_wins = naive_solve(g, c)
        for cops in itertools.combinations_with_replacement(range(g.n_vertices), c):
            for r in range(g.n_vertices):
                assert t.is_cop_win(GameState(cops, r, Side.COP)) == cop_wins[(cops, r)]
                assert t.is_cop_win(GameState(cops, r, Side.ROBBER)) == rob_wins[(cops, r)]
        assert is_copwin(g, c, table=t)[0] == naive_is_copwin(g, c)


def test_solver_matches_naive_on_petersen(petersen):
    for c in (2, 3):
        assert is_copwin(petersen, c)[0] == naive_is_copwin(petersen, c)


# -- fixed-point audit -----------------------------------------------------------------

@pytest.mark.parametrize("make,c", [
    (lambda: cycle(7), 1), (lambda: cycle(7), 2), (lambda: path(6), 1),
    (lambda: build_gp(GpParams(5, 2)), 2),
])
def test_fixed_point_audit(make, c):
    g = make()
    t = solve(g, c)
    closed = {v: sorted(g.adjacency[v] + (v,)) for v in range(g.n_vertices)}
    for cops in itertools.combinations_with_replacement(range(g.n_vertices), c):
        for r in range(g.n_vertices):
            captured = r in cops
            rob = t.is_cop_win(GameState(cops, r, Side.ROBBER))
            cop = t.is_cop_win(GameState(cops, r, Side.COP))
            want_cop = captured or any(
                r in mv or t.is_cop_win(GameState(mv, r, Side.ROBBER))
                for mv in joint_cop_moves(g, cops))
            want_rob = captured or all(
                t.is_cop_win(GameState(cops, r2, Side.COP)) for r2 in closed[r])
            assert cop == want_cop and rob == want_rob


# -- optimal play -------------------------------------------------------------------

def test_optimal_cop_move_k2():
    g = k2()
    t = solve(g, 1)
    assert optimal_cop_move(t, GameState((0,), 1, Side.COP)) == (1,)


def test_optimal_cop_move_captures_adjacent(petersen):
    t = solve(petersen, 3)
    st = GameState((1, 4, 5), 0, Side.COP)  # all three adjacent to a_0
    mv = optimal_cop_move(t, st)
    assert 0 in mv
    assert t.capture_distance(GameState(mv, 0, Side.ROBBER)) == 0


def test_optimal_move_errors(petersen):
    t = solve(petersen, 2)
    safe = GameState((0, 0), 7, Side.COP)
    assert not t.is_cop_win(safe)
    with pytest.raises(PreconditionError):
        optimal_cop_move(t, safe)
    with pytest.raises(PreconditionError):
        optimal_robber_move(t, GameState((0, 0), 0, Side.ROBBER))
    with pytest.raises(PreconditionError):
        optimal_robber_move(t, GameState((0, 0), 7, Side.COP))


def test_robber_survives_on_cycle_with_one_cop():
    g = cycle(8)
    t = solve(g, 1)
    st = GameState((0,), 4, Side.ROBBER)
    seen = set()
    for _ in range(100):
        r = optimal_robber_move(t, st)
        st = GameState(st.cops, r, Side.COP)
        mv = (min(g.adjacency[st.cops[0]] + (st.cops[0],),
                  key=lambda v: min((r - v) % 8, (v - r) % 8)),)
        st = GameState(mv, st.robber, Side.ROBBER)
        assert st.robber not in st.cops
        key = (st.cops, st.robber)
        if key in seen:
            return  # position repeats: the robber evades forever
        seen.add(key)
    raise AssertionError("no repetition found")


def test_optimal_play_capture_distance_consistency(petersen):
    t = solve(petersen, 3)
    _, witness = is_copwin(petersen, 3, table=t)
    for r0 in range(10):
        if r0 in witness:
            continue
        st = GameState(witness, r0, Side.ROBBER)
        expected = t.capture_distance(st)
        moves = 0
        while st.robber not in st.cops:
            r = optimal_robber_move(t, st)
            st = GameState(st.cops, r, Side.COP)
            if st.robber in st.cops:
                break
            prev = t.capture_distance(st)
            mv = optimal_cop_move(t, st)
            moves += 1
            st = GameState(mv, st.robber, Side.ROBBER)
            if st.robber not in mv:
                # distance must fall by one cop move after the cops' move
                assert t.capture_distance(st) == prev - 1
        assert moves == expected


def test_capture_distance_zero_iff_captured(petersen):
    t = solve(petersen, 2)
    assert t.capture_distance(GameState((3, 7), 3, Side.ROBBER)) == 0
    st = GameState((0, 1), 2, Side.COP)
    if t.is_cop_win(st):
        assert t.capture_distance(st) >= 1


# -- monotonicity (small slice; the full sweep is in the acceptance suite) ----------

@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 2)])
def test_copwin_monotone_in_cop_count(n, k):
    g = build_gp(GpParams(n, k))
    prev = False
    for c in (1, 2, 3, 4):
        now = is_copwin(g, c)[0]
        assert now or not prev
        prev = now
