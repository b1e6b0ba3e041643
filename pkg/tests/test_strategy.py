import math

import pytest
from hypothesis import given, settings, strategies as st

from fingames import fixtures
from fingames.arena import ADAM, EVE, MemoryStructure, make_arena
from fingames.conditions import (BndParity, BndUniformBuchi, FinitaryBuchi, UniformParity)
from fingames.errors import InvalidStrategy, SpaceTooLarge
from fingames.fixtures import random_arena
from fingames.solvers import solve, solve_bnd_uniform_buchi
from fingames.strategy import (Strategy, counter_profile, distance_sequence, enumerate_strategies,
                               format_strategy, lasso_distances, parse_strategy, quotient,
                               reduce_memory, restrict_to_strategy, simulate, strategy_space_size,
                               verify)

INF = math.inf


def test_distance_examples():
    # 2 does not answer 1; only 0 does
    assert distance_sequence([1, 2, 2])[0] == INF
    assert distance_sequence([1, 2, 0])[0] == 2
    assert distance_sequence([3, 2, 2])[0] == 1
    assert distance_sequence([0, 0, 0]) == [0, 0, 0]
    assert distance_sequence([1, 3, 0]) == [2, 1, 0]
    assert distance_sequence([3, 2, 1]) == [1, 0, INF]


def test_lasso_distances_wrap_around():
    # the request 3 at the end of the cycle is answered by 2 on the next lap
    assert lasso_distances([1], [2, 0, 3]) == [2, 0, 0, 1]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=30))
def test_distance_definition(colors):
    d = distance_sequence(colors)
    for k, c in enumerate(colors):
        if c % 2 == 0:
            assert d[k] == 0
        elif d[k] == INF:
            assert not any(x % 2 == 0 and x <= c for x in colors[k:])
        else:
            j = k + d[k]
            assert colors[j] % 2 == 0 and colors[j] <= c
            assert not any(x % 2 == 0 and x <= c for x in colors[k:j])


def test_counter_profile_actions():
    prof = counter_profile([1, 3, 0, 2], 3)
    assert prof.actions[1] == ["i", "i", "r", "e"]
    assert prof.actions[3] == ["e", "i", "r", "e"]


def test_restrict_positional_on_functional_arena():
    a = make_arena([EVE, EVE], [[1], [0]], [0, 1], 1)
    g = restrict_to_strategy(a, Strategy.positional(EVE, {}), [0])
    assert g.nodes == [(0, 0), (1, 0)] and g.succ == [[1], [0]]


def test_fig3_verdicts(fig3):
    eve = solve_bnd_uniform_buchi(fig3, 0).eve_strategy
    g = restrict_to_strategy(fig3, eve, [2])
    assert g.nodes == [(2, 0)] and g.succ == [[0]]
    assert verify(fig3, eve, BndUniformBuchi(0), [2]).holds
    bad = verify(fig3, eve, BndUniformBuchi(0), [0])
    assert not bad.holds and 1 in bad.stem + bad.cycle
    adam = Strategy.positional(ADAM, {0: 1})
    v = verify(fig3, adam, FinitaryBuchi(), [0])
    assert not v.holds and v.cycle == [2]
    assert v.format() == "FAILS stem=0,1 cycle=2 witness=-" or v.format().startswith("FAILS stem=0,1 cycle=2")


def test_simulate_fig3(fig3):
    stay = Strategy.positional(ADAM, {0: 0})
    leave = Strategy.positional(ADAM, {0: 1})
    none = Strategy.positional(EVE, {})
    p = simulate(fig3, none, stay, 2, 5)
    assert p.vertices == [2] * 5 and p.distances == [0] * 5
    p = simulate(fig3, none, stay, 0, 4)
    assert p.distances == [0] * 4
    p = simulate(fig3, none, leave, 0, 5)
    assert p.distances == [0, 1, 0, 0, 0]


def test_simulate_rejects_illegal_moves(fig3):
    with pytest.raises(InvalidStrategy):
        simulate(fig3, Strategy.positional(EVE, {}), Strategy.positional(ADAM, {0: 2}), 0, 3)


def test_strategy_counts(fig3, uniparity):
    one = make_arena([EVE, EVE, EVE], [[1, 2], [1], [2]], [0, 0, 0], 1)
    assert strategy_space_size(one, EVE) == 2
    assert len(list(enumerate_strategies(one, EVE))) == 2
    assert strategy_space_size(fig3, EVE) == 1
    expected = 1
    for v in uniparity.vertices_of(EVE):
        expected *= len(uniparity.succ[v])
    assert strategy_space_size(uniparity, EVE) == expected == 2
    with pytest.raises(SpaceTooLarge):
        list(enumerate_strategies(uniparity, ADAM, memory_size=3, cap=10))


def test_uniparity_needs_two_states(uniparity):
    cond = UniformParity(3)
    assert not any(verify(uniparity, s, cond, [0]) for s in enumerate_strategies(uniparity, EVE))
    # remember which request was made: state 1 after the 1-branch
    mem = MemoryStructure(2, [0] * 8, {(0, 0, 3): 1})
    s = Strategy(EVE, {(4, 0): 5, (4, 1): 6}, mem)
    assert verify(uniparity, s, cond, [0]).holds
    assert not verify(uniparity, s, UniformParity(2), [0]).holds


def test_uniform_parity_waiting_time_is_exact():
    # request, two neutral steps, answer: waiting time 3
    a = make_arena([EVE] * 4, [[1], [2], [3], [3]], [1, 2, 2, 0], 2)
    s = Strategy.positional(EVE, {})
    assert verify(a, s, UniformParity(3), [0]).holds
    v = verify(a, s, UniformParity(2), [0])
    assert not v.holds and v.witness == (0, 3)


def test_reduce_memory_on_adam_memory_example():
    ex = fixtures.build("adam-memory", N=3)
    cond = ex.check[1]
    res = solve(ex.obj, cond)
    assert res.adam_strategy.memory_size == 5
    small = reduce_memory(ex.obj, res.adam_strategy, cond, [0])
    assert small.memory_size == 3
    assert verify(ex.obj, small, cond, [0]).holds


def test_quotient_with_singletons_is_equivalent():
    ex = fixtures.build("adam-memory", N=3)
    cond = ex.check[1]
    s = solve(ex.obj, cond).adam_strategy
    q = quotient(ex.obj, s, [[m] for m in range(s.memory_size)], [0])
    assert verify(ex.obj, q, cond, [0]).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_strategy_text_round_trip(seed):
    a = random_arena(seed, max_color=2)
    res = solve(a, BndParity())
    for s in (res.eve_strategy, res.adam_strategy):
        if s is None:
            continue
        text = format_strategy(a, s)
        back = parse_strategy(text, a)
        assert format_strategy(a, back) == text


def test_positional_text(fig3):
    s = Strategy.positional(ADAM, {0: 1})
    assert format_strategy(fig3, s) == "strategy A positional: 0->1\n"
    assert parse_strategy("strategy A positional: 0->1\n", fig3).moves == {(0, 0): 1}


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=20), st.lists(st.integers(0, 4), max_size=10))
def test_distances_only_improve_under_extension(prefix, more):
    short = distance_sequence(prefix)
    longer = distance_sequence(prefix + more)[: len(prefix)]
    for a, b in zip(short, longer):
        assert b == a or (a == INF and b < INF)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000), st.integers(0, 2))
def test_counterexamples_break_the_bound(seed, N):
    a = random_arena(seed)
    cond = BndUniformBuchi(N)
    for s in enumerate_strategies(a, EVE, cap=50):
        v = verify(a, s, cond, a.vertices)
        if v.holds:
            continue
        # the lasso is a real play and its waiting time exceeds N at the reported position
        play = v.stem + v.cycle + v.cycle[:1]
        assert all(w in a.succ[u] for u, w in zip(play, play[1:]))
        F = a.buchi_set
        d = lasso_distances([0 if x in F else 1 for x in v.stem], [0 if x in F else 1 for x in v.cycle])
        pos, dist = v.witness
        assert d[pos] == dist > N
