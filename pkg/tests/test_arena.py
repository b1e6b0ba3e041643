import pytest
from hypothesis import given, settings, strategies as st

from fingames.arena import (ADAM, EVE, adam_attractor, attractor, bounded_attractor, buchi_arena,
                            format_arena, make_arena, parse_arena, pre, product, request_tracker_memory,
                            restrict, step_counter_memory, to_dot, tracker_states, trivial_memory,
                            validate)
from fingames.errors import NotASubarena, OddMaxColor
from fingames.fixtures import random_arena


def test_validate_minimal_and_dead_end(fig3):
    assert validate(make_arena([EVE], [[0]], [0], 1)) == []
    bad = make_arena([EVE, ADAM], [[1], []], [0, 0], 1)
    problems = validate(bad)
    assert len(problems) == 1 and "vertex 1" in problems[0]
    assert validate(fig3) == []


def test_restrict(fig3):
    sub, new = restrict(fig3, {2})
    assert len(sub) == 1 and sub.succ == ((0,),)
    with pytest.raises(NotASubarena):
        restrict(fig3, {1})
    full, new = restrict(fig3, {0, 1, 2})
    assert full.succ == fig3.succ and new == {0: 0, 1: 1, 2: 2}


def test_pre(fig3):
    assert pre(fig3, {2}) == {1, 2}
    assert pre(fig3, set()) == frozenset()
    assert pre(fig3, {0, 1, 2}) == {0, 1, 2}


def test_attractor_fig3(fig3):
    att = attractor(fig3, {2})
    assert att.region == {1, 2}
    assert att.rank == {2: 0, 1: 1}
    assert attractor(fig3, set()).region == frozenset()
    assert attractor(fig3, {0, 1, 2}).rank == {0: 0, 1: 0, 2: 0}
    assert bounded_attractor(fig3, {2}, 0) == {2}
    assert bounded_attractor(fig3, {2}, 1) == {1, 2}
    assert adam_attractor(fig3, {0}) == {0}
    assert adam_attractor(fig3, {0, 1, 2}) == {0, 1, 2}
    assert adam_attractor(fig3, set()) == frozenset()


def test_step_counter_updates(fig3):
    mem = step_counter_memory(fig3, fig3.buchi_set, 2)
    assert mem.update(0, 0, 1) == 0  # leaving F
    assert mem.update(1, 1, 2) == 0  # entering F
    loop = make_arena([EVE, EVE], [[1], [0]], [1, 1], 1)
    mem = step_counter_memory(loop, set(), 2)
    assert [mem.update(m, 0, 1) for m in range(3)] == [1, 2, 2]


def test_request_tracker_updates():
    a = make_arena([EVE] * 4, [[1], [2], [3], [0]], [3, 1, 0, 4], 4)
    mem = request_tracker_memory(a)
    assert tracker_states(4) == [1, 3, 4]
    idx = {int(n): i for i, n in enumerate(mem.names)}
    assert mem.update(idx[3], 0, 1) == idx[1]  # odd smaller color
    assert mem.update(idx[1], 1, 2) == idx[4]  # even smaller color answers
    assert mem.update(idx[4], 2, 3) == idx[4]  # not smaller: unchanged
    assert mem.initial == (idx[3], idx[1], idx[4], idx[4])
    with pytest.raises(OddMaxColor):
        request_tracker_memory(make_arena([EVE], [[0]], [1], 3))


def test_product_shapes(fig3):
    same = product(fig3, trivial_memory(fig3))
    assert same.arena.succ == fig3.succ
    prod = product(fig3, step_counter_memory(fig3, fig3.buchi_set, 1))
    assert len(prod.arena) <= 6
    for x, (v, _) in enumerate(prod.pairs):
        assert len(prod.arena.succ[x]) == len(fig3.succ[v])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 3))
def test_product_edges_project_to_base_edges(seed, N):
    a = random_arena(seed)
    prod = product(a, step_counter_memory(a, a.buchi_set, N), prune=True)
    for x, (v, _) in enumerate(prod.pairs):
        assert sorted(prod.pairs[y][0] for y in prod.arena.succ[x]) == sorted(a.succ[v])


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000))
def test_attractor_properties(seed):
    a = random_arena(seed)
    F = a.buchi_set
    att = attractor(a, F)
    assert F <= att.region
    assert bounded_attractor(a, F, len(a)) == att.region
    # closure: nothing outside is forced in
    assert pre(a, att.region) <= att.region
    # ranks decrease along the strategy
    for v, w in att.strategy.items():
        assert att.rank[w] < att.rank[v]
    assert attractor(a, a.vertices).region == frozenset(a.vertices)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_format_round_trip(seed):
    a = random_arena(seed)
    b = parse_arena(format_arena(a))
    assert (b.owner, b.succ, b.color, b.maxcolor) == (a.owner, a.succ, a.color, a.maxcolor)
    assert format_arena(b) == format_arena(a)


def test_parse_errors_and_sparse_ids():
    a = parse_arena("# comment\n10 E 0 20\n20 A 1 10,20\n")
    assert a.succ == ((1,), (0, 1)) and a.label(1) == "20"
    for text in ("1 X 0 1\n", "1 E 0 2\n", "1 E 0\n", "1 E 0 1\n1 A 0 1\n"):
        with pytest.raises(ValueError):
            parse_arena(text)


def test_dot_mentions_every_vertex(fig3):
    dot = to_dot(fig3)
    assert dot.startswith('digraph "fig3"')
    assert dot.count("->") == fig3.num_edges


def test_buchi_arena_colors():
    a = buchi_arena([EVE, ADAM], [[1], [0]], [1])
    assert a.color == (1, 0) and a.buchi_set == {1}
    assert a.swap_owners().owner == (ADAM, EVE)
