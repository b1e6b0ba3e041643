import pytest
from hypothesis import given, settings, strategies as st

from fingames import fixtures
from fingames.arena import ADAM, EVE, attractor, buchi_arena, make_arena
from fingames.conditions import (BndParity, BndUniformBuchi, Buchi, CoBuchi, FinitaryBuchi,
                                 FinitaryParity, Parity, Safety, UniformBuchi)
from fingames.errors import CapExceeded
from fingames.fixtures import random_arena
from fingames.oracle import OracleBudget, oracle_region
from fingames.solvers import (format_result, minimal_uniform_bound, solve, solve_bnd_parity,
                              solve_bnd_uniform_buchi, solve_buchi, solve_cobuchi,
                              solve_finitary_buchi, solve_finitary_parity, solve_parity,
                              solve_safety, solve_uniform_buchi)
from fingames.strategy import verify

ALL = frozenset({0, 1, 2})


def test_fig3_regions(fig3):
    assert solve_safety(fig3).eve_region == {2}
    assert solve_buchi(fig3).eve_region == ALL
    assert solve_bnd_uniform_buchi(fig3, 0).eve_region == {2}
    assert solve_uniform_buchi(fig3, 0).eve_region == ALL
    assert solve_finitary_buchi(fig3).eve_region == ALL
    assert minimal_uniform_bound(fig3, 0) == 0


def test_fig3_result_text(fig3):
    text = format_result(fig3, solve_bnd_uniform_buchi(fig3, 0))
    assert text.splitlines() == ["region E: 2", "region A: 0,1"]


def test_trivial_targets(fig3):
    V = frozenset(fig3.vertices)
    assert solve_safety(fig3, V).eve_region == V
    assert solve_safety(fig3, set()).eve_region == frozenset()
    assert solve_buchi(fig3, V).eve_region == V
    for N in range(3):
        assert solve_bnd_uniform_buchi(fig3, N, V).eve_region == V
        assert solve_uniform_buchi(fig3, N, set()).eve_region == frozenset()
    assert solve_finitary_buchi(fig3, V).eve_region == V


def test_parity_all_even_all_odd():
    succ = [[1, 2], [0], [2, 0]]
    even = make_arena([EVE, ADAM, EVE], succ, [0, 2, 4], 4)
    odd = make_arena([EVE, ADAM, EVE], succ, [1, 3, 3], 3)
    V = frozenset(range(3))
    for solver in (solve_parity, solve_bnd_parity, solve_finitary_parity):
        assert solver(even).eve_region == V
    assert solve_parity(odd).eve_region == frozenset()


def test_uniparity_regions(uniparity):
    V = frozenset(uniparity.vertices)
    assert solve_parity(uniparity).eve_region == V
    assert solve_finitary_parity(uniparity).eve_region == V
    res = solve_bnd_parity(uniparity)
    assert 0 in res.eve_region
    assert verify(uniparity, res.eve_strategy, BndParity(), [0])


def test_boundunknown_least_bound():
    a = fixtures.build("boundunknown", n=4).obj
    assert minimal_uniform_bound(a, 0) == 3
    assert 0 in solve_finitary_buchi(a).eve_region


def test_minimal_bound_none_and_cap():
    a = buchi_arena([EVE, EVE], [[1], [1]], [0])
    assert minimal_uniform_bound(a, 0) is None
    # the target is far away, so the cap is too small
    n = 6
    a = buchi_arena([EVE] * n, [[(i + 1) % n] for i in range(n)], [0])
    assert minimal_uniform_bound(a, 1) == n - 1
    with pytest.raises(CapExceeded):
        minimal_uniform_bound(a, 1, cap=2)


def test_cobuchi_is_dual_of_buchi_with_swapped_owners():
    for seed in range(40):
        a = random_arena(seed)
        F = a.buchi_set
        V = frozenset(a.vertices)
        swapped = solve_buchi(a.swap_owners(), F).eve_region
        assert solve_cobuchi(a, F).eve_region == V - swapped


def test_finitary_parity_with_one_odd_color_is_finitary_buchi():
    for seed in range(40):
        a = random_arena(seed, max_color=1)
        assert solve_finitary_parity(a).eve_region == solve_finitary_buchi(a).eve_region
        assert solve_bnd_parity(a).eve_region == solve_finitary_buchi(a).eve_region


CONDS = [Safety(), Buchi(), CoBuchi(), Parity(), BndUniformBuchi(0), BndUniformBuchi(2),
         UniformBuchi(0), UniformBuchi(1), UniformBuchi(3), FinitaryBuchi(), BndParity(),
         FinitaryParity()]


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(CONDS))
def test_solver_matches_oracle(seed, cond):
    a = random_arena(seed)
    res = solve(a, cond)
    assert res.eve_region == oracle_region(a, cond)
    assert res.eve_region | res.adam_region == frozenset(a.vertices)
    assert not res.eve_region & res.adam_region


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(CONDS))
def test_emitted_strategies_verify(seed, cond):
    a = random_arena(seed)
    res = solve(a, cond)
    if res.eve_region:
        assert verify(a, res.eve_strategy, cond, res.eve_region)
    if res.adam_strategy is not None and res.adam_region:
        assert verify(a, res.adam_strategy, cond, res.adam_region)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000), st.integers(0, 3))
def test_region_inclusions(seed, N):
    a = random_arena(seed)
    bnd = solve_bnd_uniform_buchi(a, N).eve_region
    uni = solve_uniform_buchi(a, N).eve_region
    assert attractor(a, bnd).region <= uni
    assert solve_bnd_uniform_buchi(a, N + 1).eve_region >= bnd
    assert solve_uniform_buchi(a, N + 1).eve_region >= uni
    assert uni <= solve_finitary_buchi(a).eve_region
    assert solve_bnd_parity(a).eve_region <= solve_finitary_parity(a).eve_region
    assert solve_finitary_parity(a).eve_region <= solve_parity(a).eve_region


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_minimal_bound_is_least(seed):
    a = random_arena(seed)
    for v in a.vertices:
        b = minimal_uniform_bound(a, v)
        if b is None:
            assert v not in solve_buchi(a).eve_region
            continue
        assert v in solve_uniform_buchi(a, b).eve_region
        if b > 0:
            assert v not in solve_uniform_buchi(a, b - 1).eve_region


def test_bounded_and_uniform_strategies_are_positional():
    for seed in range(60):
        a = random_arena(seed)
        for cond in (BndUniformBuchi(1), UniformBuchi(1), FinitaryBuchi()):
            assert solve(a, cond).eve_strategy.is_positional


def test_oracle_budget_is_enforced():
    from fingames.errors import BudgetExceeded
    a = fixtures.build("boundunknown", n=4).obj
    with pytest.raises(BudgetExceeded):
        oracle_region(a, Buchi(), OracleBudget(max_vertices=8))
