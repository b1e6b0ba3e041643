import pytest

from fingames.arena import ADAM, EVE, buchi_arena
from fingames.conditions import Buchi, BndUniformBuchi, FinitaryParity, UniformBuchi, UniformParity
from fingames.errors import BudgetExceeded
from fingames.oracle import OracleBudget, _waits, oracle_min_memory, oracle_region


def test_waits_on_a_lasso():
    # stem [1] then cycle [1, 0] unrolled twice
    assert _waits([1, 1, 0, 1, 0], 1) == [2, 1, 0]


def test_fig3(fig3):
    V = frozenset(fig3.vertices)
    assert oracle_region(fig3, UniformBuchi(0)) == V
    assert oracle_region(fig3, BndUniformBuchi(0)) == {2}
    assert oracle_region(fig3, Buchi()) == V


def test_trivial_targets(fig3):
    V = frozenset(fig3.vertices)
    for N in range(3):
        assert oracle_region(fig3, UniformBuchi(N, F=V)) == V
        assert oracle_region(fig3, UniformBuchi(N, F=frozenset())) == frozenset()


def test_unanswered_request_cycle():
    # Adam can circle through a request forever
    a = buchi_arena([ADAM, ADAM], [[0, 1], [1]], [1])
    assert oracle_region(a, FinitaryParity()) == {1}


def test_min_memory(fig3, uniparity):
    assert oracle_min_memory(fig3, EVE, Buchi(), [0]) == 1
    assert oracle_min_memory(uniparity, EVE, UniformParity(3), [0], cap=2) == 2
    assert oracle_min_memory(uniparity, EVE, UniformParity(2), [0], cap=2) is None


def test_budget(uniparity):
    with pytest.raises(BudgetExceeded):
        oracle_region(uniparity, Buchi(), OracleBudget(max_vertices=4))
    with pytest.raises(BudgetExceeded):
        oracle_min_memory(uniparity, EVE, UniformParity(2), [0], cap=3, budget=OracleBudget(max_memory=2))
