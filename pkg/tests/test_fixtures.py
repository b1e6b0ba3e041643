import pytest

from fingames import fixtures
from fingames.arena import ADAM, EVE, validate
from fingames.errors import BadParams, UnknownExample
from fingames.pushdown import Configuration


def test_catalog_is_complete():
    assert len(fixtures.names()) >= 12
    for entry in fixtures.CATALOG.values():
        assert entry.about
        ex = fixtures.build(entry.name)
        assert ex.kind == entry.kind and ex.claims


def test_fig3_shape():
    a = fixtures.build("fig3").obj
    assert len(a) == 3 and a.num_edges == 4 and a.buchi_set == {0, 2}
    assert set(a.owner) == {ADAM}


def test_adam_memory_shape():
    a = fixtures.build("adam-memory", N=3).obj
    assert len(a) == 1 + 3 + 9
    assert a.owner[0] == ADAM and len(a.succ[0]) == 3
    assert len(a.buchi_set) == 3
    # each path has length 3 and returns to the hub
    for v in a.succ[a.succ[0][0]]:
        path = [v]
        while a.succ[path[-1]] != (0,):
            path.append(a.succ[path[-1]][0])
        assert len(path) == 3


def test_bincounter_shape():
    p = fixtures.build("bincounter", n=3).obj
    assert p.is_deterministic()
    assert len(p.states) == 4 * 3 - 1
    assert p.alphabet == ["0", "1"]
    assert [q for q in p.states if p.color[q] == 0] == ["F"]


def test_truncated_examples_are_marked():
    for name in ("boundunknown", "bndparity-rounds"):
        assert "truncat" in fixtures.build(name).note


def test_bad_requests():
    with pytest.raises(UnknownExample):
        fixtures.build("nope")
    with pytest.raises(BadParams):
        fixtures.build("fig3", n=2)
    with pytest.raises(BadParams):
        fixtures.build("bincounter", n=1)


def test_random_arena_is_seeded_and_legal():
    for seed in range(100):
        a = fixtures.random_arena(seed)
        assert validate(a) == [] and 1 <= len(a) <= 6
        assert all(len(s) <= 3 for s in a.succ)
        assert a.succ == fixtures.random_arena(seed).succ


def test_primorial():
    assert [fixtures.primorial(n) for n in (1, 2, 3)] == [2, 6, 30]


@pytest.mark.parametrize("name", ["onecounter", "doubleexp", "nested", "credit", "switch", "round-robin"])
def test_processes_have_no_stuck_configurations(name):
    from fingames.pushdown import unfold
    ex = fixtures.build(name)
    unfold(ex.obj, 6, ex.start, "lose-eve")
