"""Brute-force reference solver for tiny arenas.

Nothing here calls the fixpoint solvers or the cycle-analysis verifier
(except :func:`oracle_min_memory`, which uses the verifier as its judge).
Regions are obtained by enumerating Eve's positional strategies and, for
each one, searching Adam's positional replies on a product with a small
monitor; every resulting play is a lasso and is scored directly from the
waiting-time definitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .arena import ADAM, EVE, Arena, MemoryStructure
from .conditions import (BndParity, BndUniformBuchi, Buchi, CoBuchi, Condition, FinitaryBuchi,
                         FinitaryParity, Parity, Safety, UniformBuchi, UniformParity)
from .errors import BudgetExceeded
from .strategy import Strategy, verify

INF = float("inf")


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 8
    max_memory: int = 4
    max_strategies: int = 200_000


def _waits(colors: list[int], stem_len: int) -> list[float]:
    """Waiting time of each position of ``stem . cycle^omega`` given ``stem + cycle + cycle``."""
    n = len(colors)
    out = []
    for k in range(n):
        c = colors[k]
        d = INF
        for j in range(k, n):
            if colors[j] % 2 == 0 and colors[j] <= c:
                d = j - k
                break
        out.append(d)
    cyc = (n - stem_len) // 2
    return out[: stem_len + cyc]


def _wins(arena: Arena, cond: Condition, stem: list[int], cycle: list[int]) -> bool:
    """Does the play ``stem . cycle^omega`` satisfy ``cond``?"""
    if isinstance(cond, Safety):
        S = cond.target(arena)
        return all(v in S for v in stem + cycle)
    if isinstance(cond, (Buchi, CoBuchi, BndUniformBuchi, UniformBuchi, FinitaryBuchi)):
        F = cond.target(arena)
        colors = [0 if v in F else 1 for v in stem + cycle + cycle]
    else:
        colors = [arena.color[v] for v in stem + cycle + cycle]
    if isinstance(cond, Buchi):
        return any(v in cond.target(arena) for v in cycle)
    if isinstance(cond, CoBuchi):
        return not any(v in cond.target(arena) for v in cycle)
    if isinstance(cond, Parity):
        return min(arena.color[v] for v in cycle) % 2 == 0
    d = _waits(colors, len(stem))
    if isinstance(cond, BndUniformBuchi):
        return max(d) <= cond.N
    if isinstance(cond, UniformBuchi):
        return max(d[len(stem):]) <= cond.N
    if isinstance(cond, (FinitaryBuchi, FinitaryParity)):
        return max(d[len(stem):]) < INF
    if isinstance(cond, BndParity):
        return max(d) < INF
    if isinstance(cond, UniformParity):
        return max(d) <= cond.N
    raise TypeError(f"oracle does not support {cond!r}")


def _monitor(arena: Arena, cond: Condition):
    """(initial state, step) of a deterministic monitor under which Adam's replies may be positional."""
    if isinstance(cond, BndUniformBuchi) or isinstance(cond, UniformBuchi):
        F, cap = cond.target(arena), cond.N + 1
        return (lambda v: 0 if v in F else 1), (lambda q, w: 0 if w in F else min(q + 1, cap))
    if isinstance(cond, BndParity):
        color = arena.color

        # smallest pending odd color, or None when nothing is pending
        def step(q, w):
            c = color[w]
            if c % 2:
                return c if q is None else min(q, c)
            return None if q is None or c <= q else q

        return (lambda v: step(None, v)), step
    return (lambda v: 0), (lambda q, w: 0)


def _eve_positional_wins(arena: Arena, cond: Condition, choice: dict[int, int], start: int) -> bool:
    """Whether Eve's positional ``choice`` wins from ``start`` against every positional reply of Adam on the monitor product.

    Adam's choices are committed the first time a product node is met, so
    each branch of the search follows exactly one play until it closes a lasso.
    """
    init, step = _monitor(arena, cond)
    todo = [({}, [(start, init(start))])]
    while todo:
        adam, path = todo.pop()
        while True:
            node = path[-1]
            v, q = node
            if arena.owner[v] == EVE:
                nexts = [choice[v]]
            elif node in adam:
                nexts = [adam[node]]
            else:
                nexts = list(arena.succ[v])
                for w in nexts[1:]:
                    a2 = dict(adam)
                    a2[node] = w
                    todo.append((a2, path))
                adam = dict(adam)
                adam[node] = nexts[0]
                nexts = nexts[:1]
            w = nexts[0]
            nxt = (w, step(q, w))
            if nxt in path:
                i = path.index(nxt)
                verts = [p[0] for p in path]
                if not _wins(arena, cond, verts[:i], verts[i:]):
                    return False
                break
            path = path + [nxt]
    return True


def _eve_finitary_parity_wins(arena: Arena, choice: dict[int, int], start: int) -> bool:
    """Adam may need unbounded memory here, so the play space is analysed as a graph instead."""
    g = nx.DiGraph()
    g.add_nodes_from(arena.vertices)
    for v in arena.vertices:
        targets = [choice[v]] if arena.owner[v] == EVE else arena.succ[v]
        g.add_edges_from((v, w) for w in targets)
    reach = nx.descendants(g, start) | {start}
    color = arena.color
    for comp in nx.strongly_connected_components(g.subgraph(reach)):
        sub = g.subgraph(comp)
        if sub.number_of_edges() == 0:
            continue
        for u in comp:
            r = color[u]
            if r % 2 == 0:
                continue
            quiet = [x for x in comp if not (color[x] % 2 == 0 and color[x] <= r)]
            qg = g.subgraph(quiet)
            seen = nx.descendants(qg, u) | {u}
            # a cycle with no answer to u, reachable from u and able to return: pump it
            if not nx.is_directed_acyclic_graph(qg.subgraph(seen)):
                return False
    return True


def _eve_choices(arena: Arena, budget: OracleBudget):
    eves = arena.vertices_of(EVE)
    size = 1
    for v in eves:
        size *= len(arena.succ[v])
    if size > budget.max_strategies:
        raise BudgetExceeded(f"{size} Eve strategies exceed the budget {budget.max_strategies}")
    for combo in itertools.product(*(arena.succ[v] for v in eves)):
        yield dict(zip(eves, combo))


def oracle_region(arena: Arena, cond: Condition, budget: OracleBudget = OracleBudget()) -> frozenset[int]:
    """Vertices from which some positional Eve strategy wins against every Adam reply."""
    if len(arena) > budget.max_vertices:
        raise BudgetExceeded(f"{len(arena)} vertices exceed the budget {budget.max_vertices}")
    region = set()
    for choice in _eve_choices(arena, budget):
        for v in arena.vertices:
            if v in region:
                continue
            if isinstance(cond, FinitaryParity):
                ok = _eve_finitary_parity_wins(arena, choice, v)
            else:
                ok = _eve_positional_wins(arena, cond, choice, v)
            if ok:
                region.add(v)
        if len(region) == len(arena):
            break
    return frozenset(region)


# ---------------------------------------------------------------- memory


def _update_tables(size: int, edges: list[tuple[int, int]], constant_first: bool):
    keys = [(m, v, w) for m in range(size) for v, w in edges]
    seen = set()
    if constant_first:
        for targets in itertools.product(range(size), repeat=len(edges)):
            table = {(m, v, w): t for m in range(size) for (v, w), t in zip(edges, targets)}
            key = tuple(sorted(table.items()))
            seen.add(key)
            yield table
    for values in itertools.product(range(size), repeat=len(keys)):
        table = dict(zip(keys, values))
        if tuple(sorted(table.items())) in seen:
            continue
        yield table


def oracle_min_memory(arena: Arena, player: int, cond: Condition, starts: Iterable[int],
                      cap: int = 3, budget: OracleBudget = OracleBudget()) -> int | None:
    """Least memory size up to ``cap`` for which a winning strategy of ``player`` exists.

    Memory structures start in state 0 and change state only on edges leaving
    branching vertices of the opponent; every other edge keeps the state.
    Tables that ignore the current state are tried first.  The verifier is
    the judge.
    """
    starts = sorted(set(starts))
    opp = 1 - player
    own = [v for v in arena.vertices_of(player) if len(arena.succ[v]) > 1]
    edges = [(v, w) for v in arena.vertices if arena.owner[v] == opp and len(arena.succ[v]) > 1
             for w in arena.succ[v]]
    for size in range(1, cap + 1):
        if size > budget.max_memory:
            raise BudgetExceeded(f"memory size {size} exceeds the budget {budget.max_memory}")
        slots = [(v, m) for v in own for m in range(size)]
        moves_count = 1
        for v, _ in slots:
            moves_count *= len(arena.succ[v])
        tables = [{}] if size == 1 else _update_tables(size, edges, True)
        checked = 0
        for table in tables:
            mem = MemoryStructure(size, [0] * len(arena), table)
            for combo in itertools.product(*(arena.succ[v] for v, _ in slots)):
                checked += 1
                if checked > budget.max_strategies:
                    raise BudgetExceeded(f"more than {budget.max_strategies} strategies of size {size}")
                strat = Strategy(player, dict(zip(slots, combo)), mem)
                if verify(arena, strat, cond, starts):
                    return size
    return None
