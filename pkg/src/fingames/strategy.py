"""Strategies, play simulation, distances and verification by cycle analysis.

Verification never simulates.  It builds the graph of all plays consistent
with a strategy (opponent keeps every edge), takes its product with a small
deterministic monitor for the condition, and looks for reachable cycles of
the right shape.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .arena import ADAM, EVE, PLAYER_NAMES, Arena, MemoryStructure, tracker_step, tracker_top
from .conditions import (BndParity, BndUniformBuchi, Buchi, CoBuchi, Condition, FinitaryBuchi,
                         FinitaryParity, Parity, Safety, UniformBuchi, UniformParity)
from .errors import InvalidStrategy, SpaceTooLarge

INF = math.inf


class Strategy:
    """A positional or finite-memory strategy for one player.

    ``moves`` maps ``(vertex, memory state)`` to a successor; positional
    strategies use state 0 and no memory structure.
    """

    __slots__ = ("player", "moves", "memory")

    def __init__(self, player: int, moves: Mapping[tuple[int, int], int],
                 memory: MemoryStructure | None = None):
        self.player = player
        self.moves = dict(moves)
        self.memory = memory

    @classmethod
    def positional(cls, player: int, choice: Mapping[int, int]) -> "Strategy":
        return cls(player, {(v, 0): w for v, w in choice.items()})

    @property
    def is_positional(self) -> bool:
        return self.memory is None or self.memory.size == 1

    @property
    def memory_size(self) -> int:
        return 1 if self.memory is None else self.memory.size

    def initial(self, v: int) -> int:
        return 0 if self.memory is None else self.memory.initial[v]

    def update(self, m: int, v: int, w: int) -> int:
        return 0 if self.memory is None else self.memory.update(m, v, w)

    def move(self, v: int, m: int = 0) -> int | None:
        return self.moves.get((v, m))

    def check(self, arena: Arena) -> None:
        for (v, m), w in self.moves.items():
            if not 0 <= v < len(arena) or arena.owner[v] != self.player:
                raise InvalidStrategy(f"move prescribed at vertex {v} not owned by the player")
            if w not in arena.succ[v]:
                raise InvalidStrategy(f"illegal move {v}->{w}")
            if not 0 <= m < self.memory_size:
                raise InvalidStrategy(f"memory state {m} out of range")


# ---------------------------------------------------------------- distances


def distance_sequence(colors: Sequence[int]) -> list[float]:
    """Waiting time of every position of a finite prefix.

    ``inf`` marks positions with no answer inside the prefix; such values are
    censored by the end of the prefix, not confirmed.
    """
    n = len(colors)
    out = [INF] * n
    # next occurrence of an even color <= c, scanning backwards
    nearest: dict[int, int] = {}
    for k in range(n - 1, -1, -1):
        c = colors[k]
        if c % 2 == 0:
            nearest[c] = k
        best = INF
        for e, pos in nearest.items():
            if e <= c and pos - k < best:
                best = pos - k
        out[k] = best
    return out


def lasso_distances(colors_stem: Sequence[int], colors_cycle: Sequence[int]) -> list[float]:
    """Exact waiting times of the positions of ``stem . cycle^omega`` (stem then one cycle)."""
    seq = list(colors_stem) + list(colors_cycle) * 2
    d = distance_sequence(seq)
    return d[: len(colors_stem) + len(colors_cycle)]


@dataclass
class CounterProfile:
    """One counter per odd color with the action taken at every step."""

    colors: list[int]
    actions: dict[int, list[str]] = field(default_factory=dict)
    values: dict[int, list[int]] = field(default_factory=dict)


def counter_profile(colors: Sequence[int], maxcolor: int) -> CounterProfile:
    odd = list(range(1, maxcolor + 1, 2))
    prof = CounterProfile(list(colors), {r: [] for r in odd}, {r: [] for r in odd})
    open_req: set[int] = set()
    value = {r: 0 for r in odd}
    for c in colors:
        if c % 2 == 0:
            answered = {r for r in open_req if r >= c}
            open_req -= answered
        else:
            answered = set()
            open_req.add(c)
        for r in odd:
            if r in answered:
                value[r] = 0
                prof.actions[r].append("r")
            elif r in open_req:
                value[r] += 1
                prof.actions[r].append("i")
            else:
                prof.actions[r].append("e")
            prof.values[r].append(value[r])
    return prof


@dataclass
class PlayPrefix:
    vertices: list[int]
    colors: list[int]
    distances: list[float]
    censored: list[bool]
    counters: CounterProfile


def simulate(arena: Arena, eve: Strategy, adam: Strategy, start: int, horizon: int) -> PlayPrefix:
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    strat = {EVE: eve, ADAM: adam}
    mem = {EVE: eve.initial(start), ADAM: adam.initial(start)}
    v = start
    seq = [v]
    while len(seq) < horizon:
        s = strat[arena.owner[v]]
        w = s.move(v, mem[arena.owner[v]])
        if w is None:
            if len(arena.succ[v]) == 1:
                w = arena.succ[v][0]
            else:
                raise InvalidStrategy(f"no move at ({v},{mem[arena.owner[v]]})")
        if w not in arena.succ[v]:
            raise InvalidStrategy(f"illegal move {v}->{w}")
        for p in (EVE, ADAM):
            mem[p] = strat[p].update(mem[p], v, w)
        v = w
        seq.append(v)
    colors = [arena.color[x] for x in seq]
    dist = distance_sequence(colors)
    return PlayPrefix(seq, colors, dist, [x == INF for x in dist],
                      counter_profile(colors, arena.maxcolor))


# ---------------------------------------------------------------- restricted graph


@dataclass
class RestrictedGraph:
    """Plays consistent with a strategy, as a graph over ``(vertex, memory)`` pairs."""

    nodes: list[tuple[int, int]]
    succ: list[list[int]]
    index: dict[tuple[int, int], int]
    starts: list[int]


def restrict_to_strategy(arena: Arena, strategy: Strategy, starts: Iterable[int]) -> RestrictedGraph:
    strategy.check(arena)
    nodes: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    succ: list[list[int]] = []

    def add(p):
        if p not in index:
            index[p] = len(nodes)
            nodes.append(p)
            succ.append([])
            queue.append(p)
        return index[p]

    queue: deque = deque()
    start_ids = [add((v, strategy.initial(v))) for v in starts]
    while queue:
        v, m = queue.popleft()
        i = index[(v, m)]
        if arena.owner[v] == strategy.player:
            w = strategy.move(v, m)
            if w is None:
                if len(arena.succ[v]) != 1:
                    raise InvalidStrategy(f"no move at ({v},{m})")
                w = arena.succ[v][0]
            targets = [w]
        else:
            targets = arena.succ[v]
        succ[i] = [add((w, strategy.update(m, v, w))) for w in targets]
    return RestrictedGraph(nodes, succ, index, start_ids)


# ---------------------------------------------------------------- graph helpers


def _reachable(succ: Sequence[Sequence[int]], starts: Iterable[int], allowed=None) -> set[int]:
    seen = set()
    stack = [s for s in starts if allowed is None or allowed(s)]
    seen.update(stack)
    while stack:
        x = stack.pop()
        for y in succ[x]:
            if y not in seen and (allowed is None or allowed(y)):
                seen.add(y)
                stack.append(y)
    return seen


def scc(succ: Sequence[Sequence[int]], nodes: Iterable[int]) -> list[list[int]]:
    """Strongly connected components of the subgraph induced by ``nodes`` (iterative Tarjan)."""
    nodes = list(nodes)
    inside = set(nodes)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter([y for y in succ[root] if y in inside]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            x, it = work[-1]
            advanced = False
            for y in it:
                if y not in index:
                    index[y] = low[y] = counter
                    counter += 1
                    stack.append(y)
                    on_stack.add(y)
                    work.append((y, iter([z for z in succ[y] if z in inside])))
                    advanced = True
                    break
                if y in on_stack:
                    low[x] = min(low[x], index[y])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[x])
            if low[x] == index[x]:
                comp = []
                while True:
                    y = stack.pop()
                    on_stack.discard(y)
                    comp.append(y)
                    if y == x:
                        break
                comps.append(comp)
    return comps


def _nontrivial(comp: list[int], succ) -> bool:
    return len(comp) > 1 or comp[0] in succ[comp[0]]


def _path(succ, sources: Iterable[int], goal: int, allowed=None) -> list[int] | None:
    """Shortest path from one of ``sources`` to ``goal`` (both included)."""
    parent: dict[int, int | None] = {}
    queue = deque()
    for s in sources:
        if s not in parent and (allowed is None or allowed(s)):
            parent[s] = None
            queue.append(s)
    while queue:
        x = queue.popleft()
        if x == goal:
            path = [x]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for y in succ[x]:
            if y not in parent and (allowed is None or allowed(y)):
                parent[y] = x
                queue.append(y)
    return None


def _cycle_through(succ, node: int, comp: set[int]) -> list[int]:
    """A cycle inside ``comp`` starting and ending at ``node`` (end omitted)."""
    if node in succ[node]:
        return [node]
    best = None
    for y in succ[node]:
        if y in comp:
            p = _path(succ, [y], node, allowed=lambda z: z in comp)
            if p is not None and (best is None or len(p) < len(best)):
                best = p
    return [node] + best[:-1]


# ---------------------------------------------------------------- monitors


class _Monitor:
    """Deterministic automaton reading vertex colors; ``state0`` on the first vertex."""

    def start(self, v: int) -> object:
        raise NotImplementedError

    def step(self, q, w: int) -> object:
        raise NotImplementedError


class _NoMonitor(_Monitor):
    def start(self, v):
        return 0

    def step(self, q, w):
        return 0


class _GapCounter(_Monitor):
    """Number of consecutive positions outside ``F`` ending here, capped at ``cap``."""

    def __init__(self, F, cap):
        self.F = F
        self.cap = cap

    def start(self, v):
        return 0 if v in self.F else 1

    def step(self, q, w):
        return 0 if w in self.F else min(q + 1, self.cap)


class _Tracker(_Monitor):
    def __init__(self, color, maxcolor):
        self.color = color
        self.top = tracker_top(maxcolor)

    def start(self, v):
        c = self.color[v]
        return c if c % 2 else self.top

    def step(self, q, w):
        return tracker_step(q, self.color[w], self.top)


class _RequestAges(_Monitor):
    """Age of the oldest open request of every odd color, capped at ``cap``."""

    def __init__(self, color, maxcolor, cap):
        self.color = color
        self.odd = list(range(1, maxcolor + 1, 2))
        self.cap = cap

    def _apply(self, ages, c):
        ages = list(ages)
        if c % 2 == 0:
            for i, r in enumerate(self.odd):
                if r >= c:
                    ages[i] = None
        else:
            i = self.odd.index(c)
            if ages[i] is None:
                ages[i] = 0
        return tuple(ages)

    def start(self, v):
        return self._apply((None,) * len(self.odd), self.color[v])

    def step(self, q, w):
        aged = tuple(None if a is None else min(a + 1, self.cap) for a in q)
        return self._apply(aged, self.color[w])


def _monitor_for(arena: Arena, cond: Condition) -> _Monitor:
    if isinstance(cond, (BndUniformBuchi, UniformBuchi)):
        return _GapCounter(cond.target(arena), cond.N + 1)
    if isinstance(cond, BndParity):
        return _Tracker(arena.color, arena.maxcolor)
    if isinstance(cond, UniformParity):
        return _RequestAges(arena.color, arena.maxcolor, cond.N + 1)
    return _NoMonitor()


@dataclass
class _MonitoredGraph:
    nodes: list[tuple[int, int, object]]  # (vertex, strategy memory, monitor state)
    succ: list[list[int]]
    starts: list[int]


def _monitored(arena: Arena, g: RestrictedGraph, mon: _Monitor) -> _MonitoredGraph:
    nodes, succ, index = [], [], {}
    queue = deque()

    def add(t):
        if t not in index:
            index[t] = len(nodes)
            nodes.append(t)
            succ.append([])
            queue.append(t)
        return index[t]

    starts = []
    for s in g.starts:
        v, m = g.nodes[s]
        starts.append(add((s, mon.start(v))))
    while queue:
        s, q = queue.popleft()
        i = index[(s, q)]
        succ[i] = [add((t, mon.step(q, g.nodes[t][0]))) for t in g.succ[s]]
    full = [(g.nodes[s][0], g.nodes[s][1], q) for s, q in nodes]
    return _MonitoredGraph(full, succ, starts)


# ---------------------------------------------------------------- verdicts


@dataclass
class Verdict:
    holds: bool
    stem: list[int] = field(default_factory=list)
    cycle: list[int] = field(default_factory=list)
    witness: tuple[int, float] | None = None
    start: int | None = None

    def __bool__(self):
        return self.holds

    def format(self) -> str:
        if self.holds:
            return "HOLDS"
        stem = ",".join(map(str, self.stem)) or "-"
        cycle = ",".join(map(str, self.cycle)) or "-"
        if self.witness is None:
            wit = "-"
        else:
            pos, d = self.witness
            wit = f"{pos},{'inf' if d == INF else int(d)}"
        return f"FAILS stem={stem} cycle={cycle} witness={wit}"


def _lasso(mg: _MonitoredGraph, comp: list[int], node: int, allowed=None) -> tuple[list[int], list[int]]:
    stem = _path(mg.succ, mg.starts, node, allowed)
    cyc = _cycle_through(mg.succ, node, set(comp))
    return stem[:-1], cyc


def _find_cycle(mg: _MonitoredGraph, within: set[int], must=None, reach_allowed=None):
    """A reachable cycle inside ``within`` visiting a node satisfying ``must``.

    Returns ``(stem, cycle)`` over monitored-graph nodes or ``None``.
    """
    reach = _reachable(mg.succ, mg.starts, reach_allowed)
    cand = [x for x in reach if x in within]
    for comp in scc(mg.succ, cand):
        if not _nontrivial(comp, mg.succ):
            continue
        hits = [x for x in comp if must is None or must(x)]
        if hits:
            return _lasso(mg, comp, min(hits), reach_allowed)
    return None


def _exists_good_path(arena: Arena, mg: _MonitoredGraph, cond: Condition):
    """A lasso in ``mg`` whose projected play satisfies ``cond``, or ``None``."""
    color = arena.color
    nodes = mg.nodes
    allv = set(range(len(nodes)))
    if isinstance(cond, Safety):
        S = cond.target(arena)
        ok = {x for x in allv if nodes[x][0] in S}
        return _find_cycle(mg, ok, reach_allowed=lambda x: x in ok)
    if isinstance(cond, (Buchi, FinitaryBuchi)):
        F = cond.target(arena)
        return _find_cycle(mg, allv, must=lambda x: nodes[x][0] in F)
    if isinstance(cond, CoBuchi):
        F = cond.target(arena)
        return _find_cycle(mg, {x for x in allv if nodes[x][0] not in F})
    if isinstance(cond, (Parity, FinitaryParity)):
        for e in range(0, arena.maxcolor + 1, 2):
            within = {x for x in allv if color[nodes[x][0]] >= e}
            found = _find_cycle(mg, within, must=lambda x: color[nodes[x][0]] == e)
            if found:
                return found
        return None
    if isinstance(cond, BndUniformBuchi):
        ok = {x for x in allv if nodes[x][2] <= cond.N}
        return _find_cycle(mg, ok, reach_allowed=lambda x: x in ok)
    if isinstance(cond, UniformBuchi):
        return _find_cycle(mg, {x for x in allv if nodes[x][2] <= cond.N})
    if isinstance(cond, BndParity):
        top = tracker_top(arena.maxcolor)
        return _find_cycle(mg, allv, must=lambda x: nodes[x][2] == top)
    if isinstance(cond, UniformParity):
        ok = {x for x in allv if all(a is None or a < cond.N for a in nodes[x][2])}
        return _find_cycle(mg, ok, reach_allowed=lambda x: x in ok)
    raise TypeError(f"unsupported condition {cond!r}")


def _finitary_parity_violation(arena: Arena, mg: _MonitoredGraph):
    """A reachable request ``r`` inside an SCC from which an answer-free cycle is reachable.

    Pumping that cycle ever longer between returns to the request gives a play
    whose waiting times are not eventually bounded.
    """
    color = arena.color
    nodes = mg.nodes
    reach = _reachable(mg.succ, mg.starts)
    for comp in scc(mg.succ, reach):
        if not _nontrivial(comp, mg.succ):
            continue
        cs = set(comp)
        for u in sorted(cs):
            r = color[nodes[u][0]]
            if r % 2 == 0:
                continue
            quiet = {x for x in cs if not (color[nodes[x][0]] % 2 == 0 and color[nodes[x][0]] <= r)}
            sub = _reachable(mg.succ, [u], allowed=lambda x: x in quiet)
            for c2 in scc(mg.succ, sub):
                if _nontrivial(c2, mg.succ):
                    target = min(c2)
                    stem = _path(mg.succ, mg.starts, u)
                    mid = _path(mg.succ, [u], target, allowed=lambda x: x in quiet)
                    cyc = _cycle_through(mg.succ, target, set(c2))
                    return stem[:-1] + mid[:-1], cyc, len(stem) - 1
    return None


def _all_paths_good(arena: Arena, mg: _MonitoredGraph, cond: Condition):
    """A lasso in ``mg`` whose projected play violates ``cond``, or ``None``."""
    color = arena.color
    nodes = mg.nodes
    allv = set(range(len(nodes)))
    if isinstance(cond, Safety):
        S = cond.target(arena)
        reach = _reachable(mg.succ, mg.starts)
        bad = sorted(x for x in reach if nodes[x][0] not in S)
        if not bad:
            return None
        stem = _path(mg.succ, mg.starts, bad[0])
        cyc = _any_cycle_after(mg, stem[-1])
        return stem[:-1] + cyc[0], cyc[1]
    if isinstance(cond, (Buchi, FinitaryBuchi)):
        F = cond.target(arena)
        return _find_cycle(mg, {x for x in allv if nodes[x][0] not in F})
    if isinstance(cond, CoBuchi):
        F = cond.target(arena)
        return _find_cycle(mg, allv, must=lambda x: nodes[x][0] in F)
    if isinstance(cond, Parity):
        for o in range(1, arena.maxcolor + 1, 2):
            within = {x for x in allv if color[nodes[x][0]] >= o}
            found = _find_cycle(mg, within, must=lambda x: color[nodes[x][0]] == o)
            if found:
                return found
        return None
    if isinstance(cond, FinitaryParity):
        found = _finitary_parity_violation(arena, mg)
        return None if found is None else found[:2]
    if isinstance(cond, (BndUniformBuchi, UniformParity)):
        N = cond.N
        if isinstance(cond, BndUniformBuchi):
            bad_node = lambda x: nodes[x][2] > N
        else:
            # a request still open at age N cannot be answered within N steps
            bad_node = lambda x: any(a is not None and a >= N for a in nodes[x][2])
        reach = _reachable(mg.succ, mg.starts)
        bad = sorted(x for x in reach if bad_node(x))
        if bad:
            # ages and gaps grow every step, so a request left open for good is caught here too
            stem = _path(mg.succ, mg.starts, bad[0])
            cyc = _any_cycle_after(mg, stem[-1])
            return stem[:-1] + cyc[0], cyc[1]
        return None
    if isinstance(cond, UniformBuchi):
        return _find_cycle(mg, allv, must=lambda x: nodes[x][2] > cond.N)
    if isinstance(cond, BndParity):
        top = tracker_top(arena.maxcolor)
        return _find_cycle(mg, {x for x in allv if nodes[x][2] != top})
    raise TypeError(f"unsupported condition {cond!r}")


def _any_cycle_after(mg: _MonitoredGraph, node: int) -> tuple[list[int], list[int]]:
    """Extend ``node`` to a lasso: (path after node up to cycle start, cycle)."""
    path = [node]
    seen = {node: 0}
    x = node
    while True:
        y = mg.succ[x][0]
        if y in seen:
            i = seen[y]
            return path[:i], path[i:]
        seen[y] = len(path)
        path.append(y)
        x = y


def _project(mg: _MonitoredGraph, xs: list[int]) -> list[int]:
    return [mg.nodes[x][0] for x in xs]


def _witness(arena: Arena, stem: list[int], cycle: list[int], cond: Condition) -> tuple[int, float] | None:
    if isinstance(cond, (BndUniformBuchi, UniformBuchi, FinitaryBuchi, Buchi)):
        F = cond.target(arena)
        cs = [0 if v in F else 1 for v in stem], [0 if v in F else 1 for v in cycle]
    elif isinstance(cond, (BndParity, FinitaryParity, UniformParity, Parity)):
        cs = [arena.color[v] for v in stem], [arena.color[v] for v in cycle]
    else:
        return None
    d = lasso_distances(*cs)
    if isinstance(cond, (UniformBuchi, FinitaryBuchi, Buchi, FinitaryParity, Parity)):
        lo = len(stem)
    else:
        lo = 0
    best = max(range(lo, len(d)), key=lambda k: (d[k], -k))
    return best, d[best]


def verify(arena: Arena, strategy: Strategy, cond: Condition, starts: Iterable[int]) -> Verdict:
    """Decide whether every play from ``starts`` consistent with ``strategy`` is won by its player.

    Eve strategies must satisfy ``cond`` on every consistent play; Adam
    strategies must violate it on every consistent play.
    """
    starts = sorted(set(starts))
    if not starts:
        return Verdict(True)
    g = restrict_to_strategy(arena, strategy, starts)
    mg = _monitored(arena, g, _monitor_for(arena, cond))
    if strategy.player == EVE:
        found = _all_paths_good(arena, mg, cond)
    else:
        found = _exists_good_path(arena, mg, cond)
    if found is None:
        return Verdict(True)
    stem, cycle = _project(mg, found[0]), _project(mg, found[1])
    start = stem[0] if stem else cycle[0]
    return Verdict(False, stem, cycle, _witness(arena, stem, cycle, cond), start)


# ---------------------------------------------------------------- enumeration


def strategy_space_size(arena: Arena, player: int, memory_size: int = 1) -> int:
    size = 1
    for v in arena.vertices_of(player):
        size *= len(arena.succ[v]) ** memory_size
    if memory_size > 1:
        size *= memory_size ** (memory_size * arena.num_edges)
    return size


def enumerate_strategies(arena: Arena, player: int, memory_size: int = 1,
                         cap: int = 1_000_000, update_edges=None) -> Iterator[Strategy]:
    """Every strategy of ``player`` over a fixed set of ``memory_size`` states.

    Memory updates range over all tables on ``update_edges`` (default: every
    edge); other edges keep the state.  The initial state is 0 everywhere,
    which loses nothing up to renaming the states.
    """
    if memory_size < 1:
        raise ValueError("memory_size must be positive")
    own = [v for v in arena.vertices_of(player) if len(arena.succ[v]) > 1]
    if memory_size == 1:
        size = 1
        for v in own:
            size *= len(arena.succ[v])
        if size > cap:
            raise SpaceTooLarge(size, cap)
        for choice in itertools.product(*(arena.succ[v] for v in own)):
            yield Strategy.positional(player, dict(zip(own, choice)))
        return
    edges = list(arena.edges()) if update_edges is None else list(update_edges)
    keys = [(m, v, w) for m in range(memory_size) for v, w in edges]
    slots = [(v, m) for v in own for m in range(memory_size)]
    size = memory_size ** len(keys)
    for v, m in slots:
        size *= len(arena.succ[v])
    if size > cap:
        raise SpaceTooLarge(size, cap)
    initial = [0] * len(arena)
    for table in itertools.product(range(memory_size), repeat=len(keys)):
        mem = MemoryStructure(memory_size, initial, dict(zip(keys, table)))
        for choice in itertools.product(*(arena.succ[v] for v, _ in slots)):
            yield Strategy(player, dict(zip(slots, choice)), mem)


def _partitions(items: list, blocks: int) -> Iterator[list[list]]:
    """Set partitions of ``items`` into exactly ``blocks`` non-empty blocks."""
    if not items:
        if blocks == 0:
            yield []
        return
    if blocks == 0:
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest, blocks - 1):
        yield [[first]] + part
    for part in _partitions(rest, blocks):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def quotient(arena: Arena, strategy: Strategy, blocks: list[list[int]], starts: Iterable[int]) -> Strategy:
    """Merge memory states along ``blocks``; each merged state behaves like a member reachable at the vertex."""
    g = restrict_to_strategy(arena, strategy, starts)
    block_of = {m: b for b, block in enumerate(blocks) for m in block}
    rep: dict[tuple[int, int], int] = {}
    for v, m in g.nodes:
        rep.setdefault((v, block_of[m]), m)
    moves, table = {}, {}
    for (v, b), m in rep.items():
        if arena.owner[v] == strategy.player and (v, m) in strategy.moves:
            moves[(v, b)] = strategy.moves[(v, m)]
        for w in arena.succ[v]:
            nb = block_of[strategy.update(m, v, w)]
            if nb != b:
                table[(b, v, w)] = nb
    initial = [block_of.get(strategy.initial(v), 0) for v in arena.vertices]
    return Strategy(strategy.player, moves, MemoryStructure(len(blocks), initial, table))


def reduce_memory(arena: Arena, strategy: Strategy, cond: Condition, starts: Iterable[int],
                  max_states: int = 6) -> Strategy:
    """Smallest quotient of ``strategy`` (merging memory states) that still verifies.

    Strategies with more than ``max_states`` states reachable from ``starts``
    are returned unchanged.
    """
    starts = sorted(set(starts))
    g = restrict_to_strategy(arena, strategy, starts)
    used = sorted({m for _, m in g.nodes})
    if len(used) > max_states:
        return strategy
    for k in range(1, len(used) + 1):
        for part in _partitions(used, k):
            cand = quotient(arena, strategy, part, starts)
            if verify(arena, cand, cond, starts):
                return cand
    return strategy


# ---------------------------------------------------------------- text format


def format_strategy(arena: Arena, strategy: Strategy) -> str:
    who = PLAYER_NAMES[strategy.player]
    if strategy.is_positional:
        moves = sorted((v, w) for (v, _), w in strategy.moves.items())
        body = " ".join(f"{v}->{w}" for v, w in moves)
        return f"strategy {who} positional:{' ' + body if body else ''}\n"
    mem = strategy.memory
    lines = [f"strategy {who} memory {mem.size}:"]
    for (v, m), w in sorted(strategy.moves.items()):
        lines.append(f"  ({v},{m})->{w}")
    lines.append("  initial: " + " ".join(f"{v}:{mem.initial[v]}" for v in arena.vertices))
    lines.append("  update:")
    for m in range(mem.size):
        for v, w in arena.edges():
            lines.append(f"    {m} {v}->{w} {mem.update(m, v, w)}")
    return "\n".join(lines) + "\n"


def parse_strategy(text: str, arena: Arena) -> Strategy:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("strategy "):
        raise InvalidStrategy("missing 'strategy' header")
    head = lines[0].split()
    player = EVE if head[1] == "E" else ADAM
    if head[2].startswith("positional"):
        body = lines[0].split(":", 1)[1].split()
        moves = {}
        for tok in body:
            v, w = tok.split("->")
            moves[int(v)] = int(w)
        return Strategy.positional(player, moves)
    size = int(head[3].rstrip(":"))
    moves, initial, table = {}, [0] * len(arena), {}
    mode = "moves"
    for ln in lines[1:]:
        if ln.startswith("initial:"):
            for tok in ln.split()[1:]:
                v, m = tok.split(":")
                initial[int(v)] = int(m)
        elif ln.startswith("update:"):
            mode = "update"
        elif mode == "moves":
            left, w = ln.split("->")
            v, m = left.strip("()").split(",")
            moves[(int(v), int(m))] = int(w)
        else:
            m, edge, m2 = ln.split()
            v, w = edge.split("->")
            table[(int(m), int(v), int(w))] = int(m2)
    return Strategy(player, moves, MemoryStructure(size, initial, table))
