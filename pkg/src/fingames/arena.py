"""Finite arenas, memory structures, products and attractors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import NotASubarena, OddMaxColor

EVE = 0
ADAM = 1
PLAYER_NAMES = {EVE: "E", ADAM: "A"}


def opponent(player: int) -> int:
    return 1 - player


@dataclass(frozen=True, eq=False)
class Arena:
    """A game graph with an owner partition and a coloring.

    Vertices are the integers ``0..n-1``.  ``succ[v]`` is the ordered list
    of successors of ``v``.  The Büchi set is the set of vertices of color 0.
    """

    owner: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...]
    color: tuple[int, ...]
    maxcolor: int = 1
    name: str = "arena"
    labels: tuple[str, ...] | None = None
    pred: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.owner)
        succ = tuple(tuple(dict.fromkeys(s)) for s in self.succ)
        object.__setattr__(self, "succ", succ)
        object.__setattr__(self, "owner", tuple(self.owner))
        object.__setattr__(self, "color", tuple(self.color))
        pred: list[list[int]] = [[] for _ in range(n)]
        for v, ws in enumerate(succ):
            for w in ws:
                if 0 <= w < n:
                    pred[w].append(v)
        object.__setattr__(self, "pred", tuple(tuple(p) for p in pred))

    def __len__(self) -> int:
        return len(self.owner)

    @property
    def vertices(self) -> range:
        return range(len(self.owner))

    @property
    def buchi_set(self) -> frozenset[int]:
        return frozenset(v for v in self.vertices if self.color[v] == 0)

    def edges(self) -> Iterable[tuple[int, int]]:
        for v, ws in enumerate(self.succ):
            for w in ws:
                yield v, w

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.succ)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def odd_colors(self) -> int:
        """Number of odd colors in ``[0..maxcolor]``."""
        return (self.maxcolor + 1) // 2

    def vertices_of(self, player: int) -> list[int]:
        return [v for v in self.vertices if self.owner[v] == player]

    def swap_owners(self) -> "Arena":
        return Arena(tuple(1 - o for o in self.owner), self.succ, self.color,
                     self.maxcolor, self.name, self.labels)

    def with_colors(self, color: Sequence[int], maxcolor: int) -> "Arena":
        return Arena(self.owner, self.succ, tuple(color), maxcolor, self.name, self.labels)


def make_arena(owner, succ, color=None, maxcolor=None, name="arena", labels=None) -> Arena:
    if color is None:
        color = [1] * len(owner)
    if maxcolor is None:
        maxcolor = max(1, max(color, default=1))
    return Arena(tuple(owner), tuple(tuple(s) for s in succ), tuple(color), maxcolor, name,
                 tuple(labels) if labels is not None else None)


def buchi_arena(owner, succ, buchi: Iterable[int], name="arena", labels=None) -> Arena:
    """Arena with colors 0 on ``buchi`` and 1 elsewhere."""
    buchi = set(buchi)
    color = [0 if v in buchi else 1 for v in range(len(owner))]
    return make_arena(owner, succ, color, 1, name, labels)


def validate(arena: Arena) -> list[str]:
    """List every violated arena invariant; empty when the arena is legal."""
    problems = []
    n = len(arena)
    if arena.maxcolor < 1:
        problems.append(f"maxcolor {arena.maxcolor} < 1")
    if len(arena.succ) != n or len(arena.color) != n:
        problems.append("owner, successor and color tables differ in length")
        return problems
    for v in range(n):
        if arena.owner[v] not in (EVE, ADAM):
            problems.append(f"vertex {v}: bad owner {arena.owner[v]!r}")
        if not arena.succ[v]:
            problems.append(f"vertex {v}: dead-end")
        for w in arena.succ[v]:
            if not 0 <= w < n:
                problems.append(f"vertex {v}: dangling edge to {w}")
        if not 0 <= arena.color[v] <= arena.maxcolor:
            problems.append(f"vertex {v}: color {arena.color[v]} outside [0..{arena.maxcolor}]")
    return problems


def restrict(arena: Arena, U: Iterable[int]) -> tuple[Arena, dict[int, int]]:
    """The subarena induced by ``U``, re-indexed, with the old->new map."""
    keep = sorted(set(U))
    inside = set(keep)
    bad = [v for v in keep if not any(w in inside for w in arena.succ[v])]
    if bad:
        raise NotASubarena(bad)
    new = {v: i for i, v in enumerate(keep)}
    succ = [[new[w] for w in arena.succ[v] if w in inside] for v in keep]
    labels = [arena.label(v) for v in keep] if arena.labels else None
    sub = Arena(tuple(arena.owner[v] for v in keep), tuple(tuple(s) for s in succ),
                tuple(arena.color[v] for v in keep), arena.maxcolor, arena.name,
                tuple(labels) if labels else None)
    return sub, new


def pre(arena: Arena, X: Iterable[int], player: int = EVE, within=None) -> frozenset[int]:
    """Vertices from which ``player`` can force the next vertex into ``X``."""
    X = set(X)
    U = set(arena.vertices) if within is None else set(within)
    out = set()
    for u in U:
        ws = [w for w in arena.succ[u] if w in U]
        if not ws:
            continue
        if arena.owner[u] == player:
            if any(w in X for w in ws):
                out.add(u)
        elif all(w in X for w in ws):
            out.add(u)
    return frozenset(out)


@dataclass(frozen=True)
class Attractor:
    region: frozenset[int]
    rank: dict[int, int]
    strategy: dict[int, int]

    def bounded(self, N: int) -> frozenset[int]:
        return frozenset(v for v, r in self.rank.items() if r <= N)


def attractor(arena: Arena, target: Iterable[int], player: int = EVE, within=None,
              max_rank: int | None = None) -> Attractor:
    """Attractor of ``target`` for ``player``, inside the subarena ``within``.

    Ranks are the first index of the attractor sequence containing a vertex.
    The strategy moves every ranked vertex of ``player`` outside the target to
    its lowest-index successor of strictly smaller rank.
    """
    n = len(arena)
    if within is None:
        inside = [True] * n
    else:
        inside = [False] * n
        for v in within:
            inside[v] = True
    owner, succ, predl = arena.owner, arena.succ, arena.pred
    rank = {}
    frontier = []
    for v in target:
        if inside[v] and v not in rank:
            rank[v] = 0
            frontier.append(v)
    count = [0] * n
    for v in range(n):
        if inside[v] and owner[v] != player:
            count[v] = sum(1 for w in succ[v] if inside[w])
    k = 0
    while frontier and (max_rank is None or k < max_rank):
        k += 1
        nxt = []
        for w in frontier:
            for u in predl[w]:
                if not inside[u] or u in rank:
                    continue
                if owner[u] == player:
                    rank[u] = k
                    nxt.append(u)
                else:
                    count[u] -= 1
                    if count[u] == 0:
                        rank[u] = k
                        nxt.append(u)
        frontier = nxt
    strategy = {}
    for v, r in rank.items():
        if r > 0 and owner[v] == player:
            strategy[v] = min(w for w in succ[v] if w in rank and rank[w] < r)
    return Attractor(frozenset(rank), rank, strategy)


def bounded_attractor(arena: Arena, F: Iterable[int], N: int, player: int = EVE,
                      within=None) -> frozenset[int]:
    return attractor(arena, F, player, within, max_rank=N).region


def adam_attractor(arena: Arena, F: Iterable[int], within=None) -> frozenset[int]:
    return attractor(arena, F, ADAM, within).region


# ---------------------------------------------------------------- memory


class MemoryStructure:
    """Memory states ``0..size-1``, a per-vertex initial state and an edge update.

    The update is a table keyed by ``(m, v, w)``; pairs missing from the table
    keep the state unchanged.  ``names`` optionally labels the states.
    """

    __slots__ = ("size", "initial", "table", "names")

    def __init__(self, size: int, initial: Sequence[int], table: Mapping[tuple[int, int, int], int],
                 names: Sequence[str] | None = None):
        self.size = size
        self.initial = tuple(initial)
        self.table = dict(table)
        self.names = tuple(names) if names is not None else tuple(str(m) for m in range(size))

    def update(self, m: int, v: int, w: int) -> int:
        return self.table.get((m, v, w), m)

    def __repr__(self):
        return f"MemoryStructure(size={self.size})"


def trivial_memory(arena: Arena) -> MemoryStructure:
    return MemoryStructure(1, [0] * len(arena), {})


def step_counter_memory(arena: Arena, F: Iterable[int], N: int) -> MemoryStructure:
    """Counts steps since the last visit to ``F``, saturating at ``N``."""
    F = set(F)
    table = {}
    for m in range(N + 1):
        for v, w in arena.edges():
            if v in F or w in F:
                table[(m, v, w)] = 0
            elif m < N:
                table[(m, v, w)] = m + 1
            else:
                table[(m, v, w)] = N
    return MemoryStructure(N + 1, [0] * len(arena), table)


def tracker_top(maxcolor: int) -> int:
    """The "nothing pending" state of the request tracker (an even color)."""
    return maxcolor if maxcolor % 2 == 0 else maxcolor + 1


def tracker_states(maxcolor: int) -> list[int]:
    top = tracker_top(maxcolor)
    return list(range(1, top, 2)) + [top]


def tracker_step(m: int, c: int, top: int) -> int:
    if c >= m:
        return m
    if c % 2 == 1:
        return c
    return top


def request_tracker_memory(arena: Arena, coloring: Sequence[int] | None = None,
                           d: int | None = None) -> MemoryStructure:
    """Remembers the most urgent pending request.

    States are indexed in the order ``1, 3, ..., d-1, d``.  ``d`` must be even;
    callers with an odd maximal color pass ``tracker_top(d)``.
    """
    color = arena.color if coloring is None else coloring
    if d is None:
        d = arena.maxcolor
    if d % 2:
        raise OddMaxColor(d)
    states = tracker_states(d)
    index = {c: i for i, c in enumerate(states)}
    table = {}
    for m in states:
        for v, w in arena.edges():
            table[(index[m], v, w)] = index[tracker_step(m, color[w], d)]
    initial = [index[color[v]] if color[v] % 2 else index[d] for v in arena.vertices]
    return MemoryStructure(len(states), initial, table, [str(c) for c in states])


@dataclass(frozen=True, eq=False)
class ProductArena:
    """``arena`` is the product; ``pairs[x]`` is the ``(vertex, state)`` of ``x``."""

    arena: Arena
    base: Arena
    memory: MemoryStructure
    pairs: tuple[tuple[int, int], ...]
    index: dict

    def initial_vertex(self, v: int) -> int:
        return self.index[(v, self.memory.initial[v])]

    def lift(self, S: Iterable[int]) -> frozenset[int]:
        """Product vertices whose base vertex lies in ``S``."""
        S = set(S)
        return frozenset(x for x, (v, _) in enumerate(self.pairs) if v in S)

    def project(self, W: Iterable[int]) -> frozenset[int]:
        """Base vertices whose initial product vertex lies in ``W``."""
        W = set(W)
        return frozenset(v for v in self.base.vertices
                         if (v, self.memory.initial[v]) in self.index
                         and self.index[(v, self.memory.initial[v])] in W)


def product(arena: Arena, mem: MemoryStructure, prune: bool = False) -> ProductArena:
    """Synchronized product of ``arena`` with ``mem``.

    All pairs are kept unless ``prune`` is set, in which case only the pairs
    reachable from some ``(v, initial(v))`` survive.
    """
    if prune:
        seen = {}
        order = []
        queue = deque()
        for v in arena.vertices:
            p = (v, mem.initial[v])
            if p not in seen:
                seen[p] = len(order)
                order.append(p)
                queue.append(p)
        while queue:
            v, m = queue.popleft()
            for w in arena.succ[v]:
                q = (w, mem.update(m, v, w))
                if q not in seen:
                    seen[q] = len(order)
                    order.append(q)
                    queue.append(q)
        pairs = order
    else:
        pairs = [(v, m) for v in arena.vertices for m in range(mem.size)]
    index = {p: i for i, p in enumerate(pairs)}
    succ = []
    for v, m in pairs:
        succ.append(tuple(index[(w, mem.update(m, v, w))] for w in arena.succ[v]))
    labels = [f"({arena.label(v)},{mem.names[m]})" for v, m in pairs]
    prod = Arena(tuple(arena.owner[v] for v, _ in pairs), tuple(succ),
                 tuple(arena.color[v] for v, _ in pairs), arena.maxcolor,
                 f"{arena.name}x{mem.size}", tuple(labels))
    return ProductArena(prod, arena, mem, tuple(pairs), index)


# ---------------------------------------------------------------- text formats


def format_arena(arena: Arena) -> str:
    lines = [f"arena {arena.name} maxcolor {arena.maxcolor}"]
    for v in arena.vertices:
        who = PLAYER_NAMES[arena.owner[v]]
        succ = ",".join(str(w) for w in arena.succ[v])
        lines.append(f"{v} {who} {arena.color[v]} {succ}")
    return "\n".join(lines) + "\n"


def parse_arena(text: str) -> Arena:
    """Parse the line-based arena format; ids may be sparse and are re-indexed."""
    name, maxcolor = "arena", None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "arena":
            if len(parts) != 4 or parts[2] != "maxcolor":
                raise ValueError(f"line {lineno}: expected 'arena <name> maxcolor <d>'")
            name, maxcolor = parts[1], int(parts[3])
            continue
        if len(parts) != 4 or parts[1] not in ("E", "A"):
            raise ValueError(f"line {lineno}: expected '<id> <E|A> <color> <succ,...>'")
        succ = [int(s) for s in parts[3].split(",") if s]
        if not succ:
            raise ValueError(f"line {lineno}: empty successor list")
        rows.append((int(parts[0]), EVE if parts[1] == "E" else ADAM, int(parts[2]), succ))
    ids = sorted(r[0] for r in rows)
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate vertex id")
    index = {v: i for i, v in enumerate(ids)}
    rows.sort()
    try:
        succ = [[index[w] for w in r[3]] for r in rows]
    except KeyError as e:
        raise ValueError(f"edge to unknown vertex {e.args[0]}") from None
    color = [r[2] for r in rows]
    if maxcolor is None:
        maxcolor = max(1, max(color, default=1))
    dense = ids == list(range(len(ids)))
    labels = None if dense else [str(v) for v in ids]
    return make_arena([r[1] for r in rows], succ, color, maxcolor, name, labels)


def to_dot(arena: Arena, F: Iterable[int] | None = None) -> str:
    F = arena.buchi_set if F is None else set(F)
    lines = [f'digraph "{arena.name}" {{']
    for v in arena.vertices:
        shape = "circle" if arena.owner[v] == EVE else "square"
        extra = ", peripheries=2" if v in F else ""
        lines.append(f'  {v} [shape={shape}{extra}, label="{arena.label(v)}:{arena.color[v]}"];')
    for v, w in arena.edges():
        lines.append(f"  {v} -> {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"
