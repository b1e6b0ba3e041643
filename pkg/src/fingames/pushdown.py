"""Pushdown processes and their bounded-height unfoldings into finite arenas.

A configuration is ``(state, stack)`` with the stack a tuple whose first
element is the top; the bottom marker is implicit.  Transition tops use
``None`` for the empty stack.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from .arena import ADAM, EVE, Arena, make_arena, product, request_tracker_memory, tracker_top
from .errors import (BadParams, DeadEndConfiguration, EmptyUnfolding, EvenMaxColor,
                     NoCycleWithinBudget, Nondeterministic, Overflow)

BOTTOM = "⊥"
SHARP = "♯"


@dataclass(frozen=True)
class Transition:
    source: str
    top: str | None  # None: empty stack; ignored for pops
    kind: str  # "push", "pop" or "skip"
    symbol: str | None
    target: str


@dataclass(frozen=True)
class Configuration:
    state: str
    stack: tuple[str, ...] = ()

    @property
    def height(self) -> int:
        return len(self.stack)

    @property
    def top(self) -> str | None:
        return self.stack[0] if self.stack else None

    def __str__(self):
        return f"{self.state}:{''.join(self.stack)}{BOTTOM}"


def parse_configuration(text: str) -> Configuration:
    """Parse ``q:u⊥`` (the trailing marker is optional); symbols are single characters."""
    state, _, stack = text.partition(":")
    stack = stack.rstrip(BOTTOM).rstrip("_")
    return Configuration(state, tuple(stack))


@dataclass
class PushdownProcess:
    name: str
    states: list[str]
    owner: dict[str, int]
    color: dict[str, int]
    alphabet: list[str]
    transitions: list[Transition] = field(default_factory=list)
    maxcolor: int = 1

    def add(self, source, top, kind, symbol, target):
        """Add a transition; ``top="*"`` expands to every top including the empty stack."""
        if kind == "pop":
            self.transitions.append(Transition(source, symbol, "pop", symbol, target))
            return
        tops = [None] + list(self.alphabet) if top == "*" else [top]
        for t in tops:
            self.transitions.append(Transition(source, t, kind, symbol, target))

    def applicable(self, config: Configuration) -> list[Transition]:
        top = config.top
        out = []
        for t in self.transitions:
            if t.source != config.state:
                continue
            if t.kind == "pop":
                if top is not None and top == t.symbol:
                    out.append(t)
            elif t.top == top:
                out.append(t)
        return out

    def is_deterministic(self) -> bool:
        seen = set()
        for t in self.transitions:
            key = (t.source, t.symbol if t.kind == "pop" else t.top)
            if key in seen:
                return False
            seen.add(key)
        return True


def apply(t: Transition, config: Configuration) -> Configuration:
    if t.kind == "push":
        return Configuration(t.target, (t.symbol,) + config.stack)
    if t.kind == "pop":
        return Configuration(t.target, config.stack[1:])
    return Configuration(t.target, config.stack)


def successors(proc: PushdownProcess, config: Configuration) -> list[Configuration]:
    out = []
    for t in proc.applicable(config):
        c = apply(t, config)
        if c not in out:
            out.append(c)
    return out


# ---------------------------------------------------------------- unfolding


class Policy(str, Enum):
    LOSE_EVE = "lose-eve"
    LOSE_ADAM = "lose-adam"
    DROP = "drop"


@dataclass
class UnfoldResult:
    arena: Arena
    configs: list[Configuration | None]
    index: dict[Configuration, int]
    overflow: list[int]
    height: int

    def vertex(self, config: Configuration) -> int:
        return self.index[config]


def unfold(proc: PushdownProcess, H: int, start: Configuration,
           policy: Policy | str = Policy.LOSE_EVE) -> UnfoldResult:
    """Finite arena of the configurations reachable from ``start`` with height at most ``H``.

    A push from height ``H`` goes to an overflow sink (``lose-eve``: a
    self-loop of color 1 owned by Adam; ``lose-adam``: color 0) or is removed
    (``drop``).
    """
    policy = Policy(policy)
    if H < start.height:
        raise BadParams(f"height bound {H} below the start height {start.height}")
    configs: list[Configuration | None] = []
    index: dict[Configuration, int] = {}
    succ: list[list[int]] = []
    sink = None

    def add(c):
        if c not in index:
            index[c] = len(configs)
            configs.append(c)
            succ.append([])
            queue.append(c)
        return index[c]

    queue: deque = deque()
    add(start)
    while queue:
        c = queue.popleft()
        i = index[c]
        ts = proc.applicable(c)
        if not ts:
            raise DeadEndConfiguration(c)
        out = []
        for t in ts:
            nxt = apply(t, c)
            if nxt.height > H:
                if policy is Policy.DROP:
                    continue
                if sink is None:
                    sink = len(configs)
                    configs.append(None)
                    succ.append([sink])
                out.append(sink)
            else:
                out.append(add(nxt))
        if not out:
            raise DeadEndConfiguration(c)
        succ[i] = out
    if not configs:
        raise EmptyUnfolding("no configuration")
    owner = [proc.owner[c.state] if c is not None else ADAM for c in configs]
    sink_color = 1 if policy is Policy.LOSE_EVE else 0
    color = [proc.color[c.state] if c is not None else sink_color for c in configs]
    labels = [str(c) if c is not None else "overflow" for c in configs]
    arena = make_arena(owner, succ, color, proc.maxcolor, f"{proc.name}@{H}", labels)
    return UnfoldResult(arena, configs, index, [sink] if sink is not None else [], H)


# ---------------------------------------------------------------- deterministic runs


@dataclass
class DeterministicRun:
    states: list[str]
    heights: list[int]
    stem: int  # index where the repeating segment starts
    period: int
    kind: str  # "flat" or "increasing"
    max_gap: float  # largest waiting time for F along the infinite run


def simulate_deterministic(proc: PushdownProcess, start: Configuration, max_steps: int = 1_000_000,
                           F: Iterable[str] | None = None) -> DeterministicRun:
    """Run the unique path from ``start`` until it provably repeats.

    A repetition is a pair of positions ``k < k'`` with the same state and top
    symbol such that no position in between is lower than ``k``: the run from
    ``k'`` then copies the run from ``k`` shifted by the height difference.
    """
    F = {q for q in proc.states if proc.color[q] == 0} if F is None else set(F)
    config = start
    states, heights = [], []
    # positions that are not yet undercut, as (height, position); keyed by (state, top)
    open_pos: list[tuple[int, int, tuple]] = []
    by_key: dict[tuple, list[int]] = {}
    for step in range(max_steps):
        key = (config.state, config.top)
        h = config.height
        while open_pos and open_pos[-1][0] > h:
            _, _, k = open_pos.pop()
            by_key[k].pop()
        states.append(config.state)
        heights.append(h)
        hits = by_key.get(key)
        if hits:
            k = hits[-1]
            kind = "flat" if heights[k] == h else "increasing"
            return _finish(states[:-1], heights[:-1], k, step - k, kind, F)
        open_pos.append((h, step, key))
        by_key.setdefault(key, []).append(step)
        ts = proc.applicable(config)
        if len(ts) != 1:
            if not ts:
                raise DeadEndConfiguration(config)
            raise Nondeterministic(config)
        config = apply(ts[0], config)
    raise NoCycleWithinBudget(f"no repetition within {max_steps} steps")


def _finish(states, heights, stem, period, kind, F) -> DeterministicRun:
    marks = [s in F for s in states[:stem]] + [s in F for s in states[stem:stem + period]] * 2
    gap = 0.0
    for k in range(stem + period):
        d = next((j - k for j in range(k, len(marks)) if marks[j]), float("inf"))
        gap = max(gap, d)
    return DeterministicRun(states, heights, stem, period, kind, gap)


def collapse_bound_upper(n: int, k: int, max_bits: int | None = None) -> int:
    """``n^2 * k^(n*k+1)``; :class:`Overflow` when it needs more than ``max_bits`` bits."""
    if n < 1 or k < 1:
        raise BadParams("n and k must be positive")
    value = n * n * k ** (n * k + 1)
    if max_bits is not None and value.bit_length() > max_bits:
        raise Overflow(f"bound needs {value.bit_length()} bits")
    return value


# ---------------------------------------------------------------- restart gadget


def restart_gadget(proc: PushdownProcess) -> PushdownProcess:
    """Insert a restart choice on every transition.

    For transition ``t`` into ``q`` the move now enters an Eve state ``c`` of a
    neutral even color, which either continues to ``q`` or enters an Adam
    state of color 0 pushing ``♯`` at will, followed by a state of color ``d``
    popping every ``♯`` before reaching ``q``.
    """
    d = proc.maxcolor
    if d % 2 == 0:
        raise EvenMaxColor(d)
    sigma = list(proc.alphabet) + [SHARP]
    out = PushdownProcess(f"{proc.name}+restart", list(proc.states), dict(proc.owner), dict(proc.color),
                          sigma, [], d + 1)
    for n, t in enumerate(proc.transitions):
        c, z, y = f"c{n}.{t.target}", f"z{n}.{t.target}", f"y{n}.{t.target}"
        out.states += [c, z, y]
        out.owner.update({c: EVE, z: ADAM, y: EVE})
        out.color.update({c: d + 1, z: 0, y: d})
        out.transitions.append(Transition(t.source, t.top, t.kind, t.symbol, c))
        out.add(c, "*", "skip", None, t.target)
        out.add(c, "*", "skip", None, z)
        out.add(z, "*", "push", SHARP, z)
        out.add(z, "*", "skip", None, y)
        out.add(y, None, "pop", SHARP, y)
        for top in [None] + list(proc.alphabet):
            out.transitions.append(Transition(y, top, "skip", None, t.target))
    return out


def gadget_arena(proc: PushdownProcess, H: int, start: Configuration) -> tuple[Arena, int, frozenset[int]]:
    """Unfolding of the restart-gadget process in which runs of ``♯`` are left unbounded.

    Any configuration higher than ``H`` is replaced by a sink losing for Eve.  A run of pushes of ``♯`` becomes a self-loop of the
    color-0 state and the matching pops collapse to one visit of the color-d
    state, whose vertices are returned as the third component.
    """
    g = restart_gadget(proc)
    kind = {}
    for q in g.states:
        kind[q] = q[0] if q not in proc.owner else "q"
    nodes: list[tuple] = []
    index: dict[tuple, int] = {}
    succ: list[list[int]] = []
    queue: deque = deque()

    def add(node):
        if node not in index:
            index[node] = len(nodes)
            nodes.append(node)
            succ.append([])
            queue.append(node)
        return index[node]

    sink = ("overflow",)
    add(start_node := ("cfg", start))
    while queue:
        node = queue.popleft()
        i = index[node]
        if node == sink:
            succ[i] = [i]
            continue
        _, c = node
        out = []
        if kind[c.state] == "z":
            out = [i, add(("cfg", Configuration("y" + c.state[1:], c.stack)))]
        else:
            for t in g.applicable(c):
                if t.symbol == SHARP:
                    continue
                nxt = apply(t, c)
                if nxt.height > H:
                    out.append(add(sink))
                else:
                    out.append(add(("cfg", nxt)))
        if not out:
            raise DeadEndConfiguration(c)
        succ[i] = out
    owner, color, labels, restarts = [], [], [], []
    for x, node in enumerate(nodes):
        if node == sink:
            owner.append(ADAM)
            color.append(1)
            labels.append("overflow")
            continue
        c = node[1]
        owner.append(g.owner[c.state])
        color.append(g.color[c.state])
        labels.append(str(c))
        if kind[c.state] == "y":
            restarts.append(x)
    arena = make_arena(owner, succ, color, g.maxcolor, f"{g.name}@{H}", labels)
    return arena, index[start_node], frozenset(restarts)


def gadget_bnd_parity_wins(proc: PushdownProcess, H: int, start: Configuration) -> bool:
    """Eve's verdict for bounded parity on the restart-gadget game at height ``H``.

    Adam may delay each restart arbitrarily long, so Eve wins exactly when
    the play restarts finitely often and, from then on, every request is
    eventually answered with nothing pending infinitely often.  This is a
    parity game on the product with the request tracker.
    """
    from .solvers import solve_parity

    arena, s, restarts = gadget_arena(proc, H, start)
    d = tracker_top(arena.maxcolor)
    mem = request_tracker_memory(arena, d=d)
    prod = product(arena, mem, prune=True)
    top_state = mem.size - 1
    colors = []
    for v, m in prod.pairs:
        colors.append(1 if v in restarts else 2 if m == top_state else 3)
    game = prod.arena.with_colors(colors, 3)
    res = solve_parity(game)
    return prod.initial_vertex(s) in res.eve_region


# ---------------------------------------------------------------- experiments


@dataclass
class Stabilization:
    values: list[tuple[int, object]]
    window: int
    stabilized: bool
    value: object

    def format(self) -> str:
        seq = " ".join(f"H={h}:{v}" for h, v in self.values)
        status = "stabilized" if self.stabilized else "not stabilized"
        return f"{seq} ({status} over {self.window} heights; heuristic, not a proof)"


def stabilize(fn: Callable[[int], object], heights: Sequence[int], window: int = 3) -> Stabilization:
    """Evaluate ``fn`` on increasing heights; stable when the last ``window`` values agree."""
    values = [(h, fn(h)) for h in heights]
    tail = [v for _, v in values[-window:]]
    ok = len(tail) == window and all(v == tail[0] for v in tail)
    return Stabilization(values, window, ok, tail[-1] if tail else None)


def solve_unfolded(proc: PushdownProcess, H: int, start: Configuration, cond,
                   policy: Policy | str = Policy.LOSE_EVE):
    from .solvers import solve

    u = unfold(proc, H, start, policy)
    return solve(u.arena, cond), u


def random_process(seed: int, max_states: int = 4, max_symbols: int = 2, d: int = 3) -> PushdownProcess:
    """Small random process in which every (state, top) pair has a move."""
    rng = random.Random(seed)
    n = rng.randint(2, max_states)
    k = rng.randint(1, max_symbols)
    states = [f"q{i}" for i in range(n)]
    alphabet = [chr(ord("a") + i) for i in range(k)]
    proc = PushdownProcess(f"random{seed}", states, {q: rng.randint(0, 1) for q in states},
                           {q: rng.randint(0, d) for q in states}, alphabet, [], d)
    for q in states:
        for top in [None] + alphabet:
            for _ in range(rng.randint(1, 2)):
                kind = rng.choice(["push", "pop", "skip"] if top is not None else ["push", "skip"])
                target = rng.choice(states)
                if kind == "push":
                    proc.transitions.append(Transition(q, top, "push", rng.choice(alphabet), target))
                elif kind == "pop":
                    proc.transitions.append(Transition(q, top, "pop", top, target))
                else:
                    proc.transitions.append(Transition(q, top, "skip", None, target))
    return proc


# ---------------------------------------------------------------- text format


def format_process(proc: PushdownProcess) -> str:
    lines = [f"pushdown {proc.name} maxcolor {proc.maxcolor}", "alphabet " + " ".join(proc.alphabet)]
    for q in proc.states:
        lines.append(f"state {q} {'E' if proc.owner[q] == EVE else 'A'} {proc.color[q]}")
    for t in proc.transitions:
        if t.kind == "pop":
            lines.append(f"trans {t.source} pop {t.symbol} {t.target}")
        elif t.kind == "push":
            lines.append(f"trans {t.source} {t.top or '-'} push {t.symbol} {t.target}")
        else:
            lines.append(f"trans {t.source} {t.top or '-'} skip {t.target}")
    return "\n".join(lines) + "\n"


def parse_process(text: str) -> PushdownProcess:
    proc = None
    symbols: list[str] = []
    declared: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        p = line.split()
        try:
            if p[0] == "pushdown":
                proc = PushdownProcess(p[1], [], {}, {}, [], [], int(p[3]))
            elif p[0] == "alphabet":
                declared = p[1:]
            elif p[0] == "state":
                proc.states.append(p[1])
                proc.owner[p[1]] = EVE if p[2] == "E" else ADAM
                proc.color[p[1]] = int(p[3])
            elif p[0] == "trans":
                if p[2] == "pop":
                    t = Transition(p[1], p[3], "pop", p[3], p[4])
                    sym = p[3]
                elif p[3] == "push":
                    t = Transition(p[1], None if p[2] == "-" else p[2], "push", p[4], p[5])
                    sym = p[4]
                elif p[3] == "skip":
                    t = Transition(p[1], None if p[2] == "-" else p[2], "skip", None, p[4])
                    sym = None
                else:
                    raise ValueError
                for s in (sym, t.top):
                    if s is not None and s not in symbols:
                        symbols.append(s)
                proc.transitions.append(t)
            else:
                raise ValueError
        except (ValueError, IndexError, AttributeError):
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
    if proc is None:
        raise ValueError("missing 'pushdown' header")
    proc.alphabet = declared + [x for x in symbols if x not in declared]
    return proc
