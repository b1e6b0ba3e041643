"""Winning regions and strategies for the supported conditions.

The bounded, uniform and finitary conditions are solved by fixpoints of
attractors, by slice iteration, or by reduction to a classical game on a
product with a memory structure.  Every emitted strategy is meant to pass
:func:`fingames.strategy.verify` from the region it is claimed for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .arena import (ADAM, EVE, Arena, MemoryStructure, attractor, opponent, pre, product,
                    request_tracker_memory, restrict, step_counter_memory, tracker_top)
from .conditions import (BndParity, BndUniformBuchi, Buchi, CoBuchi, Condition, FinitaryBuchi,
                         FinitaryParity, Parity, Safety, UniformBuchi)
from .errors import CapExceeded
from .strategy import Strategy, format_strategy


@dataclass
class SolveResult:
    condition: Condition
    eve_region: frozenset[int]
    adam_region: frozenset[int]
    eve_strategy: Strategy | None = None
    adam_strategy: Strategy | None = None
    trace: dict = field(default_factory=dict)

    def region(self, player: int) -> frozenset[int]:
        return self.eve_region if player == EVE else self.adam_region

    def strategy(self, player: int) -> Strategy | None:
        return self.eve_strategy if player == EVE else self.adam_strategy


def _ids(S) -> str:
    return ",".join(str(v) for v in sorted(S))


def format_result(arena: Arena, result: SolveResult, emit: Iterable[int] = ()) -> str:
    out = [f"region E: {_ids(result.eve_region)}", f"region A: {_ids(result.adam_region)}"]
    text = "\n".join(out) + "\n"
    for p in emit:
        s = result.strategy(p)
        if s is not None:
            text += format_strategy(arena, s)
    return text


def _complete(arena: Arena, player: int, moves: dict[int, int], region=None) -> Strategy:
    """Positional strategy from ``moves``, defaulting to the lowest successor (inside ``region`` if possible)."""
    full = {}
    for v in arena.vertices_of(player):
        if v in moves:
            full[v] = moves[v]
        else:
            succ = arena.succ[v]
            inside = [w for w in succ if region is not None and v in region and w in region]
            full[v] = inside[0] if inside else succ[0]
    return Strategy.positional(player, full)


def _lift_product_strategy(prod, player: int, moves: dict[int, int], memory: MemoryStructure) -> Strategy:
    """Turn a positional strategy on a product arena into a finite-memory one on the base."""
    table = {}
    for x, (v, m) in enumerate(prod.pairs):
        if prod.base.owner[v] == player:
            y = moves.get(x, prod.arena.succ[x][0])
            table[(v, m)] = prod.pairs[y][0]
    return Strategy(player, table, memory)


# ---------------------------------------------------------------- classical games


def solve_safety(arena: Arena, S: Iterable[int] | None = None) -> SolveResult:
    S = arena.buchi_set if S is None else frozenset(S)
    bad = frozenset(arena.vertices) - S
    att = attractor(arena, bad, ADAM)
    eve = frozenset(arena.vertices) - att.region
    return SolveResult(Safety(S), eve, att.region,
                       _complete(arena, EVE, {}, eve),
                       _complete(arena, ADAM, att.strategy, att.region))


def _buchi(arena: Arena, F: frozenset[int], player: int):
    """Classical Büchi game for ``player``: (region, player moves, opponent moves, rounds)."""
    opp = opponent(player)
    within = set(arena.vertices)
    opp_moves: dict[int, int] = {}
    rounds = 0
    while True:
        rounds += 1
        reach = attractor(arena, F & within, player, within)
        trap = within - reach.region
        if not trap:
            break
        # the opponent keeps the play in the trap, or runs to it
        for v in trap:
            if arena.owner[v] == opp:
                opp_moves[v] = next(w for w in arena.succ[v] if w in trap)
        lost = attractor(arena, trap, opp, within)
        for v, w in lost.strategy.items():
            opp_moves[v] = w
        within -= lost.region
    moves = dict(reach.strategy)
    for v in F & within:
        if arena.owner[v] == player:
            moves[v] = next(w for w in arena.succ[v] if w in within)
    return frozenset(within), moves, opp_moves, rounds


def solve_buchi(arena: Arena, F: Iterable[int] | None = None) -> SolveResult:
    F = arena.buchi_set if F is None else frozenset(F)
    win, moves, opp_moves, rounds = _buchi(arena, F, EVE)
    lose = frozenset(arena.vertices) - win
    return SolveResult(Buchi(F), win, lose, _complete(arena, EVE, moves, win),
                       _complete(arena, ADAM, opp_moves, lose), {"rounds": rounds})


def solve_cobuchi(arena: Arena, F: Iterable[int] | None = None) -> SolveResult:
    F = arena.buchi_set if F is None else frozenset(F)
    lose, moves, opp_moves, rounds = _buchi(arena, F, ADAM)
    win = frozenset(arena.vertices) - lose
    return SolveResult(CoBuchi(F), win, lose, _complete(arena, EVE, opp_moves, win),
                       _complete(arena, ADAM, moves, lose), {"rounds": rounds})


def _zielonka(arena: Arena, U: frozenset[int]):
    """Regions ``(W_eve, W_adam)`` and positional moves of both players on the subgame ``U``."""
    if not U:
        return (frozenset(), frozenset()), ({}, {})
    p = min(arena.color[v] for v in U)
    alpha = p % 2  # EVE wins the least color when it is even
    beta = opponent(alpha)
    won_beta: set[int] = set()
    moves = ({}, {})
    while True:
        top = {v for v in U if arena.color[v] == p}
        att = attractor(arena, top, alpha, U)
        (w0, w1), (m0, m1) = _zielonka(arena, U - att.region)
        sub = (w0, w1)
        sub_moves = (m0, m1)
        if not sub[beta]:
            moves[alpha].update(sub_moves[alpha])
            moves[alpha].update(att.strategy)
            for v in top:
                if arena.owner[v] == alpha:
                    moves[alpha][v] = next(w for w in arena.succ[v] if w in U)
            break
        catch = attractor(arena, sub[beta], beta, U)
        for v in sub[beta]:
            if v in sub_moves[beta]:
                moves[beta][v] = sub_moves[beta][v]
        moves[beta].update(catch.strategy)
        won_beta |= catch.region
        U = U - catch.region
        if not U:
            break
    regions = [None, None]
    regions[alpha] = frozenset(U)
    regions[beta] = frozenset(won_beta)
    return (regions[0], regions[1]), moves


def solve_parity(arena: Arena) -> SolveResult:
    (w0, w1), (m0, m1) = _zielonka(arena, frozenset(arena.vertices))
    return SolveResult(Parity(), w0, w1, _complete(arena, EVE, m0, w0), _complete(arena, ADAM, m1, w1))


# ---------------------------------------------------------------- uniform Büchi


def _bnd_uniform_core(arena: Arena, F: frozenset[int], N: int):
    """Greatest fixpoint of ``Z -> Attr_N(F & Pre(Z))``; returns (Z, Eve moves, iterations)."""
    Z = frozenset(arena.vertices)
    iterations = 0
    while True:
        iterations += 1
        T = F & pre(arena, Z, EVE)
        att = attractor(arena, T, EVE, max_rank=N)
        if att.region == Z:
            break
        Z = att.region
    moves = dict(att.strategy)
    for v in T:
        if arena.owner[v] == EVE:
            moves[v] = next(w for w in arena.succ[v] if w in Z)
    return Z, moves, iterations


def _counter_adam_strategy(arena: Arena, F: frozenset[int], N: int, mode: str) -> Strategy:
    """Adam strategy from the product with the step counter.

    ``mode`` is ``"safety"`` for the bounded game and ``"cobuchi"`` for the
    uniform one.
    """
    mem = step_counter_memory(arena, F, N)
    prod = product(arena, mem)
    if mode == "safety":
        S = [x for x, (v, m) in enumerate(prod.pairs) if v in F or m < N]
        res = solve_safety(prod.arena, S)
    else:
        U = [x for x, (v, m) in enumerate(prod.pairs) if v not in F and m == N]
        res = solve_cobuchi(prod.arena, U)
    moves = {x: w for (x, _), w in res.adam_strategy.moves.items()}
    return _lift_product_strategy(prod, ADAM, moves, mem)


def solve_bnd_uniform_buchi(arena: Arena, N: int, F: Iterable[int] | None = None) -> SolveResult:
    if N < 0:
        raise ValueError("N must be nonnegative")
    F = arena.buchi_set if F is None else frozenset(F)
    Z, moves, iterations = _bnd_uniform_core(arena, F, N)
    lose = frozenset(arena.vertices) - Z
    adam = _counter_adam_strategy(arena, F, N, "safety")
    return SolveResult(BndUniformBuchi(N, F), Z, lose, _complete(arena, EVE, moves, Z), adam,
                       {"iterations": iterations})


def _slices(arena: Arena, xi):
    """Slice iteration.

    ``xi(sub)`` returns ``(region, moves)`` on a re-indexed subarena; an empty
    region stops the iteration.  Returns the union of the slices, a dict
    of glued Eve moves and the list of slices ``(slice, core, core moves)``.
    """
    won: frozenset[int] = frozenset()
    remaining = frozenset(arena.vertices)
    slices = []
    while remaining:
        sub, index = restrict(arena, remaining)
        back = sorted(remaining)
        region, sub_moves = xi(sub)
        if not region:
            break
        core = frozenset(back[x] for x in region)
        core_moves = {back[x]: back[y] for x, y in sub_moves.items() if back[x] in core}
        att = attractor(arena, won | core)
        new = att.region - won
        glue = {v: w for v, w in att.strategy.items() if v in new}
        slices.append((new, core, core_moves, glue))
        won = att.region
        remaining = frozenset(arena.vertices) - won
    moves: dict[int, int] = {}
    for new, core, core_moves, glue in slices:
        moves.update(glue)
        moves.update(core_moves)
    return won, moves, slices


def solve_uniform_buchi(arena: Arena, N: int, F: Iterable[int] | None = None) -> SolveResult:
    if N < 0:
        raise ValueError("N must be nonnegative")
    F = arena.buchi_set if F is None else frozenset(F)

    def xi(sub):
        Z, moves, _ = _bnd_uniform_core(sub, sub.buchi_set, N)
        return Z, {v: w for v, w in moves.items() if v in Z}

    won, moves, slices = _slices(_with_target(arena, F), xi)
    lose = frozenset(arena.vertices) - won
    adam = _counter_adam_strategy(arena, F, N, "cobuchi")
    return SolveResult(UniformBuchi(N, F), won, lose, _complete(arena, EVE, moves, won), adam,
                       {"slices": [sorted(s[0]) for s in slices]})


def _with_target(arena: Arena, F: frozenset[int]) -> Arena:
    """Recolor so that the color-0 vertices are exactly ``F`` (subarenas keep the target)."""
    if arena.maxcolor == 1 and arena.buchi_set == F:
        return arena
    return arena.with_colors([0 if v in F else 1 for v in arena.vertices], 1)


def minimal_uniform_bound(arena: Arena, start: int, F: Iterable[int] | None = None,
                          cap: int | None = None) -> int | None:
    """Least ``N`` with ``start`` winning for the uniform Büchi condition with bound ``N``.

    ``None`` when ``start`` is not even winning for plain Büchi, so that no
    bound can exist; :class:`CapExceeded` when a bound may exist above ``cap``.
    """
    F = arena.buchi_set if F is None else frozenset(F)
    if cap is None:
        cap = len(arena)
    if start not in solve_buchi(arena, F).eve_region:
        return None

    def wins(N):
        return start in solve_uniform_buchi(arena, N, F).eve_region

    if wins(0):
        return 0
    lo, hi = 0, 1
    while not wins(hi):
        if hi >= cap:
            raise CapExceeded(cap)
        lo, hi = hi, min(2 * hi, cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if wins(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------- finitary Büchi


def solve_finitary_buchi(arena: Arena, F: Iterable[int] | None = None) -> SolveResult:
    F = arena.buchi_set if F is None else frozenset(F)
    base = _with_target(arena, F)

    def xi(sub):
        target = sub.buchi_set
        full = _buchi(sub, target, EVE)[0]
        region: frozenset[int] = frozenset()
        owner_of: dict[int, int] = {}
        per_bound = []
        for N in range(len(sub) + 1):
            res = solve_uniform_buchi(sub, N, target)
            per_bound.append(res.eve_strategy)
            for v in res.eve_region - region:
                owner_of[v] = N
            region = region | res.eve_region
            if region == full:
                break
        # each vertex follows the strategy of the least bound that wins from it
        moves = {}
        for v in region:
            if sub.owner[v] == EVE:
                moves[v] = per_bound[owner_of[v]].move(v)
        return region, moves

    won, moves, slices = _slices(base, xi)
    lose = frozenset(arena.vertices) - won
    adam = solve_buchi(arena, F).adam_strategy
    return SolveResult(FinitaryBuchi(F), won, lose, _complete(arena, EVE, moves, won), adam,
                       {"slices": [sorted(s[0]) for s in slices]})


# ---------------------------------------------------------------- parity with bounds


def _tracker_product(arena: Arena):
    d = tracker_top(arena.maxcolor)
    mem = request_tracker_memory(arena, d=d)
    prod = product(arena, mem)
    top_state = mem.size - 1
    answered = frozenset(x for x, (v, m) in enumerate(prod.pairs) if m == top_state)
    return prod, mem, answered


def solve_bnd_parity(arena: Arena) -> SolveResult:
    """Bounded parity via the request tracker.

    On the finite product the bounded and plain Büchi conditions for the
    "everything answered" set coincide, so a classical Büchi game is solved.
    """
    prod, mem, answered = _tracker_product(arena)
    res = solve_buchi(prod.arena, answered)
    eve = prod.project(res.eve_region)
    lose = frozenset(arena.vertices) - eve
    em = {x: w for (x, _), w in res.eve_strategy.moves.items()}
    am = {x: w for (x, _), w in res.adam_strategy.moves.items()}
    return SolveResult(BndParity(), eve, lose,
                       _lift_product_strategy(prod, EVE, em, mem),
                       _lift_product_strategy(prod, ADAM, am, mem),
                       {"product_vertices": len(prod.arena), "memory": mem.size})


def solve_finitary_parity(arena: Arena) -> SolveResult:
    """Finitary parity by slices whose cores are bounded-parity regions.

    Eve's memory is the request tracker, restarted whenever the play enters
    a core from outside it.
    """
    d = tracker_top(arena.maxcolor)
    cores: list[SolveResult] = []

    def xi(sub):
        res = solve_bnd_parity(sub)
        cores.append(res)
        return res.eve_region, {}

    won, _, slices = _slices(arena, xi)
    tracker = request_tracker_memory(arena, d=d)
    core_of: dict[int, int] = {}
    moves: dict[tuple[int, int], int] = {}
    # cores[k] belongs to the k-th subarena; only the non-empty ones made a slice
    nonempty = [r for r in cores if r.eve_region]
    for k, ((new, core, _, glue), res) in enumerate(zip(slices, nonempty)):
        remaining = sorted(frozenset(arena.vertices) - frozenset().union(*(s[0] for s in slices[:k])))
        for v in core:
            core_of[v] = k
        for (x, m), y in res.eve_strategy.moves.items():
            v = remaining[x]
            if v in core:
                moves[(v, m)] = remaining[y]
        for v, w in glue.items():
            if v not in core:
                for m in range(tracker.size):
                    moves[(v, m)] = w
    for v in arena.vertices_of(EVE):
        for m in range(tracker.size):
            if (v, m) not in moves:
                inside = [w for w in arena.succ[v] if v in won and w in won]
                moves[(v, m)] = inside[0] if inside else arena.succ[v][0]
    table = {}
    for m in range(tracker.size):
        for v, w in arena.edges():
            same = v in core_of and core_of.get(w) == core_of[v]
            table[(m, v, w)] = tracker.update(m, v, w) if same else tracker.initial[w]
    mem = MemoryStructure(tracker.size, tracker.initial, table, tracker.names)
    lose = frozenset(arena.vertices) - won
    return SolveResult(FinitaryParity(), won, lose, Strategy(EVE, moves, mem), None,
                       {"slices": [sorted(s[0]) for s in slices], "memory": mem.size})


# ---------------------------------------------------------------- dispatch


def solve(arena: Arena, cond: Condition) -> SolveResult:
    if isinstance(cond, Safety):
        return solve_safety(arena, cond.target(arena))
    if isinstance(cond, Buchi):
        return solve_buchi(arena, cond.target(arena))
    if isinstance(cond, CoBuchi):
        return solve_cobuchi(arena, cond.target(arena))
    if isinstance(cond, Parity):
        return solve_parity(arena)
    if isinstance(cond, BndUniformBuchi):
        return solve_bnd_uniform_buchi(arena, cond.N, cond.target(arena))
    if isinstance(cond, UniformBuchi):
        return solve_uniform_buchi(arena, cond.N, cond.target(arena))
    if isinstance(cond, FinitaryBuchi):
        return solve_finitary_buchi(arena, cond.target(arena))
    if isinstance(cond, BndParity):
        return solve_bnd_parity(arena)
    if isinstance(cond, FinitaryParity):
        return solve_finitary_parity(arena)
    raise TypeError(f"no solver for {cond!r}")
