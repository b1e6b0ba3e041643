"""Two-player games on graphs with finitary, bounded and uniform Büchi and parity conditions."""

from .arena import (ADAM, EVE, Arena, MemoryStructure, attractor, buchi_arena, format_arena,
                    make_arena, parse_arena, product, restrict, to_dot)
from .conditions import (BndParity, BndUniformBuchi, Buchi, CoBuchi, Condition, FinitaryBuchi,
                         FinitaryParity, Parity, Safety, UniformBuchi, UniformParity, condition_from_name)
from .errors import GameError, LimitError
from .solvers import SolveResult, minimal_uniform_bound, solve
from .strategy import Strategy, Verdict, reduce_memory, simulate, verify

__all__ = [
    "ADAM", "EVE", "Arena", "MemoryStructure", "attractor", "buchi_arena", "format_arena",
    "make_arena", "parse_arena", "product", "restrict", "to_dot",
    "BndParity", "BndUniformBuchi", "Buchi", "CoBuchi", "Condition", "FinitaryBuchi",
    "FinitaryParity", "Parity", "Safety", "UniformBuchi", "UniformParity", "condition_from_name",
    "GameError", "LimitError", "SolveResult", "minimal_uniform_bound", "solve",
    "Strategy", "Verdict", "reduce_memory", "simulate", "verify",
]
