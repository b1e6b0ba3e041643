"""Winning conditions as small immutable descriptors.

Büchi-type conditions carry an explicit target set; when it is omitted the
arena's color-0 vertices are used.  Parity-type conditions read the arena
coloring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams


@dataclass(frozen=True)
class Condition:
    name = "condition"

    def target(self, arena) -> frozenset[int]:
        F = getattr(self, "F", None)
        return arena.buchi_set if F is None else frozenset(F)


@dataclass(frozen=True)
class Safety(Condition):
    F: frozenset[int] | None = None
    name = "safety"


@dataclass(frozen=True)
class Buchi(Condition):
    F: frozenset[int] | None = None
    name = "buchi"


@dataclass(frozen=True)
class CoBuchi(Condition):
    F: frozenset[int] | None = None
    name = "cobuchi"


@dataclass(frozen=True)
class Parity(Condition):
    name = "parity"


@dataclass(frozen=True)
class BndUniformBuchi(Condition):
    """Every position sees ``F`` within ``N`` steps."""

    N: int = 0
    F: frozenset[int] | None = None
    name = "bnd-uniform-buchi"


@dataclass(frozen=True)
class UniformBuchi(Condition):
    """From some point on, every position sees ``F`` within ``N`` steps."""

    N: int = 0
    F: frozenset[int] | None = None
    name = "uniform-buchi"


@dataclass(frozen=True)
class FinitaryBuchi(Condition):
    F: frozenset[int] | None = None
    name = "finitary-buchi"


@dataclass(frozen=True)
class BndParity(Condition):
    """Every request is answered and the waiting times are bounded."""

    name = "bnd-parity"


@dataclass(frozen=True)
class FinitaryParity(Condition):
    """Waiting times are eventually bounded."""

    name = "finitary-parity"


@dataclass(frozen=True)
class UniformParity(Condition):
    """Every request is answered within ``N`` steps (verification only)."""

    N: int = 0
    name = "uniform-parity"


CONDITIONS = {
    "safety": Safety,
    "buchi": Buchi,
    "cobuchi": CoBuchi,
    "parity": Parity,
    "bnd-uniform-buchi": BndUniformBuchi,
    "uniform-buchi": UniformBuchi,
    "finitary-buchi": FinitaryBuchi,
    "bnd-parity": BndParity,
    "finitary-parity": FinitaryParity,
}

NEEDS_N = {"bnd-uniform-buchi", "uniform-buchi", "uniform-parity"}


def condition_from_name(name: str, N: int | None = None, verify_only: bool = False) -> Condition:
    """Condition by its kebab-case name; ``uniform-parity`` is accepted only with ``verify_only``."""
    known = dict(CONDITIONS, **({"uniform-parity": UniformParity} if verify_only else {}))
    if name not in known:
        raise BadParams(f"unknown condition {name!r}")
    if name in NEEDS_N:
        if N is None or N < 0:
            raise BadParams(f"condition {name} needs a bound N >= 0")
        return known[name](N=N)
    if N is not None:
        raise BadParams(f"condition {name} takes no bound")
    return known[name]()


def describe(cond: Condition) -> str:
    N = getattr(cond, "N", None)
    return cond.name if N is None else f"{cond.name} N={N}"
