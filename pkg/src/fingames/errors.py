"""Exceptions raised by the library; the CLI maps them to exit codes."""


class GameError(Exception):
    """Base class for all library errors."""


class LimitError(GameError):
    """An internal cap or budget was hit (CLI exit code 3)."""


class NotASubarena(GameError):
    def __init__(self, vertices):
        self.vertices = list(vertices)
        super().__init__(f"not a subarena: vertices {self.vertices} have no successor inside")


class OddMaxColor(GameError):
    def __init__(self, d):
        self.d = d
        super().__init__(f"request tracker needs an even maximal color, got {d}")


class EvenMaxColor(GameError):
    def __init__(self, d):
        self.d = d
        super().__init__(f"restart gadget needs an odd maximal color, got {d}")


class CapExceeded(LimitError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"no bound up to cap {cap}")


class InvalidStrategy(GameError):
    pass


class SpaceTooLarge(LimitError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"strategy space has {size} elements, cap is {cap}")


class BudgetExceeded(LimitError):
    pass


class DeadEndConfiguration(GameError):
    def __init__(self, config):
        self.config = config
        super().__init__(f"configuration {config} has no applicable transition")


class EmptyUnfolding(GameError):
    pass


class Nondeterministic(GameError):
    def __init__(self, config):
        self.config = config
        super().__init__(f"configuration {config} has several applicable transitions")


class NoCycleWithinBudget(LimitError):
    pass


class Overflow(LimitError):
    pass


class UnknownExample(GameError):
    pass


class BadParams(GameError):
    pass
