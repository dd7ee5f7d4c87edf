"""Exception types shared across the package."""


class SurfbraidError(Exception):
    pass


class InvalidParams(SurfbraidError, ValueError):
    pass


class ClosedSurfaceUnsupported(SurfbraidError, ValueError):
    pass


class NonOrientableUnsupported(SurfbraidError, ValueError):
    pass


class StrategyUnavailable(SurfbraidError):
    pass


class Exhausted(SurfbraidError):
    """Knuth-Bendix completion ran out of budget.

    ``dimension`` is one of ``"max_rules"``, ``"max_rule_length"``, ``"max_steps"``.
    """

    def __init__(self, dimension: str, detail: str = ""):
        self.dimension = dimension
        super().__init__(f"completion budget exhausted: {dimension} {detail}".strip())


class NotConfluent(SurfbraidError):
    pass


class Overflow(SurfbraidError):
    def __init__(self, max_cosets: int):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")


class NotClosed(SurfbraidError):
    pass


class TooLarge(SurfbraidError):
    pass


class NotSquare(SurfbraidError, ValueError):
    pass


class NotSupported(SurfbraidError):
    pass


class NotNormal(SurfbraidError, ValueError):
    pass


class NotInvariant(SurfbraidError, ValueError):
    pass


class BudgetTooLarge(SurfbraidError, ValueError):
    pass


class NotHomomorphism(SurfbraidError, ValueError):
    pass
