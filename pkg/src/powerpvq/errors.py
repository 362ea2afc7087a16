"""Exception types shared by every module."""


class ContractViolation(ValueError):
    """An argument broke an operation's precondition."""


class DegenerateInputError(ContractViolation):
    """Zero vector (or similar) where a direction is required."""


class IndexRangeError(ContractViolation, IndexError):
    """Codebook index outside [0, N(L, K))."""
