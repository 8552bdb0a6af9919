"""Exception types shared across the package."""


class HotkError(Exception):
    """Base class for all package errors."""


class ParseError(HotkError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class FormationError(HotkError):
    """A formula or term violates the active regime's formation rules."""


class SubstitutionError(HotkError):
    """Type-mismatched or otherwise illegal substitution."""


class EvalError(HotkError):
    """Evaluation failed: unassigned variable, missing domain, etc."""


class BudgetExceeded(HotkError):
    """An enumeration would exceed the configured entity/subset budget."""


class GraphError(HotkError):
    """Malformed membership graph or an operation's graph precondition failed."""


class RankUndefined(HotkError):
    """No level of the graph contains the node as a subset."""


class ProofError(HotkError):
    """Malformed proof file (distinct from a Rejected verdict)."""
