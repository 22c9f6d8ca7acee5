class GraphInputError(ValueError):
    """Malformed graph, partition, or argument."""


class ContractViolation(ValueError):
    """An operation's precondition on an otherwise valid graph does not hold."""


class UndefinedPrimaryColor(GraphInputError):
    """A vertex has no edges into the previous part, so no primary color exists."""


class BudgetExceeded(RuntimeError):
    """An enumeration hit its node-expansion cap.

    ``partial`` carries whatever was counted before the cap was reached.
    """

    def __init__(self, message: str, expansions: int = 0, partial: int = 0):
        super().__init__(message)
        self.expansions = expansions
        self.partial = partial
