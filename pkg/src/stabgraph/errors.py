"""Exception hierarchy shared by every stabgraph module."""


class StabGraphError(Exception):
    """Base class for all library errors."""


class IndexOutOfRange(StabGraphError, IndexError):
    """A node index is negative or not smaller than the node count."""


class SelfEdgeRejected(StabGraphError, ValueError):
    """An edge from a node to itself was requested; loops live in ``loops``."""


class EdgeRequired(StabGraphError, ValueError):
    """The operation needs the two nodes to be connected."""


class LoopRequired(StabGraphError, ValueError):
    pass


class LoopForbidden(StabGraphError, ValueError):
    pass


class PreconditionViolated(StabGraphError, ValueError):
    pass


class NotSimplified(StabGraphError, ValueError):
    """Measured hollow nodes are not loopless and isolated from the rest."""


class ChosenNotEligible(StabGraphError, ValueError):
    """The chosen node is not a measured solid node with even hollow degree."""


class ImpossibleOutcome(StabGraphError, ValueError):
    """A forced outcome has probability zero."""


class OutcomesExhausted(StabGraphError, ValueError):
    """A sequence policy ran out of outcomes for a random measurement."""


class TooManyQubits(StabGraphError, ValueError):
    pass


class LengthMismatch(StabGraphError, ValueError):
    pass


class SchemaError(StabGraphError, ValueError):
    pass


class ProgramError(StabGraphError):
    """Error in a circuit program, located at a 1-based line and column."""

    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}")


class ProgramSyntaxError(ProgramError):
    pass


class ProgramSemanticError(ProgramError):
    pass
