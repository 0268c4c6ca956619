"""Exception types shared across the package."""


class GraphError(ValueError):
    """A graph value violates a structural precondition."""


class ModificationError(ValueError):
    """An edge modification is malformed or cannot be applied."""


class NotTypeC1Error(GraphError):
    """An operation requires a C1 network (or a specific global communicator)."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to meet its residual tolerance."""


class SchemaError(ValueError):
    """A document does not conform to the graph JSON schema."""
