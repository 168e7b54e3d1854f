"""Typed errors shared across the package."""


class GorcheckError(Exception):
    """Base class for all package errors."""


class ParseError(GorcheckError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GuardExceeded(GorcheckError):
    """A resource guard (enumeration count, recursion nodes, ...) was hit.

    Never a silent wrong answer: callers must treat this as "unknown".
    """


class NotTwoConnected(GorcheckError):
    """Operation requires a 2-connected input graph."""


class SimpleGraphRequired(GorcheckError):
    """The base-polytope checker is defined for simple graphs only."""


class WeightConflict(GorcheckError):
    """An edge is forced to both weight 1 and weight delta-1 with delta != 2."""

    def __init__(self, edge_id: int, delta: int):
        super().__init__(
            f"edge {edge_id}: deletion and contraction are both 2-connected, "
            f"so weights 1 and {delta - 1} are both forced (delta={delta})"
        )
        self.edge_id = edge_id
        self.delta = delta


class ConstructionError(GorcheckError):
    """A construction operation was called with violated preconditions."""


class InternalContradiction(GorcheckError):
    """A state the underlying theorems rule out was reached.

    This is surfaced loudly and never swallowed; hitting it means either a
    bug in this package or a counterexample to a proved statement.
    """
