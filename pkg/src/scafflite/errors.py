"""Exception types shared across the toolkit.

Every error that can be traced to a source location carries one, so the CLI
can print `file:line:col: message`.
"""
from __future__ import annotations


class ScaffError(Exception):
    """Base class; `pos` is a (line, col) tuple or None."""

    def __init__(self, message, pos=None):
        self.message = message
        self.pos = pos
        super().__init__(self.format())

    def format(self):
        if self.pos is not None:
            return f"{self.pos[0]}:{self.pos[1]}: {self.message}"
        return self.message


class ScaffSyntaxError(ScaffError):
    pass


class UnknownGateError(ScaffSyntaxError):
    pass


class SemanticError(ScaffError):
    pass


class UndefinedModuleError(SemanticError):
    pass


class ArityMismatchError(SemanticError):
    pass


class TypeMismatchError(SemanticError):
    pass


class RecursionCycleError(SemanticError):
    """Module call graph is cyclic."""


class NonConstantControlError(ScaffError):
    """A loop bound or conditional guard could not be evaluated at compile time."""


class BlowupLimitError(ScaffError):
    """Flattening exceeded the configured instruction budget."""


class StepLimitError(ScaffError):
    """The flattening interpreter exceeded its classical step limit."""


class BudgetExceededError(ScaffError):
    """Emission or expansion would exceed the configured gate budget."""


# -- reversible-logic synthesis -------------------------------------------

class CtqgError(ScaffError):
    pass


class OverlapError(CtqgError):
    """Registers passed to an arithmetic primitive share signal lines."""


class WidthError(CtqgError):
    pass


class WidthMismatchError(CtqgError):
    pass


class ControlOverlapError(CtqgError):
    """Control signal appears inside the controlled fragment."""


class NoBorrowAvailableError(CtqgError):
    """Multi-control decomposition found no borrowable line."""


class TooManyQubitsError(ScaffError):
    """State-vector checker limit (10 qubits) exceeded."""
