"""Exception types shared across the toolkit."""


class SpecradError(Exception):
    """Base class for toolkit errors."""


class ShapeMismatchError(SpecradError, ValueError):
    """Operands have incompatible shapes or structures."""


class DomainError(SpecradError, ValueError):
    """A scalar parameter is outside its admissible range."""


class ClosureOverflowError(SpecradError, RuntimeError):
    """Symbolic closure of a banded-operator expression grew past its cap.

    Raised instead of silently truncating; callers may widen budgets or
    report the evaluation as inconclusive.
    """


class BudgetExceededError(SpecradError, RuntimeError):
    """An enumeration or refinement exceeded its configured budget."""


class HypothesisViolation(SpecradError, ValueError):
    """Inputs do not satisfy the side conditions of an inequality chain.

    This is a rejection, not a counterexample: the chain is simply not
    applicable to the offered inputs.
    """


class InputFormatError(SpecradError, ValueError):
    """A JSON input file does not match the documented schemas."""
