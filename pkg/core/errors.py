"""Exception hierarchy for fluctwell.

Every error raised by the library derives from FluctwellError so callers
(the CLI in particular) can map categories onto exit codes:

- DomainError -> invalid inputs, model or regime violations (exit 1)
- ConvergenceError / NumericalConsistencyError -> numerics (exit 3)
"""
from typing import Optional


class FluctwellError(Exception):
    """Base class for all fluctwell errors."""

    pass


class DomainError(FluctwellError, ValueError):
    """Raised when an argument lies outside an operation's domain."""

    pass


class ConfigValidationError(DomainError):
    """Raised when a run configuration field fails validation.

    The message always starts with the dotted path of the offending field.
    """

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        self.reason = message
        super().__init__(f"{field_path}: {message}")


class NoiseRegimeError(DomainError):
    """Raised when Monte-Carlo draws leave the physical regime too often."""

    def __init__(self, rejected: int, samples: int, limit: float):
        self.rejected = rejected
        self.samples = samples
        self.limit = limit
        super().__init__(
            f"{rejected} of {samples} width draws had 1+eps <= 0 "
            f"(rate limit {limit:g}); sigma is outside the small-noise regime"
        )


class InsufficientDataError(DomainError):
    """Raised when a fit has fewer usable samples than it needs."""

    def __init__(self, usable: int, required: int):
        self.usable = usable
        self.required = required
        super().__init__(
            f"only {usable} usable samples, at least {required} required"
        )


class ConvergenceError(FluctwellError, ArithmeticError):
    """Raised when quadrature does not converge after node doubling."""

    def __init__(
        self,
        estimate: complex,
        previous: complex,
        nodes: int,
        previous_nodes: int,
        rtol: float,
        context: Optional[str] = None,
    ):
        self.estimate = estimate
        self.previous = previous
        self.nodes = nodes
        self.previous_nodes = previous_nodes
        self.rtol = rtol
        self.context = context
        where = f" ({context})" if context else ""
        super().__init__(
            f"quadrature did not converge{where}: {nodes} nodes gave "
            f"{estimate!r}, {previous_nodes} nodes gave {previous!r} "
            f"(rtol {rtol:g})"
        )


class NumericalConsistencyError(FluctwellError, ArithmeticError):
    """Raised when a quantity that must be real keeps an imaginary residue."""

    def __init__(self, residue: float, threshold: float, context: str = ""):
        self.residue = residue
        self.threshold = threshold
        super().__init__(
            f"imaginary residue {residue:.3e} exceeds {threshold:g}"
            + (f" ({context})" if context else "")
        )
