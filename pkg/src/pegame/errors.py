"""Exception hierarchy.

Everything derives from :class:`GameError` so callers can catch the whole
family.  Input validation problems also derive from ``ValueError``.
"""


class GameError(Exception):
    """Base class for all errors raised by the package."""


class InvalidStateError(GameError, ValueError):
    """A state or command has non-finite fields or breaks the speed bound."""


class InvalidParamsError(GameError, ValueError):
    """Game bounds are inconsistent (for example v_P_max <= v_E_max)."""


class InfeasibleStateError(InvalidStateError):
    """The pursuer is already faster than allowed."""


class DegeneratePolynomialError(GameError, ValueError):
    """Polynomial of degree zero or with all coefficients zero."""


class BracketError(GameError, ValueError):
    """Bisection called on an interval without a sign change."""


class DegenerateTangencyError(GameError):
    """The tangency denominator a t^2 - 2 v_E t vanishes."""


class InfeasibleHeadingError(GameError):
    """No real post-saturation capture time exists for the heading."""


class WrongPhaseError(GameError):
    """A post-saturation formula was evaluated before saturation."""


class UniformSignError(GameError):
    """The feasibility function did not change sign on the circle.

    ``everywhere_positive`` tells the two cases apart: True means every
    heading is feasible, False means none is.
    """

    def __init__(self, message, everywhere_positive: bool):
        super().__init__(message)
        self.everywhere_positive = everywhere_positive


class SingularDenominatorError(GameError):
    """The implicit-differentiation denominator is numerically zero."""


class BoundaryOfFeasibilityError(GameError):
    """The phase-2 gradient is undefined because g = 0."""


class NoCrossingError(GameError):
    """A state family does not cross the phase switching surface."""


class ToleranceError(GameError):
    """A verification quantity is outside its tolerance."""
