"""Exceptions shared across modules."""


class IdentityViolationError(RuntimeError):
    """A symbolic or numeric identity that must hold exactly failed."""


class SingularCurveError(ValueError):
    """Numeric curve has vanishing discriminant."""


class PointAtInfinityError(ArithmeticError):
    """A point multiple hit the group identity (n annihilates the point)."""


class TorsionPointError(ValueError):
    """Operation requires a point of infinite order."""
