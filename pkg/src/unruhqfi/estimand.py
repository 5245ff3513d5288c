from __future__ import annotations

from enum import Enum

from .errors import DomainError


class Estimand(str, Enum):
    """Parameter whose Fisher information is computed."""

    X = "x"
    Y = "y"
    Z = "z"
    R = "r"

    def __str__(self) -> str:
        return self.value


def as_estimand(value) -> Estimand:
    if isinstance(value, Estimand):
        return value
    try:
        return Estimand(str(value).lower())
    except ValueError:
        raise DomainError(f"unknown estimand {value!r}; expected one of x, y, z, r") from None


#: Estimands meaningful for the one-parameter Werner family.
WERNER_ESTIMANDS = (Estimand.X, Estimand.R)
