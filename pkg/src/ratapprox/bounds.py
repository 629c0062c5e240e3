"""Classical bounds and estimates for the best rational approximation error
of |x| on [-1, 1] at type (n, n)."""
from __future__ import annotations

import math
from enum import Enum

from .errors import DomainError

__all__ = ["BoundKind", "bound_value", "REFERENCE_MINIMAX_ERRORS"]


class BoundKind(str, Enum):
    NEWMAN_UPPER = "newman_upper"
    NEWMAN_LOWER = "newman_lower"
    BULANOV_LOWER = "bulanov_lower"
    STAHL_ESTIMATE = "stahl_estimate"


# Published best (minimax) approximation errors used purely as reference
# constants in comparison output; they are not computed by this package.
REFERENCE_MINIMAX_ERRORS = {48: 3.0517e-09}

_VALIDITY = {
    BoundKind.NEWMAN_UPPER: 4,
    BoundKind.NEWMAN_LOWER: 4,
    BoundKind.BULANOV_LOWER: 0,
    BoundKind.STAHL_ESTIMATE: 1,
}


def bound_value(kind: BoundKind, n: int) -> float:
    """Closed-form bound value at order n.

    Newman (n >= 4): lower e^{-9 sqrt(n)} / 2, upper 3 e^{-sqrt(n)}.
    Bulanov (n >= 0): lower e^{-pi sqrt(n+1)}.
    Stahl (n >= 1): the asymptotic value 8 e^{-pi sqrt(n)}.  Note this is an
    *estimate* of the best error, not a bound, and is labeled accordingly in
    all outputs.
    """
    kind = BoundKind(kind)
    if n < _VALIDITY[kind]:
        raise DomainError(f"{kind.value} is only stated for n >= {_VALIDITY[kind]}, got n={n}")
    root = math.sqrt(n)
    if kind is BoundKind.NEWMAN_UPPER:
        return 3.0 * math.exp(-root)
    if kind is BoundKind.NEWMAN_LOWER:
        return 0.5 * math.exp(-9.0 * root)
    if kind is BoundKind.BULANOV_LOWER:
        return math.exp(-math.pi * math.sqrt(n + 1))
    return 8.0 * math.exp(-math.pi * root)
