"""Closed-form Newman rational approximant of |x| on [-1, 1].

With alpha = exp(-sqrt(n)/n) and p(x) = prod_{k=1}^{n-1} (x + alpha^k), the
approximant is R(x) = x (p(x) - p(-x)) / (p(x) + p(-x)), of type
(n-1, n-1); its max error is below 3 exp(-sqrt(n)) for n >= 5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import MeasurementSet
from .errors import ConfigError

__all__ = ["NewmanApproximant", "newman_eval", "newman_interpolation_pairs", "newman_measurements"]


@dataclass(frozen=True)
class NewmanApproximant:
    """Parameter n and the derived ratio alpha = exp(-sqrt(n)/n).

    Construction accepts n >= 2 so the small interpolation data sets remain
    expressible; the classical error guarantee needs n >= 5.
    """

    n: int
    alpha: float = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"Newman approximant needs n >= 2, got {self.n}")
        object.__setattr__(self, "alpha", math.exp(-math.sqrt(self.n) / self.n))


def _log_factors(na: NewmanApproximant, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """log|p(y)|, log|p(-y)|, sign(p(-y)) for y >= 0, chunk-vectorized.

    p(y) has all factors positive for y >= 0; p(-y) needs sign tracking.
    """
    powers = na.alpha ** np.arange(1, na.n)  # alpha^1 .. alpha^{n-1}
    plus = y[:, None] + powers[None, :]
    minus = powers[None, :] - y[:, None]
    log_p = np.sum(np.log(plus), axis=1)
    zero_hit = np.any(minus == 0.0, axis=1)
    with np.errstate(divide="ignore"):
        log_pm = np.sum(np.log(np.abs(minus)), axis=1)
    log_pm[zero_hit] = -np.inf
    sign_pm = np.where(np.sum(minus < 0, axis=1) % 2 == 0, 1.0, -1.0)
    sign_pm[zero_hit] = 0.0
    return log_p, log_pm, sign_pm


def newman_eval(na: NewmanApproximant, x, chunk: int = 65536):
    """Evaluate the Newman approximant at scalar or array x in [-1, 1].

    The products are evaluated in log-magnitude/sign form (n - 1 factors
    underflow a naive product already for moderate n) and negative arguments
    use the evenness of the approximant.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x_arr)
    for i in range(0, x_arr.size, chunk):
        y = np.abs(x_arr[i : i + chunk])
        log_p, log_pm, sign_pm = _log_factors(na, y)
        # f = p(-y)/p(y) has |f| < 1 on (0, 1]; R = y (1 - f) / (1 + f)
        f = sign_pm * np.exp(log_pm - log_p)
        out[i : i + chunk] = y * (1.0 - f) / (1.0 + f)
    return float(out[0]) if np.isscalar(x) or np.ndim(x) == 0 else out


def newman_interpolation_pairs(na: NewmanApproximant) -> list[tuple[float, float]]:
    """The n pairs (0, 0), (-alpha^k, alpha^k) for k = 1..n-1.

    The approximant interpolates |x| at each pair abscissa (and, by evenness,
    at the mirrored positive points as well).
    """
    pairs = [(0.0, 0.0)]
    pairs += [(-na.alpha**k, na.alpha**k) for k in range(1, na.n)]
    return pairs


def newman_measurements(na: NewmanApproximant) -> MeasurementSet:
    """All 2n - 1 interpolation abscissas {0} u {+-alpha^k} with |x| values.

    This is the data set from which the Loewner framework reconstructs the
    Newman approximant exactly (2n - 1 conditions for a type (n-1, n-1)
    rational function).
    """
    powers = na.alpha ** np.arange(na.n - 1, 0, -1)  # ascending positive points
    tau = np.concatenate([-powers[::-1], [0.0], powers])
    return MeasurementSet(tau, np.abs(tau))
