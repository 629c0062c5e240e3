"""Interpolation-point generators on a positive interval [a, b] and their
symmetric negative extensions.

Five families are supported: linearly spaced, logarithmically spaced,
Chebyshev, Zolotarev (through Jacobi elliptic functions), and the geometric
"Newman" points.  All generators return strictly increasing, duplicate-free
float64 arrays and never include 0; the origin is handled separately by the
dataset layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "IntervalConfig",
    "PointFamily",
    "EllipticModulus",
    "linspace_points",
    "logspace_points",
    "chebyshev_points",
    "complete_elliptic_Kprime",
    "jacobi_sn_cn",
    "zolotarev_points",
    "newman_points",
    "symmetric_extend",
    "generate_points",
]

# Landen/AGM iteration controls: quadratic convergence makes 64 a generous cap.
_AGM_MAX_ITER = 64
_AGM_TOL = 1e-15


@dataclass(frozen=True)
class IntervalConfig:
    """Positive sampling interval [a, b] with n points per half-interval.

    ``a == 0`` is tolerated at construction because the Chebyshev family keeps
    its points strictly interior; generators whose formulas degenerate at
    ``a == 0`` reject it themselves.
    """

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (0 <= self.a < self.b <= 1):
            raise ConfigError(f"interval must satisfy 0 <= a < b <= 1, got a={self.a}, b={self.b}")
        if self.n < 1:
            raise ConfigError(f"need at least one point per half-interval, got n={self.n}")

    def require_positive_a(self):
        if self.a <= 0:
            raise ConfigError(f"this point family needs a > 0, got a={self.a}")


class PointFamily(str, Enum):
    LINSPACE = "linspace"
    LOGSPACE = "logspace"
    CHEBYSHEV = "chebyshev"
    ZOLOTAREV = "zolotarev"
    NEWMAN = "newman"


def complete_elliptic_Kprime(ell_prime: float) -> float:
    """Complete elliptic integral of the first kind, K(l'), by the AGM.

    Computes ``K' = Int_0^{pi/2} dtheta / sqrt(1 - l'^2 sin^2 theta)`` via
    ``K(k) = pi / (2 AGM(1, sqrt(1 - k^2)))``; relative accuracy ~1e-14.

    Parameters
    ----------
    ell_prime : float
        Modulus, ``0 <= ell_prime < 1``.
    """
    if not 0 <= ell_prime < 1:
        raise DomainError(f"modulus must be in [0, 1), got {ell_prime}")
    a = 1.0
    b = math.sqrt((1.0 - ell_prime) * (1.0 + ell_prime))
    for _ in range(_AGM_MAX_ITER):
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        if abs(a - b) <= _AGM_TOL * a:
            break
    return math.pi / (2.0 * a)


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus data (l, l', K') derived from an interval ratio l = a/b."""

    ell: float
    ell_prime: float
    K_prime: float = field(default=0.0)

    def __post_init__(self):
        if not 0 < self.ell < 1:
            raise DomainError(f"modulus ell must be in (0, 1), got {self.ell}")
        if abs(self.ell**2 + self.ell_prime**2 - 1.0) > 1e-14:
            raise DomainError("ell and ell_prime are not complementary (ell^2 + ell_prime^2 != 1)")
        if self.K_prime < math.pi / 2:
            raise DomainError(f"K_prime must be >= pi/2, got {self.K_prime}")

    @classmethod
    def from_interval(cls, a: float, b: float) -> "EllipticModulus":
        if not 0 < a < b:
            raise DomainError(f"need 0 < a < b, got a={a}, b={b}")
        ell = a / b
        # complementary modulus via the product form, stable for ell -> 0
        ell_prime = math.sqrt((1.0 - ell) * (1.0 + ell))
        return cls(ell=ell, ell_prime=ell_prime, K_prime=complete_elliptic_Kprime(ell_prime))


def jacobi_sn_cn(u, k: float):
    """Jacobi elliptic sn(u; k) and cn(u; k) by the descending Landen transformation.

    Accepts scalar or array ``u``; accuracy ~1e-12 over the ranges used here.
    The backward phase recurrence follows the classical AGM scheme
    (descending Landen with amplitude back-substitution).
    """
    if not 0 <= k < 1:
        raise DomainError(f"modulus must be in [0, 1), got {k}")
    u_arr = np.asarray(u, dtype=float)
    if k == 0.0:
        sn, cn = np.sin(u_arr), np.cos(u_arr)
        return (float(sn), float(cn)) if np.isscalar(u) else (sn, cn)

    a_list = [1.0]
    c_list = [k]
    b = math.sqrt((1.0 - k) * (1.0 + k))
    for _ in range(_AGM_MAX_ITER):
        a_prev = a_list[-1]
        a_list.append(0.5 * (a_prev + b))
        c_list.append(0.5 * (a_prev - b))
        b = math.sqrt(a_prev * b)
        if abs(c_list[-1]) <= _AGM_TOL:
            break
    depth = len(a_list) - 1

    phi = (2.0**depth) * a_list[depth] * u_arr
    for i in range(depth, 0, -1):
        # |c_i/a_i sin(phi)| <= 1 analytically; clip guards roundoff at the edge
        phi = 0.5 * (phi + np.arcsin(np.clip(c_list[i] / a_list[i] * np.sin(phi), -1.0, 1.0)))
    sn, cn = np.sin(phi), np.cos(phi)
    return (float(sn), float(cn)) if np.isscalar(u) else (sn, cn)


def linspace_points(cfg: IntervalConfig) -> np.ndarray:
    """Uniformly spaced points from a to b inclusive (n = 1 gives [a])."""
    cfg.require_positive_a()
    if cfg.n == 1:
        return np.array([cfg.a])
    return np.linspace(cfg.a, cfg.b, cfg.n)


def logspace_points(cfg: IntervalConfig) -> np.ndarray:
    """Geometric progression from a to b with ratio (b/a)^(1/(n-1))."""
    cfg.require_positive_a()
    if cfg.n == 1:
        return np.array([cfg.a])
    return 10.0 ** np.linspace(math.log10(cfg.a), math.log10(cfg.b), cfg.n)


def chebyshev_points(cfg: IntervalConfig) -> np.ndarray:
    """Chebyshev points (a+b)/2 + (a-b)/2 * cos((2k-1) pi / (2n)), k = 1..n.

    All points are strictly interior to (a, b), so a = 0 is admissible here.
    """
    k = np.arange(1, cfg.n + 1, dtype=float)
    pts = 0.5 * (cfg.a + cfg.b) + 0.5 * (cfg.a - cfg.b) * np.cos((2 * k - 1) * math.pi / (2 * cfg.n))
    return np.sort(pts)


def zolotarev_points(cfg: IntervalConfig) -> np.ndarray:
    """Zolotarev points sqrt(a^2 sn^2(i K'/n; l') + b^2 cn^2(i K'/n; l')), i = 1..n.

    These are the abscissas where the optimal rational approximation of the
    sign function on [-b,-a] u [a,b] attains the value 1 exactly.  The raw
    formula yields points decreasing in i; the result is sorted ascending.
    """
    if cfg.a <= 0:
        raise DomainError("Zolotarev points need a > 0 (the modulus a/b degenerates at a = 0)")
    mod = EllipticModulus.from_interval(cfg.a, cfg.b)
    i = np.arange(1, cfg.n + 1, dtype=float)
    sn, cn = jacobi_sn_cn(i * mod.K_prime / cfg.n, mod.ell_prime)
    pts = np.sqrt((cfg.a * sn) ** 2 + (cfg.b * cn) ** 2)
    # sn^2 + cn^2 = 1 puts the points in [a, b] analytically; clip roundoff
    return np.sort(np.clip(pts, cfg.a, cfg.b))


def newman_points(n: int) -> np.ndarray:
    """Geometric points alpha^n < ... < alpha^1 with alpha = exp(-sqrt(n)/n)."""
    if n < 1:
        raise ConfigError(f"need n >= 1, got {n}")
    k = np.arange(n, 0, -1, dtype=float)
    return np.exp(-k * math.sqrt(n) / n)


def symmetric_extend(points) -> np.ndarray:
    """Mirror strictly positive points through the origin: {-p} u {p}, sorted."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return pts.copy()
    if np.any(pts <= 0):
        raise DomainError("symmetric_extend requires strictly positive input points")
    pts = np.sort(pts)
    return np.concatenate([-pts[::-1], pts])


_GENERATORS = {
    PointFamily.LINSPACE: linspace_points,
    PointFamily.LOGSPACE: logspace_points,
    PointFamily.CHEBYSHEV: chebyshev_points,
    PointFamily.ZOLOTAREV: zolotarev_points,
}


def generate_points(family: PointFamily, cfg: IntervalConfig) -> np.ndarray:
    """Dispatch to the family generator; the Newman family uses only cfg.n."""
    family = PointFamily(family)
    if family is PointFamily.NEWMAN:
        return newman_points(cfg.n)
    return _GENERATORS[family](cfg)
