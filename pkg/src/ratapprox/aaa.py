"""Adaptive Antoulas-Anderson (AAA) rational fitting.

Greedy support-point selection over a fixed sample set, linearized
least-squares weights from the smallest right singular vector of the
associated Loewner matrix, barycentric evaluation, and conversion to an
equivalent descriptor realization.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .dataset import MeasurementSet
from .errors import PoleProximityError
from .loewner import RationalApproximant

__all__ = [
    "BarycentricForm",
    "AaaStep",
    "AaaTrace",
    "aaa_fit",
    "bary_eval",
    "bary_eval_grid",
    "aaa_realization",
    "form_to_json",
    "form_from_json",
]

# residuals below this (relative to max |f|) count as an exact fit
_EXACT_FIT_RTOL = 1e-15


@dataclass(frozen=True)
class BarycentricForm:
    """Barycentric rational form: support points nu_k, values w_k, weights alpha_k.

    The weight vector has unit Euclidean norm; the represented function is
    R(x) = sum_k alpha_k w_k / (x - nu_k)  /  sum_k alpha_k / (x - nu_k),
    which interpolates (nu_k, w_k) by construction.
    """

    support: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        s = np.atleast_1d(np.asarray(self.support, dtype=float))
        v = np.atleast_1d(np.asarray(self.values, dtype=float))
        a = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if not (s.shape == v.shape == a.shape) or s.ndim != 1:
            raise ValueError("support, values and weights must be equal-length 1-D arrays")
        if np.unique(s).size != s.size:
            raise ValueError("support points must be distinct")
        norm = np.linalg.norm(a)
        if norm == 0:
            raise ValueError("weight vector must be nonzero")
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", a / norm)

    @property
    def order(self) -> int:
        return self.support.size - 1


@dataclass(frozen=True)
class AaaStep:
    chosen_point: float
    max_residual: float


@dataclass(frozen=True)
class AaaTrace:
    steps: list[AaaStep]


def _solve_weights(tau, f, support_idx: list[int]) -> np.ndarray:
    """Unit-norm weights minimizing ||L alpha|| over the non-support rows."""
    mask = np.ones(tau.size, dtype=bool)
    mask[support_idx] = False
    nu = tau[support_idx]
    wv = f[support_idx]
    L = (f[mask, None] - wv[None, :]) / (tau[mask, None] - nu[None, :])
    if L.shape[0] == 0:
        alpha = np.zeros(len(support_idx))
        alpha[0] = 1.0
        return alpha
    _, _, Vt = kernels.svd(L)
    # ties in the smallest singular value are broken by LAPACK's first-column
    # ordering; normalize the sign for determinism
    alpha = Vt[-1]
    pivot = np.argmax(np.abs(alpha))
    if alpha[pivot] < 0:
        alpha = -alpha
    return alpha


def aaa_fit(
    ds: MeasurementSet,
    order: int | None = None,
    tol: float | None = None,
) -> tuple[BarycentricForm, AaaTrace]:
    """Fit a rational approximant to the samples by the AAA iteration.

    Exactly one stopping rule is given: a fixed ``order`` r (r + 1 support
    points), or a residual tolerance ``tol`` relative to max |f|.  Each
    iteration adds the sample with the largest current deviation |f - R|
    (ties broken by smallest index, starting from the deviation-from-mean
    maximizer), then recomputes the weights.  If all residuals drop below
    machine level before the requested order is reached, the fit stops early
    with the smaller order; this is a success, not an error.
    """
    if (order is None) == (tol is None):
        raise ValueError("specify exactly one of order= or tol=")
    tau, f = ds.tau, ds.f
    N = tau.size
    if N < 2:
        raise ValueError("AAA needs at least two samples")
    if order is not None and not 0 <= order < N / 2:
        raise ValueError(f"order must satisfy 0 <= r < N/2 = {N / 2}, got {order}")

    fscale = float(np.max(np.abs(f)))
    stop_abs = (tol * fscale) if tol is not None else None
    exact_abs = _EXACT_FIT_RTOL * max(fscale, 1e-300)

    support_idx: list[int] = []
    steps: list[AaaStep] = []
    R = np.full(N, np.mean(f))
    alpha = np.empty(0)
    while True:
        resid = np.abs(f - R)
        resid[support_idx] = -np.inf  # never reselect a support point
        j = int(np.argmax(resid))
        support_idx.append(j)
        alpha = _solve_weights(tau, f, support_idx)
        form = BarycentricForm(tau[support_idx], f[support_idx], alpha)
        R = bary_eval_grid(form, tau)
        R[support_idx] = f[support_idx]
        max_resid = float(np.max(np.abs(f - R)))
        steps.append(AaaStep(chosen_point=float(tau[j]), max_residual=max_resid))

        ell = len(support_idx) - 1
        if order is not None and ell >= order:
            break
        if stop_abs is not None and max_resid <= stop_abs:
            break
        if max_resid <= exact_abs:
            break
        if len(support_idx) >= N - 1:
            break  # no rows left for the least-squares problem
    return form, AaaTrace(steps)


def bary_eval(b: BarycentricForm, x: float) -> float:
    """Evaluate the barycentric form at one point.

    At a support point the stored value is returned exactly; elsewhere the
    quotient is formed, and denominator underflow raises
    :class:`PoleProximityError`.
    """
    hits = np.nonzero(b.support == x)[0]
    if hits.size:
        return float(b.values[hits[0]])
    diff = x - b.support
    den = float(np.sum(b.weights / diff))
    if den == 0.0 or abs(den) < np.finfo(float).tiny:
        raise PoleProximityError(x, f"barycentric denominator underflow at x={x!r}")
    num = float(np.sum(b.weights * b.values / diff))
    return num / den


def bary_eval_grid(b: BarycentricForm, xs, chunk: int = 65536) -> np.ndarray:
    """Vectorized barycentric evaluation; support hits return stored values."""
    xs = np.asarray(xs, dtype=float)
    out = np.empty(xs.shape, dtype=float)
    for i in range(0, xs.size, chunk):
        x = xs[i : i + chunk]
        diff = x[:, None] - b.support[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            cauchy = 1.0 / diff
            vals = (cauchy @ (b.weights * b.values)) / (cauchy @ b.weights)
        exact_row, exact_col = np.nonzero(diff == 0.0)
        vals[exact_row] = b.values[exact_col]
        out[i : i + chunk] = vals
    return out


def bary_denominator(b: BarycentricForm, xs) -> np.ndarray:
    """Denominator sum, used to exclude pole neighborhoods in comparisons."""
    xs = np.asarray(xs, dtype=float)
    with np.errstate(divide="ignore"):
        return (1.0 / (xs[:, None] - b.support[None, :])) @ b.weights


def aaa_realization(b: BarycentricForm) -> RationalApproximant:
    """Equivalent descriptor realization of dimension r + 2.

    A = diag(nu_0..nu_r, 1) - B ones^T, B = [alpha_0..alpha_r, 1]^T,
    E = diag(1..1, 0), C = [w_0..w_r, 0]; the single infinite pencil
    eigenvalue carries the constant part of the type (r, r) function.
    """
    r = b.order
    dim = r + 2
    Bvec = np.concatenate([b.weights, [1.0]])
    A = np.diag(np.concatenate([b.support, [1.0]])) - np.outer(Bvec, np.ones(dim))
    E = np.eye(dim)
    E[-1, -1] = 0.0
    C = np.concatenate([b.values, [0.0]])
    return RationalApproximant(E=E, A=A, B=Bvec, C=C, D=0.0, num_degree=r, den_degree=r)


def form_to_json(b: BarycentricForm) -> str:
    return json.dumps({"support": b.support.tolist(), "values": b.values.tolist(), "weights": b.weights.tolist()})


def form_from_json(text: str | bytes) -> BarycentricForm:
    doc = json.loads(text)
    return BarycentricForm(
        np.asarray(doc["support"], dtype=float),
        np.asarray(doc["values"], dtype=float),
        np.asarray(doc["weights"], dtype=float),
    )
