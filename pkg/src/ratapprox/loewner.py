"""Loewner and shifted-Loewner pencils, SVD truncation, and descriptor
realizations R(x) = C (xE - A)^{-1} B + D.

The pencil is assembled from a :class:`~ratapprox.dataset.PartitionedData`:
divided differences off the diagonal, derivative data on the diagonal for the
identical-left-right (Hermite) scheme, and one extra column per rectangular
extension pair.  All arithmetic is real.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .dataset import PartitionedData, PartitionScheme
from .errors import ConversionError, DataError, DegenerateModelError, PoleProximityError
from .kernels import SolveError

__all__ = [
    "LoewnerPencil",
    "SvdTruncation",
    "PencilFactorization",
    "RationalApproximant",
    "build_pencil",
    "factorize",
    "svd_truncate",
    "count_significant_svals",
    "realize",
    "to_standard",
    "evaluate",
    "evaluate_grid",
    "model_to_json",
    "model_from_json",
]

# Deterministic probe shifts for the pencil-regularity check.  A regular
# pencil is singular at finitely many shifts, so two independent complex
# probes failing together means the pencil itself is singular.
_PROBE_SHIFTS = (0.6180339887498949 + 1.3247179572447460j, -1.4655712318767680 + 0.7548776662466927j)


@dataclass(frozen=True)
class LoewnerPencil:
    """Matrices (L, Ls) with data vectors V, W and point vectors mu, lam.

    Shapes: L and Ls are  k_left x k_right_total  where the right block
    includes any rectangular extension columns; V has length k_left, W length
    k_right_total.
    """

    L: np.ndarray
    Ls: np.ndarray
    V: np.ndarray
    W: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    n_extra: int = 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.L.shape

    @property
    def Lambda(self) -> np.ndarray:
        return np.diag(self.lam)

    @property
    def M(self) -> np.ndarray:
        return np.diag(self.mu)

    @property
    def ones_R(self) -> np.ndarray:
        return np.ones(self.lam.size)

    @property
    def ones_L(self) -> np.ndarray:
        return np.ones(self.mu.size)

    def sylvester_residuals(self) -> tuple[float, float]:
        """Relative Frobenius residuals of the two Sylvester identities."""
        M, Lam = np.diag(self.mu), np.diag(self.lam)
        R = self.ones_R[None, :]
        Lcol = self.ones_L[:, None]
        V = self.V[:, None]
        W = self.W[None, :]
        rhs1 = V @ R - Lcol @ W
        res1 = np.linalg.norm(M @ self.L - self.L @ Lam - rhs1) / max(np.linalg.norm(rhs1), 1e-300)
        rhs2 = (self.mu[:, None] * V) @ R - Lcol @ (W * self.lam[None, :])
        res2 = np.linalg.norm(M @ self.Ls - self.Ls @ Lam - rhs2) / max(np.linalg.norm(rhs2), 1e-300)
        return float(res1), float(res2)


def _divided_differences(mu, v, lam, w):
    denom = np.subtract.outer(mu, lam)
    if np.any(denom == 0.0):
        raise DataError("left and right abscissas coincide; divided differences are undefined")
    L = np.subtract.outer(v, w) / denom
    Ls = np.subtract.outer(mu * v, lam * w) / denom
    return L, Ls


def build_pencil(pd: PartitionedData) -> LoewnerPencil:
    """Assemble the Loewner pencil for a partitioned data set.

    For ``split``/``alternating`` the entries are the classical divided
    differences; for ``same`` the diagonal carries (d1, d2) = (f'(lam_i),
    d[s f(s)]/ds at lam_i).  Rectangular extension pairs contribute one extra
    column each to both matrices.
    """
    if pd.scheme is PartitionScheme.SAME:
        lam, w = pd.lam, pd.w
        denom = np.subtract.outer(lam, lam)
        np.fill_diagonal(denom, 1.0)
        L = np.subtract.outer(w, w) / denom
        Ls = np.subtract.outer(lam * w, lam * w) / denom
        np.fill_diagonal(L, pd.hermite_d1)
        np.fill_diagonal(Ls, pd.hermite_d2)
        mu, v = lam, w
    else:
        mu, v, lam, w = pd.mu, pd.v, pd.lam, pd.w
        if mu.size != lam.size:
            raise DataError(f"left/right blocks must be square before extension, got {mu.size} vs {lam.size}")
        L, Ls = _divided_differences(mu, v, lam, w)

    lam_total, w_total = lam, w
    for xe, fe in zip(pd.extra_points, pd.extra_values):
        denom = mu - xe
        if np.any(denom == 0.0):
            raise DataError(f"extension abscissa {xe!r} coincides with a left point")
        z1 = (v - fe) / denom
        z2 = (mu * v - xe * fe) / denom
        L = np.column_stack([L, z1])
        Ls = np.column_stack([Ls, z2])
        lam_total = np.concatenate([lam_total, [xe]])
        w_total = np.concatenate([w_total, [fe]])

    return LoewnerPencil(L=L, Ls=Ls, V=v.copy(), W=w_total, lam=lam_total, mu=mu.copy(), n_extra=len(pd.extra_points))


@dataclass(frozen=True)
class SvdTruncation:
    """Rank-r truncation of the Loewner matrix: leading SVD triplets."""

    singular_values: np.ndarray  # full spectrum, descending
    r: int
    Xr: np.ndarray  # left factor block, k_left x r
    Yr: np.ndarray  # right factor block, k_right_total x r


@dataclass(frozen=True)
class PencilFactorization:
    """Full SVD of a pencil's Loewner matrix, sliceable into truncations.

    Factorizing once and slicing many times is what makes order sweeps cheap;
    the expensive part is the SVD, not the projection.
    """

    pencil: LoewnerPencil
    U: np.ndarray
    S: np.ndarray
    Vt: np.ndarray

    def truncation(self, rank: int | None = None, tol: float | None = None) -> SvdTruncation:
        if (rank is None) == (tol is None):
            raise ValueError("specify exactly one of rank= or tol=")
        if rank is not None:
            if not 1 <= rank <= self.S.size:
                raise ValueError(f"rank must be in [1, {self.S.size}], got {rank}")
            r = rank
        else:
            r = int(np.sum(self.S / self.S[0] > tol)) if self.S[0] > 0 else 0
            if r == 0:
                raise ValueError(f"no singular values above relative tolerance {tol}")
        return SvdTruncation(singular_values=self.S, r=r, Xr=self.U[:, :r].copy(), Yr=self.Vt[:r].T.copy())


def factorize(p: LoewnerPencil) -> PencilFactorization:
    """Rank-revealing SVD of the Loewner matrix L."""
    U, S, Vt = kernels.svd(p.L)
    return PencilFactorization(pencil=p, U=U, S=S, Vt=Vt)


def svd_truncate(p: LoewnerPencil, rank: int | None = None, tol: float | None = None) -> SvdTruncation:
    """Rank-revealing SVD of L, keeping either a fixed rank or all singular
    values above ``tol`` relative to the largest one."""
    return factorize(p).truncation(rank=rank, tol=tol)


def count_significant_svals(p: LoewnerPencil, delta: float) -> int:
    """Number of singular values of L with sigma_k / sigma_1 > delta."""
    S = kernels.svdvals(p.L)
    if S.size == 0 or S[0] == 0:
        return 0
    return int(np.sum(S / S[0] > delta))


@dataclass(frozen=True)
class RationalApproximant:
    """Descriptor realization of a real rational function.

    ``E`` may be singular (the pencil then carries the non-strictly-proper
    part); regularity of (A, E) is what makes the function well defined.
    """

    E: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float = 0.0
    num_degree: int = field(default=-1)
    den_degree: int = field(default=-1)

    def __post_init__(self):
        E = np.atleast_2d(np.asarray(self.E, dtype=float))
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        B = np.atleast_1d(np.asarray(self.B, dtype=float))
        C = np.atleast_1d(np.asarray(self.C, dtype=float))
        r = E.shape[0]
        if E.shape != (r, r) or A.shape != (r, r) or B.shape != (r,) or C.shape != (r,):
            raise ValueError(f"inconsistent realization shapes: E{E.shape} A{A.shape} B{B.shape} C{C.shape}")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        if self.num_degree < 0:
            object.__setattr__(self, "num_degree", r - 1)
        if self.den_degree < 0:
            object.__setattr__(self, "den_degree", r)

    @property
    def order(self) -> int:
        return self.E.shape[0]

    def check_regular(self):
        """Probe (A, E) regularity at fixed complex shifts; raise if singular.

        Deep truncations are legitimately ill conditioned, so only a solve
        failing outright (singular to working precision) counts; a regular
        pencil cannot be singular at both probe shifts.
        """
        rhs = np.ones(self.order) / np.sqrt(self.order)
        for s in _PROBE_SHIFTS:
            T = s * self.E - self.A
            try:
                y = np.linalg.solve(T, rhs)
            except np.linalg.LinAlgError:
                continue
            if np.all(np.isfinite(y)):
                return
        raise DegenerateModelError("pencil (A, E) is singular at all probe shifts")


def realize(p: LoewnerPencil, t: SvdTruncation) -> RationalApproximant:
    """Project the pencil onto the leading SVD blocks.

    E = -Xr' L Yr,  A = -Xr' Ls Yr,  B = Xr' V,  C = W Yr; the realized
    rational function approximately interpolates the measurement data.
    """
    if t.r < 1:
        raise ValueError("cannot realize an empty (order-0) model")
    if t.Xr.shape[0] != p.shape[0] or t.Yr.shape[0] != p.shape[1]:
        raise ValueError("truncation was not computed from this pencil")
    E = -t.Xr.T @ p.L @ t.Yr
    A = -t.Xr.T @ p.Ls @ t.Yr
    B = t.Xr.T @ p.V
    C = p.W @ t.Yr
    model = RationalApproximant(E=E, A=A, B=B, C=C, D=0.0, num_degree=t.r - 1, den_degree=t.r)
    model.check_regular()
    return model


def to_standard(m: RationalApproximant) -> RationalApproximant:
    """Absorb an invertible E into (A, B): equivalent model with E = I.

    The transfer function is unchanged.  E with sigma_min/sigma_max below
    1e-14 is rejected as numerically singular.
    """
    s = np.linalg.svd(m.E, compute_uv=False)
    if s[-1] == 0 or s[-1] / s[0] < 1e-14:
        cond = np.inf if s[-1] == 0 else s[0] / s[-1]
        raise ConversionError(f"E is numerically singular (condition estimate {cond:.3e})")
    A = np.linalg.solve(m.E, m.A)
    B = np.linalg.solve(m.E, m.B)
    return RationalApproximant(
        E=np.eye(m.order), A=A, B=B, C=m.C.copy(), D=m.D,
        num_degree=m.num_degree, den_degree=m.den_degree,
    )


def evaluate(m: RationalApproximant, x: float) -> float:
    """Evaluate R(x) = C (xE - A)^{-1} B + D via a dense solve.

    Raises :class:`PoleProximityError` when xE - A is singular or the solve
    residual exceeds 1e-6 ||B||.
    """
    T = x * m.E - m.A
    try:
        y = kernels.solve(T, m.B)
    except SolveError as exc:
        raise PoleProximityError(x) from exc
    if np.linalg.norm(T @ y - m.B) > 1e-6 * np.linalg.norm(m.B):
        raise PoleProximityError(x)
    return float(m.C @ y + m.D)


def evaluate_grid(m: RationalApproximant, xs, chunk: int | None = None) -> np.ndarray:
    """Vectorized evaluation over many points.

    Points at (or numerically too close to) a pole come back as NaN and a
    warning is emitted; callers that need hard failures use :func:`evaluate`.
    """
    xs = np.asarray(xs, dtype=float)
    r = m.order
    if chunk is None:
        chunk = int(np.clip(25_000_000 // max(r * r, 1), 64, 200_000))
    out = np.empty(xs.shape, dtype=float)
    bnorm = np.linalg.norm(m.B)
    n_poles = 0
    for i in range(0, xs.size, chunk):
        x = xs[i : i + chunk]
        T = x[:, None, None] * m.E - m.A
        rhs = np.broadcast_to(m.B, (x.size, r))[..., None]
        try:
            y = np.linalg.solve(T, rhs)[..., 0]
        except np.linalg.LinAlgError:
            # a singular matrix inside the batch: fall back point by point
            y = np.full((x.size, r), np.nan)
            for j, xj in enumerate(x):
                try:
                    y[j] = kernels.solve(xj * m.E - m.A, m.B)
                except SolveError:
                    pass
        resid = np.linalg.norm(np.einsum("nij,nj->ni", T, y) - m.B, axis=1)
        bad = ~np.isfinite(resid) | (resid > 1e-6 * bnorm)
        vals = y @ m.C + m.D
        vals[bad] = np.nan
        n_poles += int(bad.sum())
        out[i : i + chunk] = vals
    if n_poles:
        warnings.warn(f"{n_poles} evaluation point(s) skipped near poles", RuntimeWarning, stacklevel=2)
    return out


def model_to_json(m: RationalApproximant) -> str:
    """Serialize to a JSON document {E, A, B, C, D, order} (row-major arrays)."""
    doc = {
        "E": m.E.tolist(),
        "A": m.A.tolist(),
        "B": m.B.tolist(),
        "C": m.C.tolist(),
        "D": m.D,
        "order": m.order,
    }
    return json.dumps(doc)


def model_from_json(text: str | bytes) -> RationalApproximant:
    doc = json.loads(text)
    return RationalApproximant(
        E=np.asarray(doc["E"], dtype=float),
        A=np.asarray(doc["A"], dtype=float),
        B=np.asarray(doc["B"], dtype=float),
        C=np.asarray(doc["C"], dtype=float),
        D=float(doc.get("D", 0.0)),
    )


def save_model(m: RationalApproximant, path: str | Path):
    Path(path).write_text(model_to_json(m) + "\n")


def load_model(path: str | Path) -> RationalApproximant:
    return model_from_json(Path(path).read_text())
