"""Measurement sets and their partition into the left/right roles of the
Loewner construction.

Three schemes are supported: ``split`` (negative abscissas left, nonnegative
right), ``alternating`` (every second pair right, starting with the smallest),
and ``same`` (left and right coincide; divided differences on the diagonal are
replaced by derivative data).  Distinguished extra pairs, most importantly the
origin (0, 0), ride along in a rectangular extension slot instead of a left or
right block.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DataError, DomainError

__all__ = [
    "MeasurementSet",
    "PartitionScheme",
    "PartitionedData",
    "sample_abs",
    "sample_function",
    "partition",
    "add_origin",
    "add_pair",
    "read_measurements_csv",
]


@dataclass(frozen=True)
class MeasurementSet:
    """Ordered sample points tau with function values f."""

    tau: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        tau = np.atleast_1d(np.asarray(self.tau, dtype=float))
        f = np.atleast_1d(np.asarray(self.f, dtype=float))
        if tau.shape != f.shape or tau.ndim != 1:
            raise DataError(f"points and values must be equal-length 1-D arrays, got {tau.shape} vs {f.shape}")
        if np.unique(tau).size != tau.size:
            raise DataError("sample points must be distinct")
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "f", f)

    def __len__(self) -> int:
        return self.tau.size

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.tau.tolist(), self.f.tolist()))

    def sorted(self) -> "MeasurementSet":
        order = np.argsort(self.tau)
        return MeasurementSet(self.tau[order], self.f[order])


class PartitionScheme(str, Enum):
    SPLIT = "split"
    ALTERNATING = "alternating"
    SAME = "same"


@dataclass(frozen=True)
class PartitionedData:
    """Left/right data blocks plus optional Hermite and rectangular extras.

    ``hermite_d1[i]`` is f'(lam[i]) and ``hermite_d2[i]`` is d[s f(s)]/ds at
    lam[i]; both are present exactly for the ``same`` scheme.  ``extra_*``
    holds pairs appended column-wise to the right side of the pencil.
    """

    scheme: PartitionScheme
    lam: np.ndarray  # right points
    w: np.ndarray  # right values
    mu: np.ndarray  # left points
    v: np.ndarray  # left values
    hermite_d1: np.ndarray | None = None
    hermite_d2: np.ndarray | None = None
    extra_points: np.ndarray = field(default_factory=lambda: np.empty(0))
    extra_values: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        for name in ("lam", "w", "mu", "v", "extra_points", "extra_values"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.scheme is PartitionScheme.SAME:
            if self.hermite_d1 is None or self.hermite_d2 is None:
                raise DataError("the 'same' scheme requires Hermite derivative data")
            object.__setattr__(self, "hermite_d1", np.asarray(self.hermite_d1, dtype=float))
            object.__setattr__(self, "hermite_d2", np.asarray(self.hermite_d2, dtype=float))
            if self.hermite_d1.shape != self.lam.shape or self.hermite_d2.shape != self.lam.shape:
                raise DataError("Hermite derivative vectors must match the node count")

    @property
    def all_points(self) -> np.ndarray:
        """Distinct abscissas present anywhere in the partition."""
        return np.unique(np.concatenate([self.lam, self.mu, self.extra_points]))

    def measurement_multiset(self) -> list[tuple[float, float]]:
        """Every (point, value) pair held by the partition, with multiplicity.

        For the 'same' scheme each original pair appears in both blocks.
        """
        out = list(zip(self.lam.tolist(), self.w.tolist()))
        out += list(zip(self.mu.tolist(), self.v.tolist()))
        out += list(zip(self.extra_points.tolist(), self.extra_values.tolist()))
        return out


def sample_abs(points) -> MeasurementSet:
    """Sample |x| at the given distinct points, preserving input order."""
    pts = np.asarray(points, dtype=float)
    return MeasurementSet(pts, np.abs(pts))


def sample_function(points, fn: Callable[[np.ndarray], np.ndarray]) -> MeasurementSet:
    """Sample an arbitrary target function at the given distinct points."""
    pts = np.asarray(points, dtype=float)
    return MeasurementSet(pts, np.asarray(fn(pts), dtype=float))


def _abs_derivatives(lam: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d1 = np.sign(lam)
    return d1, w + lam * d1  # d[s f]/ds = f + s f'


def _hermite_data(
    lam: np.ndarray,
    w: np.ndarray,
    target: Callable[[np.ndarray], np.ndarray] | None,
    derivative: Callable[[np.ndarray], np.ndarray] | None,
) -> tuple[np.ndarray, np.ndarray]:
    if np.any(lam == 0.0):
        raise DomainError("the 'same' scheme cannot place a node at 0 (derivative of |x| undefined there)")
    if derivative is not None:
        d1 = np.asarray(derivative(lam), dtype=float)
        return d1, w + lam * d1
    if np.array_equal(w, np.abs(lam)):
        return _abs_derivatives(lam, w)
    if target is not None:
        # central difference, step scaled per node
        h = 1e-6 * np.maximum(1.0, np.abs(lam))
        d1 = (np.asarray(target(lam + h), dtype=float) - np.asarray(target(lam - h), dtype=float)) / (2 * h)
        return d1, w + lam * d1
    raise DataError(
        "the 'same' scheme needs derivative data: values are not samples of |x| "
        "and neither a derivative nor a target callable was given"
    )


def partition(
    ds: MeasurementSet,
    scheme: PartitionScheme,
    target: Callable[[np.ndarray], np.ndarray] | None = None,
    derivative: Callable[[np.ndarray], np.ndarray] | None = None,
) -> PartitionedData:
    """Assign measurement pairs to the left/right roles of the Loewner setup.

    The data is sorted ascending before partitioning.  For ``split`` and
    ``alternating`` the pair count must be even and the resulting abscissa
    sets are disjoint; for ``same`` both blocks equal the full set and the
    Hermite slots are filled (analytically for |x| data, via ``derivative``
    or a central difference of ``target`` otherwise).
    """
    scheme = PartitionScheme(scheme)
    ds = ds.sorted()
    tau, f = ds.tau, ds.f

    if scheme is PartitionScheme.SAME:
        d1, d2 = _hermite_data(tau, f, target, derivative)
        return PartitionedData(scheme, lam=tau, w=f, mu=tau, v=f, hermite_d1=d1, hermite_d2=d2)

    if len(ds) % 2 != 0:
        raise DataError(f"{scheme.value} partitioning needs an even pair count, got {len(ds)}")

    if scheme is PartitionScheme.SPLIT:
        neg = tau < 0
        return PartitionedData(scheme, lam=tau[~neg], w=f[~neg], mu=tau[neg], v=f[neg])

    # alternating: smallest point goes right, then every second
    return PartitionedData(scheme, lam=tau[0::2], w=f[0::2], mu=tau[1::2], v=f[1::2])


def add_origin(pd: PartitionedData) -> PartitionedData:
    """Append the pair (0, 0) to the rectangular extension slot."""
    if np.any(pd.all_points == 0.0):
        raise DataError("the origin is already present in the data")
    return replace(
        pd,
        extra_points=np.concatenate([pd.extra_points, [0.0]]),
        extra_values=np.concatenate([pd.extra_values, [0.0]]),
    )


def add_pair(pd: PartitionedData, x: float, fx: float, d1: float | None = None) -> PartitionedData:
    """Insert one more measurement pair into an existing partition.

    Under ``split``/``alternating`` the pair joins the rectangular extension
    (keeping left/right abscissas disjoint).  Under ``same`` it becomes a new
    Hermite node on both sides, except x = 0, which always goes to the
    extension slot.  A duplicate abscissa raises :class:`DataError`.
    """
    if np.any(pd.all_points == x):
        raise DataError(f"abscissa {x!r} is already present in the data")
    if pd.scheme is PartitionScheme.SAME and x != 0.0:
        if d1 is None:
            if fx == abs(x):
                d1 = float(np.sign(x))
            else:
                raise DataError("adding a non-|x| Hermite node requires its derivative d1")
        d2 = fx + x * d1
        order = np.argsort(np.concatenate([pd.lam, [x]]))
        lam = np.concatenate([pd.lam, [x]])[order]
        w = np.concatenate([pd.w, [fx]])[order]
        hd1 = np.concatenate([pd.hermite_d1, [d1]])[order]
        hd2 = np.concatenate([pd.hermite_d2, [d2]])[order]
        return replace(pd, lam=lam, w=w, mu=lam, v=w, hermite_d1=hd1, hermite_d2=hd2)
    return replace(
        pd,
        extra_points=np.concatenate([pd.extra_points, [x]]),
        extra_values=np.concatenate([pd.extra_values, [fx]]),
    )


def read_measurements_csv(path: str | Path) -> MeasurementSet:
    """Read (tau, f) pairs from a two-column CSV; a header row is optional.

    Row order is preserved; decimal-point number format is expected.
    """
    rows: list[tuple[float, float]] = []
    with open(path, newline="") as fh:
        for lineno, rec in enumerate(csv.reader(fh)):
            if not rec or (len(rec) == 1 and not rec[0].strip()):
                continue
            if len(rec) < 2:
                raise DataError(f"{path}: line {lineno + 1}: expected two columns, got {len(rec)}")
            try:
                rows.append((float(rec[0]), float(rec[1])))
            except ValueError:
                if lineno == 0:  # header row
                    continue
                raise DataError(f"{path}: line {lineno + 1}: non-numeric data") from None
    if not rows:
        raise DataError(f"{path}: no measurement rows found")
    arr = np.asarray(rows, dtype=float)
    return MeasurementSet(arr[:, 0], arr[:, 1])
