"""Iterative Loewner refinement: grow the data set greedily at the worst-error
abscissas while keeping the realized order fixed, until the maximum
approximation error drops below a target.

Step 0 fits the initial data and locates the global interior argmax rho;
step 1 adds (0, 0) and (rho, |rho|); step 2 adds (-1, 1) and (1, 1); every
further step adds the per-half-interval argmax points of the previous step's
error report.
"""
from __future__ import annotations

import csv
import warnings as _warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dataset import MeasurementSet, PartitionScheme, add_origin, add_pair, partition
from .errors import ConfigError, DataError
from .loewner import RationalApproximant, build_pencil, realize, svd_truncate
from .maxerror import ErrorReport, max_error

__all__ = ["IterationRecord", "IterationTrace", "loewner_iterate"]

_STAGNATION_WINDOW = 5
_DUPLICATE_NUDGE = 1e-12

_CSV_COLUMNS = ("step", "eps_total", "eps_at_0", "eps_minus", "eps_plus", "added_x1", "added_x2")


@dataclass(frozen=True)
class IterationRecord:
    step: int
    eps_total: float
    eps_at_0: float
    eps_minus: float
    eps_plus: float
    added: tuple[float, ...] = ()


@dataclass
class IterationTrace:
    records: list[IterationRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def write_csv(self, path: str | Path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(_CSV_COLUMNS)
            for rec in self.records:
                added = list(rec.added) + [None] * (2 - len(rec.added))
                writer.writerow(
                    [rec.step]
                    + [format(v, ".17g") for v in (rec.eps_total, rec.eps_at_0, rec.eps_minus, rec.eps_plus)]
                    + ["" if a is None else format(a, ".17g") for a in added]
                )


def _nudged(pd, x: float, trace: IterationTrace) -> float:
    """Shift a duplicate abscissa off the existing ones, warning on each nudge."""
    shift = _DUPLICATE_NUDGE
    while np.any(pd.all_points == x):
        msg = f"abscissa {x!r} already present; perturbing by {shift:g}"
        trace.warnings.append(msg)
        _warnings.warn(msg, RuntimeWarning, stacklevel=3)
        x += shift
        shift *= 2
    return x


def _add(pd, x: float, trace: IterationTrace):
    x = _nudged(pd, x, trace)
    return add_pair(pd, x, abs(x)), x


def loewner_iterate(
    ds: MeasurementSet,
    r: int,
    xi: float,
    max_steps: int = 22,
    scheme: PartitionScheme = PartitionScheme.SAME,
) -> tuple[RationalApproximant, IterationTrace]:
    """Run the iterative refinement on |x| samples.

    Parameters
    ----------
    ds : MeasurementSet
        Samples of |x| whose abscissas exclude 0 and +-1 (those pairs are
        inserted by the procedure itself).
    r : int
        Fixed truncation order of the realized model at every step; must lie
        below the numerical rank of the data's Loewner matrix.
    xi : float
        Target maximum error; the loop stops once eps_total <= xi.
    max_steps : int
        Upper bound on refinement steps (the trace then holds max_steps + 1
        records including step 0).
    scheme : PartitionScheme
        Data partitioning used throughout.

    Returns
    -------
    (RationalApproximant, IterationTrace)
        The final fixed-order model and the per-step error trace.
    """
    if xi <= 0:
        raise ConfigError(f"target tolerance must be positive, got {xi}")
    if max_steps < 2:
        raise ConfigError(f"need at least the two bootstrap steps, got max_steps={max_steps}")
    for forbidden in (0.0, -1.0, 1.0):
        if np.any(ds.tau == forbidden):
            raise DataError(f"initial data must not contain {forbidden}; the iteration inserts it itself")
    if not np.array_equal(ds.f, np.abs(ds.tau)):
        raise DataError("iterative refinement expects samples of |x|")

    trace = IterationTrace()
    stagnant = 0

    def refit(pd) -> tuple[RationalApproximant, ErrorReport]:
        pencil = build_pencil(pd)
        model = realize(pencil, svd_truncate(pencil, rank=r))
        return model, max_error(model)

    def record(step: int, report: ErrorReport, added: tuple[float, ...]):
        nonlocal stagnant
        trace.records.append(
            IterationRecord(
                step=step,
                eps_total=report.eps_total,
                eps_at_0=report.eps_at[0.0],
                eps_minus=report.eps_minus,
                eps_plus=report.eps_plus,
                added=added,
            )
        )
        if len(trace.records) >= 2 and report.eps_total >= trace.records[-2].eps_total:
            stagnant += 1
            if stagnant == _STAGNATION_WINDOW:
                msg = f"error non-decreasing for {_STAGNATION_WINDOW} consecutive steps at step {step}"
                trace.warnings.append(msg)
                _warnings.warn(msg, RuntimeWarning, stacklevel=3)
        else:
            stagnant = 0

    pd = partition(ds, scheme)
    model, report = refit(pd)
    record(0, report, ())
    rho = report.argmax_minus if report.eps_minus >= report.eps_plus else report.argmax_plus

    pd = add_origin(pd)
    pd, rho = _add(pd, rho, trace)
    model, report = refit(pd)
    record(1, report, (0.0, rho))

    pd, x1 = _add(pd, -1.0, trace)
    pd, x2 = _add(pd, 1.0, trace)
    model, report = refit(pd)
    record(2, report, (x1, x2))

    step = 2
    while report.eps_total > xi and step < max_steps:
        rho_minus, rho_plus = report.argmax_minus, report.argmax_plus
        pd, a1 = _add(pd, rho_minus, trace)
        pd, a2 = _add(pd, rho_plus, trace)
        step += 1
        model, report = refit(pd)
        record(step, report, (a1, a2))

    return model, trace
