"""Command-line experiment runner.

Commands: gen-points, fit, sweep, reproduce-table, iterate, bounds.  Every
command accepts --config pointing at a JSON document whose fields carry the
same names as the long-form flags; explicit flags override the file.  All
outputs are deterministic CSV/JSON (comma separators, '.' decimals, 17
significant digits, LF line endings).
"""
from __future__ import annotations

import csv
import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import loewner
from .aaa import form_to_json
from .bounds import BoundKind, bound_value
from .dataset import PartitionScheme
from .errors import RatApproxError
from .experiments import (
    abs_dataset,
    error_curve,
    fit_aaa,
    fit_loewner,
    fit_newman,
    reproduce_table,
    sweep_orders,
)
from .iterative import loewner_iterate
from .sampling import IntervalConfig, PointFamily, generate_points, symmetric_extend

__all__ = ["main"]

_FMT = ".17g"


def _fnum(v) -> str:
    return format(float(v), _FMT)


def _write_csv(path: Path | None, header: list[str], rows: list[list]):
    """Write CSV rows (floats rendered via .17g) to a file or stdout."""
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fnum(v) if isinstance(v, float) else v for v in row])
    finally:
        if path:
            out.close()


def _merge_config(config_path: str | None, **flags) -> dict:
    """Start from the JSON config document, then overlay explicitly-set flags."""
    merged: dict = {}
    if config_path:
        merged.update(json.loads(Path(config_path).read_text()))
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    return merged


def _interval(cfg: dict) -> IntervalConfig:
    return IntervalConfig(a=float(cfg.get("a", 2.0**-10)), b=float(cfg.get("b", 1.0)), n=int(cfg.get("n", 1024)))


def _wrap_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except RatApproxError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


_config_option = click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                              help="JSON config document; flags override its fields.")
_points_option = click.option("--points", type=click.Choice([f.value for f in PointFamily]), default=None,
                              help="Sampling point family.")


@click.group()
def main():
    """Rational approximation of |x| from measurements."""


@main.command("gen-points")
@_config_option
@_points_option
@click.option("--a", type=float, default=None)
@click.option("--b", type=float, default=None)
@click.option("--n", type=int, default=None)
@click.option("--symmetric/--positive-only", "symmetric", default=None,
              help="Also emit the mirrored negative points (default: positive only).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output CSV (default stdout).")
@_wrap_errors
def cmd_gen_points(config, points, a, b, n, symmetric, out):
    """Emit one CSV column of sampling points."""
    cfg = _merge_config(config, points=points, a=a, b=b, n=n, symmetric=symmetric, out=out)
    family = PointFamily(cfg.get("points", "linspace"))
    pts = generate_points(family, _interval(cfg))
    if cfg.get("symmetric", False):
        pts = symmetric_extend(pts)
    _write_csv(Path(cfg["out"]) if cfg.get("out") else None, ["x"], [[float(p)] for p in pts])


def _run_fit(cfg: dict):
    method = cfg.get("method", "loewner")
    order = cfg.get("order")
    delta = cfg.get("delta")
    add_zero = bool(cfg.get("add_zero", True))
    interval = _interval(cfg)
    if method == "newman":
        return fit_newman(int(cfg.get("n", 25)))
    family = PointFamily(cfg.get("points", "chebyshev"))
    ds = abs_dataset(family, interval)
    if method == "aaa":
        if order is None and delta is None:
            raise click.ClickException("aaa fit needs --order or --delta")
        return fit_aaa(ds, add_zero=add_zero, order=int(order) if order is not None else None,
                       tol=float(delta) if order is None else None)
    if method == "loewner":
        scheme = PartitionScheme(cfg.get("partition", "same"))
        if (order is None) == (delta is None):
            raise click.ClickException("loewner fit needs exactly one of --order / --delta")
        return fit_loewner(ds, scheme, add_zero=add_zero,
                           order=int(order) if order is not None else None,
                           delta=float(delta) if delta is not None else None)
    raise click.ClickException(f"unknown method {method!r}")


@main.command("fit")
@_config_option
@_points_option
@click.option("--partition", type=click.Choice([s.value for s in PartitionScheme]), default=None)
@click.option("--method", type=click.Choice(["loewner", "aaa", "newman"]), default=None)
@click.option("--order", type=int, default=None)
@click.option("--delta", type=float, default=None)
@click.option("--a", type=float, default=None)
@click.option("--b", type=float, default=None)
@click.option("--n", type=int, default=None)
@click.option("--add-zero/--no-add-zero", "add_zero", default=None)
@click.option("--out", type=click.Path(file_okay=False), required=True)
@_wrap_errors
def cmd_fit(config, points, partition, method, order, delta, a, b, n, add_zero, out):
    """Fit one approximant; write model.json, report.json and error_curve.csv."""
    cfg = _merge_config(config, points=points, partition=partition, method=method, order=order,
                        delta=delta, a=a, b=b, n=n, add_zero=add_zero, out=out)
    outcome = _run_fit(cfg)
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "model.json").write_text(loewner.model_to_json(outcome.model) + "\n")
    (outdir / "report.json").write_text(outcome.report.to_json() + "\n")
    if outcome.form is not None:
        (outdir / "barycentric.json").write_text(form_to_json(outcome.form) + "\n")
    xs, errs = error_curve(outcome.model)
    _write_csv(outdir / "error_curve.csv", ["x", "abs_error"], list(map(list, zip(xs.tolist(), errs.tolist()))))
    click.echo(f"eps_total = {_fnum(outcome.report.eps_total)} ({outcome.method})")


def _parse_orders(spec) -> list[int]:
    if isinstance(spec, int):
        return [spec]
    text = str(spec)
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


@main.command("sweep")
@_config_option
@_points_option
@click.option("--order", "order", type=str, default=None, help="Single order or inclusive range 'lo..hi'.")
@click.option("--a", type=float, default=None)
@click.option("--b", type=float, default=None)
@click.option("--n", type=int, default=None)
@click.option("--add-zero/--no-add-zero", "add_zero", default=None)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_wrap_errors
def cmd_sweep(config, points, order, a, b, n, add_zero, out):
    """Max error per order per method, with classical bound columns."""
    cfg = _merge_config(config, points=points, order=order, a=a, b=b, n=n, add_zero=add_zero, out=out)
    family = PointFamily(cfg.get("points", "chebyshev"))
    orders = _parse_orders(cfg.get("order", "6..40"))
    rows = sweep_orders(family, _interval(cfg), orders, add_zero=bool(cfg.get("add_zero", True)))
    header = ["order", "method", "eps_total", "newman_upper", "bulanov_lower", "stahl_estimate"]
    _write_csv(Path(cfg["out"]), header, [[r["order"], r["method"], float(r["eps_total"]),
                                           float(r["newman_upper"]), float(r["bulanov_lower"]),
                                           float(r["stahl_estimate"])] for r in rows])
    click.echo(f"wrote {len(rows)} rows to {cfg['out']}")


@main.command("reproduce-table")
@click.option("--id", "table_id", type=click.Choice(["2", "3", "4", "5"]), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the rows as CSV.")
@_wrap_errors
def cmd_reproduce_table(table_id, out):
    """Re-run a reference-table configuration and compare against the published values."""
    table_id = int(table_id)
    rows = reproduce_table(table_id)
    label = "delta" if table_id in (4, 5) else "family"
    click.echo(f"table {table_id}  ({'significant-singular-value counts' if table_id in (2, 4) else 'max errors'})")
    for r in rows:
        click.echo(
            f"  {r[label]!s:>9}  {r['method']:<12} computed={_fnum(r['value'])} "
            f"reference={_fnum(r['reference'])} ratio={r['ratio']:.3f}"
        )
    if out:
        header = ["table", label, "method", "value", "reference", "ratio"]
        _write_csv(Path(out), header, [[r["table"], r[label], r["method"], float(r["value"]),
                                        float(r["reference"]), float(r["ratio"])] for r in rows])


@main.command("iterate")
@_config_option
@_points_option
@click.option("--partition", type=click.Choice([s.value for s in PartitionScheme]), default=None)
@click.option("--order", type=int, default=None)
@click.option("--xi", type=float, default=None)
@click.option("--max-steps", "max_steps", type=int, default=None)
@click.option("--a", type=float, default=None)
@click.option("--b", type=float, default=None)
@click.option("--n", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), required=True)
@_wrap_errors
def cmd_iterate(config, points, partition, order, xi, max_steps, a, b, n, out):
    """Run the iterative refinement; write trace.csv and the final model.json."""
    cfg = _merge_config(config, points=points, partition=partition, order=order, xi=xi,
                        max_steps=max_steps, a=a, b=b, n=n, out=out)
    family = PointFamily(cfg.get("points", "chebyshev"))
    ds = abs_dataset(family, _interval(cfg))
    model, trace = loewner_iterate(
        ds,
        r=int(cfg.get("order", 48)),
        xi=float(cfg.get("xi", 1e-7)),
        max_steps=int(cfg.get("max_steps", 22)),
        scheme=PartitionScheme(cfg.get("partition", "same")),
    )
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    trace.write_csv(outdir / "trace.csv")
    (outdir / "model.json").write_text(loewner.model_to_json(model) + "\n")
    final = trace.records[-1]
    click.echo(f"stopped at step {final.step} with eps_total = {_fnum(final.eps_total)}")


@main.command("bounds")
@click.option("--n", "n_spec", type=str, required=True, help="Single order or inclusive range 'lo..hi'.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_wrap_errors
def cmd_bounds(n_spec, out):
    """Tabulate the classical bounds (and the asymptotic estimate) by order."""
    rows = []
    for n in _parse_orders(n_spec):
        row = [n]
        for kind in (BoundKind.NEWMAN_UPPER, BoundKind.NEWMAN_LOWER, BoundKind.BULANOV_LOWER, BoundKind.STAHL_ESTIMATE):
            try:
                row.append(float(bound_value(kind, n)))
            except RatApproxError:
                row.append(float("nan"))
        rows.append(row)
    header = ["n", "newman_upper", "newman_lower", "bulanov_lower", "stahl_estimate"]
    _write_csv(Path(out) if out else None, header, rows)


if __name__ == "__main__":
    main()
