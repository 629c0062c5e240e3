"""Shared helpers: deterministic random rational models and datasets."""
from __future__ import annotations

import numpy as np
import pytest

from ratapprox.loewner import RationalApproximant


def pole_residue_model(
    real_poles=(),
    real_residues=(),
    complex_poles=(),
    complex_residues=(),
    d: float = 0.0,
) -> RationalApproximant:
    """Real descriptor model (E = I) for sum_i c_i/(x - p_i) + d.

    Complex poles/residues are given once per conjugate pair; each pair
    contributes a real 2x2 rotation block.
    """
    blocks, bs, cs = [], [], []
    for p, c in zip(real_poles, real_residues):
        blocks.append(np.array([[p]]))
        bs.append([1.0])
        cs.append([c])
    for p, c in zip(complex_poles, complex_residues):
        a, b = p.real, p.imag
        u, v = c.real, c.imag
        blocks.append(np.array([[a, b], [-b, a]]))
        bs.append([1.0, 0.0])
        cs.append([2 * u, 2 * v])
    r = sum(blk.shape[0] for blk in blocks)
    A = np.zeros((r, r))
    i = 0
    for blk in blocks:
        n = blk.shape[0]
        A[i : i + n, i : i + n] = blk
        i += n
    return RationalApproximant(
        E=np.eye(r), A=A, B=np.concatenate(bs), C=np.concatenate(cs), D=d
    )


def pole_residue_eval(xs, real_poles=(), real_residues=(), complex_poles=(), complex_residues=(), d=0.0):
    """Closed-form evaluation matching :func:`pole_residue_model`."""
    xs = np.asarray(xs, dtype=float)
    out = np.full(xs.shape, d, dtype=float)
    for p, c in zip(real_poles, real_residues):
        out += c / (xs - p)
    for p, c in zip(complex_poles, complex_residues):
        out += 2 * np.real(c / (xs - p))
    return out


def random_safe_model(rng: np.random.Generator, max_order: int = 12, d_range: float = 0.5):
    """Random rational model with all poles kept away from [-1, 1].

    Returns (model, params) where params reproduce the closed form via
    :func:`pole_residue_eval`.
    """
    n_real = int(rng.integers(0, 3))
    n_pairs = int(rng.integers(1, max(2, (max_order - n_real) // 2) + 1))
    real_poles = rng.uniform(1.6, 4.0, size=n_real) * rng.choice([-1.0, 1.0], size=n_real)
    real_residues = rng.uniform(-2.0, 2.0, size=n_real)
    cp_real = rng.uniform(-1.2, 1.2, size=n_pairs)
    cp_imag = rng.uniform(0.4, 3.0, size=n_pairs)
    complex_poles = cp_real + 1j * cp_imag
    complex_residues = rng.uniform(-1.0, 1.0, size=n_pairs) + 1j * rng.uniform(-1.0, 1.0, size=n_pairs)
    d = float(rng.uniform(-d_range, d_range))
    params = dict(
        real_poles=real_poles,
        real_residues=real_residues,
        complex_poles=complex_poles,
        complex_residues=complex_residues,
        d=d,
    )
    return pole_residue_model(**params), params


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
