import json

import numpy as np
import pytest

from ratapprox.dataset import (
    MeasurementSet,
    PartitionScheme,
    add_origin,
    partition,
    sample_abs,
    sample_function,
)
from ratapprox.errors import ConversionError, DataError, DegenerateModelError, PoleProximityError
from ratapprox.loewner import (
    LoewnerPencil,
    RationalApproximant,
    build_pencil,
    count_significant_svals,
    evaluate,
    evaluate_grid,
    factorize,
    model_from_json,
    model_to_json,
    realize,
    save_model,
    load_model,
    svd_truncate,
    to_standard,
)

from conftest import pole_residue_model


def symmetric_abs_dataset(k: int, a: float = 0.05) -> MeasurementSet:
    pts = np.linspace(a, 1.0, k)
    return sample_abs(np.concatenate([-pts[::-1], pts]))


def rational_dataset(n_points: int):
    fn = lambda x: 1.0 / (x + 2.0)
    pts = np.linspace(-1.0, 1.0, n_points)
    return sample_function(pts, fn), fn


# ------------------------------------------------------------- construction

def test_hand_computed_one_by_one_pencil():
    ds = MeasurementSet([-1.0, 1.0], [1.0, 1.0])
    pd = partition(ds, PartitionScheme.SPLIT)
    p = build_pencil(pd)
    assert p.L.tolist() == [[0.0]]  # (1 - 1) / (-1 - 1)
    assert p.Ls.tolist() == [[1.0]]  # (-1 - 1) / (-1 - 1)


def test_direct_relations_hold():
    # Ls = L Lambda + V R  and  Ls = M L + L_ones W, entrywise identities
    for scheme in PartitionScheme:
        pd = partition(symmetric_abs_dataset(8), scheme)
        pd = add_origin(pd)
        p = build_pencil(pd)
        scale = np.linalg.norm(p.Ls)
        r1 = np.linalg.norm(p.Ls - (p.L @ p.Lambda + np.outer(p.V, p.ones_R))) / scale
        r2 = np.linalg.norm(p.Ls - (p.M @ p.L + np.outer(p.ones_L, p.W))) / scale
        assert r1 <= 1e-12 and r2 <= 1e-12


def test_sylvester_identities_hold():
    for scheme in PartitionScheme:
        for with_origin in (False, True):
            pd = partition(symmetric_abs_dataset(11), scheme)
            if with_origin:
                pd = add_origin(pd)
            res1, res2 = build_pencil(pd).sylvester_residuals()
            assert res1 <= 1e-12 and res2 <= 1e-12


def test_same_scheme_diagonal_for_abs():
    pd = partition(sample_abs([0.5, 1.0]), PartitionScheme.SAME)
    p = build_pencil(pd)
    assert p.L[0, 0] == 1.0  # d|x|/dx at 0.5
    assert p.Ls[0, 0] == 1.0  # d(x|x|)/dx = 2x at 0.5


def test_coincident_abscissas_rejected():
    pd = partition(sample_abs([-1.0, -0.5, 0.5, 1.0]), PartitionScheme.SPLIT)
    broken = type(pd)(scheme=pd.scheme, lam=pd.lam, w=pd.w, mu=np.array([-1.0, 0.5]), v=pd.v)
    with pytest.raises(DataError):
        build_pencil(broken)


# ---------------------------------------------------------------- truncation

def test_degree_zero_and_one_rational_rank():
    ds = sample_function(np.linspace(0.1, 1.0, 8), lambda x: np.full_like(x, 3.0))
    p = build_pencil(partition(ds, PartitionScheme.ALTERNATING))
    S = factorize(p).S
    assert np.all(S <= 1e-14)  # constant: Loewner matrix vanishes

    ds, _ = rational_dataset(8)
    p = build_pencil(partition(ds, PartitionScheme.ALTERNATING))
    S = factorize(p).S
    assert S[1] / S[0] <= 1e-12  # degree-1 function: rank exactly 1


def test_truncation_modes_and_errors():
    pd = add_origin(partition(symmetric_abs_dataset(8), PartitionScheme.SPLIT))
    p = build_pencil(pd)
    t_fixed = svd_truncate(p, rank=3)
    assert t_fixed.r == 3 and t_fixed.Xr.shape == (8, 3) and t_fixed.Yr.shape == (9, 3)
    t_tol = svd_truncate(p, tol=1e-10)
    S = t_tol.singular_values
    assert t_tol.r == int(np.sum(S / S[0] > 1e-10))
    with pytest.raises(ValueError):
        svd_truncate(p, rank=9)
    with pytest.raises(ValueError):
        svd_truncate(p, rank=0)
    with pytest.raises(ValueError):
        svd_truncate(p)
    with pytest.raises(ValueError):
        svd_truncate(p, rank=2, tol=1e-8)


def test_singular_values_match_gram_oracle():
    pd = partition(symmetric_abs_dataset(16), PartitionScheme.ALTERNATING)
    p = build_pencil(pd)
    S = factorize(p).S
    gram = np.linalg.eigvalsh(p.L.T @ p.L)[::-1]
    S_oracle = np.sqrt(np.maximum(gram, 0.0))
    # the Gram route squares the condition number; compare above its noise floor
    keep = S / S[0] > 1e-7
    assert np.allclose(S[keep], S_oracle[keep], rtol=1e-8)


def test_orthonormal_factors():
    p = build_pencil(add_origin(partition(symmetric_abs_dataset(12), PartitionScheme.SPLIT)))
    t = svd_truncate(p, rank=6)
    assert np.allclose(t.Xr.T @ t.Xr, np.eye(6), atol=1e-12)
    assert np.allclose(t.Yr.T @ t.Yr, np.eye(6), atol=1e-12)


def test_count_significant_svals():
    p = build_pencil(partition(symmetric_abs_dataset(16), PartitionScheme.SPLIT))
    assert count_significant_svals(p, 1.0) == 0
    assert count_significant_svals(p, 1e-300) == min(p.shape)
    S = factorize(p).S
    assert count_significant_svals(p, 1e-8) == int(np.sum(S / S[0] > 1e-8))


# ---------------------------------------------------------------- realization

def test_exact_recovery_low_order_rational():
    ds, fn = rational_dataset(8)
    p = build_pencil(partition(ds, PartitionScheme.ALTERNATING))
    model = realize(p, svd_truncate(p, tol=1e-12))  # numerical full rank = 1
    for x, f in ds.pairs:
        assert evaluate(model, x) == pytest.approx(f, rel=1e-10)


def test_projected_sylvester_residual():
    pd = add_origin(partition(symmetric_abs_dataset(16), PartitionScheme.SPLIT))
    p = build_pencil(pd)
    t = svd_truncate(p, rank=8)
    M, Lam = p.M, p.Lambda
    lhs1 = t.Xr.T @ (M @ p.L - p.L @ Lam) @ t.Yr
    rhs1 = t.Xr.T @ (np.outer(p.V, p.ones_R) - np.outer(p.ones_L, p.W)) @ t.Yr
    scale = max(np.linalg.norm(rhs1), 1.0)
    assert np.linalg.norm(lhs1 - rhs1) / scale <= 1e-10


def test_realize_shape_guard():
    p1 = build_pencil(partition(symmetric_abs_dataset(8), PartitionScheme.SPLIT))
    p2 = build_pencil(partition(symmetric_abs_dataset(9), PartitionScheme.SPLIT))
    with pytest.raises(ValueError):
        realize(p2, svd_truncate(p1, rank=2))


def test_check_regular_flags_zero_pencil():
    with pytest.raises(DegenerateModelError):
        RationalApproximant(
            E=np.zeros((2, 2)), A=np.zeros((2, 2)), B=np.array([1.0, 0.0]), C=np.array([1.0, 0.0])
        ).check_regular()


# ---------------------------------------------------------------- standard form

def test_to_standard_identity_unchanged():
    m = pole_residue_model(real_poles=[2.0, -3.0], real_residues=[1.0, 0.5])
    std = to_standard(m)
    assert np.array_equal(std.E, np.eye(2))
    assert np.allclose(std.A, m.A)
    assert np.allclose(std.B, m.B)


def test_to_standard_preserves_transfer_function():
    ds = sample_function(np.linspace(-1, 1, 12), lambda x: (x**2 + 1) / (x**3 + 4))
    p = build_pencil(partition(ds, PartitionScheme.ALTERNATING))
    model = realize(p, svd_truncate(p, tol=1e-11))
    std = to_standard(model)
    probe = np.linspace(-0.95, 0.95, 100)
    a = evaluate_grid(model, probe)
    b = evaluate_grid(std, probe)
    assert np.allclose(a, b, rtol=1e-9)


def test_to_standard_rejects_singular_E():
    m = RationalApproximant(
        E=np.diag([1.0, 1e-15]), A=-np.eye(2), B=np.array([1.0, 1.0]), C=np.array([1.0, 1.0])
    )
    with pytest.raises(ConversionError):
        to_standard(m)


# ---------------------------------------------------------------- evaluation

def test_evaluate_closed_form():
    m = RationalApproximant(E=np.array([[1.0]]), A=np.array([[-1.0]]), B=np.array([1.0]), C=np.array([1.0]))
    assert evaluate(m, 0.0) == pytest.approx(1.0, rel=1e-14)  # R(x) = 1/(x+1)
    assert evaluate(m, 1.0) == pytest.approx(0.5, rel=1e-14)


def test_full_order_interpolation_at_right_points():
    pts = np.linspace(0.1, 1.0, 10)
    ds = sample_abs(np.concatenate([-pts[::-1], pts]))
    pd = partition(ds, PartitionScheme.SPLIT)
    p = build_pencil(pd)
    model = realize(p, svd_truncate(p, rank=10))
    for lam, w in zip(p.lam, p.W):
        assert evaluate(model, lam) == pytest.approx(w, rel=1e-9, abs=1e-12)


def test_evaluate_affine_in_B_and_C():
    m = pole_residue_model(complex_poles=[0.3 + 1.2j], complex_residues=[1.0 - 0.5j])
    doubled_B = RationalApproximant(E=m.E, A=m.A, B=2 * m.B, C=m.C)
    doubled_C = RationalApproximant(E=m.E, A=m.A, B=m.B, C=2 * m.C)
    for x in (-0.9, 0.1, 0.77):
        base = evaluate(m, x)
        assert evaluate(doubled_B, x) == pytest.approx(2 * base, rel=1e-13)
        assert evaluate(doubled_C, x) == pytest.approx(2 * base, rel=1e-13)


def test_evaluate_at_pole_raises():
    m = pole_residue_model(real_poles=[0.5], real_residues=[1.0])
    with pytest.raises(PoleProximityError) as excinfo:
        evaluate(m, 0.5)
    assert excinfo.value.x == 0.5


def test_evaluate_grid_matches_scalar_and_flags_poles():
    m = pole_residue_model(real_poles=[0.5], real_residues=[1.0], d=0.25)
    xs = np.array([-0.4, 0.0, 0.2, 0.5, 0.9])
    with pytest.warns(RuntimeWarning):
        vals = evaluate_grid(m, xs)
    assert np.isnan(vals[3])
    for i in (0, 1, 2, 4):
        assert vals[i] == pytest.approx(evaluate(m, xs[i]), rel=1e-13)


# ---------------------------------------------------------------- serialization

def test_model_json_round_trip():
    m = pole_residue_model(real_poles=[3.0], real_residues=[2.0],
                           complex_poles=[0.1 + 0.9j], complex_residues=[0.3 + 0.4j], d=0.1)
    doc = json.loads(model_to_json(m))
    assert set(doc) == {"E", "A", "B", "C", "D", "order"}
    assert doc["order"] == m.order
    back = model_from_json(model_to_json(m))
    probe = np.linspace(-1, 1, 17)
    assert np.array_equal(evaluate_grid(back, probe), evaluate_grid(m, probe))


def test_model_file_round_trip(tmp_path):
    m = pole_residue_model(real_poles=[2.5], real_residues=[1.0])
    path = tmp_path / "model.json"
    save_model(m, path)
    back = load_model(path)
    assert evaluate(back, 0.3) == evaluate(m, 0.3)
