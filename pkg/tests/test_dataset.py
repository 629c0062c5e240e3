import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratapprox.dataset import (
    MeasurementSet,
    PartitionScheme,
    add_origin,
    add_pair,
    partition,
    read_measurements_csv,
    sample_abs,
    sample_function,
)
from ratapprox.errors import DataError, DomainError
from ratapprox.loewner import build_pencil


def test_sample_abs_examples():
    ds = sample_abs([-1.0, 1.0])
    assert ds.pairs == [(-1.0, 1.0), (1.0, 1.0)]
    assert sample_abs([0.0]).pairs == [(0.0, 0.0)]
    assert sample_abs([-0.5, 0.25]).pairs == [(-0.5, 0.5), (0.25, 0.25)]


def test_sample_abs_preserves_order():
    ds = sample_abs([0.5, -1.0, 0.25])
    assert ds.tau.tolist() == [0.5, -1.0, 0.25]


def test_duplicate_points_rejected():
    with pytest.raises(DataError):
        sample_abs([0.5, 0.5])


def test_sample_function():
    ds = sample_function([1.0, 2.0], lambda x: x**2)
    assert ds.pairs == [(1.0, 1.0), (2.0, 4.0)]


def test_partition_split_example():
    ds = sample_abs([-1.0, -0.5, 0.5, 1.0])
    pd = partition(ds, PartitionScheme.SPLIT)
    assert list(zip(pd.mu, pd.v)) == [(-1.0, 1.0), (-0.5, 0.5)]
    assert list(zip(pd.lam, pd.w)) == [(0.5, 0.5), (1.0, 1.0)]


def test_partition_alternating_example():
    ds = sample_abs([-1.0, -0.5, 0.5, 1.0])
    pd = partition(ds, PartitionScheme.ALTERNATING)
    assert list(zip(pd.lam, pd.w)) == [(-1.0, 1.0), (0.5, 0.5)]
    assert list(zip(pd.mu, pd.v)) == [(-0.5, 0.5), (1.0, 1.0)]


def test_partition_same_hermite_abs():
    pd = partition(sample_abs([0.5, 1.0]), PartitionScheme.SAME)
    assert pd.hermite_d1.tolist() == [1.0, 1.0]
    assert pd.hermite_d2.tolist() == [1.0, 2.0]  # d(x|x|)/dx = 2|x|
    assert np.array_equal(pd.lam, pd.mu)
    assert np.array_equal(pd.w, pd.v)


def test_partition_same_rejects_origin_node():
    with pytest.raises(DomainError):
        partition(sample_abs([-0.5, 0.0, 0.5]), PartitionScheme.SAME)


def test_partition_odd_count_rejected():
    ds = sample_abs([-1.0, 0.5, 1.0])
    for scheme in (PartitionScheme.SPLIT, PartitionScheme.ALTERNATING):
        with pytest.raises(DataError):
            partition(ds, scheme)


def test_partition_sorts_before_splitting():
    pd = partition(sample_abs([1.0, -0.5, 0.5, -1.0]), PartitionScheme.ALTERNATING)
    assert pd.lam.tolist() == [-1.0, 0.5]


def test_partition_same_central_difference_fallback():
    target = lambda x: x**2
    ds = sample_function([0.5, 1.5], target)
    pd = partition(ds, PartitionScheme.SAME, target=target)
    assert pd.hermite_d1 == pytest.approx([1.0, 3.0], rel=1e-8)
    # d2 is tied to d1 by the product rule regardless of how d1 was obtained
    assert pd.hermite_d2 == pytest.approx(pd.w + pd.lam * pd.hermite_d1, rel=0, abs=0)


def test_partition_same_explicit_derivative():
    ds = sample_function([1.0, 2.0], lambda x: 1.0 / x)
    pd = partition(ds, PartitionScheme.SAME, derivative=lambda x: -1.0 / x**2)
    assert pd.hermite_d1 == pytest.approx([-1.0, -0.25])


def test_partition_same_needs_derivative_source():
    ds = sample_function([1.0, 2.0], lambda x: x**3)
    with pytest.raises(DataError):
        partition(ds, PartitionScheme.SAME)


@given(st.integers(2, 30))
@settings(max_examples=20, deadline=None)
def test_partition_is_a_bijection_on_pairs(k):
    pts = np.linspace(0.1, 1.0, k)
    ds = sample_abs(np.concatenate([-pts[::-1], pts]))
    original = sorted(ds.pairs)
    for scheme in (PartitionScheme.SPLIT, PartitionScheme.ALTERNATING):
        pd = partition(ds, scheme)
        assert sorted(pd.measurement_multiset()) == original
        assert not set(pd.lam) & set(pd.mu)  # guards Loewner division by zero
    pd = partition(ds, PartitionScheme.SAME)
    assert sorted(set(pd.measurement_multiset())) == original
    assert pd.hermite_d1.size == pd.lam.size == pd.hermite_d2.size


def test_add_origin_goes_to_extension():
    ds = sample_abs([-1.0, -0.5, 0.5, 1.0])
    pd = add_origin(partition(ds, PartitionScheme.SPLIT))
    assert pd.extra_points.tolist() == [0.0]
    assert pd.extra_values.tolist() == [0.0]
    assert pd.lam.size == 2  # right block unchanged


def test_add_origin_twice_rejected():
    pd = add_origin(partition(sample_abs([-1.0, -0.5, 0.5, 1.0]), PartitionScheme.SPLIT))
    with pytest.raises(DataError):
        add_origin(pd)


def test_add_origin_grows_pencil_by_one_column():
    ds = sample_abs([-1.0, -0.5, 0.5, 1.0])
    pd = partition(ds, PartitionScheme.SPLIT)
    before = build_pencil(pd).shape
    after = build_pencil(add_origin(pd)).shape
    assert after == (before[0], before[1] + 1)


def test_add_pair_split_extends():
    pd = partition(sample_abs([-1.0, -0.5, 0.5, 1.0]), PartitionScheme.SPLIT)
    pd = add_pair(pd, 0.75, 0.75)
    assert pd.extra_points.tolist() == [0.75]
    assert pd.lam.size == 2


def test_add_pair_same_becomes_node():
    pd = partition(sample_abs([-1.0, -0.5, 0.5, 1.0]), PartitionScheme.SAME)
    pd = add_pair(pd, 0.75, 0.75)
    assert 0.75 in pd.lam
    assert pd.hermite_d1.size == 5
    i = np.nonzero(pd.lam == 0.75)[0][0]
    assert pd.hermite_d1[i] == 1.0
    assert pd.hermite_d2[i] == 1.5
    assert np.all(np.diff(pd.lam) > 0)


def test_add_pair_same_origin_routes_to_extension():
    pd = partition(sample_abs([-1.0, -0.5, 0.5, 1.0]), PartitionScheme.SAME)
    pd = add_pair(pd, 0.0, 0.0)
    assert pd.extra_points.tolist() == [0.0]
    assert pd.lam.size == 4


def test_add_pair_duplicate_rejected():
    pd = partition(sample_abs([-1.0, -0.5, 0.5, 1.0]), PartitionScheme.SPLIT)
    with pytest.raises(DataError):
        add_pair(pd, 0.5, 0.5)


def test_read_csv_with_and_without_header(tmp_path):
    plain = tmp_path / "plain.csv"
    plain.write_text("-0.5,0.5\n0.25,0.25\n")
    ds = read_measurements_csv(plain)
    assert ds.pairs == [(-0.5, 0.5), (0.25, 0.25)]

    headed = tmp_path / "headed.csv"
    headed.write_text("tau,f\n-0.5,0.5\n0.25,0.25\n")
    assert read_measurements_csv(headed).pairs == ds.pairs


def test_read_csv_errors(tmp_path):
    short = tmp_path / "short.csv"
    short.write_text("0.5\n")
    with pytest.raises(DataError):
        read_measurements_csv(short)
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(DataError):
        read_measurements_csv(empty)
    bad = tmp_path / "bad.csv"
    bad.write_text("0.1,0.1\nx,y\n")
    with pytest.raises(DataError):
        read_measurements_csv(bad)
