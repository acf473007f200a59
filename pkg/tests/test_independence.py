import numpy as np
import pytest

from curvetrace.errors import ColumnCapExceeded, InputError
from curvetrace.independence import (DEPENDENT, INDEPENDENT, append_column, build_matrix,
                                     rank_report, row_seeds)
from curvetrace.surface import enumerate_dehn
from curvetrace.workers import parallel_map


@pytest.fixture
def torus_matrix(torus):
    params = enumerate_dehn(torus, 1, 1)
    return build_matrix(torus, params, 3 * len(params), seed=1, margin=0.05)


def test_row_seeds_are_reproducible():
    assert row_seeds(4, 5) == row_seeds(4, 5)
    assert row_seeds(4, 5)[:3] == row_seeds(4, 3)
    assert row_seeds(4, 5) != row_seeds(5, 5)


def test_rank_never_drops_as_rows_are_added(torus_matrix):
    ranks = [rank_report(torus_matrix.take_rows(n)).rank for n in range(1, 16)]
    assert all(a <= b for a, b in zip(ranks, ranks[1:]))
    assert all(rank <= n for n, rank in enumerate(ranks, start=1))
    assert ranks[0] == 1
    assert ranks[-1] == 5


def test_negative_seed_is_rejected():
    with pytest.raises(InputError):
        row_seeds(-1, 3)


def test_matrix_shape_and_labels(torus, torus_matrix):
    assert torus_matrix.shape == (15, 5)
    assert torus_matrix.labels[0] == "m=(0) t=(0)"
    assert np.all(torus_matrix.entries[:, 0] == 1.0)
    assert torus_matrix.check_entries() == []
    assert torus_matrix.component_counts == (0, 1, 1, 1, 1)


def test_small_torus_family_is_independent(torus_matrix):
    report = rank_report(torus_matrix)
    assert report.verdict == INDEPENDENT
    assert report.independent
    assert report.rank == 5
    assert 0.0 < report.condition_ratio <= 1.0


def test_dependent_control_column_is_flagged(torus_matrix):
    values = torus_matrix.entries[:, 1] - 3.0 * torus_matrix.entries[:, 3]
    report = rank_report(append_column(torus_matrix, values, 'control'))
    assert report.verdict == DEPENDENT
    assert report.rank == 5
    assert report.columns == 6


def test_matrix_is_deterministic(torus):
    params = enumerate_dehn(torus, 1, 1)
    first = build_matrix(torus, params, 10, seed=3, margin=0.05)
    second = build_matrix(torus, params, 10, seed=3, margin=0.05, threads=3)
    assert np.array_equal(first.entries, second.entries)
    assert first.take_rows(5).entries.shape == (5, 5)


def test_column_cap(torus):
    params = enumerate_dehn(torus, 2, 2)
    with pytest.raises(ColumnCapExceeded):
        build_matrix(torus, params, 40, seed=1, margin=0.05, max_columns=10)
    matrix = build_matrix(torus, params, 40, seed=1, margin=0.05, max_columns=10,
                          allow_large=True)
    assert matrix.shape == (40, 13)


def test_too_few_samples(torus):
    with pytest.raises(InputError):
        build_matrix(torus, enumerate_dehn(torus, 1, 1), 4, seed=1, margin=0.05)


def test_parallel_map_keeps_order():
    assert parallel_map(lambda x: x * x, range(20), threads=4) == [x * x for x in range(20)]
    assert parallel_map(str, [], threads=4) == []
