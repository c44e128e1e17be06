import math

import pytest

from partition_ot.errors import DomainError, NotMetricLikeError, UnsupportedDimensionError
from partition_ot.measures import delta_center
from partition_ot.partitions import MPartition, Partition, conjugate, enumerate_partitions
from partition_ot.transport import (
    EUCLIDEAN,
    L1,
    CostFunction,
    first_return_map,
    rows_to_csv,
    scan_sigma_conjecture,
    scan_summary,
    verify_identity_on_intersection,
    verify_reflection_optimal,
)
from partition_ot.transport.theorems import SCAN_COLUMNS, is_zero, reflect_diagonal


def test_identity_on_intersection_small():
    for n in range(1, 6):
        for a in enumerate_partitions(n):
            for b in enumerate_partitions(n):
                for c in (EUCLIDEAN, L1):
                    assert verify_identity_on_intersection(a, b, c).ok


def test_identity_on_intersection_refuses_non_metric_costs():
    with pytest.raises(NotMetricLikeError):
        verify_identity_on_intersection(Partition((2,)), Partition((1, 1)), CostFunction("sqeuclidean"))


def test_first_return_map_fixes_common_cells():
    p = Partition((3, 1))
    mu, nu = delta_center(p), delta_center(conjugate(p))
    f = first_return_map(mu, nu, reflect_diagonal)
    common = mu.support & nu.support
    assert all(f[z] == z for z in common)
    assert sorted(f.values()) == nu.points


def test_reflection_small_cases_hold():
    for n in range(1, 8):
        for p in enumerate_partitions(n):
            r = verify_reflection_optimal(p)
            assert r.ok, r


def test_reflection_counterexample_at_eight():
    # identity-plus-reflection is not optimal for 4+2+2
    r = verify_reflection_optimal(Partition((4, 2, 2)))
    assert math.isclose(r.constructed_cost, 2 * math.sqrt(8))
    assert math.isclose(r.optimal_cost, 2 * math.sqrt(2))
    assert not r.optimal and not r.certified


def test_zero_cost_iff_self_symmetric():
    for n in range(1, 11):
        for p in enumerate_partitions(n):
            r = verify_reflection_optimal(p, max_cycle=2)
            assert r.self_symmetric == r.supports_equal == r.zero_cost


def test_is_zero():
    assert is_zero(0) and is_zero(1e-12)
    assert not is_zero(1e-6)


def test_scan_one_dimensional_rows():
    rows = scan_sigma_conjecture(3, 1)
    # 3 partitions x 2 permutations x 2 costs
    assert len(rows) == 12
    assert all(r.passed for r in rows)
    assert scan_summary(rows) == {"cells": 12, "pass": 12, "fail": 0, "rejected": 0}


def test_scan_two_dimensional_trivial():
    rows = scan_sigma_conjecture(1, 2, costs=(EUCLIDEAN,))
    assert len(rows) == 6
    assert {r.partition for r in rows} == {"[[1]]"}
    assert all(r.zero_cost and r.self_symmetric for r in rows)


def test_scan_is_deterministic_and_serializable():
    a = rows_to_csv(scan_sigma_conjecture(4, 2), SCAN_COLUMNS)
    b = rows_to_csv(scan_sigma_conjecture(4, 2), SCAN_COLUMNS)
    assert a == b
    assert a.splitlines()[0] == ",".join(SCAN_COLUMNS)


def test_scan_bounds():
    with pytest.raises(UnsupportedDimensionError):
        scan_sigma_conjecture(2, 3)
    with pytest.raises(DomainError):
        scan_sigma_conjecture(99, 2)


def test_scan_rows_for_two_dimensional_partition():
    p = MPartition.from_nested([[2, 1]])
    rows = [r for r in scan_sigma_conjecture(3, 2, costs=(L1,)) if r.partition == str(p)]
    assert len(rows) == 6
    identity = rows[0]
    assert identity.sigma == "(1 2 3)" and identity.image == str(p) and identity.optimal_cost == 0
