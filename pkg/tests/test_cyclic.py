import numpy as np

from partition_ot.measures import DiscreteMeasure, delta_center
from partition_ot.partitions import enumerate_partitions
from partition_ot.transport import (
    EUCLIDEAN,
    L1,
    check_c_cyclic_monotone,
    cyclic_monotone_mask,
    matching_costs,
    matching_plan,
    solve_monge,
)
from partition_ot.transport.monge import _optimal_rows


def test_optimal_plans_are_certified():
    for n in range(1, 6):
        for a in enumerate_partitions(n):
            for b in enumerate_partitions(n):
                mu, nu = delta_center(a), delta_center(b)
                plan = solve_monge(mu, nu, EUCLIDEAN)
                assert check_c_cyclic_monotone(plan, EUCLIDEAN, max_cycle=n).certified


def test_crossing_matching_has_a_witness():
    mu = DiscreteMeasure.unit(1, [(0,), (2,)])
    nu = DiscreteMeasure.unit(1, [(0,), (2,)])
    crossed = matching_plan(mu, nu, (1, 0), EUCLIDEAN)
    report = check_c_cyclic_monotone(crossed, EUCLIDEAN, max_cycle=2)
    assert not report.certified
    assert report.witness is not None and report.gain > 0


def test_cycles_and_permutations_modes_agree():
    mu = delta_center(enumerate_partitions(5)[3])
    nu = delta_center(enumerate_partitions(5)[5])
    perms, _ = matching_costs(mu, nu, L1)
    cycles = cyclic_monotone_mask(mu.points, nu.points, perms, L1, 5, "cycles")
    full = cyclic_monotone_mask(mu.points, nu.points, perms, L1, 5, "permutations")
    assert np.array_equal(cycles, full)


def test_mask_equals_optimal_set():
    for a in enumerate_partitions(5):
        for b in enumerate_partitions(5):
            mu, nu = delta_center(a), delta_center(b)
            for c in (EUCLIDEAN, L1):
                perms, costs = matching_costs(mu, nu, c)
                optimal = np.zeros(len(perms), dtype=bool)
                optimal[_optimal_rows(costs, c.is_exact)] = True
                assert np.array_equal(optimal, cyclic_monotone_mask(mu.points, nu.points, perms, c, 5))


def test_rotated_matching_is_rejected():
    mu = DiscreteMeasure.unit(1, [(0,), (2,), (4,)])
    nu = DiscreteMeasure.unit(1, [(0,), (2,), (4,)])
    plan = matching_plan(mu, nu, (1, 2, 0), L1)
    report = check_c_cyclic_monotone(plan, L1, max_cycle=3)
    assert not report.certified
    assert report.checked > 0
